"""Equations of motion on (S^n)^N and fixed-step integration.

Each body obeys ``qdd_i = F_i / m_i - |qd_i|^2 q_i``, the constrained form
that keeps ``|q_i| = 1`` and conserves ``T - U`` with
``T = 1/2 sum m_i |qd_i|^2``. At rest the acceleration is ``F_i / m_i``, so
a configuration stays put exactly when it is a critical point of U.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SingularEncounterError
from .geometry import SINGULAR_TOL, Configuration
from .potential import _as_masses, _check_sizes, force_array, gradient_array

STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PhaseState:
    positions: Configuration
    velocities: np.ndarray

    def __post_init__(self):
        v = np.array(self.velocities, dtype=float)
        if v.shape != self.positions.points.shape:
            raise InvalidInputError("velocities must match the shape of the positions")
        tangency = np.abs(np.einsum("ij,ij->i", v, self.positions.points))
        if np.any(tangency > STATE_TOL):
            raise InvalidInputError("velocities must be tangent to the sphere at each body")
        v.setflags(write=False)
        object.__setattr__(self, "velocities", v)

    @classmethod
    def at_rest(cls, c):
        return cls(c, np.zeros_like(c.points))


@dataclass
class DriftReport:
    t_final: float
    max_position_drift: float
    max_speed: float
    energy_drift: float

    def to_dict(self):
        return {
            "t_final": self.t_final,
            "max_position_drift": self.max_position_drift,
            "max_speed": self.max_speed,
            "energy_drift": self.energy_drift,
        }


def _dot(a, b):
    return np.einsum("...ij,...ij->...i", a, b)


def _accel(Q, V, m):
    return gradient_array(Q, m) / m[..., None] - _dot(V, V)[..., None] * Q


def acceleration(state, m):
    m = _as_masses(m)
    _check_sizes(state.positions, m)
    return _accel(state.positions.points, state.velocities, m.masses)


def energy(Q, V, m):
    """Total energy T - U; batched inputs give an array."""
    return 0.5 * np.sum(m * _dot(V, V), axis=-1) - force_array(Q, m)


def _rk4_step(Q, V, m, dt):
    k1q, k1v = V, _accel(Q, V, m)
    Q2, V2 = Q + 0.5 * dt * k1q, V + 0.5 * dt * k1v
    k2q, k2v = V2, _accel(Q2, V2, m)
    Q3, V3 = Q + 0.5 * dt * k2q, V + 0.5 * dt * k2v
    k3q, k3v = V3, _accel(Q3, V3, m)
    Q4, V4 = Q + dt * k3q, V + dt * k3v
    k4q, k4v = V4, _accel(Q4, V4, m)
    Qn = Q + dt / 6.0 * (k1q + 2 * k2q + 2 * k3q + k4q)
    Vn = V + dt / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
    Qn /= np.linalg.norm(Qn, axis=-1, keepdims=True)
    Vn -= _dot(Vn, Qn)[..., None] * Qn
    return Qn, Vn


def _run(Q0, V0, m, dt, t_final, trace=None):
    """RK4 on arrays of shape (B, N, d).

    Returns the final arrays and one entry per trajectory: a DriftReport, or
    the SingularEncounterError that stopped it. A stopped trajectory is
    frozen at its last regular state while the others carry on.
    """
    steps = int(round(t_final / dt))
    n = Q0.shape[-2]
    off = ~np.eye(n, dtype=bool)
    Q, V = Q0.copy(), V0.copy()
    e0 = energy(Q, V, m)
    failures = {}
    max_drift = np.zeros(Q.shape[0])
    max_speed = np.sqrt(np.max(_dot(V, V), axis=-1))
    if trace is not None:
        trace.append((0.0, Q[0].copy()))
    for step in range(1, steps + 1):
        Qn, Vn = _rk4_step(Q, V, m, dt)
        G = np.nan_to_num(np.abs(Qn @ np.swapaxes(Qn, -1, -2)), nan=np.inf)
        G = np.where(off, G, 0.0)
        closest = np.max(G, axis=(-2, -1))
        for b in np.flatnonzero(closest >= 1.0 - SINGULAR_TOL):
            if b not in failures:
                i, j = np.unravel_index(np.argmax(G[b]), G[b].shape)
                failures[b] = SingularEncounterError(step * dt, (int(min(i, j)), int(max(i, j))))
        if failures:
            dead = np.zeros(Q.shape[0], dtype=bool)
            dead[list(failures)] = True
            Qn[dead], Vn[dead] = Q[dead], V[dead]
        Q, V = Qn, Vn
        # geodesic distance from the chord; arccos is inaccurate near zero
        chord = np.linalg.norm(Q - Q0, axis=-1)
        drift = 2.0 * np.arcsin(np.minimum(chord / 2.0, 1.0))
        max_drift = np.maximum(max_drift, drift.max(axis=-1))
        max_speed = np.maximum(max_speed, np.sqrt(np.max(_dot(V, V), axis=-1)))
        if trace is not None:
            trace.append((step * dt, Q[0].copy()))
        if len(failures) == Q.shape[0]:
            break
    e_drift = np.abs(energy(Q, V, m) - e0)
    reports = [
        failures.get(b) or DriftReport(steps * dt, float(max_drift[b]), float(max_speed[b]), float(e_drift[b]))
        for b in range(Q.shape[0])
    ]
    return Q, V, reports


def _check_step(dt, t_final):
    if dt <= 0 or t_final < dt:
        raise InvalidInputError("need dt > 0 and t_final >= dt")


def integrate(state0, m, dt, t_final, trace=None):
    """Fixed-step RK4 from ``state0`` up to ``t_final``.

    After every step positions are renormalized and velocities projected
    back onto the tangent spaces. If ``trace`` is a list, ``(t, Q)`` pairs
    are appended to it after each step, starting with the initial state.

    Returns
    -------
    (PhaseState, DriftReport)
    """
    m = _as_masses(m)
    _check_sizes(state0.positions, m)
    _check_step(dt, t_final)
    Q, V, reports = _run(
        np.array(state0.positions.points)[None],
        np.array(state0.velocities)[None],
        m.masses[None],
        dt,
        t_final,
        trace,
    )
    if isinstance(reports[0], SingularEncounterError):
        raise reports[0]
    return PhaseState(Configuration(state0.positions.dim, Q[0]), V[0]), reports[0]


def integrate_many(states, masses, dt, t_final, errors="raise"):
    """Integrate several trajectories with the same N and sphere dimension in lockstep.

    Equivalent to calling ``integrate`` on each pair but vectorized across
    trajectories. Returns a list of ``(PhaseState, DriftReport)``. With
    ``errors="return"`` a trajectory that meets a singularity contributes its
    SingularEncounterError in place of the pair instead of raising.
    """
    if errors not in ("raise", "return"):
        raise InvalidInputError("errors must be 'raise' or 'return'")
    states = list(states)
    masses = [_as_masses(m) for m in masses]
    if len(states) != len(masses) or not states:
        raise InvalidInputError("need one mass vector per state")
    dims = {s.positions.dim for s in states}
    sizes = {len(s.positions) for s in states}
    if len(dims) != 1 or len(sizes) != 1:
        raise InvalidInputError("batched trajectories must share N and the sphere dimension")
    for s, m in zip(states, masses):
        _check_sizes(s.positions, m)
    _check_step(dt, t_final)
    Q, V, reports = _run(
        np.stack([s.positions.points for s in states]),
        np.stack([s.velocities for s in states]),
        np.stack([m.masses for m in masses]),
        dt,
        t_final,
    )
    dim = dims.pop()
    out = []
    for b, rep in enumerate(reports):
        if isinstance(rep, SingularEncounterError):
            if errors == "raise":
                raise rep
            out.append(rep)
        else:
            out.append((PhaseState(Configuration(dim, Q[b]), V[b]), rep))
    return out
