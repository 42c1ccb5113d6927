"""Numerical search for special central configurations with given masses.

Refinement runs a Levenberg-Marquardt iteration on the gradient equations
F_i(q) = 0, with steps taken in tangent coordinates and mapped back to the
spheres by normalization. A search draws random starts, refines each one and
merges the converged shapes by their mass-labelled distance fingerprint.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .geometry import Configuration, random_configuration, tangent_basis
from .potential import MassVector, _as_masses, gradient_array, gradient_jacobian

ABANDON_TOL = 1e-9
FINGERPRINT_RESOLUTION = 1e-6
MAX_STEP = 1.0


@dataclass(frozen=True)
class SearchSettings:
    n: int
    trials: int = 100
    seed: int = 0
    tol: float = 1e-10
    max_iters: int = 200
    merge_tol: float = 1e-5
    workers: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("sphere dimension must be >= 1")
        if self.trials < 1:
            raise InvalidInputError("need at least one trial")
        if self.tol <= 0 or self.merge_tol <= 0:
            raise InvalidInputError("tolerances must be positive")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer")


@dataclass
class RefineResult:
    """Outcome of one refinement.

    ``status`` is ``"converged"``, ``"abandoned"`` (an iterate came within
    ``ABANDON_TOL`` of a collision or antipodal pair) or ``"max_iters"``.
    ``configuration`` is None unless converged.
    """

    status: str
    configuration: Configuration = None
    residual: float = np.inf
    iterations: int = 0

    @property
    def converged(self):
        return self.status == "converged"


def _max_norm(F):
    return float(np.sqrt(np.max(np.einsum("ij,ij->i", F, F))))


def _near_singular(Q):
    G = Q @ Q.T
    np.fill_diagonal(G, 0.0)
    return np.max(np.abs(G)) > 1.0 - ABANDON_TOL


def _refine_array(Q, m, tol, max_iters):
    n, d = Q.shape
    F = gradient_array(Q, m)
    res = _max_norm(F)
    mu = 1e-3
    for it in range(max_iters):
        if res <= tol:
            return "converged", Q, res, it
        bases = np.stack([tangent_basis(q) for q in Q])  # (n, d, d-1)
        J = gradient_jacobian(Q, m).reshape(n * d, n, d)
        Jt = np.einsum("xjb,jbc->xjc", J, bases).reshape(n * d, n * (d - 1))
        f = F.reshape(-1)
        merit = f @ f
        scale = np.max(np.einsum("ij,ij->j", Jt, Jt)) or 1.0
        while True:
            lam = np.sqrt(mu * scale)
            A = np.vstack([Jt, lam * np.eye(Jt.shape[1])])
            b = np.concatenate([-f, np.zeros(Jt.shape[1])])
            xi = np.linalg.lstsq(A, b, rcond=None)[0].reshape(n, d - 1)
            step = np.einsum("jbc,jc->jb", bases, xi)
            longest = np.max(np.linalg.norm(step, axis=1))
            if longest > MAX_STEP:
                step *= MAX_STEP / longest
            Qn = Q + step
            Qn /= np.linalg.norm(Qn, axis=1, keepdims=True)
            if _near_singular(Qn):
                if mu > 1e10:
                    return "abandoned", Qn, res, it + 1
                mu *= 4.0
                continue
            Fn = gradient_array(Qn, m)
            fn = Fn.reshape(-1)
            if fn @ fn < merit:
                Q, F = Qn, Fn
                res = _max_norm(F)
                mu = max(mu / 3.0, 1e-15)
                break
            mu *= 4.0
            if mu > 1e12:
                return "max_iters", Q, res, it + 1
    if res <= tol:
        return "converged", Q, res, max_iters
    return "max_iters", Q, res, max_iters


def refine(c0, m, settings=None, tol=None, max_iters=None):
    """Drive ``max_i |F_i|`` below ``tol`` starting from ``c0``.

    Masses are normalized to sum 1 before refinement. Explicit ``tol`` and
    ``max_iters`` override the values in ``settings``.
    """
    m = _as_masses(m).normalized()
    if len(m) != len(c0):
        raise InvalidInputError(f"{len(c0)} bodies but {len(m)} masses")
    if tol is None:
        tol = settings.tol if settings is not None else 1e-10
    if max_iters is None:
        max_iters = settings.max_iters if settings is not None else 200
    status, Q, res, it = _refine_array(np.array(c0.points), m.masses, tol, max_iters)
    if status != "converged":
        return RefineResult(status, None, res, it)
    return RefineResult(status, Configuration(c0.dim, Q), res, it)


def canonical_gauge(c, tol=1e-9):
    """Representative of the orbit of ``c`` under orthogonal maps.

    Gram-Schmidt on the bodies in order: q_1 becomes e_1, q_2 lands in
    span{e_1, e_2} with nonnegative second coordinate, and so on. A body
    lying in the span of the earlier ones contributes no new axis, and the
    next body fixes it instead. Mirror images get the same representative,
    matching the reflection-invariant distance fingerprint.
    """
    pts = c.points
    d = pts.shape[1]
    basis = []
    for q in pts:
        r = q.copy()
        for _ in range(2):
            for b in basis:
                r -= (b @ r) * b
        nr = np.linalg.norm(r)
        if nr > tol:
            basis.append(r / nr)
        if len(basis) == d:
            break
    B = np.array(basis)
    coords = np.zeros_like(pts)
    coords[:, : len(basis)] = pts @ B.T
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)
    return Configuration(c.dim, coords)


def fingerprint(c, m, resolution=None):
    """Sorted mass-labelled mutual distances, one row ``(m_lo, m_hi, d_ij)`` per pair.

    Masses are normalized first. With ``resolution`` the entries are rounded
    to that grid.
    """
    mv = _as_masses(m).normalized().masses
    pts = c.points
    G = np.clip(pts @ pts.T, -1.0, 1.0)
    i, j = np.triu_indices(len(mv), 1)
    rows = np.column_stack([np.minimum(mv[i], mv[j]), np.maximum(mv[i], mv[j]), np.arccos(G[i, j])])
    rows = rows[np.lexsort((rows[:, 2], rows[:, 1], rows[:, 0]))]
    if resolution:
        rows = np.round(rows / resolution) * resolution
    return rows


def fingerprint_distance(a, b):
    if a.shape != b.shape:
        return np.inf
    return float(np.max(np.abs(a - b))) if a.size else 0.0


@dataclass
class SccClass:
    representative: Configuration
    masses: MassVector
    fingerprint: np.ndarray
    residual: float
    count: int = 1
    raw_fingerprint: np.ndarray = field(default=None, repr=False)

    def to_dict(self):
        return {
            "representative": self.representative.to_dict(),
            "masses": self.masses.to_list(),
            "fingerprint": self.fingerprint.tolist(),
            "residual": self.residual,
            "count": self.count,
        }


def _run_trial(args):
    seed_seq, n_bodies, dim, masses, tol, max_iters = args
    rng = np.random.default_rng(seed_seq)
    Q0 = random_configuration(n_bodies, dim, rng)
    if _near_singular(Q0):
        return None
    status, Q, res, _ = _refine_array(Q0, masses, tol, max_iters)
    if status != "converged":
        return None
    return Q, res


def search(m, settings):
    """Multistart search returning the distinct classes found, most hits first.

    Each trial owns a child of ``SeedSequence(settings.seed)``, so results do
    not depend on ``settings.workers``.
    """
    m = _as_masses(m).normalized()
    n_bodies = len(m)
    if n_bodies < 2:
        raise InvalidInputError("search needs at least two bodies")
    children = np.random.SeedSequence(settings.seed).spawn(settings.trials)
    jobs = [(ch, n_bodies, settings.n, m.masses, settings.tol, settings.max_iters) for ch in children]
    if settings.workers > 1:
        with ProcessPoolExecutor(settings.workers) as pool:
            outcomes = list(pool.map(_run_trial, jobs, chunksize=16))
    else:
        outcomes = [_run_trial(job) for job in jobs]

    classes = []
    for out in outcomes:
        if out is None:
            continue
        Q, res = out
        conf = Configuration(settings.n, Q)
        raw = fingerprint(conf, m)
        for cls in classes:
            if fingerprint_distance(raw, cls.raw_fingerprint) <= settings.merge_tol:
                cls.count += 1
                break
        else:
            classes.append(
                SccClass(
                    representative=canonical_gauge(conf),
                    masses=m,
                    fingerprint=fingerprint(conf, m, FINGERPRINT_RESOLUTION),
                    residual=res,
                    raw_fingerprint=raw,
                )
            )
    classes.sort(key=lambda cls: -cls.count)
    return classes
