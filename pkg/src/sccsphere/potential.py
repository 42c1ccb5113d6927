"""Cotangent force function on (S^n)^N and its critical-point equations."""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, SingularConfigurationError
from .geometry import SINGULAR_TOL, build_pair_table

DEFAULT_SCC_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MassVector:
    masses: np.ndarray

    def __post_init__(self):
        m = np.array(self.masses, dtype=float).reshape(-1)
        if m.size == 0:
            raise InvalidInputError("empty mass vector")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise InvalidInputError("masses must be finite and positive")
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    @classmethod
    def equal(cls, n):
        return cls(np.full(n, 1.0 / n))

    def __len__(self):
        return self.masses.size

    @property
    def is_normalized(self):
        return abs(self.masses.sum() - 1.0) <= 1e-12

    def normalized(self):
        return MassVector(self.masses / self.masses.sum())

    def to_list(self):
        return self.masses.tolist()


def _as_masses(m):
    return m if isinstance(m, MassVector) else MassVector(m)


def _check_sizes(c, m):
    if len(m) != len(c):
        raise InvalidInputError(f"{len(c)} bodies but {len(m)} masses")


# --- array kernels shared with the solver and the integrator -----------------

def pair_arrays(points):
    """Gram matrix G, 1 - G^2 and S = (1 - G^2)^(-3/2), zero on the diagonal.

    ``points`` may carry leading batch axes: shape ``(..., N, d)``.
    """
    G = points @ np.swapaxes(points, -1, -2)
    n = points.shape[-2]
    eye = np.eye(n, dtype=bool)
    W = np.where(eye, 1.0, 1.0 - G * G)
    with np.errstate(invalid="ignore", divide="ignore"):
        S = np.where(eye, 0.0, W**-1.5)
    return G, W, S


def gradient_array(points, m):
    """Rows F_i = sum_{j != i} m_i m_j (q_j - cos d_ij q_i) / sin^3 d_ij.

    Works on ``(N, d)`` or batched ``(..., N, d)`` points, with masses of
    shape ``(N,)`` or ``(..., N)``.
    """
    G, _, S = pair_arrays(points)
    MS = S * (m[..., :, None] * m[..., None, :])
    theta = np.sum(MS * G, axis=-1)
    return MS @ points - theta[..., None] * points


def force_array(points, m):
    G, W, _ = pair_arrays(points)
    n = points.shape[-2]
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    with np.errstate(invalid="ignore", divide="ignore"):
        cot = np.where(upper, G / np.sqrt(W), 0.0)
    out = np.sum((m[..., :, None] * m[..., None, :]) * cot, axis=(-2, -1))
    return float(out) if np.ndim(out) == 0 else out


def gradient_jacobian(points, m):
    """Derivative of the ambient extension of ``gradient_array``.

    Returns an array ``J`` of shape ``(N, d, N, d)`` with
    ``J[i, :, j, :] = dF_i / dq_j``. Restricted to tangent directions it is
    the derivative along the product of spheres.
    """
    n, d = points.shape
    G, W, S = pair_arrays(points)
    mm = np.outer(m, m)
    np.fill_diagonal(mm, 0.0)
    dS = 3.0 * G * W**-2.5  # dS/dcos
    np.fill_diagonal(dS, 0.0)
    # R[i, j] = q_j - G_ij q_i
    R = points[None, :, :] - G[:, :, None] * points[:, None, :]
    eye = np.eye(d)

    J = np.zeros((n, d, n, d))
    # off-diagonal blocks: S (I - q_i q_i^T) + dS (q_j - G q_i) q_i^T
    proj = eye[None, :, :] - np.einsum("ia,ib->iab", points, points)
    off = (mm * S)[:, :, None, None] * proj[:, None, :, :] + (mm * dS)[:, :, None, None] * np.einsum(
        "ija,ib->ijab", R, points
    )
    J += off.transpose(0, 2, 1, 3)
    # diagonal blocks: sum_j S (-G I - q_i q_j^T) + dS (q_j - G q_i) q_j^T
    w = mm * S
    diag = -np.einsum("ij,ij->i", w, G)[:, None, None] * eye[None]
    diag -= np.einsum("ij,ia,jb->iab", w, points, points)
    diag += np.einsum("ij,ija,jb->iab", mm * dS, R, points)
    idx = np.arange(n)
    J[idx, :, idx, :] = diag
    return J


# --- public API over Configuration -------------------------------------------

def force_function(c, m):
    """U(q) = sum_{i<j} m_i m_j cot d_ij."""
    m = _as_masses(m)
    _check_sizes(c, m)
    table = build_pair_table(c)
    iu = np.triu_indices(len(c), 1)
    cot = table.cosd[iu] / table.sind[iu]
    return float(np.sum(np.outer(m.masses, m.masses)[iu] * cot))


def gradient_term(c, m, i, j):
    """Contribution F_ij of body ``j`` to the gradient at body ``i``."""
    m = _as_masses(m)
    _check_sizes(c, m)
    if i == j:
        raise InvalidInputError("gradient_term needs two distinct bodies")
    qi, qj = c.points[i], c.points[j]
    cosd = float(np.clip(qi @ qj, -1.0, 1.0))
    if abs(cosd) >= 1.0 - SINGULAR_TOL:
        raise SingularConfigurationError(min(i, j), max(i, j))
    sin3 = (1.0 - cosd * cosd) ** 1.5
    return m.masses[i] * m.masses[j] * (qj - cosd * qi) / sin3


def gradient(c, m):
    """All N gradient vectors F_i as an ``(N, n+1)`` array."""
    m = _as_masses(m)
    _check_sizes(c, m)
    build_pair_table(c)  # raises on singular pairs
    return gradient_array(c.points, m.masses)


def theta(c, m, i):
    """Multiplier theta_i = sum_{j != i} m_i m_j cos d_ij / sin^3 d_ij."""
    m = _as_masses(m)
    _check_sizes(c, m)
    table = build_pair_table(c)
    others = np.arange(len(c)) != i
    return float(
        m.masses[i] * np.sum(m.masses[others] * table.cosd[i, others] * table.s[i, others])
    )


def collinearity_residuals(c, m):
    """Norm of the part of sum_{j != i} m_i m_j S_ij q_j orthogonal to q_i.

    The i-th residual vanishes exactly when that weighted sum is a multiple
    of q_i, which is the critical-point condition written without cosines.
    """
    m = _as_masses(m)
    table = build_pair_table(c)
    S = np.nan_to_num(table.s, nan=0.0)
    A = (S * np.outer(m.masses, m.masses)) @ c.points
    pts = c.points
    along = np.einsum("ij,ij->i", A, pts) / np.einsum("ij,ij->i", pts, pts)
    return np.linalg.norm(A - along[:, None] * pts, axis=1)


@dataclass
class SccResidualReport:
    gradient_norms: list
    max_norm: float
    theta: list
    verdict: bool
    tol: float
    collinearity: list = field(default_factory=list)

    @property
    def collinearity_max(self):
        return max(self.collinearity) if self.collinearity else 0.0

    def to_dict(self):
        return {
            "gradient_norms": self.gradient_norms,
            "max_norm": self.max_norm,
            "theta": self.theta,
            "verdict": self.verdict,
            "tol": self.tol,
        }


def scc_residual(c, m, tol=DEFAULT_SCC_TOL, normalize=True):
    """Test whether ``c`` is a critical point of U for masses ``m``.

    Parameters
    ----------
    c : Configuration
    m : MassVector or array_like
    tol : float
        Threshold on ``max_i |F_i|``.
    normalize : bool
        Rescale masses to sum 1 first so that ``tol`` is scale free.

    Returns
    -------
    SccResidualReport
        Per-body gradient norms computed pair by pair, the multipliers
        theta_i, and as a cross-check the collinearity residuals of the
        equivalent cosine-free form.
    """
    if tol <= 0:
        raise InvalidInputError("tolerance must be positive")
    m = _as_masses(m)
    _check_sizes(c, m)
    if normalize:
        m = m.normalized()
    n = len(c)
    F = np.zeros_like(c.points)
    for i in range(n):
        for j in range(n):
            if i != j:
                F[i] += gradient_term(c, m, i, j)
    norms = np.linalg.norm(F, axis=1)
    thetas = [theta(c, m, i) for i in range(n)]
    max_norm = float(norms.max())
    return SccResidualReport(
        gradient_norms=norms.tolist(),
        max_norm=max_norm,
        theta=thetas,
        verdict=bool(max_norm <= tol),
        tol=tol,
        collinearity=collinearity_residuals(c, m).tolist(),
    )
