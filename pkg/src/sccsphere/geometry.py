"""Points on the unit sphere S^n and the linear algebra around them.

A configuration of N bodies on S^n is stored as an ``(N, n+1)`` array whose
rows are unit vectors. Bodies are indexed from 0 throughout the package.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import (
    DegenerateConfigurationError,
    InvalidInputError,
    SingularConfigurationError,
    WrongCodimensionError,
)

UNIT_TOL = 1e-12
SINGULAR_TOL = 1e-12
RANK_RTOL = 1e-9
INTERIOR_TOL = 1e-10


def _first_singular_pair(points, tol=SINGULAR_TOL):
    gram = points @ points.T
    np.fill_diagonal(gram, 0.0)
    bad = np.argwhere(np.abs(gram) >= 1.0 - tol)
    if len(bad):
        i, j = sorted(bad[0])
        return int(i), int(j)
    return None


@dataclass(frozen=True, eq=False)
class Configuration:
    """N unit vectors in R^(dim+1), i.e. N bodies on the sphere S^dim.

    Construction validates that every point has unit norm and that no two
    points are equal or antipodal.
    """

    dim: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise InvalidInputError("points must be a list of vectors")
        if int(self.dim) < 1:
            raise InvalidInputError(f"sphere dimension must be >= 1, got {self.dim}")
        if pts.shape[1] != self.dim + 1:
            raise InvalidInputError(
                f"points on S^{self.dim} need {self.dim + 1} coordinates, got {pts.shape[1]}"
            )
        if pts.shape[0] < 2:
            raise InvalidInputError("a configuration needs at least two bodies")
        norms = np.linalg.norm(pts, axis=1)
        off = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
        if len(off):
            raise InvalidInputError(
                f"point {off[0]} has norm {norms[off[0]]!r}, expected 1 within {UNIT_TOL}"
            )
        pair = _first_singular_pair(pts)
        if pair is not None:
            raise SingularConfigurationError(*pair)
        pts.setflags(write=False)
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_points(cls, points, dim=None, normalize=True):
        """Build from raw vectors, projecting them onto the sphere if asked."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if normalize:
            pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        if dim is None:
            dim = pts.shape[1] - 1
        return cls(dim, pts)

    @property
    def n_bodies(self):
        return self.points.shape[0]

    def __len__(self):
        return self.points.shape[0]

    def to_dict(self):
        return {"dim": self.dim, "points": self.points.tolist()}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(int(data["dim"]), np.asarray(data["points"], dtype=float))
        except KeyError as exc:
            raise InvalidInputError(f"configuration JSON is missing key {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"malformed configuration JSON: {exc}") from None

    def rotated(self, rotation):
        """Apply an orthogonal matrix to every point."""
        return Configuration(self.dim, self.points @ np.asarray(rotation).T)

    def permuted(self, order):
        return Configuration(self.dim, self.points[list(order)])


@dataclass(frozen=True, eq=False)
class PairTable:
    """Pairwise cosines, sines and S_ij = 1/sin^3 d_ij. Diagonal of ``s`` is NaN."""

    cosd: np.ndarray
    sind: np.ndarray
    s: np.ndarray

    @property
    def distances(self):
        return np.arctan2(self.sind, self.cosd)


def _check_unit(v, name):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise InvalidInputError(f"{name} is not a unit vector")
    return v


def geodesic_distance(p, q):
    """Great-circle distance between two unit vectors, in [0, pi]."""
    p = _check_unit(p, "p")
    q = _check_unit(q, "q")
    if p.shape != q.shape:
        raise InvalidInputError("vectors live in different dimensions")
    # half-angle form stays accurate near 0 and pi, where arccos loses digits
    return float(2.0 * np.arctan2(np.linalg.norm(p - q), np.linalg.norm(p + q)))


def build_pair_table(c):
    pts = c.points
    pair = _first_singular_pair(pts)
    if pair is not None:
        raise SingularConfigurationError(*pair)
    cosd = np.clip(pts @ pts.T, -1.0, 1.0)
    cosd = 0.5 * (cosd + cosd.T)
    np.fill_diagonal(cosd, 1.0)
    sind = np.sqrt(1.0 - cosd**2)
    np.fill_diagonal(sind, 0.0)
    with np.errstate(divide="ignore"):
        s = sind**-3.0
    np.fill_diagonal(s, np.nan)
    return PairTable(cosd, sind, s)


def distance_matrix(c):
    return build_pair_table(c).distances


def rank_of_configuration(c):
    sv = np.linalg.svd(c.points, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > RANK_RTOL * sv[0]))


def is_dziobek(c):
    """True iff the N bodies span R^(N-1) and live on S^(N-2)."""
    n = len(c)
    return c.dim == n - 2 and rank_of_configuration(c) == n - 1


def delta_vector(c):
    """Signed maximal minors Delta_k = (-1)^(k+1) det(X with column k removed).

    ``X`` is the ``(N-1) x N`` matrix whose columns are the points, so with
    0-based ``k`` the sign is ``(-1)**k``. The result spans the kernel of X:
    ``sum_k Delta_k q_k = 0``.
    """
    n = len(c)
    if c.dim != n - 2:
        raise WrongCodimensionError(
            f"{n} bodies need S^{n - 2} for signed minors, got S^{c.dim}"
        )
    if rank_of_configuration(c) < n - 1:
        raise DegenerateConfigurationError(
            f"the {n} points do not span R^{n - 1}; not a Dziobek configuration"
        )
    X = c.points.T
    delta = np.empty(n)
    for k in range(n):
        delta[k] = (-1) ** k * np.linalg.det(np.delete(X, k, axis=1))
    return delta


def _closed_hemisphere_witness(points):
    """LP for u with u.q_i >= 0 and sum_i u.q_i = 1, or None if infeasible."""
    n, d = points.shape
    res = linprog(
        np.zeros(d),
        A_ub=-points,
        b_ub=np.zeros(n),
        A_eq=points.sum(axis=0)[None, :],
        b_eq=[1.0],
        bounds=[(None, None)] * d,
        method="highs",
    )
    if res.status != 0:
        return None
    u = res.x / np.linalg.norm(res.x)
    return u


def interior_margin(c):
    """Largest t such that 0 = sum lambda_i q_i with lambda on the simplex, lambda_i >= t.

    Returns -inf when the origin is not in the convex hull at all.
    """
    pts = c.points
    n, d = pts.shape
    # variables (lambda_1..lambda_n, t); maximise t
    cost = np.zeros(n + 1)
    cost[-1] = -1.0
    A_eq = np.zeros((d + 1, n + 1))
    A_eq[:d, :n] = pts.T
    A_eq[d, :n] = 1.0
    b_eq = np.zeros(d + 1)
    b_eq[d] = 1.0
    A_ub = np.hstack([-np.eye(n), np.ones((n, 1))])
    res = linprog(
        cost,
        A_ub=A_ub,
        b_ub=np.zeros(n),
        A_eq=A_eq,
        b_eq=b_eq,
        bounds=[(0, None)] * n + [(None, 1.0)],
        method="highs",
    )
    if res.status != 0:
        return -np.inf
    return float(res.x[-1])


def in_closed_hemisphere(c, require_interior_body=False):
    """Decide whether all bodies fit in one closed hemisphere.

    Returns ``(inside, u)`` where ``u`` is a unit normal with ``u . q_i >= 0``
    for every body when ``inside`` is true, else ``None``.

    With ``require_interior_body`` the hemisphere must also contain at least
    one body strictly off its boundary. Configurations that do not span
    R^(n+1) always lie on a great subsphere, so they are inside a closed
    hemisphere in the weak sense but not in the strict one unless some other
    hemisphere works.
    """
    pts = c.points
    if not require_interior_body and rank_of_configuration(c) < pts.shape[1]:
        _, _, vt = np.linalg.svd(pts)
        return True, vt[-1]
    if interior_margin(c) >= INTERIOR_TOL:
        return False, None
    u = _closed_hemisphere_witness(pts)
    if u is None:
        if require_interior_body:
            return False, None
        # origin on the hull boundary but no strict witness: use the null direction
        _, _, vt = np.linalg.svd(pts)
        return True, vt[-1]
    return True, u


def tangent_basis(q):
    """Orthonormal basis, as columns, of the tangent space of the sphere at ``q``."""
    full, _ = np.linalg.qr(q[:, None], mode="complete")
    return full[:, 1:]


def random_configuration(n_bodies, dim, rng):
    """I.i.d. uniform points on S^dim."""
    x = rng.standard_normal((n_bodies, dim + 1))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def random_rotation(d, rng):
    """Haar-distributed matrix in SO(d)."""
    z = rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
