"""Explicit special central configurations with closed-form masses.

Every constructor returns ``(Configuration, MassVector)`` with masses
normalized to sum 1. Placement follows the standard embeddings: circle
configurations on the xy great circle, two-sphere ones on the xyz great
sphere, and the second polygon of a complementary pair on the zw circle.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, InvalidInputError
from .geometry import Configuration
from .potential import MassVector

KINDS = (
    "odd_polygon",
    "complementary_circles",
    "acute_triangle",
    "tetra_family",
    "pentatope_family",
    "regular_simplex",
)

# f(c) = A c / (1 + B c^2)^(3/2) for the two one-parameter families
_RATIO_COEFFS = {
    "tetra": (8.0 * np.sqrt(3.0) / 3.0, 3.0),
    "pentatope": (27.0 / (4.0 * np.sqrt(2.0)), 2.0),
}


def _polygon(n, phase=0.0):
    ang = 2.0 * np.pi * np.arange(1, n + 1) / n + phase
    return np.column_stack([np.cos(ang), np.sin(ang)])


def odd_polygon(k):
    """Regular (2k+1)-gon of equal masses on S^1."""
    if int(k) != k or k < 1:
        raise DomainError(f"odd polygon needs integer k >= 1, got {k}")
    n = 2 * int(k) + 1
    return Configuration(1, _polygon(n)), MassVector.equal(n)


def complementary_circles(k1, k2, m=1.0, mbar=1.0):
    """Regular (2k1+1)-gon on the xy circle and (2k2+1)-gon on the zw circle of S^3."""
    for name, k in (("k1", k1), ("k2", k2)):
        if int(k) != k or k < 1:
            raise DomainError(f"complementary circles need integer {name} >= 1, got {k}")
    if m <= 0 or mbar <= 0:
        raise DomainError("complementary circle masses must be positive")
    n1, n2 = 2 * int(k1) + 1, 2 * int(k2) + 1
    pts = np.zeros((n1 + n2, 4))
    pts[:n1, :2] = _polygon(n1)
    pts[n1:, 2:] = _polygon(n2)
    masses = np.r_[np.full(n1, float(m)), np.full(n2, float(mbar))]
    return Configuration(3, pts), MassVector(masses).normalized()


def acute_triangle_masses(alpha, beta):
    """Masses (m1, m2, m3) normalized to sum 1 making the triangle critical.

    They satisfy m2/sin^2(a) = m3/sin^2(a+b), m1/sin^2(a) = m3/sin^2(b) and
    m2/sin^2(b) = m1/sin^2(a+b).
    """
    sa, sb, sab = np.sin(alpha) ** 2, np.sin(beta) ** 2, np.sin(alpha + beta) ** 2
    m3 = 1.0
    m1 = m3 * sa / sb
    m2 = m3 * sa / sab
    masses = np.array([m1, m2, m3])
    return masses / masses.sum()


def acute_triangle(alpha, beta):
    """Bodies at angles 0, alpha, alpha+beta on S^1 with their critical masses."""
    if not (0 < alpha < np.pi and 0 < beta < np.pi and np.pi < alpha + beta < 2 * np.pi):
        raise DomainError(
            "acute triangle needs 0 < alpha < pi, 0 < beta < pi, pi < alpha + beta < 2 pi; "
            f"got alpha={alpha}, beta={beta}"
        )
    ang = np.array([0.0, alpha, alpha + beta])
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    return Configuration(1, pts), MassVector(acute_triangle_masses(alpha, beta))


def _check_c(c):
    if not 0 < c < 1:
        raise DomainError(f"family parameter c must lie in (0, 1), got {c}")


def tetra_points(c):
    _check_c(c)
    r = np.sqrt(1.0 - c * c)
    h = np.sqrt(3.0) / 2.0
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [-c, r, 0.0],
            [-c, -0.5 * r, h * r],
            [-c, -0.5 * r, -h * r],
        ]
    )


def tetra_family(c):
    """m_1 at (1,0,0), three equal masses on the circle x = -c of S^2."""
    pts = tetra_points(c)
    masses = np.array([mass_ratio("tetra", c), 1.0, 1.0, 1.0])
    return Configuration(2, pts), MassVector(masses).normalized()


def pentatope_points(c):
    _check_c(c)
    r = np.sqrt(1.0 - c * c)
    # regular tetrahedron on the 2-sphere x = -c: s^2 = r^2 - r^2/9
    s = np.sqrt(8.0 / 9.0) * r
    h = np.sqrt(3.0) / 2.0
    return np.array(
        [
            [1.0, 0.0, 0.0, 0.0],
            [-c, r, 0.0, 0.0],
            [-c, -r / 3.0, s, 0.0],
            [-c, -r / 3.0, -0.5 * s, h * s],
            [-c, -r / 3.0, -0.5 * s, -h * s],
        ]
    )


def pentatope_family(c):
    """m_1 at (1,0,0,0), four equal masses on a regular tetrahedron at x = -c in S^3."""
    pts = pentatope_points(c)
    masses = np.array([mass_ratio("pentatope", c), 1.0, 1.0, 1.0, 1.0])
    return Configuration(3, pts), MassVector(masses).normalized()


def simplex_points(n_bodies):
    """Vertices of a regular (N-1)-simplex on S^(N-2)."""
    centred = np.eye(n_bodies) - 1.0 / n_bodies
    # orthonormal basis of the sum-zero hyperplane, oriented by Gram-Schmidt on the vertices
    q, r = np.linalg.qr(centred[:, : n_bodies - 1])
    q = q * np.sign(np.diag(r))
    pts = centred @ q
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def regular_simplex(n_bodies):
    if n_bodies not in (3, 4, 5):
        raise DomainError(f"regular simplex is provided for N in {{3, 4, 5}}, got {n_bodies}")
    return Configuration(n_bodies - 2, simplex_points(n_bodies)), MassVector.equal(n_bodies)


# --- mass ratio curves -------------------------------------------------------

def _kind(kind):
    key = {"tetra_family": "tetra", "pentatope_family": "pentatope"}.get(kind, kind)
    if key not in _RATIO_COEFFS:
        raise InvalidInputError(f"unknown mass-ratio curve {kind!r}; use 'tetra' or 'pentatope'")
    return key


def mass_ratio(kind, c):
    """Ratio m_1 / m_N making the family member at ``c`` critical."""
    a, b = _RATIO_COEFFS[_kind(kind)]
    c = np.asarray(c, dtype=float)
    out = a * c / (1.0 + b * c * c) ** 1.5
    return float(out) if out.ndim == 0 else out


def mass_ratio_derivative(kind, c):
    a, b = _RATIO_COEFFS[_kind(kind)]
    c = np.asarray(c, dtype=float)
    out = a * (1.0 - 2.0 * b * c * c) / (1.0 + b * c * c) ** 2.5
    return float(out) if out.ndim == 0 else out


def mass_ratio_curve(kind, samples):
    """``samples`` pairs (c, f(c)) on a uniform grid strictly inside (0, 1)."""
    if samples < 2:
        raise InvalidInputError("need at least two samples")
    cs = np.arange(1, samples + 1) / (samples + 1)
    return [(float(c), float(mass_ratio(kind, c))) for c in cs]


def mass_ratio_peak(kind):
    """Location and value of the maximum of f on (0, 1), from f'(c) = 0."""
    key = _kind(kind)
    c_max = brentq(lambda c: mass_ratio_derivative(key, c), 1e-6, 1 - 1e-6, xtol=1e-16, rtol=1e-15)
    return c_max, mass_ratio(key, c_max)


def second_equal_mass_root(kind):
    """The c beyond the peak where f(c) = 1, giving a second equal-mass configuration."""
    key = _kind(kind)
    c_max, _ = mass_ratio_peak(key)
    return brentq(lambda c: mass_ratio(key, c) - 1.0, c_max, 1.0, xtol=1e-16, rtol=1e-15)


# --- dispatch ----------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its parameters, e.g. ``FamilySpec("tetra_family", {"c": 0.3})``."""

    kind: str
    params: dict = field(default_factory=dict)


_BUILDERS = {
    "odd_polygon": odd_polygon,
    "complementary_circles": complementary_circles,
    "acute_triangle": acute_triangle,
    "tetra_family": tetra_family,
    "pentatope_family": pentatope_family,
    "regular_simplex": regular_simplex,
}


def build(spec):
    try:
        builder = _BUILDERS[spec.kind]
    except KeyError:
        raise InvalidInputError(f"unknown family {spec.kind!r}; choose from {', '.join(KINDS)}") from None
    try:
        return builder(**spec.params)
    except TypeError as exc:
        raise InvalidInputError(f"bad parameters for {spec.kind}: {exc}") from None
