"""Criterion for special central configurations spanning a codimension-one sphere.

For N bodies spanning R^(N-1) with signed minors Delta, the configuration is
critical for masses m iff ``m_i m_j S_ij = k Delta_i Delta_j`` for all pairs
and one constant k != 0. The pairwise system splits into mass-free shape
equations among the S_ij (the "S-equations") and N-1 equations fixing the
masses from the shape (the "M-equations").
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMinorError, HemisphereObstructionError, SccError, WrongCodimensionError
from .geometry import build_pair_table, delta_vector, is_dziobek
from .potential import MassVector, _as_masses, _check_sizes, gradient_array

DEFAULT_TOL = 1e-8
MINOR_RTOL = 1e-10


def _require_dziobek(c):
    n = len(c)
    if n < 3 or not is_dziobek(c):
        raise WrongCodimensionError(
            f"{n} bodies on S^{c.dim} do not span R^{n - 1}; the codimension-one criterion does not apply"
        )


def _checked_delta(c):
    delta = delta_vector(c)
    scale = np.max(np.abs(delta))
    small = np.flatnonzero(np.abs(delta) <= MINOR_RTOL * scale)
    if len(small):
        raise DegenerateMinorError(f"signed minor Delta_{small[0]} vanishes")
    return delta


def s_equation_pairs(n):
    """Index quadruples (a, b, c, d), 0-based, for the residuals S_a S_b - S_c S_d.

    The first group is S_{k-1,k-2} S_{k+1,k} = S_{k+1,k-2} S_{k-1,k} for
    k = 3..N-1; the second is S_{k-1,k+j} S_{k,k+j+1} = S_{k,k+j} S_{k-1,k+j+1}
    for k = 2..N-2 and j = 1..N-k-1 (1-based indices). Together there are
    N(N-3)/2 of them.
    """
    out = []
    for k in range(3, n):
        out.append(((k - 1, k - 2), (k + 1, k), (k + 1, k - 2), (k - 1, k)))
    for k in range(2, n - 1):
        for j in range(1, n - k):
            out.append(((k - 1, k + j), (k, k + j + 1), (k, k + j), (k - 1, k + j + 1)))
    # shift to 0-based
    return [tuple((a - 1, b - 1) for a, b in quad) for quad in out]


def _s_residuals(S, n):
    res = []
    for p1, p2, p3, p4 in s_equation_pairs(n):
        lhs = S[p1] * S[p2]
        rhs = S[p3] * S[p4]
        res.append(float(abs(lhs - rhs) / max(abs(lhs), abs(rhs))))
    return res


def s_equation_residuals(c):
    """Relative residuals of the N(N-3)/2 shape equations, in their standard order."""
    _require_dziobek(c)
    return _s_residuals(build_pair_table(c).s, len(c))


def m_equation_predictions(S, delta):
    """Masses, relative to m_N = 1, implied by the M-equations."""
    n = len(delta)
    pred = np.empty(n)
    pred[-1] = 1.0
    for i in range(1, n - 1):
        pred[i] = S[0, n - 1] * delta[i] / (S[0, i] * delta[n - 1])
    pred[0] = S[1, n - 1] * delta[0] / (S[0, 1] * delta[n - 1])
    return pred


def _m_residuals(masses, pred):
    # m_i = pred_i m_N for i = 1..N-1 (0-based 0..N-2)
    target = pred[:-1] * masses[-1]
    actual = masses[:-1]
    return (np.abs(actual - target) / np.maximum(np.abs(actual), np.abs(target))).tolist()


@dataclass
class DziobekReport:
    delta: list
    k_estimates: list
    k: float
    criterion_residual: float
    s_residuals: list
    m_residuals: list
    verdict: bool
    tol: float

    def to_dict(self):
        return {
            "delta": self.delta,
            "k_estimates": self.k_estimates,
            "k": self.k,
            "criterion_residual": self.criterion_residual,
            "s_residuals": self.s_residuals,
            "m_residuals": self.m_residuals,
            "verdict": self.verdict,
            "tol": self.tol,
        }

    def table(self):
        lines = [
            f"verdict             {'SCC' if self.verdict else 'not an SCC'}",
            f"k (mean ratio)      {self.k:.12g}",
            f"criterion spread    {self.criterion_residual:.3e}  (tol {self.tol:g})",
            "Delta               " + "  ".join(f"{d:.6g}" for d in self.delta),
        ]
        for i, r in enumerate(self.s_residuals):
            lines.append(f"S-equation {i + 1:<8d} {r:.3e}")
        for i, r in enumerate(self.m_residuals):
            lines.append(f"M-equation {i + 1:<8d} {r:.3e}")
        return "\n".join(lines)


def criterion_check(c, m, tol=DEFAULT_TOL):
    """Evaluate ``m_i m_j S_ij / (Delta_i Delta_j)`` over all pairs.

    The verdict is true when every ratio agrees with their mean to relative
    spread ``tol`` and all products ``Delta_i Delta_j`` are positive.
    """
    m = _as_masses(m)
    _check_sizes(c, m)
    _require_dziobek(c)
    delta = _checked_delta(c)
    S = build_pair_table(c).s
    n = len(c)
    iu = np.triu_indices(n, 1)
    mm = np.outer(m.masses, m.masses)
    dd = np.outer(delta, delta)
    ratios = mm[iu] * S[iu] / dd[iu]
    k = float(np.mean(ratios))
    spread = float((ratios.max() - ratios.min()) / abs(k)) if k != 0 else np.inf
    same_sign = bool(np.all(dd[iu] > 0))
    pred = m_equation_predictions(S, delta)
    return DziobekReport(
        delta=delta.tolist(),
        k_estimates=ratios.tolist(),
        k=k,
        criterion_residual=spread,
        s_residuals=_s_residuals(S, n),
        m_residuals=_m_residuals(m.masses, pred),
        verdict=bool(spread <= tol and same_sign and k != 0),
        tol=tol,
    )


def _anchor_order(delta):
    """Permutation putting the pair with the largest |Delta_i Delta_j| at positions 1 and N."""
    n = len(delta)
    dd = np.abs(np.outer(delta, delta))
    np.fill_diagonal(dd, -1.0)
    i, j = np.unravel_index(np.argmax(dd), dd.shape)
    rest = [k for k in range(n) if k not in (i, j)]
    return [int(i)] + rest + [int(j)]


def recover_masses(c, anchor="standard"):
    """Masses determined by the shape through the M-equations.

    Parameters
    ----------
    c : Configuration
        A Dziobek configuration.
    anchor : {"standard", "best"}
        ``"standard"`` uses bodies 1 and N as anchors. ``"best"`` first
        reorders the bodies so that the anchors are the pair with the largest
        ``|Delta_i Delta_j|``, which is better conditioned.

    Returns
    -------
    masses : MassVector
        Normalized to sum 1.
    residual : float
        Max gradient norm of ``c`` under the recovered masses. It is only
        small when the shape equations also hold.
    """
    _require_dziobek(c)
    delta = _checked_delta(c)
    if not (np.all(delta > 0) or np.all(delta < 0)):
        raise HemisphereObstructionError(
            "signed minors have mixed signs: the bodies lie in a closed hemisphere and admit no positive masses"
        )
    if anchor == "standard":
        order = list(range(len(c)))
    elif anchor == "best":
        order = _anchor_order(delta)
    else:
        raise ValueError(f"unknown anchor mode {anchor!r}")
    S = build_pair_table(c).s
    sub = np.ix_(order, order)
    pred = m_equation_predictions(S[sub], delta[order])
    masses = np.empty(len(c))
    masses[order] = pred
    mv = MassVector(masses / masses.sum())
    residual = float(np.linalg.norm(gradient_array(c.points, mv.masses), axis=1).max())
    return mv, residual


def equivalence_probe(c, m, tol=DEFAULT_TOL):
    """Compare the pairwise criterion with the S-equations plus M-equations.

    Returns True when both routes reach the same verdict at ``tol``.
    """
    report = criterion_check(c, m, tol)
    split = max(report.s_residuals, default=0.0) <= tol and max(report.m_residuals) <= tol
    return report.verdict == split


def regular_simplex_check(c, m, tol=1e-10):
    """True iff the mass-weighted centre sum m_i q_i vanishes.

    For a codimension-one SCC this forces equal masses at the vertices of a
    regular simplex; a violation of that consequence raises ``SccError``.
    """
    m = _as_masses(m)
    _check_sizes(c, m)
    if not criterion_check(c, m).verdict:
        raise SccError("regular simplex check needs a special central configuration")
    mn = m.normalized().masses
    centre = mn @ c.points
    if np.linalg.norm(centre) > tol:
        return False
    S = build_pair_table(c).s
    iu = np.triu_indices(len(c), 1)
    s_vals = S[iu]
    if np.ptp(s_vals) > tol * np.max(s_vals) or np.ptp(mn) > tol:
        raise SccError("zero mass-weighted centre without a regular simplex of equal masses")
    return True
