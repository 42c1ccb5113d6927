import numpy as np
import pytest

from conftest import dziobek_instances, random_dziobek
from sccsphere import families
from sccsphere.dziobek import (
    criterion_check,
    equivalence_probe,
    recover_masses,
    regular_simplex_check,
    s_equation_pairs,
    s_equation_residuals,
)
from sccsphere.errors import (
    DegenerateMinorError,
    HemisphereObstructionError,
    SccError,
    WrongCodimensionError,
)
from sccsphere.geometry import Configuration
from sccsphere.potential import scc_residual


@pytest.mark.parametrize("n", range(3, 9))
def test_equation_counts(n):
    assert len(s_equation_pairs(n)) == n * (n - 3) // 2


def test_s_equations_n4_indices():
    # 0-based: S_{1,0} S_{3,2} = S_{3,0} S_{1,2} and S_{0,2} S_{1,3} = S_{1,2} S_{0,3}
    assert s_equation_pairs(4) == [((1, 0), (3, 2), (3, 0), (1, 2)), ((0, 2), (1, 3), (1, 2), (0, 3))]


def test_report_on_tetra_member():
    c, m = families.tetra_family(0.4)
    rep = criterion_check(c, m)
    assert rep.verdict
    assert len(rep.s_residuals) == 2 and len(rep.m_residuals) == 3
    assert len(rep.k_estimates) == 6
    assert rep.criterion_residual < 1e-13
    assert "SCC" in rep.table()
    assert set(rep.to_dict()) >= {"delta", "k", "verdict", "s_residuals", "m_residuals"}


def test_criterion_rejects_mismatched_masses():
    c, _ = families.regular_simplex(4)
    rep = criterion_check(c, [2, 1, 1, 1])
    assert not rep.verdict
    assert max(rep.m_residuals) > 0.1
    assert max(rep.s_residuals) < 1e-14


def test_criterion_scale_invariance():
    c, m = families.pentatope_family(0.7)
    a = criterion_check(c, m.masses)
    b = criterion_check(c, 3 * m.masses)
    assert a.verdict == b.verdict
    assert np.allclose(b.k_estimates, 9 * np.array(a.k_estimates))


def test_criterion_needs_dziobek():
    c, m = families.complementary_circles(1, 1)
    with pytest.raises(WrongCodimensionError):
        criterion_check(c, m)


def test_vanishing_minor():
    # body 3 on the great circle through bodies 1 and 2 makes Delta_3 vanish... via a symmetric point
    pts = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 0]], float)
    c = Configuration.from_points(pts)
    with pytest.raises(DegenerateMinorError):
        criterion_check(c, [1, 1, 1, 1])


def test_recover_masses_on_families():
    for label, c, m in dziobek_instances()[::7]:
        got, res = recover_masses(c)
        assert np.allclose(got.masses, m.masses, rtol=1e-9), label
        assert res < 1e-12
        best, _ = recover_masses(c, anchor="best")
        assert np.allclose(best.masses, m.masses, rtol=1e-9), label


def test_recover_masses_mixed_signs():
    c = Configuration.from_points([[1, 0.1, 0.2], [0.2, 1, 0.1], [0.1, 0.3, 1], [1, 1, 1.5]])
    with pytest.raises(HemisphereObstructionError):
        recover_masses(c)


def test_criterion_implies_residual():
    for label, c, m in dziobek_instances():
        if criterion_check(c, m).verdict:
            assert scc_residual(c, m, tol=1e-8).verdict, label


def test_equivalence_probe_random(rng):
    for _ in range(50):
        c = random_dziobek(rng, 5)
        try:
            assert equivalence_probe(c, rng.uniform(0.5, 2, 5))
        except DegenerateMinorError:
            pass


def test_regular_simplex_check():
    c, m = families.regular_simplex(5)
    assert regular_simplex_check(c, m)
    c, m = families.tetra_family(0.2)
    assert regular_simplex_check(c, m) is False
    with pytest.raises(SccError):
        regular_simplex_check(c, [1, 1, 1, 1.5])


def test_s_equation_residuals_vanish_on_family():
    c, _ = families.pentatope_family(0.6)
    assert max(s_equation_residuals(c)) < 1e-14
