import numpy as np
import pytest

from sccsphere import families
from sccsphere.errors import DomainError, InvalidInputError
from sccsphere.geometry import distance_matrix, is_dziobek
from sccsphere.potential import scc_residual

TETRA_PEAK = (np.sqrt(6) / 6, 16 / (9 * np.sqrt(3)))
PENTA_PEAK = (0.5, 3 * np.sqrt(3) / 4)
TETRA_CSTAR = 0.4956592188330807
PENTA_CSTAR = 0.9134594924455163


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_odd_polygon(k):
    c, m = families.odd_polygon(k)
    assert len(c) == 2 * k + 1 and c.dim == 1
    assert scc_residual(c, m).max_norm < 1e-13


def test_even_polygon_rejected():
    with pytest.raises(DomainError):
        families.odd_polygon(1.5)
    with pytest.raises(DomainError):
        families.odd_polygon(0)


def test_complementary_cross_distances():
    c, m = families.complementary_circles(1, 2, m=2.0, mbar=0.5)
    D = distance_matrix(c)
    assert np.allclose(D[:3, 3:], np.pi / 2)
    assert not is_dziobek(c)
    assert scc_residual(c, m).verdict
    assert m.masses[0] / m.masses[-1] == pytest.approx(4.0)


def test_acute_triangle_masses_follow_inverse_square_minors():
    a, b = 2.2, 1.7
    _, m = families.acute_triangle(a, b)
    w = 1 / np.array([np.sin(b), np.sin(a + b), np.sin(a)]) ** 2
    assert np.allclose(m.masses, w / w.sum(), rtol=1e-14)


def test_acute_triangle_frozen():
    _, m = families.acute_triangle(2.0, 2.0)
    assert np.allclose(m.masses, [0.2903937881401457, 0.4192124237197086, 0.2903937881401457], rtol=1e-12)


@pytest.mark.parametrize("ab", [(1.0, 2.0), (0.5, 0.5), (3.5, 1.0)])
def test_acute_triangle_domain(ab):
    with pytest.raises(DomainError):
        families.acute_triangle(*ab)


@pytest.mark.parametrize("c", [0.0, 1.0, -0.2, 1.3])
def test_family_parameter_domain(c):
    with pytest.raises(DomainError):
        families.tetra_family(c)
    with pytest.raises(DomainError):
        families.pentatope_family(c)


def test_tetra_coordinates():
    c = 0.6
    pts = families.tetra_points(c)
    assert np.allclose(pts[1:, 0], -c)
    r = np.linalg.norm(pts[1:, 1:], axis=1)
    assert np.allclose(c**2 + r**2, 1.0, atol=1e-14)
    D = distance_matrix(families.tetra_family(c)[0])
    assert np.allclose([D[1, 2], D[1, 3], D[2, 3]], D[1, 2])


def test_pentatope_coordinates():
    c = 0.45
    pts = families.pentatope_points(c)
    r = np.sqrt(1 - c * c)
    assert np.allclose(pts[1:, 0], -c)
    assert np.allclose(pts[2:, 1], -r / 3)
    s = np.linalg.norm(pts[2:, 2:], axis=1)
    assert np.allclose(c**2 + r**2 / 9 + s**2, 1.0, atol=1e-14)
    D = distance_matrix(families.pentatope_family(c)[0])
    iu = np.triu_indices(4, 1)
    assert np.allclose(D[1:, 1:][iu], D[1, 2])


def test_regular_simplex():
    for n in (3, 4, 5):
        c, m = families.regular_simplex(n)
        assert c.dim == n - 2
        assert np.allclose(m.masses @ c.points, 0.0, atol=1e-15)
    with pytest.raises(DomainError):
        families.regular_simplex(6)


def test_mass_ratio_special_values():
    assert families.mass_ratio("tetra", 1 / 3) == pytest.approx(1.0, abs=1e-12)
    assert families.mass_ratio("pentatope", 0.25) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(families.mass_ratio("tetra", [0.1, 0.2]), [
        families.mass_ratio("tetra", 0.1),
        families.mass_ratio("tetra", 0.2),
    ])


@pytest.mark.parametrize("kind,peak", [("tetra", TETRA_PEAK), ("pentatope", PENTA_PEAK)])
def test_peak(kind, peak):
    c, f = families.mass_ratio_peak(kind)
    assert c == pytest.approx(peak[0], abs=1e-12)
    assert f == pytest.approx(peak[1], abs=1e-12)


@pytest.mark.parametrize("kind,root", [("tetra", TETRA_CSTAR), ("pentatope", PENTA_CSTAR)])
def test_second_root_frozen(kind, root):
    c = families.second_equal_mass_root(kind)
    assert c == pytest.approx(root, abs=1e-14)
    assert families.mass_ratio(kind, c) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("kind", ["tetra", "pentatope"])
def test_unimodal_on_fine_grid(kind):
    cs = np.linspace(1e-4, 1 - 1e-4, 10_000)
    f = families.mass_ratio(kind, cs)
    peak = np.argmax(f)
    assert np.all(np.diff(f[: peak + 1]) > 0)
    assert np.all(np.diff(f[peak:]) < 0)
    assert cs[peak] == pytest.approx(families.mass_ratio_peak(kind)[0], abs=2e-4)


def test_mass_ratio_curve_grid():
    rows = families.mass_ratio_curve("tetra", 5)
    assert [c for c, _ in rows] == pytest.approx([1 / 6, 2 / 6, 3 / 6, 4 / 6, 5 / 6])
    assert rows[1][1] == pytest.approx(1.0)
    with pytest.raises(InvalidInputError):
        families.mass_ratio_curve("hexagon", 5)


def test_build_dispatch():
    c, m = families.build(families.FamilySpec("tetra_family", {"c": 0.2}))
    assert len(c) == 4
    with pytest.raises(InvalidInputError):
        families.build(families.FamilySpec("nope"))
    with pytest.raises(InvalidInputError):
        families.build(families.FamilySpec("odd_polygon", {"n": 3}))
