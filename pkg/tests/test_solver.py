import numpy as np
import pytest

from sccsphere import families
from sccsphere.errors import InvalidInputError
from sccsphere.dziobek import criterion_check
from sccsphere.geometry import Configuration, in_closed_hemisphere, is_dziobek, random_rotation
from sccsphere.potential import MassVector, scc_residual
from sccsphere.solver import (
    SearchSettings,
    canonical_gauge,
    fingerprint,
    fingerprint_distance,
    refine,
    search,
)


def test_settings_validation():
    with pytest.raises(InvalidInputError):
        SearchSettings(n=0)
    with pytest.raises(InvalidInputError):
        SearchSettings(n=2, trials=0)
    with pytest.raises(InvalidInputError):
        SearchSettings(n=2, tol=-1.0)


def test_refine_from_perturbed_tetra(rng):
    c, m = families.tetra_family(0.3)
    noisy = Configuration.from_points(c.points + 0.02 * rng.standard_normal(c.points.shape))
    out = refine(noisy, m, tol=1e-12)
    assert out.converged
    assert scc_residual(out.configuration, m).max_norm < 1e-11
    # the refined shape is the family member, up to isometry
    assert fingerprint_distance(fingerprint(out.configuration, m), fingerprint(c, m)) < 1e-8


def test_refine_mass_mismatch():
    c, _ = families.odd_polygon(1)
    with pytest.raises(InvalidInputError):
        refine(c, [1, 1])


def test_refine_reports_failure_statuses():
    # two bodies cannot be critical: the iteration either stalls or is driven into collision
    c = Configuration.from_points([[1, 0, 0], [0.3, 1, 0]])
    out = refine(c, [1, 1], max_iters=30)
    assert not out.converged
    assert out.status in ("abandoned", "max_iters")
    assert out.configuration is None


def test_canonical_gauge_shape():
    c, _ = families.pentatope_family(0.4)
    g = canonical_gauge(c)
    assert np.allclose(g.points[0], [1, 0, 0, 0])
    assert g.points[1, 2:] == pytest.approx([0, 0])
    assert g.points[1, 1] >= 0
    G0 = c.points @ c.points.T
    assert np.allclose(g.points @ g.points.T, G0, atol=1e-14)


def test_canonical_gauge_identifies_mirror_images(rng):
    c = Configuration.from_points(rng.standard_normal((5, 3)))
    mirror = Configuration(2, c.points * np.array([1, 1, -1]))
    assert np.allclose(canonical_gauge(c).points, canonical_gauge(mirror).points, atol=1e-12)


def test_canonical_gauge_rank_deficient(rng):
    # points on a great circle of S^3 still get a well-defined representative
    ang = np.array([0.1, 1.0, 2.5])
    pts = np.zeros((3, 4))
    pts[:, 0], pts[:, 1] = np.cos(ang), np.sin(ang)
    c = Configuration(3, pts)
    R = random_rotation(4, rng)
    assert np.allclose(canonical_gauge(c.rotated(R)).points, canonical_gauge(c).points, atol=1e-12)


def test_fingerprint_labels_masses():
    c, _ = families.regular_simplex(4)
    a = fingerprint(c, [2, 1, 1, 1])
    b = fingerprint(c, [1, 1, 1, 2])
    assert a.shape == (6, 3)
    assert fingerprint_distance(a, b) < 1e-15
    assert fingerprint_distance(a, fingerprint(c, [1, 1, 1, 1])) > 0.05
    assert fingerprint_distance(a, np.zeros((3, 3))) == np.inf


def test_search_three_bodies_on_circle():
    classes = search(MassVector.equal(3), SearchSettings(n=1, trials=40, seed=3))
    assert len(classes) == 1
    (cls,) = classes
    assert np.allclose(cls.fingerprint[:, 2], 2 * np.pi / 3, atol=1e-6)
    assert cls.to_dict()["count"] == cls.count


def test_search_is_deterministic():
    s = SearchSettings(n=2, trials=30, seed=11)
    a = search([1, 1, 1, 1], s)
    b = search([1, 1, 1, 1], s)
    assert [x.to_dict() for x in a] == [x.to_dict() for x in b]


def test_search_outputs_satisfy_invariants():
    m = MassVector([1, 2, 3, 4])
    classes = search(m, SearchSettings(n=2, trials=60, seed=5))
    for cls in classes:
        assert scc_residual(cls.representative, m, tol=1e-8).verdict
        assert in_closed_hemisphere(cls.representative, require_interior_body=True)[0] is False


def test_refine_examples(rng):
    tet, m = families.regular_simplex(4)
    V = np.stack([1e-3 * (np.eye(3) - np.outer(q, q)) @ rng.standard_normal(3) for q in tet.points])
    out = refine(Configuration.from_points(tet.points + V), m)
    assert out.converged and out.residual < 1e-10
    assert fingerprint_distance(fingerprint(out.configuration, m), fingerprint(tet, m)) < 1e-6

    tri, mt = families.acute_triangle(2.1, 2.3)
    out = refine(tri, mt)
    assert out.converged and out.residual < 1e-10


def test_canonical_gauge_idempotent(rng):
    c = Configuration.from_points(rng.standard_normal((6, 4)))
    g = canonical_gauge(c)
    assert np.allclose(canonical_gauge(g).points, g.points, atol=1e-14)


def test_search_soundness_and_stability():
    m = MassVector.equal(5)
    for cls in search(m, SearchSettings(n=3, trials=80, seed=2)):
        rep = cls.representative
        assert scc_residual(rep, m, tol=1e-10).verdict
        if is_dziobek(rep):
            assert criterion_check(rep, m, tol=1e-8).verdict
        again = refine(rep, m)
        assert again.converged
        assert fingerprint_distance(fingerprint(again.configuration, m), cls.raw_fingerprint) < 1e-10
