import numpy as np
import pytest

from sccsphere import families
from sccsphere.geometry import Configuration, random_configuration


def triangle_grid(size=20):
    """(alpha, beta) on a size x size interior grid of (0, pi)^2, kept where alpha + beta > pi."""
    # select on integer indices: i + j = size + 1 would put two bodies antipodal
    idx = range(1, size + 1)
    return [(np.pi * i / (size + 1), np.pi * j / (size + 1)) for i in idx for j in idx if i + j > size + 1]


def c_samples(count=50):
    return np.arange(1, count + 1) / (count + 1)


def family_instances():
    """Every closed-form instance, as (label, Configuration, MassVector)."""
    out = []
    for k in range(1, 5):
        out.append((f"polygon k={k}", *families.odd_polygon(k)))
    for k1, k2 in [(1, 1), (1, 2), (2, 2)]:
        out.append((f"circles {k1},{k2}", *families.complementary_circles(k1, k2)))
    for n in (3, 4, 5):
        out.append((f"simplex N={n}", *families.regular_simplex(n)))
    for a, b in triangle_grid():
        out.append((f"triangle {a:.3f},{b:.3f}", *families.acute_triangle(a, b)))
    for c in c_samples():
        out.append((f"tetra c={c:.4f}", *families.tetra_family(c)))
        out.append((f"pentatope c={c:.4f}", *families.pentatope_family(c)))
    return out


def dziobek_instances():
    from sccsphere.geometry import is_dziobek

    return [inst for inst in family_instances() if is_dziobek(inst[1])]


def random_dziobek(rng, n):
    return Configuration(n - 2, random_configuration(n, n - 2, rng))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
