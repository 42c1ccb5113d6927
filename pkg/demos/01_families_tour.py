# A walk through the closed-form special central configurations.
#
# Every family comes with masses that make the configuration a critical
# point of U = sum m_i m_j cot d_ij. We build each one, check the gradient,
# and for the codimension-one cases look at the pairwise criterion too.

import numpy as np

from sccsphere import families
from sccsphere.dziobek import criterion_check, recover_masses
from sccsphere.geometry import is_dziobek
from sccsphere.potential import scc_residual

np.set_printoptions(precision=4, suppress=True)

cases = [
    ("pentagon on S^1", families.odd_polygon(2)),
    ("triangle + pentagon, complementary circles", families.complementary_circles(1, 2, m=1.0, mbar=0.3)),
    ("acute triangle alpha=2.0 beta=1.8", families.acute_triangle(2.0, 1.8)),
    ("tetra family c=0.6", families.tetra_family(0.6)),
    ("pentatope family c=0.2", families.pentatope_family(0.2)),
    ("regular tetrahedron", families.regular_simplex(4)),
]

for name, (conf, m) in cases:
    rep = scc_residual(conf, m)
    print(f"{name:45s} N={len(conf):2d} S^{conf.dim}  max|F_i| = {rep.max_norm:.1e}")

# The complementary circles do not span a codimension-one sphere, so only the
# gradient test applies. The rest are Dziobek configurations.
conf, m = families.tetra_family(0.6)
print("\ncodimension one?", is_dziobek(conf))
print(criterion_check(conf, m).table())

# The shape alone fixes the masses: read them back from the minors.
got, res = recover_masses(conf)
print("\nfamily masses   ", m.masses)
print("recovered masses", got.masses, f"(residual {res:.1e})")

# Change one mass and the pairwise ratios stop agreeing.
bad = m.masses.copy()
bad[0] *= 1.2
rep = criterion_check(conf, bad)
print("\nwith m_1 scaled by 1.2: verdict", rep.verdict, f"spread {rep.criterion_residual:.3f}")
