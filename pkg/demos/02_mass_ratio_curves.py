# How heavy must the apex body be?
#
# In the tetra family one body sits at the pole of S^2 and three equal masses
# ride a circle x = -c. The pentatope family does the same one dimension up.
# The apex-to-ring mass ratio f(c) rises, peaks and falls, so most admissible
# ratios are hit twice. Ratio 1 is hit at the regular simplex and once more.

import numpy as np

from sccsphere import families

for kind in ("tetra", "pentatope"):
    c_peak, f_peak = families.mass_ratio_peak(kind)
    c_star = families.second_equal_mass_root(kind)
    print(f"{kind}: peak f({c_peak:.6f}) = {f_peak:.12f}")
    print(f"{kind}: equal masses at c = {1/3 if kind == 'tetra' else 0.25:.6f} and c* = {c_star:.10f}")
    print(f"{kind}: f near c = 1 -> {families.mass_ratio(kind, 1 - 1e-9):.9f}")

    # a coarse text plot of the curve
    for c, f in families.mass_ratio_curve(kind, 19):
        print(f"   c={c:.2f}  {'#' * int(round(40 * f))} {f:.3f}")
    print()

# Both equal-mass members are genuine critical points but different shapes.
for c in (1 / 3, families.second_equal_mass_root("tetra")):
    conf, m = families.tetra_family(c)
    d = np.unique(np.round(np.arccos(np.clip(conf.points @ conf.points.T, -1, 1)), 6))
    print(f"c={c:.4f} masses {np.round(m.masses, 6)} distinct distances {d[1:]}")
