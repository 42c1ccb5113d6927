# No special central configuration fits inside a closed hemisphere.
#
# If every body sits in a closed hemisphere with one off its rim, the forces
# cannot all cancel. For codimension-one shapes this shows up as a sign
# change in the signed minors Delta_i, which a linear program detects too.

import numpy as np

from sccsphere import families
from sccsphere.geometry import Configuration, delta_vector, in_closed_hemisphere, random_configuration
from sccsphere.potential import scc_residual

rng = np.random.default_rng(7)

# Four random points on S^2 surround the centre only one time in eight,
# so we add the regular tetrahedron to be sure to see both outcomes.
samples = [Configuration(2, random_configuration(4, 2, rng)) for _ in range(12)]
samples.append(families.regular_simplex(4)[0])
for conf in samples:
    delta = delta_vector(conf)
    inside, u = in_closed_hemisphere(conf)
    mixed = not (np.all(delta > 0) or np.all(delta < 0))
    print(f"Delta signs {np.sign(delta).astype(int)}  mixed={mixed!s:5}  LP says in hemisphere={inside}")
    if inside:
        print("   witness normal", np.round(u, 4), "min u.q =", f"{np.min(conf.points @ u):.3f}")

# Any masses at all leave a residual force on such a configuration.
pts = random_configuration(5, 3, rng)
pts[:, 0] = np.abs(pts[:, 0])
conf = Configuration(3, pts)
for _ in range(3):
    m = rng.uniform(0.1, 1.0, 5)
    print(f"masses {np.round(m, 3)}  max|F_i| = {scc_residual(conf, m).max_norm:.3f}")
