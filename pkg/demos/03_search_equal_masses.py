# Looking for equal-mass configurations without knowing the answer.
#
# Random starts are refined with a damped Newton iteration on F_i = 0 and the
# results merged by their sorted mutual distances. For four equal masses on
# S^2 the search turns up the regular tetrahedron and a second, flattened
# shape; we identify the latter with the tetra family at c*.

import numpy as np

from sccsphere import families
from sccsphere.potential import MassVector, scc_residual
from sccsphere.solver import SearchSettings, fingerprint, fingerprint_distance, search

m = MassVector.equal(4)
classes = search(m, SearchSettings(n=2, trials=300, seed=0))

known = {
    "regular tetrahedron": families.regular_simplex(4)[0],
    "tetra family at c*": families.tetra_family(families.second_equal_mass_root("tetra"))[0],
}

for i, cls in enumerate(classes):
    dists = np.unique(np.round(cls.fingerprint[:, 2], 5))
    match = [name for name, conf in known.items()
             if fingerprint_distance(cls.raw_fingerprint, fingerprint(conf, m)) < 1e-6]
    print(f"class {i}: {cls.count:3d} hits, distances {dists}, residual {cls.residual:.1e} -> {match}")
    # the representative is gauge fixed: body 1 on the first axis, body 2 in the first plane
    print("   representative\n", np.round(cls.representative.points, 6))
    assert scc_residual(cls.representative, m).verdict

# Two bodies never balance: every start drifts into a collision or stalls.
print("\nN=2 classes:", len(search([1, 1], SearchSettings(n=2, trials=50))))
