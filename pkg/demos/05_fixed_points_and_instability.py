# Releasing a special central configuration from rest.
#
# At rest the acceleration is F_i / m_i, so a critical configuration should
# stay put forever. Numerically it stays put only as long as the rounding
# errors of the first steps do not grow. Near the end of the tetra family the
# equilibrium is strongly unstable and the drift after t = 10 is visible.
# The linearization explains it: tangent perturbations grow like
# exp(lambda t) with lambda^2 the largest eigenvalue of M^-1 dF.

import numpy as np

from sccsphere import families
from sccsphere.dynamics import PhaseState, integrate
from sccsphere.geometry import tangent_basis
from sccsphere.potential import gradient_jacobian


def growth_rate(conf, m):
    """Largest real exponent of the linearized flow about a critical configuration."""
    Q = conf.points
    n, d = Q.shape
    B = np.zeros((n * d, n * (d - 1)))
    for i, q in enumerate(Q):
        B[i * d:(i + 1) * d, i * (d - 1):(i + 1) * (d - 1)] = tangent_basis(q)
    J = gradient_jacobian(Q, m.masses).reshape(n * d, n * d)
    Minv = np.repeat(1.0 / m.masses, d - 1)
    mu = np.linalg.eigvals(Minv[:, None] * (B.T @ J @ B))
    return float(np.sqrt(max(mu.real.max(), 0.0)))


print("   c      lambda   predicted drift   measured drift (t=10, dt=1e-3)")
for c in (0.3, 0.6, 0.8, 0.9, 0.92, 0.94):
    conf, m = families.tetra_family(c)
    lam = growth_rate(conf, m)
    _, rep = integrate(PhaseState.at_rest(conf), m, 1e-3, 10.0)
    # a 1e-17 seed excitation, grown by cosh(lambda t) / lambda^2
    predicted = 1e-17 * np.cosh(10 * lam) / max(lam, 1e-3) ** 2
    print(f"{c:5.2f}  {lam:7.3f}   {predicted:12.1e}     {rep.max_position_drift:12.1e}")

# With masses that do not match the shape the bodies move at once.
conf, _ = families.regular_simplex(4)
_, rep = integrate(PhaseState.at_rest(conf), [2, 1, 1, 1], 1e-3, 1.0)
print(f"\nregular tetrahedron with masses (2,1,1,1): drift {rep.max_position_drift:.3f} by t=1")

# Fourth order: halving dt cuts the energy error about sixteenfold.
errs = [integrate(PhaseState.at_rest(conf), [0.4, 0.2, 0.2, 0.2], dt, 2.0)[1].energy_drift
        for dt in (0.1, 0.05, 0.025)]
print("energy drift", [f"{e:.2e}" for e in errs], "ratios", [f"{a / b:.2f}" for a, b in zip(errs, errs[1:])])
