"""Special central configurations of the curved N-body problem on S^n.

The force function is ``U = sum_{i<j} m_i m_j cot d_ij``; its critical points
on the product of unit spheres are the special central configurations.
"""

from .errors import (
    DegenerateConfigurationError,
    DegenerateMinorError,
    DomainError,
    HemisphereObstructionError,
    InvalidInputError,
    SccError,
    SingularConfigurationError,
    SingularEncounterError,
    WrongCodimensionError,
)
from .geometry import (
    Configuration,
    PairTable,
    build_pair_table,
    delta_vector,
    distance_matrix,
    geodesic_distance,
    in_closed_hemisphere,
    is_dziobek,
    rank_of_configuration,
)
from .potential import (
    MassVector,
    SccResidualReport,
    force_function,
    gradient,
    gradient_term,
    scc_residual,
    theta,
)
from .dziobek import (
    DziobekReport,
    criterion_check,
    equivalence_probe,
    recover_masses,
    regular_simplex_check,
    s_equation_residuals,
)
from .families import FamilySpec, build, mass_ratio, mass_ratio_curve, mass_ratio_peak
from .solver import SccClass, SearchSettings, canonical_gauge, fingerprint, refine, search
from .dynamics import DriftReport, PhaseState, integrate, integrate_many

__version__ = "0.1.0"
