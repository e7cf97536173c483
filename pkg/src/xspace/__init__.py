"""Configuration-space Feynman amplitudes: graph combinatorics, wonderful
compactification classes, Gegenbauer x-space expansions and restricted
multiple polylogarithms, with independent numerical oracles.
"""

from .amplitudes import (
    AmplitudeResult,
    StarIntegrand,
    banana3_amplitude,
    banana3_domain_sums,
    banana3_integrand,
    glue_two_stars_l0,
    polygon_amplitude_integrand,
    polygon_two_path_value,
    star_integrand,
)
from .angular import (
    CouplingCoefficient,
    GauntIndex,
    banana3_angular,
    coupling_K_l0_d4,
    gaunt_l0,
    polygon_angular,
)
from .exact import ZetaCombination
from .graphs import (
    Graph,
    GraphError,
    InducedSubgraph,
    Orientation,
    Sector,
    acyclic_orientations,
    chromatic_polynomial,
    graph_laplacian,
    induced_subgraphs,
    is_biconnected,
    quotient,
    sector,
)
from .intpoly import IntPoly, tate
from .oracles import (
    McConfig,
    brute_restricted_sum,
    config_sector_mc,
    gauss_legendre_weighted,
    ordered_simplex_quad,
    sphere_mc,
)
from .polylog import (
    PolylogSpec,
    eml_decompose_T,
    eml_inner_sum,
    eval_mt,
    eval_polylog,
    eval_restricted_polylog,
    f_derivative,
    freitas_reduce,
)
from .series import ConvergenceError, SeriesValue
from .special import (
    BernoulliTable,
    Dimension,
    dim_harmonics,
    gegenbauer,
    gegenbauer_norm,
    propagator_truncation,
    sphere_volume,
    zeta,
    zonal_coeff,
)
from .wonderful import (
    BuildingSet,
    GNest,
    NestWeight,
    TatePolynomial,
    building_set,
    convergence_report,
    diagonal_dimension,
    enumerate_gnests,
    motive_class,
    nest_weights,
    singularity_order,
)

__version__ = "0.1.0"
