"""phi-Selmer groups of y^2 = x^3 + b*x over Q(i).

The curve index b is any fourth-power-free Gaussian integer.  The package
computes the descent group attached to the 2-isogeny with kernel {(0,0), O}
three independent ways: the graph-Laplacian pipeline, a divisor-by-divisor
quartic-symbol check, and a Hensel-certified local point search.
"""

from .gaussian import (
    GaussianInt,
    PrimaryFactorization,
    divrem,
    factor,
    is_fourth_power_free,
    norm,
    parse_gaussian,
    primary_associate,
    reduce_fourth_power_free,
    t_valuation,
)
from .graph import SelmerGraph, build_graph, degree, laplacian_z4
from .f2linalg import F2Matrix, rank, solve_all
from .quartic import QuarticValue, mn_via_coordinates, symbol_exp, symbol_reciprocity
from .residue_units import (
    MNExponents,
    TResidue,
    additive_coeffs,
    enumerate_odd_units,
    mn_exponents,
    reduce,
)
from .selmer import (
    DivisorClass,
    SelmerGroup,
    build_modified_laplacian,
    compute_selmer_group,
    lsc_at_t,
    selmer_size_square_b,
    target_vector,
)
from .oracle import (
    LocalPlace,
    cd_point_search,
    hensel_criterion,
    lsc_away_direct,
    lsc_away_graph,
    selmer_group_bruteforce,
)
from .survey import enumerate_b, enumerate_first, survey

__version__ = "0.1.0"
