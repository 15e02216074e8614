"""Graph-curve invariants of rank-2 bundles on classical Hopf surfaces.

The graph of a bundle with c2 = n is a bidegree (n, 1) curve in P^1 x P^1;
this package computes its theta profiles and weights, ramification,
spectral-curve genus and singularities, and builds witness curves for the
weight strata by exact interpolation.
"""

from .binform import (
    BinaryForm,
    ProjPoint,
    SquarefreeDecomposition,
    bf_eval,
    bf_gcd,
    bf_resultant,
    root_multiplicity_at,
    squarefree_decomposition,
)
from .graph import (
    DEFAULT_THETAS,
    Classification,
    GraphCurve,
    NotSmoothError,
    Profile,
    ThetaConfig,
    classify,
    fiber_form,
    is_smooth,
    pencil_discriminant,
    profile,
    ramification_divisor,
    ramification_report,
    weight,
    weight_total,
)
from .linsys import (
    FatPoint,
    FatPointScheme,
    condition_matrix,
    construct_max_weight,
    construct_profile,
    construct_tangency_stratum,
    general_member,
    h0,
    kernel_basis,
)
from .spectral import SpectralData, genus_parity_check, is_spectral_smooth, spectral_invariants
from .betti import betti_regular_locus

__version__ = "0.1.0"
