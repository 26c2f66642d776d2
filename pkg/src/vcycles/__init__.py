"""Exact computation of discrepancies and degrees of generically finite
rational maps via Vogel's intersection algorithm, Samuel multiplicities of
singular loci, and closed-form bounds on theta-divisor singularities."""

__version__ = "0.1.0"

from .poly import (
    DEFAULT_PRIME,
    GF,
    GREVLEX,
    LEX,
    QQ,
    CoefficientField,
    MonomialOrder,
    Polynomial,
    Ring,
    elimination_order,
)
from .groebner import (
    GroebnerBasis,
    HilbertData,
    affine_dimension,
    colength,
    groebner_of,
    hilbert_data,
    normal_form,
    staircase_count,
    standard_monomials,
)
from .ideals import (
    Ideal,
    Rng,
    dehomogenize_ideal,
    eliminate,
    generic_combinations,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    maximal_ideal_power,
    quotient,
    radical_contains,
    saturate,
)
from .multiplicity import (
    LocalModel,
    LocalModelResult,
    MultiplicityQuery,
    MultiplicityResult,
    colength_at_point,
    hilbert_samuel_multiplicity,
    linear_center_query,
    local_model_multiplicity,
    multiplicity_along_linear,
    order_along,
    point_query,
    samuel_multiplicity,
)
from .vogel import (
    MapDegreeReport,
    VogelProblem,
    VogelStep,
    VogelTrace,
    base_locus,
    discrepancy,
    irrelevant_ideal,
    map_degree,
    vogel_run,
)
from .oracles import (
    BlowupRecord,
    SeriesTruncation,
    blowup_example,
    fiber_degree,
    macaulay_colength,
    segre_discrepancy_linear,
)
from .bounds import (
    BoundReport,
    SingularComponent,
    SingularityProfile,
    clemens_griffiths_degree,
    genus4_degree,
    known_degrees,
    max_isolated_multiplicity,
    max_isolated_points,
    multbound_check,
    profile,
    smooth_in_codim1_check,
    strata_tables,
)
from .problemfile import ProblemFile, load_problem, parse_problem
from . import errors
