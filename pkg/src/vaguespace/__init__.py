"""Vague membership spaces over finite attribute sets.

Degrees live in [0, 1] and compose through a t-norm, its dual t-conorm and
the standard negation.  See the README for a tour.
"""

from .algebra import (
    AlgebraTriple,
    Negation,
    NegationClass,
    Ordering,
    TConorm,
    TNorm,
    classify_negation,
    compare_tconorms,
    compare_tnorms,
    residuum,
    residuum_oracle,
)
from .errors import (
    DomainError,
    ExprSyntaxError,
    InvalidSpaceError,
    SpecFileError,
    UnknownAttributeError,
    UnsupportedCompositionError,
    VagueSpaceError,
)
from .expr import (
    BOT,
    TOP,
    And,
    Bot,
    Elem,
    ElementaryAttributeSet,
    Not,
    Or,
    Top,
    enumerate_exprs,
    format_expr,
    parse_expr,
)
from .partition import (
    FuzzySet,
    PartitionProcess,
    VaguePartition,
    absolutely_incompatible,
    attribute_trajectory,
    check_partition,
    fuzzy_set_of,
    global_conditional,
    incompatible,
    object_trajectory,
    separation_degree,
)
from .product import ProductSpace, evaluate_product, product, vector_join, vector_meet, vector_order
from .space import (
    AxiomReport,
    MembershipSpace,
    SpaceBatch,
    check_axioms,
    check_limit_theorems,
    conditional_degree,
    consistent_degree,
    evaluate,
    quotient_chain,
)
from .variables import (
    VagueVariable,
    VagueVector,
    balanced_value,
    cdf,
    cdf_curve,
    check_cdf_theorem,
    joint_cdf,
    marginal_cdf,
)

__version__ = "0.1.0"
