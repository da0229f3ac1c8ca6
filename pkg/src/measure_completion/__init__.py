"""Metric completion of measure algebras, countable joins, and the limit-set map.

Exact rational arithmetic throughout; see the README for a tour.
"""

from .completion import (
    DEFAULT_EPS,
    ApproxValue,
    CompletionElement,
    compl,
    dbar,
    embed,
    eq_at,
    from_stages,
    is_disjoint,
    is_subset,
    join,
    meet,
    mubar,
)
from .errors import (
    BadCertificate,
    InvalidScenario,
    MalformedInterval,
    MeasureCompletionError,
    ModelMismatch,
    NotCauchy,
    NotDisjoint,
    ParseError,
)
from .extension import ExactSet, SequenceBacked, ae_equal, limit_set, verify_homomorphism, verify_isometry
from .measure_algebra import (
    INTERVAL_MODEL,
    FiniteModel,
    FiniteModelSet,
    Interval,
    IntervalSet,
    dist,
    measure,
    normalize,
    parse_setexpr,
)
from .sigma_lattice import (
    ElementSequence,
    JoinCertificate,
    check_cha_distributivity,
    countable_join,
    partial_join,
    sum_disjoint_measures,
)

__version__ = "0.1.0"
