"""betaorbit: beta-expansions, Sturmian/Christoffel combinatorics, and
invariant orbit location for the beta-bar transformation."""

from .dynamics import (
    BAR,
    GREEDY,
    bar_expansion_of_one,
    bar_from_greedy,
    bar_of_one_from_greedy,
    expand,
    frequency,
    is_admissible,
    t_map,
)
from .errors import (
    BetaOrbitError,
    DomainError,
    HypothesisViolation,
    InternalInvariantError,
    MultipleRootsError,
    NoRootError,
    PrecisionExhausted,
    UndeterminedAtDepth,
)
from .locator import (
    DiamReport,
    MechanicalDiam,
    NotSmall,
    OrbitResult,
    SkewDiam,
    SturmianDiam,
    UndecidedDiam,
    delta,
    diam_classify,
    freq_of_beta,
    locate_orbit,
    rational_xi_reconstruct,
    xi,
)
from .mechanical import (
    Classification,
    MechSpec,
    Mechanical,
    Skew,
    Unbalanced,
    characteristic_prefix,
    christoffel,
    classify_balanced,
    is_balanced,
    mechanical_prefix,
    mechanical_word,
    skew_epword,
    skew_word,
)
from .numerics import (
    AlgebraicContext,
    AlgebraicValue,
    IntervalValue,
    QuadraticValue,
    RationalValue,
    RealValue,
    compare,
    ensure_beta,
    eval_word,
    isolate_dominant_root,
    parse_beta,
    parse_real,
    pi_value,
    quadratic,
)
from .palindromes import (
    CentralDecomp,
    central_decompose,
    directive_word,
    is_central,
    longest_central_prefix,
    pal,
    palindromic_closure,
)
from .words import DigitStream, EpWord, Ordering, Word, lex_compare, shift

__version__ = "0.1.0"
