"""Normal ordering of boson ladder-operator expressions and the combinatorics around it."""
from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    BosonOrderError,
    DivergenceConditionError,
    EvaluationOverflowError,
    ExpressionSyntaxError,
    InternalInvariantError,
    MixedExcessError,
    NegativeExcessError,
    NoConvergenceError,
    NonIntegerResultError,
    OutOfRangeError,
    PoleProximityError,
    SingularSystemError,
)
from .weyl import (
    ANNIHILATE,
    CREATE,
    AlphaSpec,
    Generator,
    NormalForm,
    Word,
    extract_alpha,
    multiply,
    normal_order_word,
    normal_order_words,
    power,
)
from .stirling import bell_number, bell_polynomial, dobinski_eval, stirling2_explicit, stirling2_recurrence, stirling_table
from .genstirling import (
    gen_bell_number,
    gen_bell_polynomial,
    gen_dobinski_eval,
    gen_stirling_explicit,
    gen_stirling_from_operator,
    gen_stirling_recurrence,
    gen_stirling_table,
)
from .genfun import (
    CoherentLabel,
    EGFQuery,
    coherent_matrix_element_exp,
    coherent_transfer_check,
    egf_bell_closed,
    egf_d0_dobinski,
    egf_truncated,
    normal_form_of_exp_number_operator,
)
from .sheffer import PolySpec, solve_g, solve_T, verify_sheffer
from .pade import PadeApproximant, pade_approximant, pade_eval, resum_gen_egf
from .parser import parse, to_normal_form, to_string, to_words
