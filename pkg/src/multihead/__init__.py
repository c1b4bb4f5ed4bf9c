"""Multi-head finite automata, their variants, PCFA systems and related constructions."""

from .core import (
    LAMBDA,
    LEFT_END,
    ONE_WAY,
    RIGHT_END,
    TWO_WAY,
    Configuration,
    MultiHeadAutomaton,
    RunTrace,
    Termination,
    accepts,
    count_reversals,
    enumerate_words,
    equivalent_up_to,
    is_deterministic,
    run_deterministic,
    step,
    validate,
)
from .errors import (
    ConformanceError,
    MultiheadError,
    ObliviousnessViolation,
    ParseError,
    UsageError,
    ValidationError,
)
from .formats import parse_machine_file, parse_semilinear, render_machine, render_semilinear
from .pcfa import (
    PcfaComponent,
    PcfaConfiguration,
    PcfaSystem,
    builtin_fixture,
    compile_pcfa_to_mhfa,
    is_deterministic_system,
    pcfa_accepts,
    pcfa_step,
    validate_system,
)
from .semilinear import (
    LinearSet,
    SemilinearSet,
    compare_semilinear,
    is_bounded_up_to,
    linear_member,
    parikh,
    parikh_image,
    semilinear_member,
)
from .variants import (
    check_data_independent,
    determinize_oblivious,
    sensing_step,
    validate_partially_blind,
)

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "ConformanceError",
    "LAMBDA",
    "LEFT_END",
    "LinearSet",
    "MultiHeadAutomaton",
    "MultiheadError",
    "ONE_WAY",
    "ObliviousnessViolation",
    "ParseError",
    "PcfaComponent",
    "PcfaConfiguration",
    "PcfaSystem",
    "RIGHT_END",
    "RunTrace",
    "SemilinearSet",
    "TWO_WAY",
    "Termination",
    "UsageError",
    "ValidationError",
    "accepts",
    "builtin_fixture",
    "check_data_independent",
    "compare_semilinear",
    "compile_pcfa_to_mhfa",
    "count_reversals",
    "determinize_oblivious",
    "enumerate_words",
    "equivalent_up_to",
    "is_bounded_up_to",
    "is_deterministic",
    "is_deterministic_system",
    "linear_member",
    "parikh",
    "parikh_image",
    "parse_machine_file",
    "parse_semilinear",
    "pcfa_accepts",
    "pcfa_step",
    "render_machine",
    "render_semilinear",
    "run_deterministic",
    "semilinear_member",
    "sensing_step",
    "step",
    "validate",
    "validate_partially_blind",
    "validate_system",
]
