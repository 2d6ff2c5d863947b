"""Random deterministic finite automata: sampling, minimization, reachability and
the Monte Carlo experiments around them."""

from ._accel import USE_NUMBA
from .alpha import AlphaResult, lambert_w_check, solve_alpha
from .automata import Dfa, Semiautomaton, delta_star, distinguishes
from .errors import (
    ContractViolationError,
    DfaParseError,
    InvalidParameterError,
    InvalidStateError,
    InvalidWordError,
    NoPositiveRootError,
    OracleScaleError,
    RandfaError,
)
from .minimize import (
    MinimizationReport,
    StatePartition,
    collapse_equivalent,
    dfa_equivalent,
    minimize_bruteforce,
    remove_unreachable,
    state_complexity,
)
from .random_gen import sample_dfa, sample_semiautomaton, split_seed
from .reachability import accessibility_spectrum, dud_census, reach_from, spectrum_census

__version__ = "0.1.0"
