"""movtk: tournament solutions and margins of victory under edge reversals."""

from .constructive import (
    banks_log_crs,
    exact_mov_nonwinner,
    mov_copeland_nonwinner,
    mov_kkings_nonwinner_unweighted,
    mov_tc_nonwinner,
    mov_uc_nonwinner_unweighted,
)
from .core import (
    BudgetExceededError,
    FormatError,
    InvalidReversalError,
    MovResult,
    ReversalSet,
    Tournament,
    Weighting,
    apply_reversals,
    dominators,
    dominion,
    generate_tight_co_constructive,
    generate_tight_destructive,
    generate_uniform,
    generate_uniform_weights,
    parse_tournament,
    parse_weights,
    restrict,
    serialize_tournament,
    serialize_weights,
)
from .destructive import (
    exact_mov_winner,
    mov_banks_winner,
    mov_copeland_winner,
    mov_kkings_winner,
)
from .margins import margin
from .oracle import (
    OracleReport,
    brute_force_mov,
    count_min_reversal_sets,
    mov_bound,
    relative_mov,
)
from .solutions import (
    BANKS,
    COPELAND,
    TOP_CYCLE,
    UNCOVERED,
    SccCondensation,
    SolutionId,
    banks_member,
    banks_set,
    choice_set,
    copeland_set,
    covers,
    is_member,
    k_kings,
    kings,
    scc_condensation,
    top_cycle,
    uncovered_set,
)

__version__ = "0.1.0"
