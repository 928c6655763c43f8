"""Exact TU-game library: class predicates, equivalence classes, EMP-closure
constructions and an axiomatic derivation engine for the Shapley value."""

__version__ = "0.1.0"

from .errors import GameError, GuardExceeded, ParseError, PreconditionError, VerificationError
from .games import (
    Allocation,
    Game,
    additive_game,
    as_mask,
    dual,
    dump_game,
    format_allocation,
    format_coalition,
    from_bitmask_order,
    from_paper_order,
    game_from_json,
    game_to_json,
    load_game,
    make_game,
    make_unanimity,
    marginal,
    members,
    parse_coalition,
    same_marginal,
    to_bitmask_order,
    to_paper_order,
    zero_game,
)
from .classification import GameClass, classify, convexity_via_marginals, is_essential, is_member
from .equivalence import (
    Partition,
    corollary2_check,
    equivalence_classes,
    finest_partition,
    is_equivalence_class,
    lemma1_value_characterization,
    players_equivalent,
)
from .shapley import (
    SolutionTable,
    check_EMP_pair,
    check_ETP,
    check_PO,
    shapley,
    shapley_permutation_oracle,
)
from .constructions import (
    ClosureTarget,
    FillStrategy,
    choose_M,
    closure_construct,
    extend_equivalence_class,
    lemma4_fill,
    lemma4_w,
    lemma4_z,
    lemma5_pipeline,
    well_definedness_check,
)
from .engine import (
    ClassSpec,
    DerivationTrace,
    axiomatic_shapley,
    check_emp_closed_finite,
    check_theorem1_hypotheses_finite,
    derive_on_class,
    solve_axiom_system,
)
from .kernels import backend, set_backend, using_backend

__all__ = [name for name in dir() if not name.startswith("_")]
