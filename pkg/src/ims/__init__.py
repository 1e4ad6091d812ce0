"""Canonical atom-set forms, critical-pair completion, and entropy measures
for the complemented set algebra generated by random variables.

Everything here is a pure function over immutable values; concurrent use
needs no coordination.
"""

from .expr import (
    AtomVar,
    Complement,
    Expr,
    Join,
    Meet,
    One,
    ParseError,
    Var,
    Zero,
    join,
    meet,
    parse,
    render,
)
from .atoms import (
    AtomSet,
    complement,
    eval_expr,
    gen_atoms,
    normalize,
    render_atoms,
)
from .atoms import join as atom_join
from .atoms import meet as atom_meet
from .markov import (
    CIConstraint,
    KSet,
    chain_constraint,
    check_reversal,
    ci_atoms,
    k_set,
    markov_normalize,
    reduced_universe,
)
from .gsbasis import (
    CompletionResult,
    GsFailure,
    Presentation,
    ReductionBudgetError,
    atom_presentation,
    bundled_presentation,
    cmp_monomial,
    cmp_rigterm,
    complete,
    compose,
    irr_enumerate,
    is_gs_basis,
    markov_presentation,
    parse_presentation,
    render_presentation,
    try_reduce,
)
from .imeasure import (
    AtomMeasures,
    Counterexample,
    EntropyCombo,
    EntropyVector,
    IdentityVerdict,
    JointDistribution,
    VanishingReport,
    atom_measures,
    atom_measures_dense,
    check_identity,
    joint_entropies,
    load_distribution,
    measure_of,
    random_distribution,
    random_markov_distribution,
    symbolic_measure,
    verify_markov_vanishing,
)

__version__ = "0.1.0"
