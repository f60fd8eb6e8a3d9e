"""Approximation fixpoint theory with ultimate approximations, applied to
propositional normal logic programs."""

from .aft import (
    Approximator,
    ConsistentPair,
    InconsistentRevision,
    Precision,
    chain_lub,
    compare_precision,
    exact_stable_fixpoints,
    is_prudent,
    is_reliable,
    is_stable_pair,
    kripke_kleene,
    least_precise_of,
    prec_leq,
    stable_revision,
    ultimate_of,
    well_founded,
)
from .dnf import DnfFormula, dnf_satisfiable, dnf_tautology
from .lattice import FiniteLattice, PowersetLattice, lfp_monotone
from .lp import (
    NormalProgram,
    classify_ek,
    eval3,
    fitting_approximator,
    normalize,
    reduct,
    tp,
    ultimate_lp,
)
from .program import Literal, Program, Rule, parse

__version__ = "0.1.0"
