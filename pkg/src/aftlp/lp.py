"""Normal programs as operators on the lattice of interpretations.

An interpretation is a bitmask over ``NormalProgram.universe`` (bit ``i``
set iff the ``i``-th atom, in lexicographic order, is true).  Use
``np.lattice.mask(...)`` and ``np.lattice.atoms(...)`` to convert.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass, field

from .aft import Approximator, ConsistentPair, exact_stable_fixpoints
from .dnf import DEFAULT_K, DEFAULT_TAUT_CAP, DnfFormula, Term, tautology_terms
from .errors import PreconditionError, ResourceCapError
from .lattice import PowersetLattice
from .program import Literal, Program

DEFAULT_ENUM_CAP = 20


@dataclass(frozen=True)
class NormalProgram:
    """One body formula per atom; atoms heading no rule have body ``false``."""

    universe: tuple[str, ...]
    bodies: tuple[DnfFormula, ...]
    lattice: PowersetLattice = field(init=False, compare=False, repr=False)
    terms: tuple[tuple[Term, ...], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if len(self.universe) != len(self.bodies):
            raise ValueError("one body per atom required")
        lat = PowersetLattice(self.universe)
        for f in self.bodies:
            unknown = f.atoms() - set(self.universe)
            if unknown:
                raise ValueError(f"body mentions atoms outside the universe: {sorted(unknown)}")
        object.__setattr__(self, "lattice", lat)
        object.__setattr__(self, "terms", tuple(tuple(f.terms(lat._bit)) for f in self.bodies))

    def body(self, atom: str) -> DnfFormula:
        return self.bodies[self.universe.index(atom)]

    def items(self):
        return zip(self.universe, self.bodies)

    def mask(self, atoms: Iterable[str]) -> int:
        return self.lattice.mask(atoms)

    def atoms(self, mask: int) -> tuple[str, ...]:
        return self.lattice.atoms(mask)

    def __str__(self) -> str:
        return "\n".join(f"{a} <- {f}" for a, f in self.items())


def normalize(P: Program) -> NormalProgram:
    return NormalProgram(
        P.universe,
        tuple(DnfFormula(tuple(r.body for r in P.rules if r.head == a)) for a in P.universe),
    )


def tp(NP: NormalProgram, I: int) -> int:
    """One-step provability: atoms whose body is true in ``I``."""
    NP.lattice._require(I)
    out = 0
    for i, terms in enumerate(NP.terms):
        for p, n in terms:
            if p & ~I == 0 and n & I == 0:
                out |= 1 << i
                break
    return out


class Truth(str, enum.Enum):
    TRUE = "t"
    UNKNOWN = "u"
    FALSE = "f"


def _eval3_terms(terms: Iterable[Term], lo: int, hi: int) -> Truth:
    value = Truth.FALSE
    for p, n in terms:
        if p & ~lo == 0 and n & hi == 0:
            return Truth.TRUE
        if p & ~hi == 0 and n & lo == 0:
            value = Truth.UNKNOWN
    return value


def eval3(f: DnfFormula, p: ConsistentPair) -> Truth:
    """Strong-Kleene value of ``f``: atoms in ``lower`` are true, outside ``upper`` false."""
    return _eval3_terms(f.terms(p.lattice._bit), p.lower, p.upper)


def fitting_approximator(NP: NormalProgram) -> Approximator:
    """The three-valued immediate consequence operator."""
    def lower(I, J):
        out = 0
        for i, terms in enumerate(NP.terms):
            if _eval3_terms(terms, I, J) is Truth.TRUE:
                out |= 1 << i
        return out

    def upper(I, J):
        out = 0
        for i, terms in enumerate(NP.terms):
            if _eval3_terms(terms, I, J) is not Truth.FALSE:
                out |= 1 << i
        return out

    return Approximator(NP.lattice, lower, upper, "fitting")


def _substitute(conj: tuple[Literal, ...], true: set[str], possible: set[str]) -> tuple[Literal, ...] | None:
    kept = []
    for lit in conj:
        if lit.atom in true:
            if lit.negated:
                return None
        elif lit.atom not in possible:
            if not lit.negated:
                return None
        else:
            kept.append(lit)
    return tuple(kept)


def reduct(NP: NormalProgram, I: int, J: int) -> NormalProgram:
    """Set atoms of ``I`` true and atoms outside ``J`` false in every body.

    Disjuncts that become false are removed and true literals are dropped,
    so the bodies only mention atoms of ``J - I``.
    """
    if I & ~J:
        raise PreconditionError("reduct needs I to be a subset of J")
    true, possible = set(NP.atoms(I)), set(NP.atoms(J))
    bodies = []
    for f in NP.bodies:
        residual = (_substitute(conj, true, possible) for conj in f.disjuncts)
        bodies.append(DnfFormula(tuple(c for c in residual if c is not None)))
    return NormalProgram(NP.universe, tuple(bodies))


def _residual(terms: Iterable[Term], I: int, J: int) -> list[Term]:
    # mask form of the reduct: drop disjuncts with a false literal, clear
    # literals that became true
    return [(p & ~I, n & J) for p, n in terms if not (p & ~J or n & I)]


def ultimate_lp(NP: NormalProgram, cap: int = DEFAULT_TAUT_CAP, k: int = DEFAULT_K) -> Approximator:
    """The ultimate approximator of ``tp``, evaluated through reducts.

    An atom is in the lower bound iff its reduct body is a tautology and in
    the upper bound iff the reduct body is satisfiable.
    """
    universe = NP.universe
    lower_cache: dict[tuple[int, int], int] = {}

    def lower(I, J):
        key = (I, J)
        hit = lower_cache.get(key)
        if hit is not None:
            return hit
        out = 0
        for i, terms in enumerate(NP.terms):
            residual = _residual(terms, I, J)
            if not residual:
                continue
            if (0, 0) in residual or tautology_terms(residual, k=k, cap=cap, context=universe[i]):
                out |= 1 << i
        lower_cache[key] = out
        return out

    def upper(I, J):
        out = 0
        for i, terms in enumerate(NP.terms):
            for p, n in terms:
                if not (p & ~J or n & I or p & n):
                    out |= 1 << i
                    break
        return out

    return Approximator(NP.lattice, lower, upper, "ultimate")


def supported_models(NP: NormalProgram, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Every fixpoint of ``tp``, in binary counting order."""
    if len(NP.universe) > cap:
        raise ResourceCapError(
            f"{len(NP.universe)} atoms exceed the model enumeration cap {cap}", cap, len(NP.universe)
        )
    return [I for I in range(NP.lattice.size) if tp(NP, I) == I]


def stable_models(NP: NormalProgram, A: Approximator, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Exact stable fixpoints of ``A``, searched among the supported models only."""
    return exact_stable_fixpoints(A, candidates=supported_models(NP, cap))


@dataclass(frozen=True)
class EkReport:
    k: int
    conditions: dict[str, int | None]
    member: bool

    @property
    def violations(self) -> list[str]:
        return [a for a, c in self.conditions.items() if c is None]


def classify_ek(P: Program, k: int) -> EkReport:
    """Earliest E_k condition (1-4) met by each atom's defining rules.

    1. at most ``k`` rules have the atom as head;
    2. every such rule body has at most two literals;
    3. every such rule body has at most one positive literal;
    4. every such rule body has at most one negative literal.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    conditions: dict[str, int | None] = {}
    for atom in P.universe:
        bodies = [r.body for r in P.rules if r.head == atom]
        tests = (
            len(bodies) <= k,
            all(len(b) <= 2 for b in bodies),
            all(sum(not lit.negated for lit in b) <= 1 for b in bodies),
            all(sum(lit.negated for lit in b) <= 1 for b in bodies),
        )
        conditions[atom] = next((i + 1 for i, ok in enumerate(tests) if ok), None)
    return EkReport(k, conditions, all(c is not None for c in conditions.values()))
