"""DNF formulas over atoms and the decision procedures used on rule bodies.

Internally a disjunct is a pair of bitmasks ``(pos, neg)`` over some atom
indexing; ``(0, 0)`` is the empty conjunction (true).  A DNF is a
tautology iff the CNF of its negation is unsatisfiable, and several
syntactic shapes of the disjuncts make that CNF polynomially decidable:

* at most ``k`` disjuncts: pick one literal per clause (``n**k`` choices)
* at most two literals per disjunct: 2-SAT
* at most one negative literal per disjunct: Horn-SAT
* at most one positive literal per disjunct: dual-Horn-SAT

Anything else falls back to enumerating the atoms that occur.
"""

from __future__ import annotations

import re
from collections.abc import Collection, Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import DomainError, ProgramSyntaxError, ResourceCapError
from .program import ATOM_RE, Literal

Term = tuple[int, int]

DEFAULT_TAUT_CAP = 20
DEFAULT_K = 2


@dataclass(frozen=True)
class DnfFormula:
    """A disjunction of conjunctions of literals.

    ``DnfFormula(())`` is false and ``DnfFormula(((),))`` is true.  Disjuncts
    keep their first-seen order; a repeat of an earlier disjunct (as a set of
    literals) is dropped.
    """

    disjuncts: tuple[tuple[Literal, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        kept = []
        for conj in self.disjuncts:
            conj = tuple(dict.fromkeys(Literal(*lit) for lit in conj))
            key = frozenset(conj)
            if key not in seen:
                seen.add(key)
                kept.append(conj)
        object.__setattr__(self, "disjuncts", tuple(kept))

    @classmethod
    def of(cls, *disjuncts: Iterable[str]) -> "DnfFormula":
        """``DnfFormula.of(["p"], ["not p"])`` is ``p or not p``."""
        return cls(tuple(
            tuple(Literal(s[4:].strip(), True) if s.startswith("not ") else Literal(s, False) for s in d)
            for d in disjuncts
        ))

    def atoms(self) -> set[str]:
        return {lit.atom for conj in self.disjuncts for lit in conj}

    def evaluate(self, true_atoms: Collection[str]) -> bool:
        return any(all((lit.atom in true_atoms) != lit.negated for lit in conj) for conj in self.disjuncts)

    def terms(self, bit: dict[str, int]) -> list[Term]:
        out = []
        for conj in self.disjuncts:
            p = n = 0
            for lit in conj:
                if lit.negated:
                    n |= bit[lit.atom]
                else:
                    p |= bit[lit.atom]
            out.append((p, n))
        return out

    @property
    def is_true(self) -> bool:
        return any(not conj for conj in self.disjuncts)

    @property
    def is_false(self) -> bool:
        return not self.disjuncts

    def __str__(self) -> str:
        if not self.disjuncts:
            return "false"
        return " | ".join(
            "(" + " & ".join(str(lit) for lit in conj) + ")" if conj else "true" for conj in self.disjuncts
        )


TRUE = DnfFormula(((),))
FALSE = DnfFormula(())


def _index(atoms: Iterable[str]) -> dict[str, int]:
    return {a: 1 << i for i, a in enumerate(sorted(atoms))}


# -- mask-level procedures --------------------------------------------------

def satisfiable_terms(terms: Iterable[Term]) -> bool:
    return any(p & n == 0 for p, n in terms)


def _clean(terms: Iterable[Term]) -> list[Term] | bool:
    """Drop contradictory disjuncts; True if some disjunct is empty."""
    kept = []
    for p, n in terms:
        if p & n:
            continue
        if not (p | n):
            return True
        kept.append((p, n))
    return kept


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low)
        mask ^= low
    return out


def taut_few_disjuncts(terms: Sequence[Term]) -> bool:
    """Try every choice of one falsified literal per disjunct."""
    clauses = [[(b, False) for b in _bits(p)] + [(b, True) for b in _bits(n)] for p, n in terms]
    for choice in product(*clauses):
        true = false = 0
        for b, value in choice:
            if value:
                true |= b
            else:
                false |= b
        if not true & false:
            return False
    return True


def taut_two_literal(terms: Sequence[Term]) -> bool:
    """2-SAT on the negation; every disjunct has at most two literals."""
    # literal encoding: (bit, value); the clause for disjunct (p, n) holds
    # "bit false" for each bit of p and "bit true" for each bit of n
    graph: dict[tuple[int, bool], set[tuple[int, bool]]] = {}
    for p, n in terms:
        lits = [(b, False) for b in _bits(p)] + [(b, True) for b in _bits(n)]
        if not lits:
            return True
        if len(lits) == 1:
            lits = lits * 2
        (x, vx), (y, vy) = lits
        graph.setdefault((x, not vx), set()).add((y, vy))
        graph.setdefault((y, not vy), set()).add((x, vx))

    def reaches(src, dst) -> bool:
        seen = {src}
        stack = [src]
        while stack:
            node = stack.pop()
            if node == dst:
                return True
            for nxt in graph.get(node, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    variables = {b for b, _ in graph}
    return any(reaches((b, True), (b, False)) and reaches((b, False), (b, True)) for b in variables)


def taut_horn(terms: Sequence[Term]) -> bool:
    """Horn-SAT on the negation; every disjunct has at most one negative literal.

    The clause of ``(p, n)`` reads ``p -> n``; with ``n`` empty it is a goal.
    The negation is unsatisfiable iff forward chaining reaches a goal.
    """
    derived = 0
    changed = True
    while changed:
        changed = False
        for p, n in terms:
            if p & ~derived == 0:
                if not n:
                    return True
                if n & ~derived:
                    derived |= n
                    changed = True
    return False


def taut_dual_horn(terms: Sequence[Term]) -> bool:
    """Every disjunct has at most one positive literal; swap polarities."""
    return taut_horn([(n, p) for p, n in terms])


def taut_enumerate(terms: Sequence[Term], cap: int = DEFAULT_TAUT_CAP) -> bool:
    """Check every assignment to the atoms that occur."""
    occurring = 0
    for p, n in terms:
        occurring |= p | n
    bits = _bits(occurring)
    if len(bits) > cap:
        raise ResourceCapError(f"tautology check over {len(bits)} atoms exceeds cap {cap}", cap, len(bits))
    if not terms:
        return False
    dense = {b: 1 << i for i, b in enumerate(bits)}

    def squeeze(mask: int) -> int:
        return sum(dense[b] for b in _bits(mask))

    assignments = np.arange(1 << len(bits), dtype=np.int64)
    covered = np.zeros(assignments.shape, dtype=bool)
    for p, n in terms:
        dp, dn = squeeze(p), squeeze(n)
        covered |= ((assignments & dp) == dp) & ((assignments & dn) == 0)
    return bool(covered.all())


def tautology_method(terms: Iterable[Term], k: int = DEFAULT_K) -> str:
    """Name of the procedure :func:`tautology_terms` picks for ``terms``."""
    cleaned = _clean(terms)
    if cleaned is True or not cleaned:
        return "trivial"
    if len(cleaned) <= k:
        return "few-disjuncts"
    if all((p | n).bit_count() <= 2 for p, n in cleaned):
        return "two-literal"
    if all(p.bit_count() <= 1 for p, n in cleaned):
        return "dual-horn"
    if all(n.bit_count() <= 1 for p, n in cleaned):
        return "horn"
    return "enumerate"


_PROCEDURES = {
    "few-disjuncts": taut_few_disjuncts,
    "two-literal": taut_two_literal,
    "dual-horn": taut_dual_horn,
    "horn": taut_horn,
}


@lru_cache(maxsize=1 << 16)
def _tautology(terms: frozenset[Term], k: int, cap: int) -> bool:
    cleaned = _clean(terms)
    if cleaned is True:
        return True
    if not cleaned:
        return False
    method = tautology_method(cleaned, k)
    if method == "enumerate":
        return taut_enumerate(cleaned, cap)
    return _PROCEDURES[method](cleaned)


def tautology_terms(terms: Iterable[Term], k: int = DEFAULT_K, cap: int = DEFAULT_TAUT_CAP,
                    context: str | None = None) -> bool:
    try:
        return _tautology(frozenset(terms), k, cap)
    except ResourceCapError as exc:
        if context is None:
            raise
        raise ResourceCapError(f"{exc} (body of {context!r})", exc.cap, exc.needed) from None


# -- formula-level API ------------------------------------------------------

def dnf_satisfiable(f: DnfFormula) -> bool:
    """Some disjunct is free of complementary literals."""
    return any(not any(lit.complement() in conj for lit in conj) for conj in f.disjuncts)


def dnf_tautology(f: DnfFormula, variables: Collection[str] | None = None, *,
                  cap: int = DEFAULT_TAUT_CAP, k: int = DEFAULT_K, context: str | None = None) -> bool:
    """Whether ``f`` holds under every assignment to ``variables``.

    Only atoms occurring in ``f`` are ever enumerated, and only when none of
    the polynomial shapes applies; more than ``cap`` of them raises
    :class:`ResourceCapError` naming ``context``.
    """
    atoms = f.atoms()
    if variables is not None and not atoms <= set(variables):
        raise DomainError(f"formula mentions {sorted(atoms - set(variables))} outside the given variables")
    return tautology_terms(f.terms(_index(atoms)), k=k, cap=cap, context=context)


def dnf_tautology_by_enumeration(f: DnfFormula, cap: int = DEFAULT_TAUT_CAP) -> bool:
    return taut_enumerate(f.terms(_index(f.atoms())), cap)


# -- one-line prefix syntax ---------------------------------------------------
#
#   dnf  := "or(" [conj ("," conj)*] ")" | conj
#   conj := "and(" [lit ("," lit)*] ")" | "true" | lit
#   lit  := "not(" atom ")" | atom
#
# "false" is accepted as a synonym for "or()".

_PREFIX_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([(),]))")


def parse_prefix_dnf(text: str) -> DnfFormula:
    tokens: list[tuple[str, int]] = []
    i = 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _PREFIX_TOKEN.match(text, i)
        if m is None:
            raise ProgramSyntaxError(f"unexpected character {text[i]!r} in formula", 1, i + 1)
        tokens.append((m.group(1) or m.group(2), m.start(m.lastindex) + 1))
        i = m.end()
    tokens.append(("", len(text) + 1))
    pos_ = 0

    def peek() -> str:
        return tokens[pos_][0]

    def expect(tok: str) -> None:
        nonlocal pos_
        if peek() != tok:
            raise ProgramSyntaxError(f"expected {tok!r}, found {peek() or 'end of formula'!r}", 1, tokens[pos_][1])
        pos_ += 1

    def name() -> str:
        nonlocal pos_
        tok, col = tokens[pos_]
        if not ATOM_RE.match(tok) or tok in _PREFIX_WORDS:
            raise ProgramSyntaxError(f"expected an atom, found {tok or 'end of formula'!r}", 1, col)
        pos_ += 1
        return tok

    def items(parse_item) -> list:
        expect("(")
        out = []
        if peek() != ")":
            out.append(parse_item())
            while peek() == ",":
                expect(",")
                out.append(parse_item())
        expect(")")
        return out

    def literal() -> Literal:
        nonlocal pos_
        if peek() == "not":
            pos_ += 1
            expect("(")
            atom = name()
            expect(")")
            return Literal(atom, True)
        return Literal(name(), False)

    def conj() -> tuple[Literal, ...]:
        nonlocal pos_
        if peek() == "and":
            pos_ += 1
            return tuple(items(literal))
        if peek() == "true":
            pos_ += 1
            return ()
        return (literal(),)

    if peek() == "or":
        pos_ += 1
        result = DnfFormula(tuple(items(conj)))
    elif peek() == "false":
        pos_ += 1
        result = FALSE
    else:
        result = DnfFormula((conj(),))
    if peek() != "":
        raise ProgramSyntaxError(f"trailing input {peek()!r}", 1, tokens[pos_][1])
    return result


_PREFIX_WORDS = frozenset({"or", "and", "not", "true", "false"})


def to_prefix(f: DnfFormula) -> str:
    def lit(x: Literal) -> str:
        return f"not({x.atom})" if x.negated else x.atom
    return "or(" + ",".join("and(" + ",".join(map(lit, c)) + ")" for c in f.disjuncts) + ")"
