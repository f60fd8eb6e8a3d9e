"""Brute-force reference computations.

Nothing here goes through the bitmask fast paths of :mod:`aftlp.lp` or the
DNF procedures: the one-step operator is re-evaluated from the literals of
each body on plain sets of atom names, and intervals are enumerated
directly.  Every routine is exponential on purpose.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from itertools import combinations, product

from .aft import Approximator, ConsistentPair
from .dnf import DnfFormula
from .errors import PreconditionError, ResourceCapError

DEFAULT_CAP = 20

_memo: dict[object, dict[frozenset, frozenset]] = {}


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ResourceCapError(f"{what}: {n} atoms exceed oracle cap {cap}", cap, n)


def _holds(conj, true: frozenset) -> bool:
    return all((lit.atom in true) != lit.negated for lit in conj)


def oracle_tp(NP, true: frozenset) -> frozenset:
    """``tp`` recomputed from body literals; memoised per program."""
    table = _memo.get(NP)
    if table is None:
        if len(_memo) > 256:
            _memo.clear()
        table = _memo[NP] = {}
    out = table.get(true)
    if out is None:
        out = table[true] = frozenset(
            a for a, f in zip(NP.universe, NP.bodies) if any(_holds(c, true) for c in f.disjuncts)
        )
    return out


def _names(NP, mask: int) -> frozenset:
    return frozenset(a for i, a in enumerate(NP.universe) if mask >> i & 1)


def _mask(NP, atoms) -> int:
    return sum(1 << NP.universe.index(a) for a in atoms)


def _subsets(atoms: Sequence[str]) -> Iterator[frozenset]:
    for r in range(len(atoms) + 1):
        for combo in combinations(atoms, r):
            yield frozenset(combo)


def brute_ultimate(NP, I: int, J: int, cap: int = DEFAULT_CAP) -> ConsistentPair:
    """(intersection, union) of ``tp`` over every interpretation in ``[I, J]``."""
    if I & ~J:
        raise PreconditionError("I must be a subset of J")
    low, high = _names(NP, I), _names(NP, J)
    free = sorted(high - low)
    _check_cap(len(free), cap, "interval width")
    meet = frozenset(NP.universe)
    join: frozenset = frozenset()
    for chosen in product((False, True), repeat=len(free)):
        K = low | {a for a, on in zip(free, chosen) if on}
        image = oracle_tp(NP, frozenset(K))
        meet &= image
        join |= image
    return ConsistentPair(_mask(NP, meet), _mask(NP, join), NP.lattice)


def brute_supported_models(NP, cap: int = DEFAULT_CAP) -> set[int]:
    """All ``I`` with ``tp(I) = I`` by sweeping every subset."""
    _check_cap(len(NP.universe), cap, "supported models")
    return {_mask(NP, K) for K in _subsets(NP.universe) if oracle_tp(NP, K) == K}


def brute_exact_stable(A: Approximator, universe_size_cap: int = DEFAULT_CAP) -> set:
    """Every ``x`` that is a fixpoint and the least fixpoint of ``A1(., x)`` below ``x``.

    Each candidate of the carrier is tested with its own Kleene iteration;
    no candidate is skipped up front.
    """
    lat = A.lattice
    if lat.size > 1 << universe_size_cap:
        raise ResourceCapError(f"carrier of {lat.size} elements exceeds oracle cap", universe_size_cap, lat.size)
    found = set()
    for x in lat.elements:
        z = lat.bottom
        for _ in range(lat.size + 1):
            nz = A.a1(z, x)
            if not lat.leq(nz, x):
                z = None
                break
            if nz == z:
                break
            z = nz
        if z == x and A.a1(x, x) == x and A.a2(x, x) == x:
            found.add(x)
    return found


def _least_model(rules: list[tuple[str, frozenset]]) -> frozenset:
    model: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, body in rules:
            if head not in model and body <= model:
                model.add(head)
                changed = True
    return frozenset(model)


def _gl_operator(NP, M: frozenset) -> frozenset:
    # least model of the Gelfond-Lifschitz reduct of NP with respect to M
    positive = []
    for head, f in zip(NP.universe, NP.bodies):
        for conj in f.disjuncts:
            if any(lit.negated and lit.atom in M for lit in conj):
                continue
            positive.append((head, frozenset(lit.atom for lit in conj if not lit.negated)))
    return _least_model(positive)


def brute_gl_stable_models(NP, cap: int = DEFAULT_CAP) -> set[int]:
    """Standard stable models: ``M`` equal to the least model of its reduct."""
    _check_cap(len(NP.universe), cap, "stable models")
    return {_mask(NP, M) for M in _subsets(NP.universe) if _gl_operator(NP, M) == M}


def brute_well_founded(NP) -> ConsistentPair:
    """Standard well-founded model by alternating the reduct operator."""
    true: frozenset = frozenset()
    while True:
        possible = _gl_operator(NP, true)
        nxt = _gl_operator(NP, possible)
        if nxt == true:
            return ConsistentPair(_mask(NP, true), _mask(NP, possible), NP.lattice)
        true = nxt


def qbf_exists_forall(phi: DnfFormula, xs: Sequence[str], ys: Sequence[str], cap: int = DEFAULT_CAP) -> bool:
    """Is there ``I`` over ``xs`` such that ``phi`` holds for every choice over ``ys``?"""
    _check_cap(len(xs) + len(ys), cap, "exists-forall")
    for I in _subsets(list(xs)):
        if all(phi.evaluate(I | K) for K in _subsets(list(ys))):
            return True
    return False
