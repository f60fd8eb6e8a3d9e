"""Approximation fixpoint theory on the consistent pairs of a finite lattice.

A consistent pair ``(x, y)`` with ``x <= y`` stands for every lattice
element between its bounds.  An :class:`Approximator` revises such pairs;
its Kripke-Kleene fixpoint, stable revision, well-founded fixpoint and
exact stable fixpoints are computed here for any finite lattice.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .errors import (
    DomainError,
    InconsistentPairError,
    InvariantError,
    PreconditionError,
    ResourceCapError,
)
from .lattice import Lattice, LatticeOperator

DEFAULT_CANDIDATE_CAP = 2 ** 20
DEFAULT_PAIR_CAP = 3 ** 12


@dataclass(frozen=True)
class ConsistentPair:
    """Bounds ``lower <= upper`` on an unknown element of ``lattice``."""

    lower: Any
    upper: Any
    lattice: Lattice = field(compare=False, repr=False)

    def __post_init__(self):
        if not self.lattice.leq(self.lower, self.upper):
            raise InconsistentPairError(f"({self.lower!r}, {self.upper!r}) is not consistent")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __iter__(self):
        yield self.lower
        yield self.upper


@dataclass(frozen=True)
class InconsistentRevision:
    """Outcome of revising a reliable but imprudent pair when ``lower > upper``."""

    lower: Any
    upper: Any

    def __iter__(self):
        yield self.lower
        yield self.upper


class Precision(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"

    def flipped(self) -> "Precision":
        return {Precision.LESS: Precision.GREATER, Precision.GREATER: Precision.LESS}.get(self, self)


@dataclass
class Stats:
    iterations: int = 0
    evaluations: int = 0


class Approximator:
    """An operator on consistent pairs given by its two projections.

    ``lower_fn(x, y)`` and ``upper_fn(x, y)`` receive raw lattice elements.
    Nothing is checked on construction; :func:`validate_approximator`
    sweeps the three defining conditions when the lattice is small.
    """

    def __init__(self, lattice: Lattice, lower_fn: Callable[[Any, Any], Any],
                 upper_fn: Callable[[Any, Any], Any], name: str = "approximator"):
        self.lattice = lattice
        self.lower_fn = lower_fn
        self.upper_fn = upper_fn
        self.name = name

    @classmethod
    def from_table(cls, lattice: Lattice, table: dict[tuple[Any, Any], tuple[Any, Any]],
                   name: str = "tabulated") -> "Approximator":
        return cls(lattice, lambda x, y: table[x, y][0], lambda x, y: table[x, y][1], name)

    def a1(self, x, y):
        return self.lower_fn(x, y)

    def a2(self, x, y):
        return self.upper_fn(x, y)

    def apply(self, x, y) -> tuple[Any, Any]:
        return self.lower_fn(x, y), self.upper_fn(x, y)

    def __call__(self, p: ConsistentPair) -> ConsistentPair:
        _same_lattice(self.lattice, p)
        return ConsistentPair(self.lower_fn(p.lower, p.upper), self.upper_fn(p.lower, p.upper), self.lattice)

    def pair(self, lower, upper) -> ConsistentPair:
        return ConsistentPair(lower, upper, self.lattice)

    def least_pair(self) -> ConsistentPair:
        return self.pair(self.lattice.bottom, self.lattice.top)

    def counted(self, stats: Stats) -> "Approximator":
        """Same approximator, counting every projection call in ``stats``."""
        def lower(x, y):
            stats.evaluations += 1
            return self.lower_fn(x, y)

        def upper(x, y):
            stats.evaluations += 1
            return self.upper_fn(x, y)

        return Approximator(self.lattice, lower, upper, self.name)

    def __repr__(self) -> str:
        return f"Approximator({self.name!r} on {self.lattice!r})"


def _same_lattice(lat: Lattice, *pairs) -> None:
    for p in pairs:
        if isinstance(p, ConsistentPair) and p.lattice is not lat:
            raise DomainError("pair belongs to a different lattice")


def _prec(lat: Lattice, p, q) -> bool:
    (a, b), (c, d) = p, q
    return lat.leq(a, c) and lat.leq(d, b)


def prec_leq(p: ConsistentPair, q: ConsistentPair) -> bool:
    """``p <=_p q``: ``q`` is at least as precise as ``p``."""
    if p.lattice is not q.lattice:
        raise DomainError("pairs over different lattices")
    return _prec(p.lattice, p, q)


def chain_lub(chain: Sequence[ConsistentPair]) -> ConsistentPair:
    """Least upper bound of a ``<=_p``-chain: (lub of lowers, glb of uppers)."""
    if not chain:
        raise PreconditionError("empty chain")
    lat = chain[0].lattice
    _same_lattice(lat, *chain)
    for i, p in enumerate(chain):
        for q in chain[i + 1:]:
            if not (_prec(lat, p, q) or _prec(lat, q, p)):
                raise PreconditionError(f"{p} and {q} are incomparable; not a chain")
    return ConsistentPair(lat.lub(p.lower for p in chain), lat.glb(p.upper for p in chain), lat)


def is_reliable(A: Approximator, p: ConsistentPair) -> bool:
    _same_lattice(A.lattice, p)
    return _prec(A.lattice, (p.lower, p.upper), A.apply(p.lower, p.upper))


def lower_revision(A: Approximator, upper):
    """lfp of ``x -> A1(x, upper)`` on ``[bottom, upper]``."""
    lat = A.lattice
    return lat.lfp(lambda x: A.lower_fn(x, upper), lat.bottom, upper)


def upper_revision(A: Approximator, lower):
    """lfp of ``y -> A2(lower, y)`` on ``[lower, top]``."""
    lat = A.lattice
    return lat.lfp(lambda y: A.upper_fn(lower, y), lower, lat.top)


def is_prudent(A: Approximator, p: ConsistentPair) -> bool:
    if not is_reliable(A, p):
        return False
    return A.lattice.leq(p.lower, lower_revision(A, p.upper))


def stable_revision(A: Approximator, p: ConsistentPair) -> ConsistentPair | InconsistentRevision:
    """Revise a reliable pair to ``(lower_revision(upper), upper_revision(lower))``.

    Prudent input always yields a consistent pair.  For merely reliable
    input the bounds may cross; that outcome is returned as an
    :class:`InconsistentRevision` rather than raised or repaired.
    """
    if not is_reliable(A, p):
        raise PreconditionError(f"{p} is not reliable for {A.name}")
    lower = lower_revision(A, p.upper)
    upper = upper_revision(A, p.lower)
    if not A.lattice.leq(lower, upper):
        return InconsistentRevision(lower, upper)
    return ConsistentPair(lower, upper, A.lattice)


def kripke_kleene(A: Approximator, stats: Stats | None = None) -> ConsistentPair:
    """Least fixpoint of ``A`` under ``<=_p``, iterated from ``(bottom, top)``."""
    lat = A.lattice
    x, y = lat.bottom, lat.top
    for step in range(2 * lat.size + 1):
        nx, ny = A.apply(x, y)
        if stats is not None:
            stats.iterations += 1
        if (nx, ny) == (x, y):
            return ConsistentPair(x, y, lat)
        if not (_prec(lat, (x, y), (nx, ny)) and lat.leq(nx, ny)):
            raise InvariantError(f"{A.name} is not a valid approximator: ({x!r}, {y!r}) -> ({nx!r}, {ny!r})")
        x, y = nx, ny
    raise InvariantError("Kripke-Kleene iteration exceeded its bound")


def well_founded(A: Approximator, stats: Stats | None = None) -> ConsistentPair:
    """Least stable fixpoint, by iterating stable revision from ``(bottom, top)``."""
    p = A.least_pair()
    for _ in range(2 * A.lattice.size + 1):
        q = stable_revision(A, p)
        if stats is not None:
            stats.iterations += 1
        if isinstance(q, InconsistentRevision):
            raise InvariantError(f"well-founded iteration produced inconsistent {q}")
        if q == p:
            return p
        p = q
    raise InvariantError("well-founded iteration exceeded 2|L| revisions")


def is_stable_pair(A: Approximator, p: ConsistentPair) -> bool:
    if not is_reliable(A, p):
        return False
    return lower_revision(A, p.upper) == p.lower and upper_revision(A, p.lower) == p.upper


def exact_stable_fixpoints(A: Approximator, cap: int = DEFAULT_CANDIDATE_CAP,
                           candidates: Iterable | None = None) -> list:
    """Every ``x`` with ``x = lfp(A1(., x))`` on ``[bottom, x]``, in carrier order.

    Candidates that are not fixpoints of the approximated operator are
    skipped before the lfp test.  ``candidates`` may narrow the sweep
    further (the caller vouches that no stable fixpoint is left out).
    """
    lat = A.lattice
    if candidates is None:
        if lat.size > cap:
            raise ResourceCapError(f"carrier of {lat.size} elements exceeds candidate cap {cap}", cap, lat.size)
        candidates = lat.elements
    found = []
    for x in candidates:
        if A.lower_fn(x, x) != x or A.upper_fn(x, x) != x:
            continue
        if lower_revision(A, x) == x:
            found.append(x)
    return found


def _interval_image(lat: Lattice, O: LatticeOperator):
    @lru_cache(maxsize=None)
    def image(x, y):
        values = [O(z) for z in lat.interval(x, y)]
        return lat.glb(values), lat.lub(values)
    return image


def ultimate_of(lat: Lattice, O: LatticeOperator) -> Approximator:
    """The most precise approximator: ``(glb O([x, y]), lub O([x, y]))``."""
    image = _interval_image(lat, O)
    return Approximator(lat, lambda x, y: image(x, y)[0], lambda x, y: image(x, y)[1], "ultimate")


def least_precise_of(lat: Lattice, O: LatticeOperator) -> Approximator:
    """``(O(x), O(x))`` on exact pairs and ``(bottom, top)`` elsewhere."""
    def lower(x, y):
        return O(x) if x == y else lat.bottom

    def upper(x, y):
        return O(x) if x == y else lat.top

    return Approximator(lat, lower, upper, "least-precise")


def _sweep_pairs(lat: Lattice, cap: int):
    count = lat.count_consistent_pairs()
    if count > cap:
        raise ResourceCapError(f"{count} consistent pairs exceed sweep cap {cap}", cap, count)
    return lat.consistent_pairs()


def compare_precision(A: Approximator, B: Approximator, cap: int = DEFAULT_PAIR_CAP) -> Precision:
    if A.lattice is not B.lattice:
        raise DomainError("approximators over different lattices")
    lat = A.lattice
    a_below = b_below = True
    for x, y in _sweep_pairs(lat, cap):
        pa, pb = A.apply(x, y), B.apply(x, y)
        a_below = a_below and _prec(lat, pa, pb)
        b_below = b_below and _prec(lat, pb, pa)
        if not (a_below or b_below):
            return Precision.INCOMPARABLE
    if a_below and b_below:
        return Precision.EQUAL
    return Precision.LESS if a_below else Precision.GREATER


def approximator_violations(A: Approximator, cap: int = DEFAULT_PAIR_CAP, limit: int = 10) -> list[str]:
    """Failures of consistency, exact-pair agreement and ``<=_p``-monotonicity."""
    lat = A.lattice
    pairs = list(_sweep_pairs(lat, cap))
    images = {p: A.apply(*p) for p in pairs}
    problems: list[str] = []
    for p, (lo, hi) in images.items():
        if not lat.leq(lo, hi):
            problems.append(f"A{p} = {(lo, hi)} is inconsistent")
        if p[0] == p[1] and lo != hi:
            problems.append(f"A{p} = {(lo, hi)} disagrees on an exact pair")
    for p in pairs:
        for q in pairs:
            if _prec(lat, p, q) and not _prec(lat, images[p], images[q]):
                problems.append(f"{p} <=_p {q} but A{p} = {images[p]} not <=_p A{q} = {images[q]}")
                if len(problems) >= limit:
                    return problems
    return problems[:limit]


def validate_approximator(A: Approximator, cap: int = DEFAULT_PAIR_CAP) -> None:
    problems = approximator_violations(A, cap)
    if problems:
        raise DomainError(f"{A.name} is not a partial approximation: " + "; ".join(problems))
