"""Finite complete lattices given as explicit data.

Two concrete kinds are provided.  :class:`FiniteLattice` stores an arbitrary
finite order together with precomputed meet/join tables and is what the
property suites use for chains, diamonds and random lattices.
:class:`PowersetLattice` represents the subsets of a fixed atom universe as
integer bitmasks (bit ``i`` is the ``i``-th atom of the universe) and uses
bitwise operations instead of tables.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from functools import reduce
from typing import Any

from .errors import DomainError, EmptyIntervalError, MonotonicityError, ResourceCapError

Element = Hashable
LatticeOperator = Callable[[Any], Any]

TABLE_LIMIT = 2 ** 10


class Lattice:
    """Operations shared by every finite lattice implementation.

    Subclasses provide ``elements``, ``bottom``, ``top``, ``size``,
    ``leq``, ``meet``, ``join`` and ``_require``.
    """

    bottom: Any
    top: Any
    size: int

    def __contains__(self, x: object) -> bool:
        try:
            self._require(x)
        except DomainError:
            return False
        return True

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return self.size

    def glb(self, items: Iterable) -> Any:
        return reduce(self.meet, items, self.top)

    def lub(self, items: Iterable) -> Any:
        return reduce(self.join, items, self.bottom)

    def interval(self, x, y) -> Iterator:
        """Yield every ``z`` with ``x <= z <= y`` in carrier order."""
        self._require(x)
        self._require(y)
        if not self.leq(x, y):
            raise EmptyIntervalError(f"empty interval: {x!r} is not below {y!r}")
        return (z for z in self.elements if self.leq(x, z) and self.leq(z, y))

    def consistent_pairs(self) -> Iterator[tuple[Any, Any]]:
        """All ``(x, y)`` with ``x <= y``, grouped by upper bound."""
        for y in self.elements:
            for x in self.interval(self.bottom, y):
                yield x, y

    def count_consistent_pairs(self) -> int:
        return sum(1 for _ in self.consistent_pairs())

    def lfp(self, f: LatticeOperator, floor=None, ceiling=None, *, check: bool = False):
        """Least fixpoint of a monotone ``f`` on the sublattice ``[floor, ceiling]``.

        Kleene iteration from ``floor``.  ``f`` must map the sublattice into
        itself and preserve order there; any iterate that escapes the
        sublattice or fails to ascend raises :class:`MonotonicityError`.
        With ``check=True`` monotonicity is first verified by enumeration.
        """
        floor = self.bottom if floor is None else floor
        ceiling = self.top if ceiling is None else ceiling
        self._require(floor)
        self._require(ceiling)
        if not self.leq(floor, ceiling):
            raise EmptyIntervalError(f"empty interval: {floor!r} is not below {ceiling!r}")
        if check:
            self.check_monotone(f, floor, ceiling)
        x = floor
        for _ in range(self.size + 1):
            y = f(x)
            self._require(y)
            if not (self.leq(floor, y) and self.leq(y, ceiling)):
                raise MonotonicityError(
                    f"iterate {y!r} left the sublattice [{floor!r}, {ceiling!r}]"
                )
            if y == x:
                return x
            if not self.leq(x, y):
                raise MonotonicityError(f"iteration descended from {x!r} to {y!r}")
            x = y
        raise MonotonicityError("iteration did not stabilise within |L| steps")

    def check_monotone(self, f: LatticeOperator, floor=None, ceiling=None) -> None:
        floor = self.bottom if floor is None else floor
        ceiling = self.top if ceiling is None else ceiling
        region = list(self.interval(floor, ceiling))
        images = {x: f(x) for x in region}
        for x in region:
            fx = images[x]
            if not (self.leq(floor, fx) and self.leq(fx, ceiling)):
                raise MonotonicityError(f"f({x!r}) = {fx!r} escapes [{floor!r}, {ceiling!r}]")
            for y in region:
                if self.leq(x, y) and not self.leq(fx, images[y]):
                    raise MonotonicityError(f"f not monotone at {x!r} <= {y!r}")

    def least_prefixpoint(self, f: LatticeOperator, floor=None, ceiling=None):
        """glb of ``{x in [floor, ceiling] : f(x) <= x}`` by enumeration."""
        floor = self.bottom if floor is None else floor
        ceiling = self.top if ceiling is None else ceiling
        return self.glb(x for x in self.interval(floor, ceiling) if self.leq(f(x), x))


class FiniteLattice(Lattice):
    """A finite lattice over arbitrary hashable element handles.

    ``leq`` is called on every ordered pair of elements once, at
    construction.  The order axioms and the existence of all binary meets
    and joins are verified; a violation raises :class:`DomainError`.
    """

    def __init__(self, elements: Sequence[Element], leq: Callable[[Any, Any], bool]):
        self.elements = tuple(elements)
        n = len(self.elements)
        if n == 0:
            raise DomainError("a lattice needs at least one element")
        if n > TABLE_LIMIT:
            raise ResourceCapError(f"explicit lattices are limited to {TABLE_LIMIT} elements", TABLE_LIMIT, n)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != n:
            raise DomainError("duplicate element handles")
        self.size = n

        # down[i] / up[i]: bitsets of the indices below / above element i
        down = [0] * n
        up = [0] * n
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if leq(b, a):
                    down[i] |= 1 << j
                    up[j] |= 1 << i
        for i in range(n):
            if not down[i] >> i & 1:
                raise DomainError(f"order is not reflexive at {self.elements[i]!r}")
        for i in range(n):
            for j in range(i + 1, n):
                if down[i] >> j & 1 and down[j] >> i & 1:
                    raise DomainError("order is not antisymmetric")
        for i in range(n):
            rest = down[i]
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if down[j] & ~down[i]:
                    raise DomainError("order is not transitive")
                rest ^= low
        self._down = down
        self._up = up

        by_down = {d: i for i, d in enumerate(down)}
        by_up = {u: i for i, u in enumerate(up)}
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                lower = self._greatest(down[i] & down[j], by_down)
                upper = self._greatest(up[i] & up[j], by_up)
                if lower is None or upper is None:
                    raise DomainError(
                        f"{self.elements[i]!r} and {self.elements[j]!r} lack a "
                        f"{'meet' if lower is None else 'join'}"
                    )
                meet[i][j] = meet[j][i] = lower
                join[i][j] = join[j][i] = upper
        self._meet = meet
        self._join = join
        everything = (1 << n) - 1
        self._bottom = by_up.get(everything)
        self._top = by_down.get(everything)
        assert self._bottom is not None and self._top is not None
        self.bottom = self.elements[self._bottom]
        self.top = self.elements[self._top]

    @staticmethod
    def _greatest(bounds: int, by_set: dict[int, int]) -> int | None:
        # the greatest element of a set of bounds is the one whose own
        # down-set (resp. up-set) is exactly that set
        if bounds == 0:
            return None
        return by_set.get(bounds)

    @classmethod
    def from_covers(cls, elements: Sequence[Element], covers: Iterable[tuple[Element, Element]]) -> "FiniteLattice":
        """Build from a cover relation; ``(a, b)`` means ``a`` lies below ``b``."""
        above: dict[Element, set] = {e: {e} for e in elements}
        for a, b in covers:
            above[a].add(b)
        changed = True
        while changed:
            changed = False
            for e in elements:
                grown = set().union(*(above[f] for f in above[e]))
                if grown != above[e]:
                    above[e] = grown
                    changed = True
        return cls(elements, lambda a, b: b in above[a])

    @classmethod
    def chain(cls, length: int) -> "FiniteLattice":
        return cls(range(length), lambda a, b: a <= b)

    @classmethod
    def diamond(cls) -> "FiniteLattice":
        """The four-element lattice bot < a, b < top."""
        return cls.from_covers(
            ("bot", "a", "b", "top"),
            [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise DomainError(f"{x!r} is not an element of this lattice") from None

    def _require(self, x) -> None:
        self.index(x)

    def leq(self, x, y) -> bool:
        return bool(self._down[self.index(y)] >> self.index(x) & 1)

    def meet(self, x, y):
        return self.elements[self._meet[self.index(x)][self.index(y)]]

    def join(self, x, y):
        return self.elements[self._join[self.index(x)][self.index(y)]]

    def __repr__(self) -> str:
        return f"FiniteLattice(<{self.size} elements>)"


class PowersetLattice(Lattice):
    """Subsets of ``universe`` ordered by inclusion, encoded as bitmasks."""

    def __init__(self, universe: Sequence[str]):
        self.universe = tuple(universe)
        if len(set(self.universe)) != len(self.universe):
            raise DomainError("duplicate atoms in universe")
        self._bit = {a: 1 << i for i, a in enumerate(self.universe)}
        self.width = len(self.universe)
        self.size = 1 << self.width
        self.bottom = 0
        self.top = self.size - 1

    @property
    def elements(self) -> range:
        return range(self.size)

    def _require(self, x) -> None:
        if type(x) is not int or not 0 <= x < self.size:
            raise DomainError(f"{x!r} is not a subset of a {self.width}-atom universe")

    def mask(self, atoms: Iterable[str]) -> int:
        m = 0
        for a in atoms:
            try:
                m |= self._bit[a]
            except KeyError:
                raise DomainError(f"unknown atom {a!r}") from None
        return m

    def atoms(self, mask: int) -> tuple[str, ...]:
        self._require(mask)
        return tuple(a for i, a in enumerate(self.universe) if mask >> i & 1)

    def leq(self, x: int, y: int) -> bool:
        self._require(x)
        self._require(y)
        return x & ~y == 0

    def meet(self, x: int, y: int) -> int:
        self._require(x)
        self._require(y)
        return x & y

    def join(self, x: int, y: int) -> int:
        self._require(x)
        self._require(y)
        return x | y

    def interval(self, x: int, y: int) -> Iterator[int]:
        self._require(x)
        self._require(y)
        if x & ~y:
            raise EmptyIntervalError(f"empty interval: {x:#b} is not below {y:#b}")
        return _supersets_within(x, y & ~x)

    def consistent_pairs(self) -> Iterator[tuple[int, int]]:
        for y in range(self.size):
            for x in _supersets_within(0, y):
                yield x, y

    def count_consistent_pairs(self) -> int:
        return 3 ** self.width

    def __repr__(self) -> str:
        return f"PowersetLattice({list(self.universe)!r})"


def _supersets_within(base: int, free: int) -> Iterator[int]:
    # binary counting over the bits of ``free``
    sub = 0
    while True:
        yield base | sub
        if sub == free:
            return
        sub = ((sub | ~free) + 1) & free


def leq(lat: Lattice, x, y) -> bool:
    return lat.leq(x, y)


def glb(lat: Lattice, items: Iterable):
    return lat.glb(items)


def lub(lat: Lattice, items: Iterable):
    return lat.lub(items)


def interval(lat: Lattice, x, y) -> Iterator:
    return lat.interval(x, y)


def lfp_monotone(lat: Lattice, f: LatticeOperator, floor=None, ceiling=None, *, check: bool = False):
    return lat.lfp(f, floor, ceiling, check=check)
