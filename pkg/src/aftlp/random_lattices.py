"""Random finite lattices, operators and valid approximators for property tests."""

from __future__ import annotations

import random
from itertools import combinations

from .aft import Approximator, ultimate_of, least_precise_of
from .lattice import FiniteLattice, Lattice

APPROXIMATOR_KINDS = ("ultimate", "least-precise", "blend", "widened")


def closure_lattice(rng: random.Random, ground: int = 5, generators: int = 4) -> FiniteLattice:
    """Intersection closure of random subsets of ``range(ground)``, plus the full set.

    Any intersection-closed family containing the full set is a complete
    lattice under inclusion; with ``ground <= 5`` it has at most 32 elements.
    """
    full = frozenset(range(ground))
    family = {full}
    for _ in range(generators):
        family.add(frozenset(i for i in range(ground) if rng.random() < 0.5))
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(family), 2):
            if a & b not in family:
                family.add(a & b)
                changed = True
    elements = sorted(family, key=lambda s: (len(s), sorted(s)))
    return FiniteLattice(elements, lambda a, b: a <= b)


def m3() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ("0", "a", "b", "c", "1"),
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


def n5() -> FiniteLattice:
    return FiniteLattice.from_covers(
        ("0", "a", "b", "c", "1"),
        [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )


def random_lattice(rng: random.Random) -> Lattice:
    roll = rng.random()
    if roll < 0.2:
        return FiniteLattice.chain(rng.randint(1, 8))
    if roll < 0.25:
        return FiniteLattice.diamond()
    if roll < 0.3:
        return m3()
    if roll < 0.35:
        return n5()
    return closure_lattice(rng, ground=rng.randint(4, 5), generators=rng.randint(4, 14))


def random_operator(lat: Lattice, rng: random.Random) -> dict:
    elements = list(lat.elements)
    return {x: rng.choice(elements) for x in elements}


def _guarded(lat: Lattice, rng: random.Random, count: int):
    elements = list(lat.elements)
    return [(rng.choice(elements), rng.choice(elements)) for _ in range(count)]


def random_monotone(lat: Lattice, rng: random.Random) -> dict:
    """``x -> lub{t : (s, t) in guards, s <= x}``, which is order-preserving."""
    guards = _guarded(lat, rng, rng.randint(1, 6))
    return {x: lat.lub(t for s, t in guards if lat.leq(s, x)) for x in lat.elements}


def random_antimonotone(lat: Lattice, rng: random.Random) -> dict:
    """``x -> glb{t : (s, t) in guards, s <= x}``, which is order-reversing."""
    guards = _guarded(lat, rng, rng.randint(1, 6))
    return {x: lat.glb(t for s, t in guards if lat.leq(s, x)) for x in lat.elements}


def random_mixed(lat: Lattice, rng: random.Random) -> dict:
    """Join of a monotone and an antimonotone operator, the shape of ``tp``."""
    up, down = random_monotone(lat, rng), random_antimonotone(lat, rng)
    return {x: lat.join(up[x], down[x]) for x in lat.elements}


def _tabulate(A: Approximator) -> dict:
    return {(x, y): A.apply(x, y) for x, y in A.lattice.consistent_pairs()}


def random_approximator(lat: Lattice, operator: dict, rng: random.Random, kind: str | None = None) -> Approximator:
    """A tabulated partial approximation of ``operator``.

    ``blend`` uses the ultimate approximator on a random ``<=_p``-upward
    closed set of pairs and the least precise one elsewhere.  ``widened``
    applies the ultimate approximator to ``(x meet c, y join d)`` on
    non-exact pairs for random ``c, d``.  Both are ``<=_p``-monotone and
    agree with ``operator`` on exact pairs.
    """
    kind = kind or rng.choice(APPROXIMATOR_KINDS)
    O = operator.__getitem__
    ultimate = ultimate_of(lat, O)
    if kind == "ultimate":
        table = _tabulate(ultimate)
    elif kind == "least-precise":
        table = _tabulate(least_precise_of(lat, O))
    elif kind == "blend":
        pairs = list(lat.consistent_pairs())
        seeds = rng.sample(pairs, rng.randint(0, min(4, len(pairs))))
        lp = least_precise_of(lat, O)

        def above_seed(x, y):
            return any(lat.leq(a, x) and lat.leq(y, b) for a, b in seeds)

        table = {(x, y): (ultimate if above_seed(x, y) else lp).apply(x, y) for x, y in pairs}
    elif kind == "widened":
        elements = list(lat.elements)
        c, d = rng.choice(elements), rng.choice(elements)
        table = {
            (x, y): ultimate.apply(x, y) if x == y else ultimate.apply(lat.meet(x, c), lat.join(y, d))
            for x, y in lat.consistent_pairs()
        }
    else:
        raise ValueError(f"unknown approximator kind {kind!r}")
    return Approximator.from_table(lat, table, kind)
