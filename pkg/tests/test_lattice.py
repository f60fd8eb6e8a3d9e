import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from aftlp.errors import DomainError, EmptyIntervalError, MonotonicityError
from aftlp.lattice import FiniteLattice, PowersetLattice, glb, interval, leq, lfp_monotone, lub
from aftlp.lp import normalize, tp
from aftlp.program import parse
from aftlp.random_lattices import closure_lattice, m3, n5, random_monotone


@pytest.fixture
def pq():
    return PowersetLattice(["p", "q"])


def test_leq_examples(pq):
    assert leq(pq, 0, pq.mask("p"))
    assert not leq(pq, pq.mask("p"), pq.mask("q"))
    assert leq(pq, pq.top, pq.top)
    d = FiniteLattice.diamond()
    assert leq(d, d.top, d.top)
    assert not leq(d, "a", "b")


def test_foreign_handles_raise(pq):
    with pytest.raises(DomainError):
        pq.leq(0, 4)
    with pytest.raises(DomainError):
        pq.leq(True, 0)
    d = FiniteLattice.diamond()
    with pytest.raises(DomainError):
        d.leq("a", "z")
    with pytest.raises(DomainError):
        d.glb(["a", ["unhashable"]])


def test_glb_lub_examples(pq):
    assert glb(pq, [pq.mask("pq"), pq.mask("p")]) == pq.mask("p")
    assert lub(pq, []) == pq.bottom == 0
    assert glb(pq, []) == pq.top
    d = FiniteLattice.diamond()
    assert glb(d, ["a", "b"]) == "bot"
    assert lub(d, ["a", "b"]) == "top"


def test_interval_examples(pq):
    assert len(list(interval(pq, 0, pq.top))) == 4
    assert list(interval(pq, 2, 2)) == [2]
    pqr = PowersetLattice(["p", "q", "r"])
    got = {pqr.atoms(z) for z in interval(pqr, pqr.mask("p"), pqr.top)}
    assert got == {("p",), ("p", "q"), ("p", "r"), ("p", "q", "r")}
    assert list(interval(pqr, 0, pqr.top)) == list(range(8))


def test_empty_interval_raises(pq):
    with pytest.raises(EmptyIntervalError):
        list(interval(pq, pq.mask("p"), pq.mask("q")))
    d = FiniteLattice.diamond()
    with pytest.raises(EmptyIntervalError):
        d.interval("a", "b")


def test_lfp_examples(pq):
    assert lfp_monotone(pq, lambda x: x) == 0
    assert lfp_monotone(pq, lambda x: 2) == 2
    # T_P for {p. q :- p.}; least of the fixpoints found by enumeration
    NP = normalize(parse("p. q :- p."))
    lat = NP.lattice
    fixpoints = [I for I in lat.elements if tp(NP, I) == I]
    least = [I for I in fixpoints if all(lat.leq(I, J) for J in fixpoints)]
    assert least == [lat.mask("pq")]
    assert lfp_monotone(lat, lambda I: tp(NP, I)) == lat.mask("pq")


def test_lfp_with_floor_and_ceiling():
    c = FiniteLattice.chain(6)
    assert c.lfp(lambda x: min(x + 1, 3), floor=1) == 3
    assert c.lfp(lambda x: x, floor=2, ceiling=4) == 2
    with pytest.raises(MonotonicityError):
        c.lfp(lambda x: 5, ceiling=4)
    with pytest.raises(MonotonicityError):
        c.lfp(lambda x: 0, floor=2)


def test_lfp_rejects_non_monotone():
    c = FiniteLattice.chain(3)
    flip = {0: 2, 1: 1, 2: 0}
    with pytest.raises(MonotonicityError):
        c.lfp(flip.__getitem__)
    with pytest.raises(MonotonicityError):
        c.lfp({0: 1, 1: 1, 2: 0}.__getitem__, check=True)


def test_rejects_non_lattices():
    # two incomparable maxima: no join
    with pytest.raises(DomainError):
        FiniteLattice.from_covers(("0", "a", "b"), [("0", "a"), ("0", "b")])
    with pytest.raises(DomainError):
        FiniteLattice([1, 2], lambda a, b: True)
    with pytest.raises(DomainError):
        FiniteLattice([1, 2], lambda a, b: False)
    # bowtie: a, b both below c and d
    with pytest.raises(DomainError):
        FiniteLattice.from_covers(
            ("0", "a", "b", "c", "d", "1"),
            [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
        )


def _lattice_axioms(lat):
    elems = list(lat.elements)
    for x, y, z in product(elems, repeat=3):
        if lat.leq(x, y) and lat.leq(y, z):
            assert lat.leq(x, z)
    for x, y in product(elems, repeat=2):
        m, j = lat.meet(x, y), lat.join(x, y)
        lower = [z for z in elems if lat.leq(z, x) and lat.leq(z, y)]
        upper = [z for z in elems if lat.leq(x, z) and lat.leq(y, z)]
        assert m in lower and all(lat.leq(z, m) for z in lower)
        assert j in upper and all(lat.leq(j, z) for z in upper)
        if lat.leq(x, y) and lat.leq(y, x):
            assert x == y
    for x in elems:
        assert lat.leq(lat.bottom, x) and lat.leq(x, lat.top)


@pytest.mark.parametrize("make", [FiniteLattice.diamond, m3, n5, lambda: FiniteLattice.chain(5),
                                  lambda: PowersetLattice("abc")])
def test_named_lattices_satisfy_axioms(make):
    _lattice_axioms(make())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_closure_lattices_satisfy_axioms(seed):
    lat = closure_lattice(random.Random(seed))
    assert lat.size <= 32
    _lattice_axioms(lat)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.data())
def test_powerset_meet_join_are_bitwise(n, data):
    lat = PowersetLattice([f"x{i}" for i in range(n)])
    x = data.draw(st.integers(0, lat.top))
    y = data.draw(st.integers(0, lat.top))
    assert lat.meet(x, y) == x & y
    assert lat.join(x, y) == x | y
    # generic definitions by enumeration
    below = [z for z in lat.elements if lat.leq(z, x) and lat.leq(z, y)]
    assert lat.meet(x, y) == max(below, key=lambda z: bin(z).count("1"))
    assert lat.glb([x, y]) == x & y and lat.lub([x, y]) == x | y


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_interval_cardinality_matches_filter(seed):
    rng = random.Random(seed)
    lat = closure_lattice(rng) if rng.random() < 0.5 else PowersetLattice("abcd")
    elems = list(lat.elements)
    x, y = rng.choice(elems), rng.choice(elems)
    y = lat.join(x, y)
    expected = [z for z in elems if lat.leq(x, z) and lat.leq(z, y)]
    assert list(lat.interval(x, y)) == expected


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_lfp_is_least_prefixpoint(seed):
    rng = random.Random(seed)
    lat = closure_lattice(rng) if rng.random() < 0.7 else PowersetLattice("abcdef")
    f = random_monotone(lat, rng)
    lat.check_monotone(f.__getitem__)
    prefix = [x for x in lat.elements if lat.leq(f[x], x)]
    assert lat.lfp(f.__getitem__) == lat.glb(prefix) == lat.least_prefixpoint(f.__getitem__)


def test_consistent_pairs_powerset_count():
    lat = PowersetLattice("abc")
    pairs = list(lat.consistent_pairs())
    assert len(pairs) == 27 == lat.count_consistent_pairs()
    assert len(set(pairs)) == 27
    assert all(x & ~y == 0 for x, y in pairs)
