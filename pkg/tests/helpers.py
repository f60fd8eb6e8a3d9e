"""Brute-force checkers shared by the property tests and the acceptance suite."""

from __future__ import annotations

import random

from aftlp.aft import (
    ConsistentPair,
    InconsistentRevision,
    exact_stable_fixpoints,
    kripke_kleene,
    lower_revision,
    stable_revision,
    ultimate_of,
    upper_revision,
    well_founded,
    chain_lub,
)


def prec(lat, p, q) -> bool:
    (a, b), (c, d) = p, q
    return lat.leq(a, c) and lat.leq(d, b)


def brute_lub(lat, chain):
    """Least ``<=_p`` upper bound of ``chain`` among all consistent pairs."""
    bounds = [r for r in lat.consistent_pairs() if all(prec(lat, c, r) for c in chain)]
    least = [r for r in bounds if all(prec(lat, r, s) for s in bounds)]
    assert len(least) == 1
    return least[0]


def classify_pairs(A):
    """Reliable, prudent and stable pairs of ``A`` by direct evaluation.

    Prudence uses the least pre-fixpoint characterisation of the lower
    revision rather than Kleene iteration.
    """
    lat = A.lattice
    reliable, prudent, stable = [], [], []
    for a, b in lat.consistent_pairs():
        if not prec(lat, (a, b), A.apply(a, b)):
            continue
        reliable.append((a, b))
        down = lat.least_prefixpoint(lambda x: A.a1(x, b), lat.bottom, b)
        up = lat.least_prefixpoint(lambda y: A.a2(a, y), a, lat.top)
        if lat.leq(a, down):
            prudent.append((a, b))
        if (down, up) == (a, b):
            stable.append((a, b))
    return reliable, prudent, stable


def algebraic_violations(A, rng: random.Random, samples: int = 60) -> list[str]:
    """Check the revision, prudence and well-founded theorems on ``A``."""
    lat = A.lattice
    out: list[str] = []
    reliable, prudent, stable = classify_pairs(A)

    def rev(p):
        return tuple(stable_revision(A, ConsistentPair(*p, lat)))

    for a, b in reliable:
        if lower_revision(A, b) != lat.least_prefixpoint(lambda x: A.a1(x, b), lat.bottom, b):
            out.append(f"lower revision of {b!r} is not the least pre-fixpoint")
        if upper_revision(A, a) != lat.least_prefixpoint(lambda y: A.a2(a, y), a, lat.top):
            out.append(f"upper revision of {a!r} is not the least pre-fixpoint")

    # stable pairs are fixpoints
    for p in stable:
        if A.apply(*p) != p:
            out.append(f"stable pair {p} is not a fixpoint")

    # prudent revision: consistent, reliable, prudent, and more precise
    prudent_set = set(prudent)
    for p in prudent:
        r = stable_revision(A, ConsistentPair(*p, lat))
        if isinstance(r, InconsistentRevision):
            out.append(f"prudent {p} revised to inconsistent {tuple(r)}")
            continue
        r = tuple(r)
        if r not in prudent_set:
            out.append(f"revision {r} of prudent {p} is not prudent")
        if not prec(lat, p, r) or not prec(lat, A.apply(*p), r):
            out.append(f"revision {r} of prudent {p} is not above it and its image")

    # revision monotonicity: reliable p <=_p prudent q
    pairs = [(p, q) for p in reliable for q in prudent if prec(lat, p, q)]
    for p, q in rng.sample(pairs, min(samples, len(pairs))):
        if not prec(lat, rev(p), rev(q)):
            out.append(f"revision not monotone on {p} <=_p {q}")

    # reliable p below a stable s revises below s
    pairs = [(p, s) for p in reliable for s in stable if prec(lat, p, s)]
    for p, s in rng.sample(pairs, min(samples, len(pairs))):
        if not prec(lat, rev(p), s):
            out.append(f"revision of {p} escapes stable {s}")

    # chains of prudent pairs have a prudent lub
    for _ in range(min(samples // 4, len(prudent))):
        chain = [rng.choice(prudent)]
        for _ in range(rng.randint(0, 4)):
            ups = [q for q in prudent if q != chain[-1] and prec(lat, chain[-1], q)]
            if not ups:
                break
            chain.append(rng.choice(ups))
        rng.shuffle(chain)
        top = tuple(chain_lub([ConsistentPair(*c, lat) for c in chain]))
        if top != brute_lub(lat, chain):
            out.append(f"chain_lub of {chain} differs from brute force")
        if top not in prudent_set:
            out.append(f"lub {top} of prudent chain {chain} is not prudent")

    # well-founded fixpoint: least stable pair, above Kripke-Kleene
    wf = tuple(well_founded(A))
    kk = tuple(kripke_kleene(A))
    if wf not in stable:
        out.append(f"well-founded {wf} is not stable")
    for s in stable:
        if not prec(lat, wf, s):
            out.append(f"well-founded {wf} not below stable {s}")
    if not prec(lat, kk, wf):
        out.append(f"Kripke-Kleene {kk} not below well-founded {wf}")
    exact = [a for a, b in stable if a == b]
    if sorted(map(repr, exact_stable_fixpoints(A))) != sorted(map(repr, exact)):
        out.append("exact_stable_fixpoints disagrees with enumeration")
    return out


def monotone_violations(lat, O: dict) -> list[str]:
    U = ultimate_of(lat, O.__getitem__)
    out = []
    for x, y in lat.consistent_pairs():
        if U.apply(x, y) != (O[x], O[y]):
            out.append(f"ultimate of monotone O at {(x, y)} is not (O(x), O(y))")
    least = lat.lfp(O.__getitem__)
    if tuple(well_founded(U)) != (least, least):
        out.append("ultimate well-founded fixpoint of monotone O is not (lfp, lfp)")
    if exact_stable_fixpoints(U) != [least]:
        out.append("monotone O has ultimate stable fixpoints other than lfp")
    return out


def antimonotone_violations(lat, O: dict) -> list[str]:
    U = ultimate_of(lat, O.__getitem__)
    out = []
    for x, y in lat.consistent_pairs():
        if U.apply(x, y) != (O[y], O[x]):
            out.append(f"ultimate of antimonotone O at {(x, y)} is not (O(y), O(x))")
    if kripke_kleene(U) != well_founded(U):
        out.append("KK and WF differ for antimonotone O")
    stable = set(exact_stable_fixpoints(U))
    for x in lat.elements:
        if O[x] == x and x not in stable:
            out.append(f"fixpoint {x!r} of antimonotone O is not ultimate stable")
    return out

