"""Program generators: the exists-forall gadget and random fuzzing inputs."""

from __future__ import annotations

import random
from collections.abc import Sequence

from .dnf import DnfFormula
from .errors import DomainError
from .program import Literal, Program, Rule, check_atom, neg, pos

SHAPES = ("general", "horn", "purely-negative", "stratified")


def gen_sigma2_program(phi: DnfFormula, xs: Sequence[str], ys: Sequence[str], *,
                       p: str = "p", q: str = "q", suffix: str = "_prime") -> Program:
    """Program with a complete ultimate stable model iff some choice of
    ``xs`` makes ``phi`` a tautology in ``ys``.

    Rules, with ``x' = x + suffix`` and ``phi'`` obtained from ``phi`` by
    replacing each ``not x`` by ``x'``::

        x :- not x'.    x' :- not x.     (every x)
        y :- phi'.                       (every y, one rule per disjunct)
        p :- phi'.
        q :- not p, not q.
    """
    xs, ys = [check_atom(x) for x in xs], [check_atom(y) for y in ys]
    variables = set(xs) | set(ys)
    if len(variables) != len(xs) + len(ys):
        raise DomainError("xs and ys must be disjoint and free of repeats")
    stray = phi.atoms() - variables
    if stray:
        raise DomainError(f"phi mentions atoms outside xs and ys: {sorted(stray)}")
    primed = {x: check_atom(x + suffix) for x in xs}
    fresh = [*primed.values(), check_atom(p), check_atom(q)]
    clash = (set(fresh) & variables) | ({f for f in fresh if fresh.count(f) > 1})
    if clash:
        raise DomainError(f"reserved atoms clash with formula variables: {sorted(clash)}")

    phi_primed = [
        tuple(pos(primed[lit.atom]) if lit.negated and lit.atom in primed else lit for lit in conj)
        for conj in phi.disjuncts
    ]
    rules: list[Rule] = []
    for x in xs:
        rules.append(Rule(x, (neg(primed[x]),)))
        rules.append(Rule(primed[x], (neg(x),)))
    for head in [*ys, p]:
        rules.extend(Rule(head, conj) for conj in phi_primed)
    rules.append(Rule(q, (neg(p), neg(q))))
    return Program(rules, [*xs, *primed.values(), *ys, p, q])


def atom_names(n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"a{i:0{width}d}" for i in range(n)]


def gen_random_program(n_atoms: int, n_rules: int, max_body: int, seed: int,
                       shape: str = "general") -> Program:
    """Deterministic random program over atoms ``a0 .. a{n-1}``.

    ``horn`` bodies are positive, ``purely-negative`` bodies negative, and
    ``stratified`` programs draw a random level per atom and only negate
    atoms of strictly lower level than the head.
    """
    if n_atoms < 1 or n_rules < 0 or max_body < 0:
        raise DomainError("need n_atoms >= 1, n_rules >= 0 and max_body >= 0")
    if shape not in SHAPES:
        raise DomainError(f"unknown shape {shape!r}; expected one of {', '.join(SHAPES)}")
    rng = random.Random(seed)
    atoms = atom_names(n_atoms)
    level = {a: rng.randrange(1 + n_atoms // 2) for a in atoms}
    rules = []
    for _ in range(n_rules):
        head = rng.choice(atoms)
        body: list[Literal] = []
        for _ in range(rng.randint(0, max_body)):
            if shape == "horn":
                body.append(pos(rng.choice(atoms)))
            elif shape == "purely-negative":
                body.append(neg(rng.choice(atoms)))
            elif shape == "general":
                body.append(Literal(rng.choice(atoms), rng.random() < 0.5))
            else:
                lower = [a for a in atoms if level[a] < level[head]]
                same_or_lower = [a for a in atoms if level[a] <= level[head]]
                if lower and rng.random() < 0.5:
                    body.append(neg(rng.choice(lower)))
                else:
                    body.append(pos(rng.choice(same_or_lower)))
        rules.append(Rule(head, tuple(body)))
    return Program(rules, atoms)


def stratification(P: Program) -> dict[str, int] | None:
    """A level mapping with negation only into strictly lower levels, or None."""
    level = dict.fromkeys(P.universe, 0)
    limit = len(P.universe)
    changed = True
    while changed:
        changed = False
        for r in P.rules:
            for lit in r.body:
                need = level[lit.atom] + (1 if lit.negated else 0)
                if level[r.head] < need:
                    level[r.head] = need
                    if need > limit:
                        return None
                    changed = True
    return level


def tp_preserving_variant(P: Program, rng: random.Random) -> Program:
    """A syntactically different program with the same one-step operator.

    Rules are split on a random atom (``h :- B`` becomes ``h :- B, a`` and
    ``h :- B, not a``), duplicated, padded with contradictory rules and
    shuffled.
    """
    atoms = list(P.universe)
    rules: list[Rule] = []
    for r in P.rules:
        roll = rng.random()
        if roll < 0.3:
            a = rng.choice(atoms)
            rules.append(Rule(r.head, r.body + (pos(a),)))
            rules.append(Rule(r.head, r.body + (neg(a),)))
        elif roll < 0.45:
            rules.extend([r, r])
        else:
            rules.append(r)
    for _ in range(rng.randint(0, 2)):
        a = rng.choice(atoms)
        rules.append(Rule(rng.choice(atoms), (pos(a), neg(a))))
    rng.shuffle(rules)
    return Program(rules, atoms)
