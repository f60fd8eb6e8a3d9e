"""The oracles themselves, checked on hand-worked programs."""

import pytest

from aftlp.aft import ConsistentPair
from aftlp.dnf import DnfFormula
from aftlp.errors import PreconditionError, ResourceCapError
from aftlp.lp import fitting_approximator, normalize, ultimate_lp
from aftlp.oracle import (
    brute_exact_stable,
    brute_gl_stable_models,
    brute_supported_models,
    brute_ultimate,
    brute_well_founded,
    oracle_tp,
    qbf_exists_forall,
)
from aftlp.program import parse

P1 = normalize(parse("p :- not p. p :- p."))
CHOICE = normalize(parse("p :- not q. q :- not p."))


def masks(NP, *sets):
    return {NP.mask(s) for s in sets}


def test_oracle_tp():
    NP = normalize(parse("p. q :- p, not r."))
    assert oracle_tp(NP, frozenset()) == {"p"}
    assert oracle_tp(NP, frozenset({"p"})) == {"p", "q"}
    assert oracle_tp(NP, frozenset({"p", "r"})) == {"p"}


def test_brute_ultimate():
    lat = P1.lattice
    assert brute_ultimate(P1, 0, lat.top) == ConsistentPair(lat.top, lat.top, lat)
    assert brute_ultimate(CHOICE, 0, CHOICE.lattice.top) == ConsistentPair(0, CHOICE.lattice.top, CHOICE.lattice)
    with pytest.raises(PreconditionError):
        brute_ultimate(CHOICE, 1, 2)
    with pytest.raises(ResourceCapError):
        brute_ultimate(CHOICE, 0, 3, cap=1)


def test_model_oracles():
    assert brute_supported_models(P1) == masks(P1, "p")
    assert brute_gl_stable_models(P1) == set()
    assert brute_supported_models(CHOICE) == masks(CHOICE, "p", "q")
    assert brute_gl_stable_models(CHOICE) == masks(CHOICE, "p", "q")
    loop = normalize(parse("p :- p."))
    assert brute_supported_models(loop) == masks(loop, "", "p")
    assert brute_gl_stable_models(loop) == masks(loop, "")
    with pytest.raises(ResourceCapError):
        brute_gl_stable_models(CHOICE, cap=1)


def test_exact_stable_oracle():
    assert brute_exact_stable(ultimate_lp(P1)) == masks(P1, "p")
    assert brute_exact_stable(fitting_approximator(P1)) == set()
    assert brute_exact_stable(ultimate_lp(CHOICE)) == masks(CHOICE, "p", "q")


def test_alternating_fixpoint():
    lat = P1.lattice
    assert brute_well_founded(P1) == ConsistentPair(0, lat.top, lat)
    NP = normalize(parse("a. b :- not a. c :- not b. d :- not d."))
    wf = brute_well_founded(NP)
    assert NP.atoms(wf.lower) == ("a", "c")
    assert NP.atoms(wf.upper) == ("a", "c", "d")


def test_qbf_oracle():
    assert qbf_exists_forall(DnfFormula.of(["y"], ["not y"]), [], ["y"])
    assert not qbf_exists_forall(DnfFormula.of(["y"]), [], ["y"])
    # x xnor y: no single x works for both values of y
    xnor = DnfFormula.of(["x", "y"], ["not x", "not y"])
    assert not qbf_exists_forall(xnor, ["x"], ["y"])
    assert qbf_exists_forall(DnfFormula.of(["x"], ["y", "not x"]), ["x"], ["y"])
    with pytest.raises(ResourceCapError):
        qbf_exists_forall(xnor, ["x"], ["y"], cap=1)
