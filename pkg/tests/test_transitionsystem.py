"""
LTS semantics: enabledness, the two firing rules and reachability
"""

import random

import pytest

from fairway.Pathway import loadExamplePathway, parsePathway
from fairway.PathwayGenerator import randomPathway
from fairway.SpeciesDetails import bitsSet, maskOf
from fairway.TransitionSystem import (
    StateBudgetExceeded,
    buildLts,
    compileReaction,
    enabled,
    step,
)


def stateOf(p, *names):
    return maskOf(p.speciesNamed(n).id for n in names)


def test_catalysed_step():
    "{B, D} with B -> A [D] gives {A, D}"
    p = loadExamplePathway()
    r2 = p.reactionById("R2")
    assert enabled(stateOf(p, "B", "D"), r2)
    assert step(stateOf(p, "B", "D"), r2) == stateOf(p, "A", "D")


def test_missing_catalyst():
    p = loadExamplePathway()
    assert not enabled(stateOf(p, "B"), p.reactionById("R2"))
    assert step(stateOf(p, "B"), p.reactionById("R2")) is None


def test_uncatalysed_step_keeps_reactants():
    p = parsePathway("R1: A -> B\n")
    r = p.reactions[0]
    assert step(stateOf(p, "A"), r) == stateOf(p, "A", "B")


def test_products_present_disable():
    p = parsePathway("R1: A -> B [C]\n")
    assert not enabled(stateOf(p, "A", "B", "C"), p.reactions[0])


def test_compiled_masks():
    p = loadExamplePathway()
    rule = compileReaction(p.reactionById("R4"))
    assert rule.label == "R4"
    assert rule.reactantMask == stateOf(p, "C")
    assert rule.productMask == stateOf(p, "A")
    assert rule.catalystMask == stateOf(p, "D")
    assert rule.consumes and rule.guarded and rule.fair


def test_example_lts():
    "three states, four edges, no deadlock"
    p = loadExamplePathway()
    lts = buildLts(p)
    assert lts.numStates == 3
    assert lts.numEdges == 4
    assert lts.deadlocks == frozenset()
    assert sorted(sorted(lts.stateNames(i)) for i in range(lts.numStates)) == [
        ["A", "D"],
        ["B", "D"],
        ["C", "D"],
    ]
    assert lts.states[lts.initial] == p.initialState()
    assert lts.stats() == "states=3 edges=4 deadlocks=0"
    assert lts.label(0) == "R1"
    assert lts.enabledRules(0) == frozenset([0, 2])


def test_dump():
    lts = buildLts(loadExamplePathway())
    lines = lts.dump().splitlines()
    assert len(lines) == 4
    assert lines[0] == "1010\tR1\t0110"
    assert lines[1] == "1010\tR3\t0011"


def test_additive_deadlock():
    "without a catalyst the reactant stays and the guard stops a second firing"
    p = parsePathway("R1: A -> B\ninit: A\n")
    lts = buildLts(p)
    assert lts.numStates == 2
    assert lts.numEdges == 1
    assert len(lts.deadlocks) == 1
    (dead,) = lts.deadlocks
    assert lts.stateNames(dead) == ["A", "B"]


def test_empty_initial_state():
    lts = buildLts(parsePathway("R1: A -> B\n"))
    assert lts.numStates == 1
    assert lts.deadlocks == frozenset([0])


def test_state_cap():
    with pytest.raises(StateBudgetExceeded) as info:
        buildLts(loadExamplePathway(), cap=2)
    assert info.value.cap == 2


def test_firing_rules_on_random_states():
    "enabledness and both effects, recomputed with plain sets of names"
    rng = random.Random(17)
    for _ in range(300):
        p = randomPathway(rng)
        width = len(p.species)
        for _ in range(10):
            state = rng.getrandbits(width) if width else 0
            present = {p.species[i].name for i in bitsSet(state, width)}
            for r in p.reactions:
                reactants = {s.name for s in r.reactants}
                products = {s.name for s in r.products}
                catalysts = {s.name for s in r.catalysts}
                expected = (
                    reactants <= present and catalysts <= present and not products <= present
                )
                assert enabled(state, r) == expected, (str(r), sorted(present))
                target = step(state, r)
                if not expected:
                    assert target is None
                    continue
                if r.isCatalysed():
                    after = (present - reactants) | products
                else:
                    after = present | products
                assert {p.species[i].name for i in bitsSet(target, width)} == after


def test_no_self_loops():
    "a firing reaction always adds a missing product"
    rng = random.Random(23)
    for _ in range(500):
        lts = buildLts(randomPathway(rng))
        for i, out in enumerate(lts.edges):
            assert all(t != i for _, t in out), lts.dump()
