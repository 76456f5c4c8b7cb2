"""
the fair-SCC checker on small hand-checked systems
"""

import random

import networkx as nx
import pytest

from fairway.AbstractPathway import Lasso, Path
from fairway.FairChecker import check, compassionPairs, fairSccs, ltsGraph
from fairway.Formula import AU, AUw, FormulaScopeError, Or, loadExampleProperties, parseFormula
from fairway.Pathway import loadExamplePathway, parsePathway, printPathway
from fairway.PathOracle import isLassoFair, isPathOf
from fairway.PathwayGenerator import randomFormula, randomPathway, shuffledPathway
from fairway.TransitionSystem import buildLts


@pytest.fixture
def example():
    p = loadExamplePathway()
    return p, buildLts(p)


def verdicts(lts, fairness):
    props = loadExampleProperties(species=lts.names)
    pairs = compassionPairs(lts, fairness)
    return {name: check(lts, pairs, f).verdict for name, f in props.items()}


def asBits(lts, witness):
    "state indices to bit vectors"
    if isinstance(witness, Lasso):
        return Lasso(
            asBits(lts, witness.stem),
            witness.cycleLabels,
            tuple(lts.states[i] for i in witness.cycleStates),
        )
    return Path(tuple(lts.states[i] for i in witness.states), witness.labels)


def test_with_fairness(example):
    _, lts = example
    assert verdicts(lts, True) == {
        "reachC": True,
        "keepD": True,
        "neverC": False,
        "untilC": True,
        "weakUntilC": True,
    }


def test_without_fairness(example):
    _, lts = example
    assert verdicts(lts, False) == {
        "reachC": False,
        "keepD": True,
        "neverC": False,
        "untilC": False,
        "weakUntilC": True,
    }


def test_unfair_lasso(example):
    "the A/B toggle that never produces C"
    _, lts = example
    result = check(lts, [], parseFormula("AF C"))
    witness = result.witness
    assert isinstance(witness, Lasso)
    assert witness.stem.states == (0,)
    assert witness.cycleLabels == ("R1", "R2")
    assert [sorted(lts.stateNames(i)) for i in witness.cycleStates] == [["A", "D"], ["B", "D"]]
    assert isPathOf(lts, asBits(lts, witness))


def test_finite_counterexample(example):
    _, lts = example
    result = check(lts, compassionPairs(lts), parseFormula("AG !C"))
    assert not result.verdict
    assert result.witness.labels == ("R3",)
    assert lts.stateNames(result.witness.last) == ["D", "C"]


def test_strong_until_left_fails(example):
    _, lts = example
    result = check(lts, compassionPairs(lts), parseFormula("A[A U C]"))
    assert not result.verdict
    assert result.witness.labels == ("R1",)


def test_true_has_no_witness(example):
    _, lts = example
    result = check(lts, compassionPairs(lts), parseFormula("AF C"))
    assert result.verdict
    assert result.witness is None
    assert result.holdsAt(1) and result.holdsAt(2)


def test_fair_sccs(example):
    _, lts = example
    pairs = compassionPairs(lts)
    assert fairSccs(lts, pairs) == [frozenset([0, 1, 2])]
    withoutC = [i for i in range(lts.numStates) if "C" not in lts.stateNames(i)]
    assert fairSccs(lts, pairs, withoutC) == []
    assert fairSccs(lts, [], withoutC) == [frozenset(withoutC)]


def test_stats(example):
    _, lts = example
    stats = check(lts, compassionPairs(lts), parseFormula("AF C")).stats
    assert stats["states"] == 3
    assert stats["edges"] == 4
    assert stats["sccs"] == 1
    assert stats["fair_sccs"] == 1
    assert stats["time_ms"] >= 0


def test_deadlocks_are_maximal():
    "a finite maximal path counts as a path"
    lts = buildLts(parsePathway("R1: A -> B\ninit: A\n"))
    pairs = compassionPairs(lts)
    assert check(lts, pairs, parseFormula("AF B")).verdict
    assert check(lts, pairs, parseFormula("AG A")).verdict
    assert check(lts, pairs, parseFormula("A[A U B]")).verdict
    result = check(lts, pairs, parseFormula("AF !A"))
    assert not result.verdict
    assert isinstance(result.witness, Path)
    assert result.witness.states == (0, 1)
    assert result.witness.last in lts.deadlocks


def test_fair_witness_is_fair():
    "a lasso reported under fairness satisfies the fairness filter"
    p = parsePathway("R1: A -> B [E]\nR2: B -> A [E]\nR3: X -> Y [B]\nR4: Y -> X [E]\ninit: A, E, X\n")
    lts = buildLts(p)
    pairs = compassionPairs(lts)
    result = check(lts, pairs, parseFormula("AF (A & Y)"))
    assert not result.verdict
    assert isinstance(result.witness, Lasso)
    lasso = asBits(lts, result.witness)
    assert isPathOf(lts, lasso)
    assert isLassoFair(lts, lasso, [q.label for q in pairs])


def test_unknown_species(example):
    _, lts = example
    with pytest.raises(FormulaScopeError):
        check(lts, [], parseFormula("AF Q"))


def satisfying(lts, pairs, f):
    return check(lts, pairs, f).sat[f]


def test_until_operators_are_monotone():
    "weakening either operand, or the strong until to the weak one, never loses a state"
    rng = random.Random(41)
    for _ in range(200):
        p = randomPathway(rng)
        lts = buildLts(p)
        pairs = compassionPairs(lts)
        species = p.speciesNames()
        f, g, h = (randomFormula(rng, species, 2) for _ in range(3))
        for until in (AU, AUw):
            base = satisfying(lts, pairs, until(f, g))
            assert base <= satisfying(lts, pairs, until(Or(f, h), g))
            assert base <= satisfying(lts, pairs, until(f, Or(g, h)))
        assert satisfying(lts, pairs, AU(f, g)) <= satisfying(lts, pairs, AUw(f, g))


def test_fairness_only_adds_truth():
    rng = random.Random(43)
    for _ in range(200):
        p = randomPathway(rng)
        lts = buildLts(p)
        for _ in range(5):
            f = randomFormula(rng, p.speciesNames())
            assert satisfying(lts, [], f) <= satisfying(lts, compassionPairs(lts), f), str(f)


def test_fairness_is_moot_without_cycles():
    "uncatalysed reactions only add species, so every path ends in a deadlock"
    rng = random.Random(47)
    for _ in range(200):
        p = randomPathway(rng, catalystProbability=0.0)
        lts = buildLts(p)
        assert nx.is_directed_acyclic_graph(ltsGraph(lts))
        for _ in range(5):
            f = randomFormula(rng, p.speciesNames())
            assert check(lts, [], f).verdict == check(lts, compassionPairs(lts), f).verdict


@pytest.mark.parametrize("fairness", [True, False])
def test_declaration_order_does_not_matter(fairness):
    rng = random.Random(53)
    for _ in range(200):
        p = randomPathway(rng)
        q = shuffledPathway(rng, p)
        first, second = buildLts(p), buildLts(q)
        assert first.numStates == second.numStates
        assert first.numEdges == second.numEdges
        for _ in range(5):
            f = randomFormula(rng, p.speciesNames())
            assert (
                check(first, compassionPairs(first, fairness), f).verdict
                == check(second, compassionPairs(second, fairness), f).verdict
            ), (printPathway(p), str(f))
