"""
component identification, initial state inference and the
interaction graph
"""

import logging
import random

import networkx as nx
import pytest

from fairway.ComponentMap import (
    NormalFormError,
    UnionFind,
    UnknownComponentError,
    UnresolvedComponentsError,
    identifyComponents,
    inferInitialState,
    interactionGraph,
    parseNameMap,
    toDot,
)
from fairway.Pathway import (
    HEURISTIC_MANUAL,
    HEURISTIC_SOURCE,
    Pathway,
    loadExamplePathway,
    parsePathway,
)
from fairway.PathwayGenerator import randomPathway, shuffledPathway


def partition(m):
    return {frozenset(s.name for s in m.speciesOf(c)) for c in m.allComponents()}


def connectedComponentsOracle(pathway):
    g = nx.Graph()
    g.add_nodes_from(s.name for s in pathway.species)
    for reaction in pathway.reactions:
        for r, p in zip(reaction.reactants, reaction.products):
            g.add_edge(r.name, p.name)
    return {frozenset(c) for c in nx.connected_components(g)}


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3)
    assert uf.find(2) != uf.find(0)


def test_positional_unification():
    "each reactant joins the product in the same position"
    m = identifyComponents(parsePathway("r1 + r2 -> p1 + p2 [c]\n"))
    assert partition(m) == {frozenset(["r1", "p1"]), frozenset(["r2", "p2"]), frozenset(["c"])}
    assert m.describe() == ["c: c", "p1: p1, r1", "p2: p2, r2"]


def test_example_components():
    m = identifyComponents(loadExamplePathway())
    assert m.describe() == ["A: A, B, C", "D: D"]
    assert len(m) == 2
    assert [m.name(c) for c in m.components()] == ["A", "D"]


def test_matches_connected_components():
    rng = random.Random(7)
    for _ in range(1000):
        p = randomPathway(rng, normalForm=True)
        assert partition(identifyComponents(p)) == connectedComponentsOracle(p)


def test_reaction_order_does_not_matter():
    rng = random.Random(11)
    for _ in range(200):
        p = randomPathway(rng, normalForm=True)
        reactions = list(p.reactions)
        rng.shuffle(reactions)
        shuffled = Pathway(p.species, reactions, p.initial)
        assert partition(identifyComponents(shuffled)) == partition(identifyComponents(p))


def test_normal_form_required():
    with pytest.raises(NormalFormError) as info:
        identifyComponents(parsePathway("R1: A + B -> C\n"))
    assert info.value.violation.reaction.id == "R1"


def test_resolve():
    m = identifyComponents(loadExamplePathway())
    a = m.componentOf(m.pathway.speciesNamed("A"))
    assert m.resolve(["A"]) == frozenset([a])
    assert m.resolve(["C"]) == frozenset([a])
    with pytest.raises(UnknownComponentError) as info:
        m.resolve(["Q"])
    assert str(info.value) == "unknown component 'Q'"


def test_name_map():
    names = parseNameMap("# names\nShuttle: B\nHelper: D\n")
    assert names == {"Shuttle": "B", "Helper": "D"}
    m = identifyComponents(loadExamplePathway(), names)
    assert m.describe() == ["Helper: D", "Shuttle: A, B, C"]
    assert m.resolve(["Shuttle"]) == m.resolve(["A"])


def test_infer_initial_state(caplog):
    "D is never produced; the A/B/C loop needs a manual choice"
    p = loadExamplePathway()
    m = identifyComponents(p)
    with caplog.at_level(logging.WARNING):
        initial = inferInitialState(p, m)
    assert initial.names() == ["D"]
    assert initial.provenanceOf(p.speciesNamed("D")) == HEURISTIC_SOURCE
    assert initial.unresolved == ("A",)
    assert "loop-only" in caplog.text

    initial = inferInitialState(p, m, manual=["A"])
    assert initial.names() == ["A", "D"]
    assert initial.provenanceOf(p.speciesNamed("A")) == HEURISTIC_MANUAL
    assert initial.unresolved == ()


def test_declared_init_is_replaced(caplog):
    p = parsePathway("A -> B\ninit: B\n")
    with caplog.at_level(logging.WARNING):
        initial = inferInitialState(p, identifyComponents(p))
    assert initial.names() == ["A"]
    assert "replaces the declared init species: B" in caplog.text


def test_inference_ignores_declaration_order():
    rng = random.Random(13)
    for _ in range(300):
        p = randomPathway(rng, normalForm=True)
        q = shuffledPathway(rng, p)
        first = inferInitialState(p, identifyComponents(p))
        second = inferInitialState(q, identifyComponents(q))
        assert first.names() == second.names()
        assert sorted(first.unresolved) == sorted(second.unresolved)


def test_strict_inference():
    p = loadExamplePathway()
    with pytest.raises(UnresolvedComponentsError) as info:
        inferInitialState(p, identifyComponents(p), strict=True)
    assert info.value.names == ("A",)


def test_example_dot():
    p = loadExamplePathway()
    dot = toDot(interactionGraph(p, identifyComponents(p)))
    assert dot == 'digraph {\n  "A";\n  "D";\n  "D" -> "A";\n}\n'


def test_reacting_components_are_joined():
    p = parsePathway("R1: A + X -> B + Y\n")
    graph = interactionGraph(p, identifyComponents(p))
    assert len(graph.undirected) == 1
    assert graph.directed == frozenset()
    assert '  "A" -> "X" [dir=both];' in toDot(graph).splitlines()
