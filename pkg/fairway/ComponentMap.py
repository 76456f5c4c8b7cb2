#
# ComponentMap.py
#
# Molecular components: the partition of species obtained by unifying
# each reactant with the product in the same position, the initial
# state heuristic built on it, and the component interaction graph.
#

import logging

from .Pathway import *

log = logging.getLogger(__name__)


class NormalFormError(PathwayError):
    """
    Components were requested for a pathway with a reaction whose
    reactant and product counts differ.
    """

    def __init__(self, violation):
        super().__init__("not in normal form: {}".format(violation))
        self.violation = violation


class UnresolvedComponentsError(PathwayError):
    """
    Strict initial state inference left components with no species.
    """

    def __init__(self, names):
        super().__init__(
            "no initial species for loop-only component(s): {}; choose some manually".format(
                ", ".join(names)
            )
        )
        self.names = tuple(names)


class UnknownComponentError(KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return "unknown component '{}'".format(self.name)


class UnionFind(object):
    """
    Disjoint sets over 0..size-1 with union by rank and path
    compression.
    """

    def __init__(self, size):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra = self.find(a)
        rb = self.find(b)
        if ra == rb:
            return ra
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return ra


class ComponentMap(object):
    """
    Total partition of a pathway's species table. A component is
    identified by the smallest species id in its class.
    """

    def __init__(self, pathway, unionFind, names=None):
        self.pathway = pathway
        self.__componentOf = {}
        members = {}
        for s in pathway.species:
            members.setdefault(unionFind.find(s.id), []).append(s)
        self.classes = {}
        for group in members.values():
            cid = min(s.id for s in group)
            self.classes[cid] = tuple(sorted(group, key=lambda s: s.id))
            for s in group:
                self.__componentOf[s] = cid
        self.names = {cid: min(s.name for s in group) for cid, group in self.classes.items()}
        for name, speciesName in (names or {}).items():
            self.names[self.componentOf(pathway.speciesNamed(speciesName))] = name
        byName = {}
        for cid, name in self.names.items():
            if name in byName:
                raise PathwayError("component name '{}' is used twice".format(name))
            byName[name] = cid
        self.__byName = byName

    def componentOf(self, species):
        return self.__componentOf[species]

    def componentsOfReaction(self, reaction):
        """
        comp(R).
        """
        return frozenset(self.componentOf(s) for s in reaction.species())

    def components(self):
        """
        comp(P): components of the species used by some reaction.
        """
        return sorted({self.componentOf(s) for s in self.pathway.usedSpecies()})

    def allComponents(self):
        return sorted(self.classes)

    def speciesOf(self, cid):
        if cid not in self.classes:
            raise UnknownComponentError(cid)
        return self.classes[cid]

    def name(self, cid):
        if cid not in self.names:
            raise UnknownComponentError(cid)
        return self.names[cid]

    def resolve(self, names):
        """
        Component ids for a list of component names. A member species
        name also selects its component.
        """
        ids = set()
        for name in names:
            if name in self.__byName:
                ids.add(self.__byName[name])
            elif self.pathway.hasSpecies(name):
                ids.add(self.componentOf(self.pathway.speciesNamed(name)))
            else:
                raise UnknownComponentError(name)
        return frozenset(ids)

    def withNames(self, names):
        """
        A copy using a name map of component name to member species.
        """
        uf = UnionFind(len(self.pathway.species))
        for cid, group in self.classes.items():
            for s in group:
                uf.union(cid, s.id)
        return ComponentMap(self.pathway, uf, names)

    def describe(self):
        """
        Lines of `name: s1, s2, ...`, sorted by name.
        """
        lines = []
        for cid in self.allComponents():
            members = sorted(s.name for s in self.classes[cid])
            lines.append("{}: {}".format(self.names[cid], ", ".join(members)))
        return sorted(lines)

    def __len__(self):
        return len(self.classes)


def identifyComponents(pathway, names=None):
    """
    Unify r_j with p_j for every reaction and position j, starting
    from singleton classes.
    """
    violations = validateNormalForm(pathway)
    if violations:
        raise NormalFormError(violations[0])
    uf = UnionFind(len(pathway.species))
    for reaction in pathway.reactions:
        for r, p in zip(reaction.reactants, reaction.products):
            uf.union(r.id, p.id)
    m = ComponentMap(pathway, uf, names)
    log.info("identified %d components", len(m))
    return m


def parseNameMap(text):
    """
    Read `Name: species` lines into a dict of name to species name.
    """
    names = {}
    for lineNumber, rawLine in enumerate(text.splitlines(), 1):
        line = rawLine.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PathwaySyntaxError("expected 'Name: species'", lineNumber, 1)
        name, speciesName = (part.strip() for part in line.split(":", 1))
        if not name or not speciesName:
            raise PathwaySyntaxError("expected 'Name: species'", lineNumber, 1)
        if name in names:
            raise PathwaySyntaxError("component name '{}' given twice".format(name), lineNumber, 1)
        names[name] = speciesName
    return names


def loadNameMap(path):
    with open(path, "r", encoding="utf-8") as fin:
        return parseNameMap(fin.read())


def inferInitialState(pathway, m, manual=(), strict=False):
    """
    Guess the initial state: every species that no reaction produces,
    plus the manually chosen ones. Components still without a present
    species are loop-only; they are reported, or raise in strict mode.
    """
    if pathway.initial.present:
        log.warning(
            "inferred initial state replaces the declared init species: %s",
            ", ".join(pathway.initial.names()),
        )
    provenance = {}
    produced = pathway.producedSpecies()
    for s in pathway.usedSpecies():
        if s not in produced:
            provenance[s] = HEURISTIC_SOURCE
    for s in manual:
        if isinstance(s, str):
            s = pathway.speciesNamed(s)
        elif pathway.speciesNamed(s.name) != s:
            raise PathwayError("manual species '{}' is not in the pathway".format(s.name))
        provenance.setdefault(s, HEURISTIC_MANUAL)
    presentComponents = {m.componentOf(s) for s in provenance}
    unresolved = [m.name(c) for c in m.components() if c not in presentComponents]
    if unresolved:
        if strict:
            raise UnresolvedComponentsError(unresolved)
        log.warning(
            "loop-only component(s) left absent from the initial state: %s",
            ", ".join(unresolved),
        )
    return InitialSpec(provenance, provenance, unresolved)


class InteractionGraph(object):
    """
    Components as vertices. Undirected edges join components that
    react together; directed edges run from a catalyst component to
    the components it acts on.
    """

    def __init__(self, vertices, undirected, directed, names):
        self.vertices = tuple(sorted(vertices))
        self.undirected = frozenset(undirected)
        self.directed = frozenset(directed)
        self.names = dict(names)

    def label(self, cid):
        return self.names.get(cid, str(cid))


def interactionGraph(pathway, m):
    undirected = set()
    directed = set()
    for reaction in pathway.reactions:
        reactantComponents = sorted({m.componentOf(s) for s in reaction.reactants})
        for i, a in enumerate(reactantComponents):
            for b in reactantComponents[i + 1 :]:
                undirected.add((a, b))
        for c in {m.componentOf(s) for s in reaction.catalysts}:
            for r in reactantComponents:
                if c != r:
                    directed.add((c, r))
    return InteractionGraph(m.components(), undirected, directed, m.names)


def _quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def toDot(graph):
    """
    Render the graph as DOT with vertices and edges sorted by label.
    """
    lines = ["digraph {"]
    for label in sorted(graph.label(v) for v in graph.vertices):
        lines.append("  {};".format(_quote(label)))
    edges = []
    for a, b in graph.undirected:
        x, y = sorted((graph.label(a), graph.label(b)))
        edges.append((x, y, " [dir=both]"))
    for a, b in graph.directed:
        edges.append((graph.label(a), graph.label(b), ""))
    for x, y, attr in sorted(edges):
        lines.append("  {} -> {}{};".format(_quote(x), _quote(y), attr))
    lines.append("}")
    return "\n".join(lines) + "\n"
