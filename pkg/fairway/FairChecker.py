#
# FairChecker.py
#
# Explicit-state checking of universal until formulas over fair
# maximal paths. Strong fairness is one compassion pair per reaction:
# if the reaction is enabled infinitely often it is taken infinitely
# often. Fair cycles are found by refining strongly connected
# components until every triggered obligation has an edge inside.
#

import logging
import time
from collections import deque
from dataclasses import dataclass

import networkx as nx

from .Formula import *
from .AbstractPathway import Lasso, Path

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompassionPair:
    """
    Trigger: the rule is enabled. Obligation: an edge with the rule.
    """

    rule: int
    label: str


def compassionPairs(lts, fairness=True):
    """
    One pair per rule marked fair; none when fairness is off.
    """
    if not fairness:
        return []
    return [CompassionPair(r, rule.label) for r, rule in enumerate(lts.rules) if rule.fair]


def ltsGraph(lts, states=None):
    """
    The LTS, or its restriction to a set of state indices, as a
    networkx DiGraph.
    """
    region = range(lts.numStates) if states is None else states
    inside = set(region)
    g = nx.DiGraph()
    g.add_nodes_from(inside)
    for i in inside:
        for _, t in lts.edges[i]:
            if t in inside:
                g.add_edge(i, t)
    return g


def _internalRules(lts, component):
    return {r for i in component for r, t in lts.edges[i] if t in component}


def fairSccs(lts, pairs, states=None):
    """
    Maximal sets of states, within `states` if given, that are
    strongly connected through internal edges and satisfy every pair:
    its trigger holds at no state of the set or its obligation edge
    lies inside. Triggers are read from the complete LTS.
    """
    pairs = list(pairs)
    result = []
    work = [set(range(lts.numStates)) if states is None else set(states)]
    while work:
        region = work.pop()
        for component in nx.strongly_connected_components(ltsGraph(lts, region)):
            internal = _internalRules(lts, component)
            if not internal:
                continue
            violated = {
                p.rule
                for p in pairs
                if p.rule not in internal
                and any(p.rule in lts.enabledRules(i) for i in component)
            }
            if not violated:
                result.append(frozenset(component))
                continue
            rest = {i for i in component if not (lts.enabledRules(i) & violated)}
            if rest:
                work.append(rest)
    result.sort(key=min)
    return result


class CheckResult(object):
    """
    Satisfying state sets for every subformula, the verdict at the
    initial state, statistics and, for a false verdict, a witness
    path or lasso over state indices.
    """

    def __init__(self, formula, sat, stats, witness=None):
        self.formula = formula
        self.sat = sat
        self.verdict = 0 in sat[formula]
        self.stats = stats
        self.witness = witness

    def holdsAt(self, i, f=None):
        return i in self.sat[self.formula if f is None else f]

    def __repr__(self):
        return "CheckResult({}, {})".format(self.formula, self.verdict)


class _Labeller(object):
    def __init__(self, lts, pairs):
        self.lts = lts
        self.pairs = list(pairs)
        self.all = frozenset(range(lts.numStates))
        self.predecessors = [[] for _ in range(lts.numStates)]
        for i, out in enumerate(lts.edges):
            for _, t in out:
                self.predecessors[t].append(i)
        self.sat = {}
        # Fair SCCs of the region where the right operand fails, per
        # strong until.
        self.fairRegions = {}

    def reachBack(self, seeds, region):
        """
        States of region that reach seeds through region states.
        """
        found = set(seeds)
        queue = deque(found)
        while queue:
            t = queue.popleft()
            for i in self.predecessors[t]:
                if i in region and i not in found:
                    found.add(i)
                    queue.append(i)
        return found

    def label(self, f):
        if f in self.sat:
            return self.sat[f]
        for g in f.subformulas():
            if g not in self.sat:
                self.sat[g] = frozenset(self.__labelOne(g))
                log.debug("%s holds in %d of %d states", g, len(self.sat[g]), len(self.all))
        return self.sat[f]

    def __labelOne(self, f):
        if isinstance(f, Const):
            return self.all if f.value else ()
        if isinstance(f, Lit):
            bit = self.lts.bitOf(f.species)
            return [i for i, s in enumerate(self.lts.states) if bool(s >> bit & 1) == f.positive]
        if isinstance(f, And):
            return self.sat[f.left] & self.sat[f.right]
        if isinstance(f, Or):
            return self.sat[f.left] | self.sat[f.right]
        if isinstance(f, (AU, AUw)):
            return self.all - self.violating(f)
        raise TypeError("cannot check {!r}".format(f))

    def violating(self, f):
        """
        States with a fair maximal path refuting A[f U g] or A[f W g].
        """
        left = self.sat[f.left]
        notRight = self.all - self.sat[f.right]
        bad = self.reachBack(notRight - left, notRight)
        if isinstance(f, AU):
            fair = fairSccs(self.lts, self.pairs, notRight)
            self.fairRegions[f] = fair
            seeds = set(self.lts.deadlocks & notRight)
            for component in fair:
                seeds |= component
            bad |= self.reachBack(seeds, notRight)
        return bad

    def shortestPath(self, start, targets, region):
        """
        BFS within region from start to the nearest target; targets
        are not expanded. Returns (states, labels) or None.
        """
        if start in targets:
            return [start], []
        parent = {start: None}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for r, t in self.lts.edges[i]:
                if t in parent or t not in region:
                    continue
                parent[t] = (i, r)
                if t in targets:
                    states, labels = [t], []
                    while parent[states[-1]] is not None:
                        i, r = parent[states[-1]]
                        labels.append(self.lts.label(r))
                        states.append(i)
                    return states[::-1], labels[::-1]
                queue.append(t)
        return None

    def tour(self, start, component):
        """
        A closed walk from start inside a fair component that visits
        every state and takes one edge per triggered obligation.
        """
        triggered = set()
        for i in component:
            triggered |= self.lts.enabledRules(i)
        required = []
        for p in self.pairs:
            if p.rule in triggered:
                required.append(
                    next(
                        (i, r, t)
                        for i in sorted(component)
                        for r, t in self.lts.edges[i]
                        if r == p.rule and t in component
                    )
                )
        if not required:
            i, r, t = next(
                (i, r, t) for i in sorted(component) for r, t in self.lts.edges[i] if t in component
            )
            required.append((i, r, t))
        states, labels = [start], []
        visited = {start}

        def walkTo(target):
            path, steps = self.shortestPath(states[-1], {target}, component)
            states.extend(path[1:])
            labels.extend(steps)
            visited.update(path)

        for i, r, t in required:
            walkTo(i)
            states.append(t)
            labels.append(self.lts.label(r))
            visited.add(t)
        for i in sorted(component):
            if i not in visited:
                walkTo(i)
        if states[-1] != start:
            walkTo(start)
        return states[:-1], labels

    def witness(self, f):
        """
        A path refuting f from the initial state, if f fails there.
        """
        if 0 in self.sat[f]:
            return None
        if not f.isTemporal():
            return Path((0,))
        if isinstance(f, And):
            return self.witness(f.left if 0 not in self.sat[f.left] else f.right)
        if not isinstance(f, (AU, AUw)):
            return None
        notRight = self.all - self.sat[f.right]
        found = self.shortestPath(0, notRight - self.sat[f.left], notRight)
        if found is not None:
            return Path(tuple(found[0]), tuple(found[1]))
        if not isinstance(f, AU):
            return None
        fair = self.fairRegions[f]
        seeds = set(self.lts.deadlocks & notRight)
        for component in fair:
            seeds |= component
        found = self.shortestPath(0, seeds, notRight)
        if found is None:
            return None
        stem = Path(tuple(found[0]), tuple(found[1]))
        end = stem.last
        if end in self.lts.deadlocks:
            return stem
        component = next(c for c in fair if end in c)
        cycleStates, cycleLabels = self.tour(end, component)
        return Lasso(stem, tuple(cycleLabels), tuple(cycleStates))


def check(lts, pairs, f):
    """
    Label every state with the subformulas of f it satisfies on all
    fair maximal paths, and decide f at the initial state.
    """
    outside = f.literals() - frozenset(lts.names)
    if outside:
        raise FormulaScopeError(outside, "checked system")
    started = time.perf_counter()
    labeller = _Labeller(lts, pairs)
    everywhere = labeller.all
    fair = fairSccs(lts, labeller.pairs)
    seeds = set(lts.deadlocks)
    for component in fair:
        seeds |= component
    assert labeller.reachBack(seeds, everywhere) == everywhere, "state without a fair maximal path"
    labeller.label(f)
    witness = labeller.witness(f)
    stats = {
        "states": lts.numStates,
        "edges": lts.numEdges,
        "sccs": nx.number_strongly_connected_components(ltsGraph(lts)),
        "fair_sccs": len(fair),
        "time_ms": int((time.perf_counter() - started) * 1000),
    }
    result = CheckResult(f, labeller.sat, stats, witness)
    log.info("%s: %s (%d states)", f, result.verdict, lts.numStates)
    return result
