#
# TransitionSystem.py
#
# Labelled transition system semantics of a pathway. States are
# integers used as bit vectors; reactions are compiled to masks once
# and the reachable graph is built breadth-first.
#

import logging
from collections import deque
from dataclasses import dataclass

from .SpeciesDetails import *

log = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 10**7


class StateBudgetExceeded(RuntimeError):
    """
    Raised when the reachable state space grows past the cap.
    """

    def __init__(self, cap):
        super().__init__("state budget of {} states exceeded".format(cap))
        self.cap = cap


@dataclass(frozen=True)
class ReactionRule:
    """
    A reaction compiled against a bit layout.

    consumes selects the effect: reactants are removed when set, kept
    otherwise. guarded adds the product-absence condition to
    enabledness. fair marks the rule as carrying a compassion pair.
    """

    label: str
    reactantMask: int
    productMask: int
    catalystMask: int
    consumes: bool
    guarded: bool = True
    fair: bool = True

    def enabled(self, state):
        required = self.reactantMask | self.catalystMask
        if state & required != required:
            return False
        if self.guarded and state & self.productMask == self.productMask:
            return False
        return True

    def apply(self, state):
        if self.consumes:
            return (state & ~self.reactantMask) | self.productMask
        return state | self.productMask

    def step(self, state):
        """
        Successor of state, or None when the rule is not enabled.
        """
        if not self.enabled(state):
            return None
        return self.apply(state)


def compileReaction(reaction, indexOf=None):
    """
    The rule for a concrete reaction. indexOf maps a species to its
    bit; species ids by default.
    """
    if indexOf is None:
        indexOf = lambda s: s.id
    return ReactionRule(
        reaction.id,
        maskOf(indexOf(s) for s in reaction.reactants),
        maskOf(indexOf(s) for s in reaction.products),
        maskOf(indexOf(s) for s in reaction.catalysts),
        reaction.isCatalysed(),
    )


def enabled(state, reaction):
    """
    enabled(R) at a state over species ids.
    """
    return compileReaction(reaction).enabled(state)


def step(state, reaction):
    """
    Apply rule (cat) or (no-cat); None when the reaction cannot fire.
    """
    return compileReaction(reaction).step(state)


class LTS(object):
    """
    Reachable fragment of a transition system. Edges out of state i
    are (ruleIndex, targetIndex) pairs in rule order.
    """

    def __init__(self, names, rules, states, edges):
        self.names = tuple(names)
        self.rules = tuple(rules)
        self.states = tuple(states)
        self.edges = tuple(tuple(e) for e in edges)
        self.initial = 0
        self.index = {s: i for i, s in enumerate(self.states)}
        self.deadlocks = frozenset(i for i, out in enumerate(self.edges) if not out)
        self.__bitOfName = {n: i for i, n in enumerate(self.names)}

    @property
    def width(self):
        return len(self.names)

    @property
    def numStates(self):
        return len(self.states)

    @property
    def numEdges(self):
        return sum(len(out) for out in self.edges)

    def hasSpecies(self, name):
        return name in self.__bitOfName

    def bitOf(self, name):
        return self.__bitOfName[name]

    def successors(self, i):
        return self.edges[i]

    def label(self, ruleIndex):
        return self.rules[ruleIndex].label

    def enabledRules(self, i):
        """
        Indices of the rules with an outgoing edge at state i.
        """
        return frozenset(r for r, _ in self.edges[i])

    def stateNames(self, i):
        state = self.states[i]
        return [self.names[b] for b in bitsSet(state, self.width)]

    def bits(self, i):
        return bitString(self.states[i], self.width)

    def edgeCount(self, i, j):
        return sum(1 for _, t in self.edges[i] if t == j)

    def stats(self):
        return "states={} edges={} deadlocks={}".format(
            self.numStates, self.numEdges, len(self.deadlocks)
        )

    def dump(self):
        """
        Tab-separated edge list: source bits, label, target bits.
        """
        lines = []
        for i, out in enumerate(self.edges):
            for r, t in out:
                lines.append("{}\t{}\t{}".format(self.bits(i), self.label(r), self.bits(t)))
        return "\n".join(lines) + ("\n" if lines else "")

    def __repr__(self):
        return "LTS({})".format(self.stats())


def exploreStates(names, rules, initial, cap=DEFAULT_STATE_CAP):
    """
    Breadth-first closure of the rules from the initial bit vector.
    """
    rules = tuple(rules)
    states = [initial]
    index = {initial: 0}
    edges = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        source = states[i]
        out = []
        for r, rule in enumerate(rules):
            target = rule.step(source)
            if target is None:
                continue
            if target not in index:
                if len(states) >= cap:
                    raise StateBudgetExceeded(cap)
                index[target] = len(states)
                states.append(target)
                queue.append(index[target])
            out.append((r, index[target]))
        edges.append(out)
    lts = LTS(names, rules, states, edges)
    log.info("built %s", lts.stats())
    return lts


def buildLts(pathway, cap=DEFAULT_STATE_CAP):
    """
    LTS(P) restricted to the states reachable from the initial state.
    """
    rules = [compileReaction(r) for r in pathway.reactions]
    return exploreStates(pathway.speciesNames(), rules, pathway.initialState(), cap)
