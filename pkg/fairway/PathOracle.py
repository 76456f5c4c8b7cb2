#
# PathOracle.py
#
# Brute-force reference semantics: evaluate formulas by exploring
# paths explicitly, with the fairness condition applied literally to
# cycles. Slow and small; used to cross-check FairChecker.
#

import logging
from collections import deque

from .Formula import *
from .AbstractPathway import Lasso, Path

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 4096


class OracleBudgetExceeded(RuntimeError):
    def __init__(self, states, cap):
        super().__init__("{} states exceed the oracle cap of {}".format(states, cap))
        self.cap = cap


def _ruleMask(rules):
    mask = 0
    for r in rules:
        mask |= 1 << r
    return mask


class PathOracle(object):
    """
    Explicit path semantics over an LTS. A cycle is fair when every
    in-scope rule enabled somewhere on it is also taken on it; finite
    maximal paths are always fair.
    """

    def __init__(self, lts, pairs, cap=DEFAULT_ORACLE_CAP):
        if lts.numStates > cap:
            raise OracleBudgetExceeded(lts.numStates, cap)
        self.lts = lts
        self.scope = _ruleMask(p.rule for p in pairs)
        self.enabledMasks = [_ruleMask(lts.enabledRules(i)) & self.scope for i in range(lts.numStates)]
        self.memo = {}

    def isFairCycle(self, cycleStates, cycleRules):
        """
        The literal fairness filter on a cycle given as state indices
        and rule indices.
        """
        enabledOnCycle = 0
        for i in cycleStates:
            enabledOnCycle |= self.enabledMasks[i]
        return enabledOnCycle & ~_ruleMask(cycleRules) == 0

    def fairClosedWalk(self, x, region):
        """
        Whether a fair closed walk through x stays within region.
        Walks are summarised by (state, rules enabled on the walk,
        rules taken on the walk).
        """
        start = (x, self.enabledMasks[x], 0)
        seen = {start}
        queue = deque([start])
        while queue:
            i, enabledSoFar, taken = queue.popleft()
            for r, t in self.lts.edges[i]:
                if t not in region:
                    continue
                nextTaken = taken | (1 << r & self.scope)
                nextEnabled = enabledSoFar | self.enabledMasks[t]
                if t == x and nextEnabled & ~nextTaken == 0:
                    return True
                node = (t, nextEnabled, nextTaken)
                if node not in seen:
                    seen.add(node)
                    queue.append(node)
        return False

    def holds(self, i, f):
        key = (i, f)
        if key not in self.memo:
            self.memo[key] = self.__evaluate(i, f)
        return self.memo[key]

    def __evaluate(self, i, f):
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Lit):
            bit = self.lts.bitOf(f.species)
            return bool(self.lts.states[i] >> bit & 1) == f.positive
        if isinstance(f, And):
            return self.holds(i, f.left) and self.holds(i, f.right)
        if isinstance(f, Or):
            return self.holds(i, f.left) or self.holds(i, f.right)
        if isinstance(f, (AU, AUw)):
            return not self.violates(i, f)
        raise TypeError("cannot evaluate {!r}".format(f))

    def violates(self, i, f):
        """
        Search the prefixes along which f is still pending (left holds,
        right does not) for a fair maximal path that never discharges
        it: one leaving to a state where both fail, or, for the strong
        until, one ending in a deadlock or cycling fairly forever.
        """
        pending = set()
        queue = deque([i])
        while queue:
            j = queue.popleft()
            if j in pending or self.holds(j, f.right):
                continue
            if not self.holds(j, f.left):
                return True
            pending.add(j)
            for _, t in self.lts.edges[j]:
                queue.append(t)
        if isinstance(f, AUw):
            return False
        for j in pending:
            if not self.lts.edges[j]:
                return True
            if self.fairClosedWalk(j, pending):
                return True
        return False

    def fairLassos(self):
        """
        One fair lasso per state that lies on a fair closed walk: a
        shortest stem from the initial state, then the walk.
        """
        everything = set(range(self.lts.numStates))
        lassos = []
        for x in sorted(everything):
            walk = self.__closedWalk(x, everything)
            if walk is None:
                continue
            stem = self.__stem(x)
            cycleStates, cycleRules = walk
            lassos.append(
                Lasso(
                    stem,
                    tuple(self.lts.label(r) for r in cycleRules),
                    tuple(self.lts.states[j] for j in cycleStates),
                )
            )
        return lassos

    def __stem(self, x):
        parent = {0: None}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            if i == x:
                break
            for r, t in self.lts.edges[i]:
                if t not in parent:
                    parent[t] = (i, r)
                    queue.append(t)
        states, labels = [x], []
        while parent[states[-1]] is not None:
            i, r = parent[states[-1]]
            states.append(i)
            labels.append(self.lts.label(r))
        return Path(tuple(self.lts.states[j] for j in reversed(states)), tuple(reversed(labels)))

    def __closedWalk(self, x, region):
        start = (x, self.enabledMasks[x], 0)
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            i, enabledSoFar, taken = node
            for r, t in self.lts.edges[i]:
                if t not in region:
                    continue
                nextTaken = taken | (1 << r & self.scope)
                nextEnabled = enabledSoFar | self.enabledMasks[t]
                if t == x and nextEnabled & ~nextTaken == 0:
                    states, rules = [], [r]
                    while node is not None:
                        states.append(node[0])
                        step = parent[node]
                        if step is None:
                            break
                        node, rule = step
                        rules.append(rule)
                    return states[::-1], rules[::-1]
                child = (t, nextEnabled, nextTaken)
                if child not in parent:
                    parent[child] = (node, r)
                    queue.append(child)
        return None

    def finiteMaximalPaths(self, limit=10000):
        """
        Simple paths from the initial state that end in a deadlock, as
        paths over state bit vectors.
        """
        paths = []
        stack = [([0], [])]
        while stack and len(paths) < limit:
            states, rules = stack.pop()
            i = states[-1]
            if not self.lts.edges[i]:
                paths.append(
                    Path(
                        tuple(self.lts.states[j] for j in states),
                        tuple(self.lts.label(r) for r in rules),
                    )
                )
                continue
            for r, t in self.lts.edges[i]:
                if t not in states:
                    stack.append((states + [t], rules + [r]))
        return paths


def oracleCheck(lts, pairs, f, cap=DEFAULT_ORACLE_CAP):
    """
    Verdict for f at the initial state by explicit path semantics.
    """
    outside = f.literals() - frozenset(lts.names)
    if outside:
        raise FormulaScopeError(outside, "checked system")
    return PathOracle(lts, pairs, cap).holds(0, f)


def isLassoFair(lts, lasso, fairLabels):
    """
    Apply the fairness filter to a lasso over state bit vectors: every
    fair label enabled at a cycle state must be taken on the cycle.
    """
    fairLabels = frozenset(fairLabels)
    enabledOnCycle = set()
    for state in lasso.cycleStates:
        i = lts.index[state]
        enabledOnCycle |= {lts.label(r) for r in lts.enabledRules(i)}
    return (enabledOnCycle & fairLabels) <= set(lasso.cycleLabels)


def isPathOf(lts, path, selfLoopLabel=None):
    """
    Whether every step of a path or lasso over state bit vectors is an
    edge of the LTS. selfLoopLabel stands for any self-loop edge.
    """
    if isinstance(path, Lasso):
        states = list(path.stem.states) + list(path.cycleStates[1:]) + [path.cycleStates[0]]
        labels = list(path.stem.labels) + list(path.cycleLabels)
    else:
        states, labels = list(path.states), list(path.labels)
    for source, label, target in zip(states, labels, states[1:]):
        if source not in lts.index or target not in lts.index:
            return False
        i, t = lts.index[source], lts.index[target]
        found = False
        for r, u in lts.edges[i]:
            if u != t:
                continue
            if lts.label(r) == label or (label == selfLoopLabel and i == t):
                found = True
                break
        if not found:
            return False
    return True
