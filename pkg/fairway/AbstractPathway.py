#
# AbstractPathway.py
#
# Projection of a pathway onto a set of components: the reactions
# internal to the set, productive and stutter projections of the
# reactions crossing its boundary, and the matching projection of
# paths of the complete model.
#

import logging
from dataclasses import dataclass

from .ComponentMap import *
from .TransitionSystem import *

log = logging.getLogger(__name__)

PRODUCTIVE = "productive"
STUTTER = "stutter"
STUTTER_LABEL = "*"


@dataclass(frozen=True)
class AbstractReaction:
    """
    One projection of a boundary reaction. base holds the projected
    reactants, products and catalysts and is labelled
    `<origin>.<variant>`.
    """

    base: Reaction
    variant: str
    origin: str
    originCatalysed: bool
    guarded: bool

    @property
    def label(self):
        return self.base.id

    def enabled(self, state):
        """
        state is a set of species of the projection domain.
        """
        if not set(self.base.reactants) <= state or not self.base.catalysts <= state:
            return False
        if self.guarded and set(self.base.products) <= state:
            return False
        return True

    def annotation(self):
        return "origin={} variant={} origin_catalysed={} guarded={}".format(
            self.origin,
            self.variant,
            str(self.originCatalysed).lower(),
            str(self.guarded).lower(),
        )


def abstractStep(state, ar):
    """
    Fire an abstract reaction at a set of species. The effect follows
    the original reaction's catalysed status; stutter variants leave
    the state unchanged.
    """
    state = frozenset(state)
    if not ar.enabled(state):
        return None
    if ar.variant == STUTTER:
        return state
    if ar.originCatalysed:
        return (state - set(ar.base.reactants)) | set(ar.base.products)
    return state | set(ar.base.products)


def _checkComponents(m, J):
    J = frozenset(J)
    for cid in J:
        m.speciesOf(cid)
    return J


def speciesOfComponents(pathway, m, J):
    """
    Species of every reaction that involves a component of J.
    """
    J = _checkComponents(m, J)
    support = set()
    for reaction in pathway.reactions:
        if m.componentsOfReaction(reaction) & J:
            support |= reaction.species()
    return frozenset(support)


def componentSpecies(m, J):
    """
    Species belonging to the components of J, in id order. This is
    the state space of a projection.
    """
    J = _checkComponents(m, J)
    members = [s for cid in J for s in m.speciesOf(cid)]
    return tuple(sorted(members, key=lambda s: s.id))


@dataclass(frozen=True)
class Path:
    """
    A finite path. labels[i] leads from states[i] to states[i + 1].
    """

    states: tuple
    labels: tuple = ()

    def __post_init__(self):
        if len(self.states) != len(self.labels) + 1:
            raise ValueError("a path needs one more state than labels")

    @property
    def last(self):
        return self.states[-1]

    def __len__(self):
        return len(self.labels)


@dataclass(frozen=True)
class Lasso:
    """
    An infinite path: the stem, then the cycle repeated forever.
    cycleLabels[i] leads from cycleStates[i] to the next cycle state,
    wrapping around; cycleStates[0] is the last state of the stem.
    """

    stem: Path
    cycleLabels: tuple
    cycleStates: tuple

    def __post_init__(self):
        if not self.cycleLabels or len(self.cycleLabels) != len(self.cycleStates):
            raise ValueError("a lasso needs a non-empty cycle")
        if self.cycleStates[0] != self.stem.last:
            raise ValueError("the cycle must start at the end of the stem")


class AbstractPathway(object):
    """
    The pair (PR, AR) for a component set J. States of the projection
    are bit vectors over `domain`, the species of J's components.
    """

    def __init__(self, pathway, m, J):
        self.pathway = pathway
        self.componentMap = m
        self.J = _checkComponents(m, J)
        self.support = speciesOfComponents(pathway, m, self.J)
        self.speciesJ = componentSpecies(m, self.J)
        self.__bit = {s: i for i, s in enumerate(self.speciesJ)}
        self.domain = tuple(Species(i, s.name) for i, s in enumerate(self.speciesJ))
        self.concrete = []
        self.boundary = []
        # One entry per original reaction kept: a Reaction or a pair
        # of AbstractReactions.
        self.__entries = []
        for reaction in pathway.reactions:
            components = m.componentsOfReaction(reaction)
            if components <= self.J:
                self.concrete.append(reaction)
                self.__entries.append((reaction,))
            elif components & self.J:
                pair = self.__projectBoundary(reaction)
                self.boundary.extend(pair)
                self.__entries.append(pair)
        self.concrete = tuple(self.concrete)
        self.boundary = tuple(self.boundary)
        log.info(
            "projection onto %s: %d internal, %d boundary reactions",
            self.scopeName(),
            len(self.concrete),
            len(self.boundary) // 2,
        )

    def __restrict(self, species):
        return [self.domain[self.__bit[s]] for s in species if s in self.__bit]

    def __projectBoundary(self, reaction):
        reactants = tuple(self.__restrict(reaction.reactants))
        products = tuple(self.__restrict(reaction.products))
        catalysts = frozenset(self.__restrict(reaction.catalysts))
        guarded = len(products) == len(reaction.products)
        productive = AbstractReaction(
            Reaction(reaction.id + "." + PRODUCTIVE, reactants, products, catalysts),
            PRODUCTIVE,
            reaction.id,
            reaction.isCatalysed(),
            guarded,
        )
        stutter = AbstractReaction(
            Reaction(reaction.id + "." + STUTTER, reactants, reactants, catalysts),
            STUTTER,
            reaction.id,
            reaction.isCatalysed(),
            False,
        )
        return (productive, stutter)

    def isIdentity(self):
        return self.J >= frozenset(self.componentMap.components())

    def scopeName(self):
        if self.isIdentity():
            return "complete model"
        return ", ".join(sorted(self.componentMap.name(c) for c in self.J))

    def hasSpecies(self, name):
        return any(s.name == name for s in self.speciesJ)

    def projectState(self, state):
        """
        u restricted to the projection domain, as a domain bit vector.
        """
        return maskOf(i for i, s in enumerate(self.speciesJ) if state >> s.id & 1)

    def domainSet(self, state):
        """
        Domain bit vector to a set of domain species.
        """
        return frozenset(self.domain[i] for i in bitsSet(state, len(self.domain)))

    def initialState(self):
        return self.projectState(self.pathway.initialState())

    def keeps(self, reactionId):
        """
        Whether steps of this reaction survive path projection.
        """
        reaction = self.pathway.reactionById(reactionId)
        return bool(self.componentMap.componentsOfReaction(reaction) & self.J)

    def counterpartLabel(self, reactionId):
        """
        Label of the abstract rule that mirrors a concrete step.
        """
        reaction = self.pathway.reactionById(reactionId)
        components = self.componentMap.componentsOfReaction(reaction)
        if components <= self.J:
            return reactionId
        if components & self.J:
            return reactionId + "." + PRODUCTIVE
        return None

    def rules(self):
        """
        Compiled rules in original reaction order. Only internal
        reactions carry compassion pairs.
        """
        indexOf = lambda s: s.id
        compiled = []
        for entry in self.__entries:
            if isinstance(entry[0], Reaction):
                compiled.append(compileReaction(self.__remap(entry[0]), indexOf))
                continue
            for ar in entry:
                base = compileReaction(ar.base, indexOf)
                compiled.append(
                    ReactionRule(
                        ar.label,
                        base.reactantMask,
                        base.productMask,
                        base.catalystMask,
                        ar.originCatalysed and ar.variant == PRODUCTIVE,
                        ar.guarded,
                        False,
                    )
                )
        return compiled

    def __remap(self, reaction):
        return Reaction(
            reaction.id,
            tuple(self.__restrict(reaction.reactants)),
            tuple(self.__restrict(reaction.products)),
            frozenset(self.__restrict(reaction.catalysts)),
        )

    def buildLts(self, cap=DEFAULT_STATE_CAP):
        return exploreStates(
            [s.name for s in self.domain], self.rules(), self.initialState(), cap
        )

    def asPathway(self):
        """
        The projection as a pathway over the domain species, with the
        annotations that mark boundary projections.
        """
        reactions = []
        annotations = {}
        for entry in self.__entries:
            if isinstance(entry[0], Reaction):
                reactions.append(self.__remap(entry[0]))
                continue
            for ar in entry:
                reactions.append(ar.base)
                annotations[ar.label] = ar.annotation()
        present = [self.domain[i] for i in bitsSet(self.initialState(), len(self.domain))]
        return Pathway(self.domain, reactions, InitialSpec(present)), annotations

    def toText(self):
        pathway, annotations = self.asPathway()
        header = "projection onto {}".format(self.scopeName())
        return printPathway(pathway, header, annotations)


def project(pathway, m, J):
    return AbstractPathway(pathway, m, J)


def _projectSteps(ap, states, labels):
    sources = []
    kept = []
    for state, label in zip(states, labels):
        if ap.keeps(label):
            sources.append(ap.projectState(state))
            kept.append(label)
    return sources, kept


def projectPath(path, ap):
    """
    Drop the steps of reactions that do not involve J and project the
    remaining states. A lasso keeps its cycle only when some cycle
    step survives.
    """
    if isinstance(path, Lasso):
        stemSources, stemLabels = _projectSteps(ap, path.stem.states, path.stem.labels)
        cycleSources, cycleLabels = _projectSteps(ap, path.cycleStates, path.cycleLabels)
        stem = Path(tuple(stemSources) + (ap.projectState(path.stem.last),), tuple(stemLabels))
        if not cycleLabels:
            return stem
        return Lasso(stem, tuple(cycleLabels), tuple(cycleSources))
    sources, labels = _projectSteps(ap, path.states, path.labels)
    return Path(tuple(sources) + (ap.projectState(path.last),), tuple(labels))


def projectPathInfinite(path, ap):
    """
    As projectPath, but a finite result loops forever at its final
    state on the stutter label.
    """
    projected = projectPath(path, ap)
    if isinstance(projected, Lasso):
        return projected
    return Lasso(projected, (STUTTER_LABEL,), (projected.last,))
