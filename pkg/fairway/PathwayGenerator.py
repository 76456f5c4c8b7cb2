#
# PathwayGenerator.py
#
# Synthetic pathways and formulas: small random systems for
# cross-checking the checker and a signalling cascade at the size of
# published growth-factor models for timing.
#

from .Pathway import *
from .Formula import *


def _pickDistinct(rng, pool, count):
    return rng.sample(pool, min(count, len(pool)))


def randomPathway(
    rng,
    maxSpecies=10,
    maxReactions=8,
    normalForm=False,
    catalystProbability=0.5,
    initialProbability=0.4,
):
    """
    A random pathway over at most maxSpecies species. With normalForm
    every reaction has as many products as reactants.
    """
    pool = ["S{}".format(i) for i in range(rng.randint(1, maxSpecies))]
    builder = PathwayBuilder()
    for _ in range(rng.randint(0, maxReactions)):
        arity = rng.randint(1, min(2, len(pool)))
        reactants = _pickDistinct(rng, pool, arity)
        if normalForm:
            products = _pickDistinct(rng, pool, arity)
        else:
            products = _pickDistinct(rng, pool, rng.randint(1, min(2, len(pool))))
        catalysts = []
        if rng.random() < catalystProbability:
            catalysts = _pickDistinct(rng, pool, rng.randint(1, 2))
        builder.addReaction(None, reactants, products, catalysts)
    used = list(builder.byName)
    builder.addInitial(n for n in used if rng.random() < initialProbability)
    return builder.build()


def shuffledPathway(rng, pathway):
    """
    The same reactions and initial state with species declared and
    reactions listed in a random order. Reaction ids are kept.
    """
    names = pathway.speciesNames()
    rng.shuffle(names)
    reactions = list(pathway.reactions)
    rng.shuffle(reactions)
    builder = PathwayBuilder()
    for name in names:
        builder.intern(name)
    for r in reactions:
        builder.addReaction(
            r.id,
            [s.name for s in r.reactants],
            [s.name for s in r.products],
            [s.name for s in r.sortedCatalysts()],
        )
    builder.addInitial(pathway.initial.names())
    return builder.build()


def randomFormula(rng, species, depth=3):
    """
    A random formula of the given nesting depth over species names.
    """
    species = list(species)
    if depth <= 0 or rng.random() < 0.2:
        if not species or rng.random() < 0.1:
            return rng.choice((TRUE, FALSE))
        return Lit(rng.choice(species), rng.random() < 0.6)
    left = randomFormula(rng, species, depth - 1)
    right = randomFormula(rng, species, depth - 1)
    kind = rng.choice(("and", "or", "au", "auw", "af", "ag"))
    if kind == "and":
        return And(left, right)
    if kind == "or":
        return Or(left, right)
    if kind == "au":
        return AU(left, right)
    if kind == "auw":
        return AUw(left, right)
    if kind == "af":
        return AF(left)
    return AG(left)


def cascadePathway(
    stages=57,
    branchAt=50,
    branchLength=8,
    reversible=range(40, 47),
    deactivations=15,
    phosphatases=10,
):
    """
    A kinase chain activated by a ligand L. Stage K<i> is activated by
    K<i-1>*, a side branch B<j> starts at K<branchAt>*, and the stages
    in `reversible` are switched off again by phosphatases P<k>.
    Every species starts inactive; the end products are K<last>* and
    B<last>*.
    """
    reversible = list(reversible)
    builder = PathwayBuilder()
    builder.addInitial(["L"])
    previous = "L"
    for i in range(stages):
        builder.addReaction("act{}".format(i), ["K{}".format(i)], ["K{}*".format(i)], [previous])
        previous = "K{}*".format(i)
    previous = "K{}*".format(branchAt)
    for j in range(branchLength):
        builder.addReaction("bact{}".format(j), ["B{}".format(j)], ["B{}*".format(j)], [previous])
        previous = "B{}*".format(j)
    for n in range(deactivations if reversible else 0):
        stage = reversible[n % len(reversible)]
        phosphatase = "P{}".format(n % phosphatases)
        builder.addReaction(
            "deact{}".format(n), ["K{}*".format(stage)], ["K{}".format(stage)], [phosphatase]
        )
    builder.addInitial(["K{}".format(i) for i in range(stages)])
    builder.addInitial(["B{}".format(j) for j in range(branchLength)])
    builder.addInitial(["P{}".format(k) for k in range(min(phosphatases, deactivations))])
    return builder.build()


def cascadeGoal(stages=57, branchLength=8):
    """
    AF of both end products being active.
    """
    return AF(And(Lit("K{}*".format(stages - 1)), Lit("B{}*".format(branchLength - 1))))
