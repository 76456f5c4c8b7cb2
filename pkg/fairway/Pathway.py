#
# Pathway.py
#
# Reaction-language data model: species, reactions and initial
# states, plus the reader and writer for the line-oriented .pw
# format and the normal-form check used before component
# identification.
#

import logging
from dataclasses import dataclass
from importlib import resources

from .SpeciesDetails import *

log = logging.getLogger(__name__)

DECLARED = "declared"
HEURISTIC_SOURCE = "heuristic-source"
HEURISTIC_MANUAL = "heuristic-manual"
PROVENANCES = (DECLARED, HEURISTIC_SOURCE, HEURISTIC_MANUAL)


class PathwayError(ValueError):
    """
    A pathway is structurally invalid.
    """


class PathwaySyntaxError(PathwayError):
    """
    A pathway file could not be read. Carries the 1-based line and
    column of the offending text.
    """

    def __init__(self, message, lineNumber, column):
        super().__init__("line {}, column {}: {}".format(lineNumber, column, message))
        self.lineNumber = lineNumber
        self.column = column


@dataclass(frozen=True)
class Species:
    id: int
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Reaction:
    id: str
    reactants: tuple
    products: tuple
    catalysts: frozenset = frozenset()

    def species(self):
        """
        species(R): every species the reaction mentions.
        """
        return frozenset(self.reactants) | frozenset(self.products) | self.catalysts

    def isCatalysed(self):
        return len(self.catalysts) > 0

    def sortedCatalysts(self):
        return sorted(self.catalysts, key=lambda s: s.id)

    def __str__(self):
        return formatReaction(self)


@dataclass(frozen=True)
class NormalFormViolation:
    reaction: Reaction
    reactantCount: int
    productCount: int

    def __str__(self):
        return "reaction {} has {} reactant(s) but {} product(s)".format(
            self.reaction.id, self.reactantCount, self.productCount
        )


class InitialSpec(object):
    """
    The species present in the initial state, with the way each one
    came to be there.
    """

    def __init__(self, present=(), provenance=None, unresolved=()):
        self.present = frozenset(present)
        provenance = dict(provenance or {})
        for species in self.present:
            provenance.setdefault(species, DECLARED)
        for species, origin in provenance.items():
            if origin not in PROVENANCES:
                raise PathwayError("unknown provenance '{}'".format(origin))
        self.__provenance = provenance
        # Components the source heuristic could not populate.
        self.unresolved = tuple(unresolved)

    def provenanceOf(self, species):
        return self.__provenance.get(species)

    def names(self):
        return sorted(s.name for s in self.present)

    def without(self, species):
        """
        A copy with the given species removed.
        """
        remaining = self.present - frozenset(species)
        return InitialSpec(
            remaining,
            {s: o for s, o in self.__provenance.items() if s in remaining},
            self.unresolved,
        )

    def __eq__(self, other):
        return (
            isinstance(other, InitialSpec)
            and self.present == other.present
            and self.__provenance == other.__provenance
        )

    def __repr__(self):
        return "InitialSpec({})".format(self.names())


class Pathway(object):
    """
    A set of reactions over interned species, plus the initial state.
    Immutable once built.
    """

    def __init__(self, species, reactions, initial=None):
        self.species = tuple(species)
        self.reactions = tuple(reactions)
        self.initial = initial if initial is not None else InitialSpec()
        self.__byName = {}
        for index, s in enumerate(self.species):
            if s.id != index:
                raise PathwayError(
                    "species {} has id {} but sits at index {}".format(s.name, s.id, index)
                )
            if s.name in self.__byName:
                raise PathwayError("duplicate species name '{}'".format(s.name))
            self.__byName[s.name] = s
        self.__byId = {}
        for reaction in self.reactions:
            if reaction.id in self.__byId:
                raise PathwayError("duplicate reaction id '{}'".format(reaction.id))
            self.__byId[reaction.id] = reaction
            for role, members in (
                ("reactant", reaction.reactants),
                ("product", reaction.products),
                ("catalyst", reaction.catalysts),
            ):
                if len(set(members)) != len(members):
                    raise PathwayError(
                        "duplicate species in {} list of {}".format(role, reaction.id)
                    )
                for s in members:
                    if self.__byName.get(s.name) != s:
                        raise PathwayError(
                            "reaction {} uses species '{}' missing from the species table".format(
                                reaction.id, s.name
                            )
                        )
        for s in self.initial.present:
            if self.__byName.get(s.name) != s:
                raise PathwayError("initial species '{}' is not in the pathway".format(s.name))

    def speciesNamed(self, name):
        try:
            return self.__byName[name]
        except KeyError:
            raise PathwayError("unknown species '{}'".format(name))

    def hasSpecies(self, name):
        return name in self.__byName

    def reactionById(self, reactionId):
        try:
            return self.__byId[reactionId]
        except KeyError:
            raise PathwayError("unknown reaction '{}'".format(reactionId))

    def speciesNames(self):
        return [s.name for s in self.species]

    def usedSpecies(self):
        """
        species(P), computed from the reactions, in id order.
        """
        used = set()
        for reaction in self.reactions:
            used |= reaction.species()
        return sorted(used, key=lambda s: s.id)

    def unusedSpecies(self):
        """
        Species in the table that no reaction mentions.
        """
        used = set(self.usedSpecies())
        return [s for s in self.species if s not in used]

    def producedSpecies(self):
        produced = set()
        for reaction in self.reactions:
            produced |= set(reaction.products)
        return produced

    def withInitial(self, initial):
        return Pathway(self.species, self.reactions, initial)

    def initialState(self):
        """
        The initial state as a bit vector indexed by species id.
        """
        return maskOf(s.id for s in self.initial.present)

    def __len__(self):
        return len(self.reactions)

    def __repr__(self):
        return "Pathway({} species, {} reactions)".format(len(self.species), len(self.reactions))


class PathwayBuilder(object):
    """
    Interns species in order of first appearance and assembles a
    Pathway. Used by the file reader and by the generators.
    """

    def __init__(self):
        self.species = []
        self.byName = {}
        self.reactions = []
        self.reactionIds = set()
        self.initialNames = []

    def intern(self, name):
        if name not in self.byName:
            if not isSpeciesToken(name):
                raise PathwayError("'{}' is not a valid species name".format(name))
            s = Species(len(self.species), name)
            self.species.append(s)
            self.byName[name] = s
        return self.byName[name]

    def nextReactionId(self):
        return "R{}".format(len(self.reactions) + 1)

    def duplicateMessage(self, reactionId, automatic=False):
        if automatic:
            return "automatic id '{}' of reaction {} is already taken by an earlier reaction".format(
                reactionId, len(self.reactions) + 1
            )
        return "duplicate reaction id '{}'".format(reactionId)

    def addReaction(self, reactionId, reactants, products, catalysts=()):
        automatic = reactionId is None
        if automatic:
            reactionId = self.nextReactionId()
        if reactionId in self.reactionIds:
            raise PathwayError(self.duplicateMessage(reactionId, automatic))
        for role, names in (("reactant", reactants), ("product", products), ("catalyst", catalysts)):
            names = list(names)
            if len(set(names)) != len(names):
                raise PathwayError(
                    "duplicate species in {} list of {}".format(role, reactionId)
                )
        reaction = Reaction(
            reactionId,
            tuple(self.intern(n) for n in reactants),
            tuple(self.intern(n) for n in products),
            frozenset(self.intern(n) for n in catalysts),
        )
        self.reactionIds.add(reactionId)
        self.reactions.append(reaction)
        return reaction

    def addInitial(self, names):
        for name in names:
            self.intern(name)
            if name not in self.initialNames:
                self.initialNames.append(name)

    def build(self):
        initial = InitialSpec(self.byName[n] for n in self.initialNames)
        pathway = Pathway(self.species, self.reactions, initial)
        for s in pathway.unusedSpecies():
            log.warning("species '%s' is declared but used by no reaction", s.name)
        return pathway


def _splitSpeciesList(segment, offset, separator, lineNumber):
    """
    Split a separator-delimited species list, reporting the column of
    any malformed entry. Returns the names in order.
    """
    if segment.strip() == "":
        return []
    names = []
    cursor = 0
    for part in segment.split(separator):
        stripped = part.strip()
        column = offset + cursor + (len(part) - len(part.lstrip())) + 1
        if stripped == "":
            raise PathwaySyntaxError(
                "missing species before or after '{}'".format(separator), lineNumber, column
            )
        if not isSpeciesToken(stripped):
            bad = SPECIES_TOKEN_RE.sub("", stripped)
            if bad:
                column += stripped.index(bad[0])
                message = "unexpected character '{}' in species list".format(bad[0])
            else:
                message = "'{}' is reserved and cannot name a species".format(stripped)
            raise PathwaySyntaxError(message, lineNumber, column)
        names.append(stripped)
        cursor += len(part) + len(separator)
    return names


def _checkRole(names, role, reactionId, lineNumber, column):
    seen = set()
    for name in names:
        if name in seen:
            raise PathwaySyntaxError(
                "duplicate species '{}' in {} list of {}".format(name, role, reactionId),
                lineNumber,
                column,
            )
        seen.add(name)


def _parseReactionLine(builder, line, arrow, lineNumber):
    head = ""
    body = line
    bodyOffset = 0
    colon = line.find(":")
    if colon != -1 and colon < arrow:
        head = line[:colon]
        body = line[colon + 1 :]
        bodyOffset = colon + 1
        arrow -= colon + 1
    reactionId = head.strip() or None
    if reactionId is not None and not isReactionId(reactionId):
        raise PathwaySyntaxError(
            "'{}' is not a valid reaction id".format(reactionId),
            lineNumber,
            len(head) - len(head.lstrip()) + 1,
        )
    automatic = reactionId is None
    if automatic:
        reactionId = builder.nextReactionId()
    if reactionId in builder.reactionIds:
        raise PathwaySyntaxError(builder.duplicateMessage(reactionId, automatic), lineNumber, 1)

    left = body[:arrow]
    right = body[arrow + 2 :]
    rightOffset = bodyOffset + arrow + 2
    catalystText = ""
    catalystOffset = rightOffset
    bracket = right.find("[")
    if bracket != -1:
        closing = right.find("]", bracket)
        if closing == -1:
            raise PathwaySyntaxError("missing ']'", lineNumber, rightOffset + bracket + 1)
        trailing = right[closing + 1 :]
        if trailing.strip():
            raise PathwaySyntaxError(
                "unexpected text after ']'",
                lineNumber,
                rightOffset + closing + 2 + len(trailing) - len(trailing.lstrip()),
            )
        catalystText = right[bracket + 1 : closing]
        catalystOffset = rightOffset + bracket + 1
        right = right[:bracket]
    elif "]" in right:
        raise PathwaySyntaxError("unexpected ']'", lineNumber, rightOffset + right.index("]") + 1)

    reactants = _splitSpeciesList(left, bodyOffset, "+", lineNumber)
    products = _splitSpeciesList(right, rightOffset, "+", lineNumber)
    catalysts = _splitSpeciesList(catalystText, catalystOffset, ",", lineNumber)
    _checkRole(reactants, "reactant", reactionId, lineNumber, bodyOffset + 1)
    _checkRole(products, "product", reactionId, lineNumber, rightOffset + 1)
    _checkRole(catalysts, "catalyst", reactionId, lineNumber, catalystOffset + 1)
    builder.addReaction(reactionId, reactants, products, catalysts)


def parsePathway(text):
    """
    Read a pathway from .pw text.

    Reaction lines are `[id:] reactants -> products [catalysts]`,
    with `+` between species and `,` between catalysts. `init:` lines
    add species to the initial state. `#` starts a comment. Species
    are numbered by first appearance; missing ids become R<k>.
    """
    builder = PathwayBuilder()
    for lineNumber, rawLine in enumerate(text.splitlines(), 1):
        line = rawLine.split("#", 1)[0]
        if line.strip() == "":
            continue
        arrow = line.find("->")
        if arrow == -1:
            colon = line.find(":")
            if colon == -1:
                raise PathwaySyntaxError(
                    "expected '->' or a directive",
                    lineNumber,
                    len(line) - len(line.lstrip()) + 1,
                )
            directive = line[:colon].strip()
            if directive != "init":
                raise PathwaySyntaxError(
                    "unknown directive '{}'".format(directive),
                    lineNumber,
                    len(line) - len(line.lstrip()) + 1,
                )
            names = _splitSpeciesList(line[colon + 1 :], colon + 1, ",", lineNumber)
            builder.addInitial(names)
            continue
        colon = line.find(":")
        if colon != -1 and colon < arrow and line[:colon].strip() == "init":
            raise PathwaySyntaxError("init directive cannot contain '->'", lineNumber, arrow + 1)
        if colon > arrow:
            raise PathwaySyntaxError("unexpected ':'", lineNumber, colon + 1)
        _parseReactionLine(builder, line, arrow, lineNumber)
    return builder.build()


def loadPathway(path):
    """
    Read a .pw file from disk.
    """
    with open(path, "r", encoding="utf-8") as fin:
        return parsePathway(fin.read())


def formatReaction(reaction, annotation=None):
    """
    One .pw line for a reaction.
    """
    text = "{}: {} -> {}".format(
        reaction.id,
        " + ".join(s.name for s in reaction.reactants),
        " + ".join(s.name for s in reaction.products),
    )
    if reaction.catalysts:
        text += " [{}]".format(", ".join(s.name for s in reaction.sortedCatalysts()))
    if annotation:
        text += "  # " + annotation
    return text


def printPathway(pathway, header=None, annotations=None):
    """
    Render a pathway as .pw text. parsePathway(printPathway(p)) gives
    back a pathway with the same names, reactions and initial state.
    """
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    annotations = annotations or {}
    for reaction in pathway.reactions:
        lines.append(formatReaction(reaction, annotations.get(reaction.id)))
    if pathway.initial.present:
        present = sorted(pathway.initial.present, key=lambda s: s.id)
        lines.append("init: " + ", ".join(s.name for s in present))
    return "\n".join(lines) + "\n"


def validateNormalForm(pathway):
    """
    One violation per reaction whose reactant and product counts
    differ. An empty list means components can be identified.
    """
    return [
        NormalFormViolation(r, len(r.reactants), len(r.products))
        for r in pathway.reactions
        if len(r.reactants) != len(r.products)
    ]


def loadExamplePathway(name="fourreactions.pw"):
    """
    Load a pathway distributed with fairway.
    """
    return parsePathway(resources.files("fairway").joinpath("data").joinpath(name).read_text(encoding="utf-8"))
