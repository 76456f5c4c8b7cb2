#
# Formula.py
#
# The universal branching-time property language: negation-normal
# formula trees, the grammar for property text and .actl property
# files, and species scoping.
#

import logging
from dataclasses import dataclass
from importlib import resources

from lark import Lark, Token, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

log = logging.getLogger(__name__)

# Species with these names are written in double quotes.
FORMULA_KEYWORDS = ("AF", "AG", "true", "false")

GRAMMAR = r"""
?start: impl

?impl: disj
     | disj ARROW impl              -> implies

?disj: conj
     | disj "|" conj                -> or_

?conj: unary
     | conj "&" unary               -> and_

?unary: atom
      | BANG unary                  -> not_
      | AF unary                    -> af
      | AG unary                    -> ag

?atom: TRUE                         -> true
     | FALSE                        -> false
     | SPECIES                      -> lit
     | QUOTED                       -> quoted
     | AQ impl "U" impl "]"         -> au
     | AQ impl "W" impl "]"         -> aw
     | "(" impl ")"

AQ.2: /A\s*\[/
AF.2: /AF(?![A-Za-z0-9_*'\-])/
AG.2: /AG(?![A-Za-z0-9_*'\-])/
TRUE.2: /true(?![A-Za-z0-9_*'\-(])/
FALSE.2: /false(?![A-Za-z0-9_*'\-(])/
ARROW: "->"
BANG: "!"
SPECIES: /(?:[A-Za-z0-9_*']|-(?!>)|\((?:[A-Za-z0-9_*'\-]|\([A-Za-z0-9_*'\-]*\))*\))+/
QUOTED: /"[^"\s]+"/

%import common.WS
%ignore WS
"""

_parser = None


def _getParser():
    global _parser
    if _parser is None:
        _parser = Lark(GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True)
    return _parser


class FormulaSyntaxError(ValueError):
    """
    Property text outside the grammar, or a negated temporal formula.
    """

    def __init__(self, message, column=None, lineNumber=None):
        where = []
        if lineNumber is not None:
            where.append("line {}".format(lineNumber))
        if column is not None:
            where.append("column {}".format(column))
        prefix = ", ".join(where)
        super().__init__(prefix + ": " + message if prefix else message)
        self.column = column
        self.lineNumber = lineNumber


class FormulaScopeError(ValueError):
    """
    A literal names a species the checked system does not have.
    """

    def __init__(self, names, scope="pathway"):
        super().__init__(
            "species outside the {}: {}".format(scope, ", ".join(sorted(names)))
        )
        self.names = tuple(sorted(names))


class Formula(object):
    temporal = False

    def children(self):
        return ()

    def subformulas(self):
        """
        Distinct subformulas, operands before the formulas using them.
        """
        seen = []
        stack = [(self, False)]
        while stack:
            f, expanded = stack.pop()
            if expanded:
                if f not in seen:
                    seen.append(f)
                continue
            stack.append((f, True))
            for child in reversed(f.children()):
                stack.append((child, False))
        return seen

    def literals(self):
        return frozenset(f.species for f in self.subformulas() if isinstance(f, Lit))

    def isTemporal(self):
        return any(f.temporal for f in self.subformulas())


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Lit(Formula):
    species: str
    positive: bool = True

    def __str__(self):
        name = '"{}"'.format(self.species) if self.species in FORMULA_KEYWORDS else self.species
        return name if self.positive else "!" + name


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return "({} & {})".format(self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return "({} | {})".format(self.left, self.right)


@dataclass(frozen=True)
class AU(Formula):
    """
    A[left U right].
    """

    left: Formula
    right: Formula
    temporal = True

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        if self.left == TRUE:
            return "AF {}".format(self.right)
        return "A[{} U {}]".format(self.left, self.right)


@dataclass(frozen=True)
class AUw(Formula):
    """
    A[left W right], the weak until.
    """

    left: Formula
    right: Formula
    temporal = True

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        if self.right == FALSE:
            return "AG {}".format(self.left)
        return "A[{} W {}]".format(self.left, self.right)


def AF(f):
    return AU(TRUE, f)


def AG(f):
    return AUw(f, FALSE)


def negate(f, column=None):
    """
    Negation pushed to the literals. Only propositional formulas can
    be negated.
    """
    if isinstance(f, Const):
        return Const(not f.value)
    if isinstance(f, Lit):
        return Lit(f.species, not f.positive)
    if isinstance(f, And):
        return Or(negate(f.left, column), negate(f.right, column))
    if isinstance(f, Or):
        return And(negate(f.left, column), negate(f.right, column))
    raise FormulaSyntaxError("negation of a temporal formula: {}".format(f), column)


def _column(node):
    if isinstance(node, Token):
        return node.column
    return getattr(node.meta, "column", None)


class _Translator(object):
    def __init__(self, species):
        self.species = None if species is None else frozenset(species)

    def resolve(self, token):
        name = str(token)
        if self.species is not None and name in self.species:
            return name
        inner = name
        while inner.startswith("(") and inner.endswith(")") and _wrapped(inner):
            inner = inner[1:-1]
            if self.species is not None and inner in self.species:
                return inner
        if self.species is None:
            return inner
        raise FormulaScopeError([name])

    def translate(self, node):
        if isinstance(node, Token):
            raise FormulaSyntaxError("unexpected '{}'".format(node), node.column)
        kind = node.data
        args = node.children
        if kind == "true":
            return TRUE
        if kind == "false":
            return FALSE
        if kind == "lit":
            return Lit(self.resolve(args[0]))
        if kind == "quoted":
            name = str(args[0])[1:-1]
            if self.species is not None and name not in self.species:
                raise FormulaScopeError([name])
            return Lit(name)
        if kind == "and_":
            return And(self.translate(args[0]), self.translate(args[1]))
        if kind == "or_":
            return Or(self.translate(args[0]), self.translate(args[1]))
        if kind == "not_":
            return negate(self.translate(args[1]), args[0].column)
        if kind == "implies":
            left = self.translate(args[0])
            if left.isTemporal():
                raise FormulaSyntaxError(
                    "left side of '->' must be propositional", _column(args[0])
                )
            return Or(negate(left), self.translate(args[2]))
        if kind == "af":
            return AF(self.translate(args[1]))
        if kind == "ag":
            return AG(self.translate(args[1]))
        if kind == "au":
            return AU(self.translate(args[1]), self.translate(args[2]))
        if kind == "aw":
            return AUw(self.translate(args[1]), self.translate(args[2]))
        raise FormulaSyntaxError("unexpected construct '{}'".format(kind), _column(node))


def _wrapped(text):
    """
    Whether the outer parentheses of text match each other.
    """
    depth = 0
    for i, c in enumerate(text):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return depth == 0


def parseFormula(text, species=None):
    """
    Parse property text into a negation-normal Formula. AF f becomes
    A[true U f] and AG f becomes A[f W false]. When species is given,
    every literal must name one of them.
    """
    try:
        tree = _getParser().parse(text)
    except UnexpectedCharacters as e:
        raise FormulaSyntaxError(
            "unexpected character '{}'".format(text[e.pos_in_stream]), e.column
        )
    except UnexpectedEOF:
        raise FormulaSyntaxError("unexpected end of formula", len(text) + 1)
    except UnexpectedToken as e:
        if e.token.type == "$END":
            raise FormulaSyntaxError("unexpected end of formula", len(text) + 1)
        raise FormulaSyntaxError("unexpected '{}'".format(e.token), e.column)
    except UnexpectedInput as e:
        raise FormulaSyntaxError("malformed formula", getattr(e, "column", None))
    f = _Translator(species).translate(tree) if isinstance(tree, Tree) else None
    if f is None:
        raise FormulaSyntaxError("malformed formula", 1)
    log.debug("parsed %s", f)
    return f


def checkScope(f, species, scope="pathway"):
    """
    Raise FormulaScopeError if f names species outside the given set.
    """
    outside = f.literals() - frozenset(species)
    if outside:
        raise FormulaScopeError(outside, scope)
    return f


def parsePropertyFile(text, species=None):
    """
    Read `name: formula` lines into a dict of name to Formula, in
    file order.
    """
    properties = {}
    for lineNumber, rawLine in enumerate(text.splitlines(), 1):
        line = rawLine.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise FormulaSyntaxError("expected 'name: formula'", 1, lineNumber)
        name, body = line.split(":", 1)
        name = name.strip()
        if not name:
            raise FormulaSyntaxError("missing property name", 1, lineNumber)
        if name in properties:
            raise FormulaSyntaxError("property '{}' given twice".format(name), 1, lineNumber)
        try:
            properties[name] = parseFormula(body, species)
        except FormulaSyntaxError as e:
            column = None if e.column is None else e.column + line.index(":") + 1
            message = str(e).split(": ", 1)[-1]
            raise FormulaSyntaxError(message, column, lineNumber)
    return properties


def loadPropertyFile(path, species=None):
    with open(path, "r", encoding="utf-8") as fin:
        return parsePropertyFile(fin.read(), species)


def loadExampleProperties(name="fourreactions.actl", species=None):
    """
    Load a property file distributed with fairway.
    """
    text = resources.files("fairway").joinpath("data").joinpath(name).read_text(encoding="utf-8")
    return parsePropertyFile(text, species)
