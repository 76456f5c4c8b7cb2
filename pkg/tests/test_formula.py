"""
property text: precedence, derived operators, negation normal form
and property files
"""

import pytest

from fairway.Formula import (
    AF,
    AG,
    AU,
    AUw,
    FALSE,
    TRUE,
    And,
    FormulaScopeError,
    FormulaSyntaxError,
    Lit,
    Or,
    checkScope,
    loadExampleProperties,
    negate,
    parseFormula,
    parsePropertyFile,
)

A, B, C = Lit("A"), Lit("B"), Lit("C")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("A", A),
        ("!A", Lit("A", False)),
        ("true", TRUE),
        ("A & B | C", Or(And(A, B), C)),
        ("A | B & C", Or(A, And(B, C))),
        ("A -> B", Or(Lit("A", False), B)),
        ("AF C", AU(TRUE, C)),
        ("AG !C", AUw(Lit("C", False), FALSE)),
        ("A[(A | B) U C]", AU(Or(A, B), C)),
        ("A [A W C]", AUw(A, C)),
        ("AF (A & B)", AF(And(A, B))),
        ("!(A & B)", Or(Lit("A", False), Lit("B", False))),
        ("AG (A -> AF B)", AG(Or(Lit("A", False), AF(B)))),
    ],
)
def test_parse(text, expected):
    assert parseFormula(text) == expected


def test_species_with_marks():
    "stars, primes and parenthesised suffixes are species names"
    f = parseFormula("AF (K56* & B7*)", ["K56*", "B7*"])
    assert f == AF(And(Lit("K56*"), Lit("B7*")))
    assert parseFormula("Raf(p) & A'", ["Raf(p)", "A'"]) == And(Lit("Raf(p)"), Lit("A'"))


def test_parenthesised_literal():
    assert parseFormula("(A)", ["A"]) == A


def test_keyword_species_are_quoted():
    f = parseFormula('AF "true" & AG !"AF"', ["true", "AF"])
    assert f == And(AF(Lit("true")), AG(Lit("AF", False)))
    assert str(AF(Lit("true"))) == 'AF "true"'
    assert parseFormula(str(f), ["true", "AF"]) == f
    with pytest.raises(FormulaScopeError):
        parseFormula('AF "AG"', ["A"])


def test_round_trip():
    for text in ["AF C", "AG !C", "A[(A | B) U C]", "A[(A | B) W C]", "AF (A & B)"]:
        f = parseFormula(text)
        assert parseFormula(str(f)) == f
    assert str(parseFormula("A[(A | B) U C]")) == "A[(A | B) U C]"


def test_negation():
    assert negate(And(A, Lit("B", False))) == Or(Lit("A", False), B)
    with pytest.raises(FormulaSyntaxError):
        negate(AF(A))


@pytest.mark.parametrize("text", ["!AF C", "A &", "A[A U C", "AF", "A ) B", "AF C -> B"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parseFormula(text)


def test_error_column():
    with pytest.raises(FormulaSyntaxError) as info:
        parseFormula("A & $")
    assert info.value.column == 5


def test_scope():
    with pytest.raises(FormulaScopeError) as info:
        parseFormula("AF Q", ["A", "B"])
    assert info.value.names == ("Q",)
    with pytest.raises(FormulaScopeError, match="species outside the projection: C"):
        checkScope(parseFormula("AF C"), ["A", "B"], "projection")
    assert checkScope(A, ["A"]) == A


def test_subformulas():
    f = parseFormula("A[(A | B) U C]")
    subs = f.subformulas()
    assert subs[-1] == f
    assert subs.index(A) < subs.index(Or(A, B))
    assert f.literals() == frozenset(["A", "B", "C"])
    assert f.isTemporal()
    assert not Or(A, B).isTemporal()


def test_property_file():
    props = parsePropertyFile("# props\nreachC: AF C\n\nneverC: AG !C  # strengthened\n")
    assert list(props) == ["reachC", "neverC"]
    assert props["neverC"] == AG(Lit("C", False))


def test_property_file_errors():
    with pytest.raises(FormulaSyntaxError) as info:
        parsePropertyFile("a: AF C\nb: A & $\n")
    assert info.value.lineNumber == 2
    assert info.value.column == 8
    with pytest.raises(FormulaSyntaxError, match="given twice"):
        parsePropertyFile("a: A\na: B\n")
    with pytest.raises(FormulaSyntaxError, match="expected 'name: formula'"):
        parsePropertyFile("AF C\n")


def test_example_properties():
    props = loadExampleProperties(species=["A", "B", "C", "D"])
    assert list(props) == ["reachC", "keepD", "neverC", "untilC", "weakUntilC"]
    assert props["untilC"] == AU(Or(A, B), C)
