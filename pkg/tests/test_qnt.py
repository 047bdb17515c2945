import pytest

from quantale_lab.catalog import all_catalog, c3l, c3r, q2
from quantale_lab.errors import NotAssociative, ParseError
from quantale_lab.qnt import export_qnt, export_tensor_qnt, parse_qnt
from quantale_lab.tensor import tensor_quantale

Q2_TEXT = """quantale q2
elements: bot b al ar c top
order: bot<b b<al b<ar al<c ar<c c<top
mult: b: b b ar ar ar
mult: al: al al top top top
mult: ar: b b ar ar ar
mult: c: al al top top top
mult: top: al al top top top
unit: none
involution: bot->bot b->b al->ar ar->al c->c top->top
"""


def test_q2_text_parses_to_catalog_entry():
    Q = parse_qnt(Q2_TEXT)
    assert Q.mult == q2().mult and Q.involution == q2().involution
    assert export_qnt(Q) == Q2_TEXT


@pytest.mark.parametrize("Q", all_catalog(), ids=lambda q: q.name)
def test_round_trip_is_byte_identical(Q):
    text = export_qnt(Q)
    R = parse_qnt(text)
    assert export_qnt(R) == text
    assert R.mult == Q.mult and R.unit == Q.unit and R.involution == Q.involution


def test_comments_blank_lines_and_bottom_row():
    text = "# a comment\n\nquantale two  # trailing\nelements: bot top\norder: bot<top\n" \
           "mult: bot: bot\nmult: top: top\nunit: top\ninvolution: none\n"
    Q = parse_qnt(text)
    assert Q.unit == Q.top and not Q.is_involutive


def test_partial_involution_fixes_the_rest():
    text = Q2_TEXT.replace("involution: bot->bot b->b al->ar ar->al c->c top->top", "involution: al->ar ar->al")
    assert parse_qnt(text).involution == q2().involution


@pytest.mark.parametrize(
    "old,new,line",
    [
        ("mult: b: b b ar ar ar", "mult: b: b b ar ar", 4),
        ("mult: al: al al top top top", "mult: al: al al top top zz", 5),
        ("order: bot<b", "order: bot<zz", 3),
        ("order: bot<b", "order: bot-b", 3),
        ("unit: none", "unit: q", 9),
        ("involution: bot->bot", "involution: bot=>bot", 10),
        ("quantale q2", "quantale", 1),
        ("unit: none", "colour: red", 9),
    ],
)
def test_parse_errors_carry_line_numbers(old, new, line):
    with pytest.raises(ParseError) as e:
        parse_qnt(Q2_TEXT.replace(old, new))
    assert str(e.value).startswith(f"line {line}:")


def test_missing_row_and_header():
    with pytest.raises(ParseError):
        parse_qnt(Q2_TEXT.replace("mult: c: al al top top top\n", ""))
    with pytest.raises(ParseError):
        parse_qnt(Q2_TEXT.replace("quantale q2\n", ""))


def test_law_violations_surface_unchanged():
    with pytest.raises(NotAssociative):
        parse_qnt(Q2_TEXT.replace("mult: b: b b", "mult: b: al b"))


def test_tensor_export_has_factorization_and_parses():
    T = tensor_quantale(c3l(), c3r())
    text = export_tensor_qnt(T)
    assert "# factorization:" in text
    assert "(a,top)|(top,a) = a*top v top*a" in text
    assert parse_qnt(text).mult == T.quantale.mult
