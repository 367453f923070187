import pytest

from app.core.config import settings
from app.core.exceptions import DomainError, EquationSyntaxError, UnassignedVariable
from app.models.term import Binary, BinaryOp, Const, ConstKind, Unary, UnaryOp, Var
from app.services.equation_parser import format_equation, parse_equation, parse_term
from app.services.equation_service import (
    evaluate,
    holds,
    length,
    min_length_lower_bound,
    num_variables,
    variables,
)

DISTRIBUTIVITY = "(x + y) . z = x . z + y . z"
COMMUTATIVITY = "x ; y = y ; x"


class TestParser:
    """Tests del parser y la impresión canónica"""

    def test_precedence(self):
        term = parse_term("x + y . z ; w")
        assert term == Binary(
            BinaryOp.JOIN,
            Var("x"),
            Binary(BinaryOp.MEET, Var("y"), Binary(BinaryOp.COMPOSE, Var("z"), Var("w"))),
        )

    def test_left_associative(self):
        assert parse_term("x ; y ; z") == Binary(
            BinaryOp.COMPOSE, Binary(BinaryOp.COMPOSE, Var("x"), Var("y")), Var("z")
        )

    def test_unary_binds_tightest(self):
        term = parse_term("-x^ ; y")
        assert term == Binary(
            BinaryOp.COMPOSE,
            Unary(UnaryOp.COMPLEMENT, Unary(UnaryOp.CONVERSE, Var("x"))),
            Var("y"),
        )

    def test_constants(self):
        assert parse_term("1'") == Const(ConstKind.IDENTITY)
        assert parse_term("0") == Const(ConstKind.ZERO)
        assert parse_term("1") == Const(ConstKind.ONE)
        assert parse_term("0'") == Unary(UnaryOp.COMPLEMENT, Const(ConstKind.IDENTITY))

    def test_variables_with_digits(self):
        eq = parse_equation("x1;x2 = x2;x1")
        assert variables(eq) == ["x1", "x2"]

    def test_canonical_printing(self):
        assert format_equation(parse_equation("-(x^) ; 1' = -(x^)")) == "-x^ ; 1' = -x^"
        assert format_equation(parse_equation("((x+y)) . z = x.z + (y.z)")) == DISTRIBUTIVITY
        assert format_equation(parse_equation("x ; (y ; z) = (x ; y) ; z")) == "x ; (y ; z) = x ; y ; z"
        assert format_equation(parse_equation("(x^)^ = (-x)^")) == "(x^)^ = (-x)^"

    @pytest.mark.parametrize(
        "text",
        [
            DISTRIBUTIVITY,
            COMMUTATIVITY,
            "-(x^) ; 1' = -(x^)",
            "x + (y + z) = (x + y) + z",
            "-(x . -y) ; 0' = 1 + 0",
            "(x ; y)^ = y^ ; x^",
        ],
    )
    def test_print_parse_identity(self, text):
        eq = parse_equation(text)
        printed = format_equation(eq)
        assert parse_equation(printed) == eq
        assert format_equation(parse_equation(printed)) == printed
        assert length(parse_equation(printed)) == length(eq)

    @pytest.mark.parametrize(
        "text, position",
        [
            ("x + = y", 4),
            ("x = y )", 6),
            ("x # y = y", 2),
            ("x + y", 5),
            ("(x = y", 3),
            ("10 = x", 0),
        ],
    )
    def test_syntax_errors(self, text, position):
        with pytest.raises(EquationSyntaxError) as exc:
            parse_equation(text)
        assert exc.value.position == position


class TestMeasures:
    """Tests de largo y variables"""

    @pytest.mark.parametrize(
        "text, expected_length, expected_vars",
        [
            (DISTRIBUTIVITY, 12, 3),
            ("x = x", 2, 1),
            ("-(x^) ; 1' = -(x^)", 8, 1),
            ("x1;x2 = x2;x1", 6, 2),
            ("0' = 0'", 4, 0),
        ],
    )
    def test_length_and_variables(self, text, expected_length, expected_vars):
        eq = parse_equation(text)
        assert length(eq) == expected_length
        assert num_variables(eq) == expected_vars

    def test_first_occurrence_order(self):
        assert variables(parse_equation("z ; x = y + z")) == ["z", "x", "y"]

    @pytest.mark.parametrize("k, expected", [(1, 2), (2, 2), (3, 4), (5, 8)])
    def test_min_length_lower_bound(self, k, expected):
        assert min_length_lower_bound(k) == expected

    def test_min_length_lower_bound_domain(self):
        with pytest.raises(DomainError):
            min_length_lower_bound(0)


class TestEvaluate:
    """Tests de evaluación de términos"""

    def test_identity_constant(self, e5):
        assert evaluate(parse_term("1'"), e5, {}).names() == ["1'"]

    def test_square_of_atom(self, e5):
        value = evaluate(parse_term("x ; x"), e5, {"x": e5.atom("a1")})
        assert value.names() == ["1'", "a1"]

    def test_complement_of_join(self, e5):
        value = evaluate(parse_term("-(x + y)"), e5, {"x": e5.atom("a1"), "y": e5.atom("a2")})
        assert value.names() == ["1'", "a3", "a4"]

    def test_unassigned_variable(self, e5):
        with pytest.raises(UnassignedVariable) as exc:
            evaluate(parse_term("x ; y"), e5, {"x": e5.atom("a1")})
        assert exc.value.name == "y"
        assert isinstance(exc.value, KeyError)


class TestHolds:
    """Tests del chequeo exhaustivo de ecuaciones"""

    def test_distributivity_holds_in_e5(self, e5):
        result = holds(parse_equation(DISTRIBUTIVITY), e5)
        assert result.holds
        assert result.assignments_checked == 32 ** 3

    def test_lyndon_algebras_commute(self, e5):
        assert holds(parse_equation(COMMUTATIVITY), e5).holds

    def test_s3_does_not_commute(self, s3):
        """Testigo mínimo: x = (12), y = (13)"""
        result = holds(parse_equation(COMMUTATIVITY), s3)
        assert not result.holds
        assert result.witness == {"x": ["(12)"], "y": ["(13)"]}
        assert result.lhs == ["(132)"]
        assert result.rhs == ["(123)"]
        assert result.assignments_checked == 2 * 64 + 4 + 1

    def test_witness_is_sound(self, s3):
        eq = parse_equation(COMMUTATIVITY)
        result = holds(eq, s3)
        assert evaluate(eq.lhs, s3, result.assignment) != evaluate(eq.rhs, s3, result.assignment)

    def test_witness_independent_of_threads(self, s3):
        eq = parse_equation(COMMUTATIVITY)
        assert holds(eq, s3, threads=1).model_dump() == holds(eq, s3, threads=8).model_dump()

    def test_witness_independent_of_blocks(self, s3, monkeypatch):
        """Sin tabla de composición y con bloques mínimos el testigo no cambia"""
        eq = parse_equation(COMMUTATIVITY)
        expected = holds(eq, s3).model_dump()
        monkeypatch.setattr(settings, "COMPOSE_TABLE_LIMIT", 1)
        monkeypatch.setattr(settings, "VECTOR_BLOCK", 1)
        assert holds(eq, s3, threads=3).model_dump() == expected

    def test_idempotence_fails_at_least_atom(self, e5):
        result = holds(parse_equation("x ; x = x"), e5)
        assert result.witness == {"x": ["a1"]}
        assert result.lhs == ["1'", "a1"]

    def test_restriction(self, s3):
        """En el subgrupo cíclico la composición conmuta"""
        cyclic = [s3.atom("e"), s3.atom("(123)"), s3.atom("(132)")]
        result = holds(parse_equation(COMMUTATIVITY), s3, restrict_to=cyclic)
        assert result.holds
        assert result.assignments_checked == 9

    def test_restriction_monotone(self, e5):
        eq = parse_equation(DISTRIBUTIVITY)
        subset = [e for e in e5.elements() if e.mask % 3 == 0]
        assert holds(eq, e5).holds and holds(eq, e5, restrict_to=subset).holds

    def test_closed_equations(self, e5):
        assert holds(parse_equation("1 ; 1 = 1"), e5).holds
        result = holds(parse_equation("1' = 0"), e5)
        assert not result.holds
        assert result.witness == {}
        assert result.lhs == ["1'"] and result.rhs == []

    def test_empty_domain_holds(self, e5):
        assert holds(parse_equation("x = -x"), e5, restrict_to=[]).holds

    def test_ra_laws_hold_in_lyndon(self, e5):
        for text in ["(x ; y)^ = y^ ; x^", "x ; 1' = x", "(x^)^ = x", "x ; (y + z) = x ; y + x ; z"]:
            assert holds(parse_equation(text), e5).holds, text
