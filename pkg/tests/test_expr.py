"""Parsing, rendering, evaluation coherence, and the transfer check."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    expr_to_sympy,
    random_polynomial_expr,
    rationals,
    sympy_poly_to_expr,
)
from lcfield.errors import ParseError, UnboundVariableError, ZeroDivisionLCError
from lcfield.expr import (
    Add,
    Div,
    Lit,
    Mul,
    Neg,
    Pow,
    Sqrt,
    Sub,
    Var,
    eval_field,
    eval_rational,
    free_vars,
    parse,
    render,
    transfer_check,
)
from lcfield.number import EPS, LCNumber


class TestParse:
    def test_power(self):
        assert parse("x^2") == Pow(Var("x"), F(2))

    def test_line_equation(self):
        assert parse("1 - x/H") == Sub(Lit(F(1)), Div(Var("x"), Var("H")))

    def test_two_radicals(self):
        tree = parse("sqrt(x^2+y^2)+sqrt(x^2+(y-H)^2)")
        assert isinstance(tree, Add)
        assert isinstance(tree.left, Sqrt)
        assert isinstance(tree.right, Sqrt)

    def test_precedence(self):
        assert parse("-x^2") == Neg(Pow(Var("x"), F(2)))
        assert parse("1 - 2*x") == Sub(Lit(F(1)), Mul(Lit(F(2)), Var("x")))
        assert parse("a - b - c") == Sub(Sub(Var("a"), Var("b")), Var("c"))

    def test_fractional_exponent_needs_parens(self):
        assert parse("x^(1/2)") == Pow(Var("x"), F(1, 2))
        assert parse("x^1/2") == Div(Pow(Var("x"), F(1)), Lit(F(2)))

    def test_decimal_literal_is_exact(self):
        assert parse("0.1") == Lit(F(1, 10))

    def test_syntax_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse("1 + $")
        assert exc.value.pos == 4

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse("   ")

    def test_unknown_function(self):
        with pytest.raises(ParseError):
            parse("log(x)")


@st.composite
def expr_trees(draw, depth=3):
    """Random syntax trees whose literals all have exact decimal forms."""
    literals = st.builds(
        lambda n, k: Lit(F(n, 10**k)),
        st.integers(min_value=0, max_value=99),
        st.integers(min_value=0, max_value=2),
    )
    if depth == 0:
        return draw(st.one_of(literals, st.builds(Var, st.sampled_from("xyz"))))
    left = draw(expr_trees(depth=depth - 1))
    right = draw(expr_trees(depth=depth - 1))
    node = draw(st.sampled_from(["add", "sub", "mul", "div", "neg", "pow", "sqrt", "leaf"]))
    if node == "add":
        return Add(left, right)
    if node == "sub":
        return Sub(left, right)
    if node == "mul":
        return Mul(left, right)
    if node == "div":
        return Div(left, right)
    if node == "neg":
        return Neg(left)
    if node == "pow":
        return Pow(left, draw(st.sampled_from([F(2), F(3), F(-1), F(1, 2), F(-3, 2)])))
    if node == "sqrt":
        return Sqrt(left)
    return draw(st.one_of(literals, st.builds(Var, st.sampled_from("xyz"))))


class TestRender:
    @given(expr_trees())
    @settings(max_examples=300)
    def test_round_trip(self, tree):
        assert parse(render(tree)) == tree

    def test_fully_parenthesized(self):
        assert render(parse("1 - x/H")) == "(1 - (x/H))"


class TestEvalField:
    def test_binomial(self):
        got = eval_field(parse("x^2"), {"x": LCNumber.from_rational(1) + EPS})
        assert str(got) == "1 + 2*eps + eps^(2)"

    def test_oblique_line(self):
        got = eval_field(
            parse("1 - x/H"),
            {"x": LCNumber.from_rational(3), "H": EPS.inv()},
        )
        assert str(got) == "1 - 3*eps"

    def test_product_increment(self):
        binding = {
            "x": LCNumber.from_rational(2),
            "y": LCNumber.from_rational(3),
            "dx": EPS,
            "dy": EPS,
        }
        got = eval_field(parse("(x+dx)*(y+dy) - x*y"), binding)
        assert str(got) == "5*eps + eps^(2)"

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError):
            eval_field(parse("x + y"), {"x": EPS})


class TestEvalRational:
    def test_square(self):
        assert eval_rational(parse("x^2"), {"x": F(3)}) == 9

    def test_parabola_point(self):
        got = eval_rational(parse("(y+2)^2 - (x^2+y^2)"), {"x": F(2), "y": F(0)})
        assert got == 0

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionLCError):
            eval_rational(parse("x/y"), {"x": F(1), "y": F(0)})

    @given(expr_trees(), rationals, rationals, rationals)
    @settings(max_examples=300)
    def test_embedding_coherence(self, tree, x, y, z):
        # Standard bindings: field evaluation restricted to exponent 0
        # agrees with rational evaluation whenever the latter succeeds.
        binding = {"x": x, "y": y, "z": z}
        try:
            expected = eval_rational(tree, binding)
        except Exception:
            return
        got = eval_field(
            tree, {k: LCNumber.from_rational(v) for k, v in binding.items()}
        )
        assert got.st() == expected
        assert all(q == 0 for q, _ in got.terms)


class TestTransferCheck:
    def test_binomial_identity(self):
        report = transfer_check(parse("(a+b)^2"), parse("a^2 + 2*a*b + b^2"), trials=25)
        assert report.ok
        assert report.rational_trials == 25
        assert report.field_trials == 25
        # Holds in particular at an infinitesimal paired with an unlimited value.
        diff = eval_field(parse("(a+b)^2"), {"a": EPS, "b": EPS.inv()}) - eval_field(
            parse("a^2 + 2*a*b + b^2"), {"a": EPS, "b": EPS.inv()}
        )
        assert not diff.terms

    def test_non_identity_reports_counterexample(self):
        report = transfer_check(parse("a^2"), parse("a"), trials=10)
        assert not report.ok
        assert report.first_counterexample is not None

    def test_expansion_oracle_identities(self):
        rng = random.Random(7)
        for _ in range(10):
            lhs = random_polynomial_expr(rng, ["a", "b"])
            names = sorted(free_vars(lhs)) or ["a"]
            rhs = sympy_poly_to_expr(expr_to_sympy(lhs), names)
            report = transfer_check(lhs, rhs, trials=10, seed=rng.randrange(10**6))
            assert report.ok, report.first_counterexample
