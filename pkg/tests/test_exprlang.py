import numpy as np
import pytest
from hypothesis import given, strategies as st

from pctsolve import exprlang
from pctsolve.errors import (
    DomainError,
    ExprSyntaxError,
    UnboundParameterError,
    UnknownFunctionError,
)
from pctsolve.exprlang import BinOp, Call, Neg, Num, Param, Var, eval_jet, parse, to_source


def value_at(source, x, params=None):
    return eval_jet(parse(source), x, params).value


class TestParser:
    def test_precedence(self):
        assert value_at("2+3*4", 0.0) == 14.0
        assert value_at("2*3^2", 0.0) == 18.0
        assert value_at("2^3^2", 0.0) == 512.0  # right-associative
        assert value_at("2-3-4", 0.0) == -5.0  # left-associative
        assert value_at("-2^2", 0.0) == -4.0  # unary minus binds looser than ^

    def test_ast_shape(self):
        ast = parse("a*x + sin(x)")
        assert ast == BinOp(
            "+", BinOp("*", Param("a"), Var()), Call("sin", Var())
        )

    def test_whitespace_and_scientific_notation(self):
        assert value_at(" 1.5e2 +  x ", 0.5) == 150.5

    def test_syntax_error_offsets(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("1 + $")
        assert err.value.offset == 4
        with pytest.raises(ExprSyntaxError) as err:
            parse("sin(x")
        assert ")" in err.value.expected
        with pytest.raises(ExprSyntaxError):
            parse("1 + ")
        with pytest.raises(ExprSyntaxError):
            parse("1 2")

    def test_unknown_function(self):
        with pytest.raises(UnknownFunctionError):
            parse("sinc(x)")

    def test_function_requires_call(self):
        with pytest.raises(ExprSyntaxError):
            parse("sin + 1")

    def test_unbound_parameter(self):
        with pytest.raises(UnboundParameterError):
            eval_jet(parse("a*x"), 1.0, {})
        with pytest.raises(UnboundParameterError):
            eval_jet(parse("sinhq(x)"), 1.0, {})  # needs q


class TestPrinter:
    @pytest.mark.parametrize(
        "source",
        [
            "x",
            "1.0+x",
            "-(x+1.0)",
            "(x+1.0)*(x-2.0)",
            "x^2.0",
            "(x+1.0)^2.0",
            "2.0^(x+1.0)",
            "x/(1.0+x)",
            "x-(1.0-x)",
            "sin(cos(x))",
            "tanhq(0.5*x)^2.0",
            "-x^2.0",
        ],
    )
    def test_roundtrip(self, source):
        ast = parse(source)
        assert parse(to_source(ast)) == ast

    def test_roundtrip_preserves_value(self):
        source = "1.0/(2.0-x)-(3.0-x)*x^2.0"
        xs = np.linspace(-1, 1, 7)
        a = eval_jet(parse(source), xs).value
        b = eval_jet(parse(to_source(parse(source))), xs).value
        assert np.array_equal(a, b)


def fd_derivatives(source, x, params=None, h=1e-4):
    f = lambda t: eval_jet(parse(source), t, params).value
    d1 = (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)
    d2 = (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12 * h * h)
    return d1, d2


class TestJets:
    @pytest.mark.parametrize(
        "source,params",
        [
            ("x^3 - 2*x + 1", None),
            ("sin(2*x)*cos(x)", None),
            ("exp(0.5*x)/(2+x)", None),
            ("ln(3+x)*sqrt(4+x)", None),
            ("tanh(x) + coth(3+x)", None),
            ("sinhq(x)+coshq(0.5*x)", {"q": 2.0}),
            ("tanhq(x)^2", {"q": 0.7}),
            ("sechq(x)*cschq(4+x)", {"q": 1.5}),
            ("(2+x)^2.5", None),
            ("a*x^2 + b", {"a": 3.0, "b": -1.0, "q": 1.0}),
        ],
    )
    def test_against_finite_differences(self, source, params):
        for x in (-0.8, 0.3, 1.1):
            jet = eval_jet(parse(source), x, params)
            d1, d2 = fd_derivatives(source, x, params)
            assert jet.d1 == pytest.approx(d1, rel=1e-7, abs=1e-7)
            assert jet.d2 == pytest.approx(d2, rel=1e-5, abs=1e-5)

    @given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.floats(-2, 2))
    def test_polynomial_derivatives_exact(self, coeffs, x):
        a, b, c = coeffs
        src = f"{a}*x^2 + {b}*x + {c}"
        jet = eval_jet(parse(src), x)
        assert jet.d1 == pytest.approx(2 * a * x + b, rel=1e-12, abs=1e-9)
        assert jet.d2 == pytest.approx(2 * a, rel=1e-12, abs=1e-9)

    def test_array_evaluation(self):
        xs = np.linspace(-1, 1, 9)
        jet = eval_jet(parse("sin(x)"), xs)
        assert np.allclose(jet.value, np.sin(xs))
        assert np.allclose(jet.d1, np.cos(xs))
        assert np.allclose(jet.d2, -np.sin(xs))

    def test_integer_power_of_negative_base(self):
        jet = eval_jet(parse("x^3"), -2.0)
        assert jet.value == -8.0 and jet.d1 == 12.0 and jet.d2 == -12.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            eval_jet(parse("ln(x)"), -1.0)
        with pytest.raises(DomainError):
            eval_jet(parse("sqrt(x)"), -4.0)
        with pytest.raises(DomainError):
            eval_jet(parse("1/x"), 0.0)
        with pytest.raises(DomainError):
            eval_jet(parse("x^0.5"), -1.0)

    def test_general_power(self):
        # x^x via exp(x ln x) path: d/dx = x^x (ln x + 1)
        jet = eval_jet(parse("x^x"), 1.5)
        v = 1.5**1.5
        assert jet.value == pytest.approx(v)
        assert jet.d1 == pytest.approx(v * (np.log(1.5) + 1), rel=1e-12)
