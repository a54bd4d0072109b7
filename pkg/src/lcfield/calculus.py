"""Differentiation by infinitesimal increment and standard part.

The derivative of ``f`` at ``x0`` is obtained exactly as the shadow of the
differential quotient: evaluate ``f`` at ``x0 + eps``, subtract ``f(x0)``,
divide by ``eps``, and take the standard part.  Nothing is rounded and no
limit is computed; the discarded infinitesimal remainder stays visible in
``pre_shadow``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    DegenerateProgressionError,
    NotInfinitesimalError,
)
from .expr import Expr, eval_field, free_vars
from .number import DEFAULT_DEPTH, EPS, LCNumber

Rational = Union[int, Fraction]


def _single_var(f: Expr) -> str:
    names = free_vars(f)
    if len(names) > 1:
        raise ValueError(f"expected a univariate expression, got variables {sorted(names)}")
    return next(iter(names)) if names else "x"


@dataclass(frozen=True)
class DiffResult:
    """Derivative value together with the differential quotient it shadows."""

    derivative_value: Fraction
    pre_shadow: LCNumber


def derivative(
    f: Expr,
    x0: Rational,
    depth: int = DEFAULT_DEPTH,
    increment: Optional[LCNumber] = None,
) -> DiffResult:
    """Differentiate a univariate expression at a rational point.

    ``increment`` defaults to ``eps``; any nonzero infinitesimal may be
    passed instead, and for rational-function expressions the result does
    not depend on the choice.
    """
    h = EPS if increment is None else increment
    if not h.terms or not h.is_infinitesimal():
        raise NotInfinitesimalError("increment must be a nonzero infinitesimal")
    var = _single_var(f)
    x0 = Fraction(x0)
    at_x0 = eval_field(f, {var: LCNumber.from_rational(x0)}, depth)
    shifted = eval_field(f, {var: LCNumber.from_rational(x0) + h}, depth)
    pre_shadow = (shifted - at_x0) * h.inv(depth)
    return DiffResult(pre_shadow.st(), pre_shadow)


def second_derivative(f: Expr, x0: Rational, depth: int = DEFAULT_DEPTH) -> Fraction:
    """Shadow of the second difference quotient on the grid x0, x0+eps, x0+2eps."""
    var = _single_var(f)
    x0 = Fraction(x0)
    values = [
        eval_field(f, {var: LCNumber.from_rational(x0) + EPS * i}, depth)
        for i in range(3)
    ]
    quotient = (values[2] - values[1] * 2 + values[0]) * (EPS * EPS).inv(depth)
    return quotient.st()


@dataclass(frozen=True)
class ProductRuleTrace:
    """The product-increment computation in three stages.

    ``expansion`` is the exact increment ``u*dv + v*du + du*dv``; ``kept``
    is what survives the dominant-order reduction; ``discarded`` is the
    rejected higher-order term ``du*dv``.
    """

    u0: Fraction
    v0: Fraction
    du: LCNumber
    dv: LCNumber
    expansion: LCNumber
    kept: LCNumber
    discarded: LCNumber

    def to_json_dict(self) -> dict:
        return {
            "stages": {
                "expansion": str(self.expansion),
                "tlh": str(self.kept),
                "discarded": str(self.discarded),
            }
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def product_rule_trace(
    u0: Rational, v0: Rational, du: LCNumber, dv: LCNumber
) -> ProductRuleTrace:
    """Expand (u+du)(v+dv) - uv and split it into kept and discarded parts."""
    for name, d in (("du", du), ("dv", dv)):
        if not d.is_infinitesimal():
            raise NotInfinitesimalError(f"{name} = {d} is not infinitesimal")
    u0 = Fraction(u0)
    v0 = Fraction(v0)
    u = LCNumber.from_rational(u0) + du
    v = LCNumber.from_rational(v0) + dv
    expansion = u * v - u0 * v0
    kept = dv * u0 + du * v0
    discarded = du * dv
    # The rejected term must be of strictly higher order than every kept one.
    if u0 != 0 and v0 != 0 and discarded.terms:
        for part in (dv * u0, du * v0):
            if part.terms:
                assert discarded.leading_exponent > part.leading_exponent
    return ProductRuleTrace(u0, v0, du, dv, expansion, kept, discarded)


@dataclass(frozen=True)
class SecondDifferentialReport:
    """Both sides of the second-differential relation and their difference's shadow."""

    lhs: LCNumber
    rhs: LCNumber
    shadow_residual: Fraction

    @property
    def ok(self) -> bool:
        return self.shadow_residual == 0


def second_differential_check(
    v: Expr,
    a: Rational,
    g: Expr,
    t0: Rational,
    depth: int = DEFAULT_DEPTH,
) -> SecondDifferentialReport:
    """Verify the second-differential relation for y = x*v(x)/a on a
    nonuniform progression x_i = g(t0 + i*eps).

    Both sides of

        ddy/ddx = (x/a)*(ddv/ddx) + v/a + (2/a)*(dx*dv)/ddx

    are evaluated in the field and the standard part of their difference is
    reported; it vanishes for twice-differentiable data.  The progression
    must be genuinely nonuniform (ddx != 0), which requires g nonlinear.
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("parameter a must be nonzero")
    t0 = Fraction(t0)
    if second_derivative(g, t0, depth) == 0:
        raise DegenerateProgressionError("progression has vanishing second differences")
    tvar = _single_var(g)
    xvar = _single_var(v)

    xs = [eval_field(g, {tvar: LCNumber.from_rational(t0) + EPS * i}, depth) for i in range(3)]
    vs = [eval_field(v, {xvar: x}, depth) for x in xs]
    ys = [x * w * Fraction(1, a) for x, w in zip(xs, vs)]

    dx = xs[1] - xs[0]
    ddx = xs[2] - xs[1] * 2 + xs[0]
    dv = vs[1] - vs[0]
    ddv = vs[2] - vs[1] * 2 + vs[0]
    ddy = ys[2] - ys[1] * 2 + ys[0]
    if not ddx.terms:
        raise DegenerateProgressionError("ddx is zero up to truncation")

    inv_ddx = ddx.inv(depth)
    lhs = ddy * inv_ddx
    rhs = (xs[0] * ddv + dx * dv * 2) * inv_ddx * Fraction(1, a) + vs[0] * Fraction(1, a)
    return SecondDifferentialReport(lhs, rhs, (lhs - rhs).st())
