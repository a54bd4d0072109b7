"""Exact arithmetic on an infinitesimal-enriched ordered field.

An :class:`LCNumber` is a finite, truncated formal series

    c_1 * eps^(q_1) + c_2 * eps^(q_2) + ... + O(eps^(T))

in a fixed positive infinitesimal ``eps``, with exact rational coefficients
``c_i`` and exact rational exponents ``q_1 < q_2 < ...``.  A *larger* exponent
means a *smaller* magnitude: ``eps^2`` is infinitely smaller than ``eps``, and
``eps^(-1)`` is unlimited (infinite).  The truncation order ``T`` is either a
rational bound (all exponents ``>= T`` are unknown) or ``None``, meaning the
stored terms are the whole number.

Values are immutable; every operation returns a fresh canonical value.  All
arithmetic is exact — there is no floating point anywhere in this module.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Union

from .errors import (
    NegativeRootError,
    NotAnNthPowerError,
    ParseError,
    UndecidableError,
    UnlimitedError,
    ZeroDivisionLCError,
    ZeroInputError,
)

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "LCNumber"]

#: Default relative truncation depth (in exponent steps) for inv / nth_root.
DEFAULT_DEPTH = 16


class Comparison(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class OrderClass:
    """Leading order of magnitude: a leading exponent plus a sign.

    Two nonzero numbers with distinct leading exponents are incommensurable:
    no finite multiple of the smaller-order one ever exceeds the other.
    """

    __slots__ = ("leading_exponent", "sign")

    def __init__(self, leading_exponent: Fraction, sign: int):
        self.leading_exponent = leading_exponent
        self.sign = sign  # -1, 0, or +1

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrderClass):
            return NotImplemented
        return (self.leading_exponent, self.sign) == (other.leading_exponent, other.sign)

    def __hash__(self) -> int:
        return hash((self.leading_exponent, self.sign))

    def __repr__(self) -> str:
        return f"OrderClass(exponent={self.leading_exponent}, sign={self.sign:+d})"


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    n = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(n, a.denominator * b.denominator)


def _min_trunc(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _prune(d: dict, bound: Optional[Fraction]) -> dict:
    out = {q: c for q, c in d.items() if c != 0}
    if bound is not None:
        out = {q: c for q, c in out.items() if q < bound}
    return out


def _dict_mul(a: dict, b: dict, bound: Optional[Fraction]) -> dict:
    out: dict = {}
    for qa, ca in a.items():
        for qb, cb in b.items():
            q = qa + qb
            if bound is not None and q >= bound:
                continue
            out[q] = out.get(q, 0) + ca * cb
    return _prune(out, bound)


def _int_nth_root(x: int, n: int) -> Optional[int]:
    """Exact n-th root of a nonnegative integer, or None."""
    if x < 0:
        return None
    if x in (0, 1):
        return x
    r = round(x ** (1.0 / n))
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand**n == x:
            return cand
    return None


def rational_nth_root(c: Fraction, n: int) -> Fraction:
    """Exact rational n-th root of c, or raise."""
    if c < 0:
        if n % 2 == 0:
            raise NegativeRootError(f"even root of negative coefficient {c}")
        return -rational_nth_root(-c, n)
    num = _int_nth_root(c.numerator, n)
    den = _int_nth_root(c.denominator, n)
    if num is None or den is None:
        raise NotAnNthPowerError(f"{c} has no rational {n}-th root")
    return Fraction(num, den)


class LCNumber:
    """A truncated series in the infinitesimal ``eps`` with rational data."""

    __slots__ = ("terms", "trunc")

    def __init__(
        self,
        terms: Iterable[tuple[Rational, Rational]] = (),
        trunc: Optional[Rational] = None,
    ):
        acc: dict = {}
        for q, c in terms:
            q = Fraction(q)
            acc[q] = acc.get(q, Fraction(0)) + Fraction(c)
        t = None if trunc is None else Fraction(trunc)
        acc = _prune(acc, t)
        self.terms = tuple(sorted(acc.items()))
        self.trunc = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, r: Rational) -> "LCNumber":
        return cls([(0, Fraction(r))])

    @classmethod
    def monomial(cls, coeff: Rational, exponent: Rational) -> "LCNumber":
        return cls([(Fraction(exponent), Fraction(coeff))])

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """Exactly zero: no terms and no truncation bound hiding any."""
        return not self.terms and self.trunc is None

    @property
    def leading_exponent(self) -> Fraction:
        """Exponent of the dominant term; 0 for the zero element."""
        if not self.terms:
            return Fraction(0)
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[0][1]

    def coefficient(self, exponent: Rational) -> Fraction:
        q = Fraction(exponent)
        for e, c in self.terms:
            if e == q:
                return c
        return Fraction(0)

    def _granularity(self) -> Optional[Fraction]:
        """gcd of exponent offsets above the leading term; None for a monomial."""
        offsets = [q - self.leading_exponent for q, _ in self.terms[1:]]
        if not offsets:
            return None
        g = offsets[0]
        for o in offsets[1:]:
            g = _frac_gcd(g, o)
        return g

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(x: Scalar) -> "LCNumber":
        if isinstance(x, LCNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return LCNumber.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LCNumber")

    def __add__(self, other: Scalar) -> "LCNumber":
        b = self._coerce(other)
        return LCNumber(list(self.terms) + list(b.terms), _min_trunc(self.trunc, b.trunc))

    __radd__ = __add__

    def __neg__(self) -> "LCNumber":
        return LCNumber([(q, -c) for q, c in self.terms], self.trunc)

    def __sub__(self, other: Scalar) -> "LCNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "LCNumber":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "LCNumber":
        b = self._coerce(other)
        # O(eps^Ta) * (leading eps^lb) contributes unknowns from eps^(Ta+lb) on.
        bound = None
        if self.trunc is not None:
            bound = self.trunc + b.leading_exponent
        if b.trunc is not None:
            bound = _min_trunc(bound, b.trunc + self.leading_exponent)
        prod = _dict_mul(dict(self.terms), dict(b.terms), bound)
        return LCNumber(prod.items(), bound)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "LCNumber":
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other: Scalar) -> "LCNumber":
        return self._coerce(other) * self.inv()

    def pow_int(self, k: int, depth: int = DEFAULT_DEPTH) -> "LCNumber":
        if k < 0:
            return self.pow_int(-k, depth).inv(depth)
        result = LCNumber.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def inv(self, depth: int = DEFAULT_DEPTH) -> "LCNumber":
        """Reciprocal series.

        Exact for monomials with unbounded truncation; otherwise the result is
        truncated after ``depth`` exponent steps beyond the leading exponent
        (a step is the gcd granularity of the operand's exponents), or sooner
        if the operand's own truncation gives out first.
        """
        if not self.terms:
            if self.trunc is None:
                raise ZeroDivisionLCError("inverse of zero")
            raise UndecidableError(
                f"operand is zero up to O(eps^({self.trunc})); inverse undecidable"
            )
        lam, c0 = self.terms[0]
        rel_known = None if self.trunc is None else self.trunc - lam
        rel = {q - lam: c / c0 for q, c in self.terms[1:]}
        if not rel:
            trunc = None if rel_known is None else -lam + rel_known
            return LCNumber([(-lam, 1 / c0)], trunc)
        step = self._granularity()
        bound = depth * step
        if rel_known is not None:
            bound = min(bound, rel_known)
        # 1 / (1 + u) = sum (-u)^k, u strictly higher order than 1.
        series = {Fraction(0): Fraction(1)}
        power = dict(rel)
        sign = -1
        while power:
            for q, c in power.items():
                series[q] = series.get(q, Fraction(0)) + sign * c
            power = _dict_mul(power, rel, bound)
            sign = -sign
        series = _prune(series, bound)
        return LCNumber(
            [(q - lam, c / c0) for q, c in series.items()], -lam + bound
        )

    def nth_root(self, n: int, depth: int = DEFAULT_DEPTH) -> "LCNumber":
        """Series b with b**n == self up to truncation; leading exponent /= n.

        The leading coefficient must have an exact rational n-th root.
        """
        if n <= 0:
            raise ValueError("root index must be a positive integer")
        if not self.terms:
            if self.trunc is None:
                return LCNumber()
            raise UndecidableError(
                f"operand is zero up to O(eps^({self.trunc})); root undecidable"
            )
        lam, c0 = self.terms[0]
        r0 = rational_nth_root(c0, n)
        mu = lam / n
        rel_known = None if self.trunc is None else self.trunc - lam
        rel = {q - lam: c / c0 for q, c in self.terms[1:]}
        if not rel:
            trunc = None if rel_known is None else mu + rel_known
            return LCNumber([(mu, r0)], trunc)
        step = self._granularity()
        bound = depth * step
        if rel_known is not None:
            bound = min(bound, rel_known)
        # (1 + u)^(1/n) by the binomial series.
        alpha = Fraction(1, n)
        series = {Fraction(0): Fraction(1)}
        power = dict(rel)
        coeff = Fraction(1)
        k = 0
        while power:
            coeff = coeff * (alpha - k) / (k + 1)
            k += 1
            for q, c in power.items():
                series[q] = series.get(q, Fraction(0)) + coeff * c
            power = _dict_mul(power, rel, bound)
        series = _prune(series, bound)
        return LCNumber([(q + mu, c * r0) for q, c in series.items()], mu + bound)

    def sqrt(self, depth: int = DEFAULT_DEPTH) -> "LCNumber":
        return self.nth_root(2, depth)

    # -- order and reduction ----------------------------------------------

    def compare(self, other: Scalar) -> Comparison:
        """Total order by the sign of the leading coefficient of the difference.

        EQ only for an exactly-zero difference; a difference that is zero up
        to a bounded truncation is undecidable.
        """
        d = self - other
        if d.terms:
            return Comparison.GT if d.terms[0][1] > 0 else Comparison.LT
        if d.trunc is None:
            return Comparison.EQ
        raise UndecidableError(
            f"difference is zero up to O(eps^({d.trunc})); comparison undecidable"
        )

    def __lt__(self, other: Scalar) -> bool:
        return self.compare(other) is Comparison.LT

    def __le__(self, other: Scalar) -> bool:
        return self.compare(other) is not Comparison.GT

    def __gt__(self, other: Scalar) -> bool:
        return self.compare(other) is Comparison.GT

    def __ge__(self, other: Scalar) -> bool:
        return self.compare(other) is not Comparison.LT

    def __eq__(self, other) -> bool:
        # Canonical-form equality: same terms and same truncation order.
        if isinstance(other, (int, Fraction)):
            other = LCNumber.from_rational(other)
        if not isinstance(other, LCNumber):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self) -> int:
        return hash((self.terms, self.trunc))

    def st(self) -> Fraction:
        """Standard part (shadow): the unique rational infinitely close to self.

        Defined for limited numbers whose truncation order exceeds 0.
        """
        if self.terms and self.terms[0][0] < 0:
            raise UnlimitedError("standard part of an unlimited number")
        if self.trunc is not None and self.trunc <= 0:
            raise UndecidableError(
                f"truncation order {self.trunc} <= 0 hides the standard part"
            )
        return self.coefficient(0)

    def tlh(self) -> "LCNumber":
        """Keep only the dominant (lowest-exponent) term; discard the rest.

        This is the reduction that turns ``a + dx`` into ``a`` and
        ``dx + ddy`` into ``dx``.
        """
        if not self.terms:
            if self.trunc is None:
                raise ZeroInputError("no dominant term in zero")
            raise UndecidableError(
                f"zero up to O(eps^({self.trunc})); dominant term unknown"
            )
        return LCNumber([self.terms[0]])

    def is_infinitesimal(self) -> bool:
        """True when |self| is smaller than every positive rational (0 included)."""
        if self.terms:
            return self.terms[0][0] > 0
        if self.trunc is None:
            return True
        if self.trunc > 0:
            return True
        raise UndecidableError(
            f"zero up to O(eps^({self.trunc})); classification undecidable"
        )

    def is_limited(self) -> bool:
        """True when self has no unlimited (negative-exponent) part."""
        if self.terms and self.terms[0][0] < 0:
            return False
        if self.trunc is not None and self.trunc <= 0:
            raise UndecidableError(
                f"terms below eps^(0) may hide behind O(eps^({self.trunc}))"
            )
        return True

    def is_close_to(self, other: Scalar) -> bool:
        """Infinite closeness: the difference is infinitesimal."""
        return (self - other).is_infinitesimal()

    def order_class(self) -> OrderClass:
        if self.terms:
            q, c = self.terms[0]
            return OrderClass(q, 1 if c > 0 else -1)
        if self.trunc is None:
            return OrderClass(Fraction(0), 0)
        raise UndecidableError(
            f"zero up to O(eps^({self.trunc})); order class undecidable"
        )

    # -- canonical text form ----------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LCNumber('{render(self)}')"

    @classmethod
    def parse(cls, src: str) -> "LCNumber":
        return parse(src)


#: The positive infinitesimal generator.
EPS = LCNumber.monomial(1, 1)
ZERO = LCNumber()
ONE = LCNumber.from_rational(1)


# ---------------------------------------------------------------------------
# Canonical text form: terms ascending by exponent joined by " + " / " - ",
# each term "c", "c*eps" or "c*eps^(p/q)", with a trailing " + O(eps^(T))"
# for a bounded truncation order.
# ---------------------------------------------------------------------------


def _render_term(exponent: Fraction, coeff: Fraction) -> str:
    mag = abs(coeff)
    if exponent == 0:
        return str(mag)
    if exponent == 1:
        eps = "eps"
    else:
        eps = f"eps^({exponent})"
    if mag == 1:
        return eps
    return f"{mag}*{eps}"


def render(a: LCNumber) -> str:
    parts: list[str] = []
    for i, (q, c) in enumerate(a.terms):
        body = _render_term(q, c)
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f" {'-' if c < 0 else '+'} {body}")
    if a.trunc is not None:
        tail = f"O(eps^({a.trunc}))"
        parts.append(f" + {tail}" if parts else tail)
    if not parts:
        return "0"
    return "".join(parts)


_TOKEN_RE = re.compile(r"(\d+)|(eps)|(O)|([+\-*^()/])|(\S)")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(src.replace("−", "-")):
        if m.group(1):
            tokens.append(("int", m.group(1), m.start()))
        elif m.group(2):
            tokens.append(("eps", "eps", m.start()))
        elif m.group(3):
            tokens.append(("O", "O", m.start()))
        elif m.group(4):
            tokens.append(("op", m.group(4), m.start()))
        elif not m.group(0).isspace():
            raise ParseError(f"unexpected character {m.group(0)!r}", m.start())
    return tokens


class _NumberParser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.src))
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.next()
        if tok[1] != text:
            raise ParseError(f"expected {text!r}, got {tok[1]!r}", tok[2])

    def fraction(self) -> Fraction:
        tok = self.next()
        if tok[0] != "int":
            raise ParseError(f"expected a number, got {tok[1]!r}", tok[2])
        num = int(tok[1])
        nxt = self.peek()
        if nxt is not None and nxt[1] == "/":
            self.next()
            den_tok = self.next()
            if den_tok[0] != "int":
                raise ParseError("expected a denominator", den_tok[2])
            return Fraction(num, int(den_tok[1]))
        return Fraction(num)

    def signed_fraction(self) -> Fraction:
        nxt = self.peek()
        if nxt is not None and nxt[1] == "-":
            self.next()
            return -self.fraction()
        return self.fraction()

    def exponent(self) -> Fraction:
        nxt = self.peek()
        if nxt is not None and nxt[1] == "(":
            self.next()
            val = self.signed_fraction()
            self.expect(")")
            return val
        return self.signed_fraction()

    def eps_part(self) -> Fraction:
        self.expect("eps")
        nxt = self.peek()
        if nxt is not None and nxt[1] == "^":
            self.next()
            return self.exponent()
        return Fraction(1)

    def term(self) -> tuple[Optional[Fraction], Fraction]:
        """Returns (exponent, coefficient); exponent None flags an O() tail."""
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a term", len(self.src))
        if tok[0] == "O":
            self.next()
            self.expect("(")
            exp = self.eps_part()
            self.expect(")")
            return None, exp
        if tok[0] == "eps":
            return self.eps_part(), Fraction(1)
        coeff = self.fraction()
        nxt = self.peek()
        if nxt is not None and nxt[1] == "*":
            self.next()
            return self.eps_part(), coeff
        if nxt is not None and nxt[0] == "eps":
            return self.eps_part(), coeff
        return Fraction(0), coeff

    def parse(self) -> LCNumber:
        terms: list[tuple[Fraction, Fraction]] = []
        trunc: Optional[Fraction] = None
        sign = 1
        nxt = self.peek()
        if nxt is not None and nxt[1] == "-":
            self.next()
            sign = -1
        while True:
            exp, coeff = self.term()
            if exp is None:
                if sign < 0:
                    raise ParseError("truncation marker cannot be negated", 0)
                trunc = coeff
                if self.peek() is not None:
                    raise ParseError("truncation marker must come last", self.peek()[2])
                break
            terms.append((exp, sign * coeff))
            tok = self.peek()
            if tok is None:
                break
            if tok[1] not in "+-":
                raise ParseError(f"expected '+' or '-', got {tok[1]!r}", tok[2])
            self.next()
            sign = 1 if tok[1] == "+" else -1
        return LCNumber(terms, trunc)


def parse(src: str) -> LCNumber:
    """Parse the canonical text form (with optional whitespace)."""
    if not src.strip():
        raise ParseError("empty number literal", 0)
    return _NumberParser(src).parse()
