"""Dense univariate polynomials over the integers and reduced rational functions.

Coefficients are stored low degree first, so ``coeffs[k]`` multiplies ``t**k``.
Everything here is exact; rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _strip(coeffs)
        for x in c:
            if not isinstance(x, int):
                raise TypeError(f"integer coefficients required, got {x!r}")
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        """Parse ``"c0 + c1*t + ... + ck*t^k"`` or a list form ``"[c0, c1, ...]"``."""
        text = text.strip()
        if text.startswith("["):
            body = text[1:-1].strip()
            return cls([int(x) for x in body.split(",")] if body else [])
        s = text.replace(" ", "").replace("**", "^").replace("{", "").replace("}", "")
        if not s:
            raise ValueError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"[+-][^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict[int, int] = {}
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            m = re.fullmatch(r"(\d+)?\*?(t(?:\^(\d+))?)?", term[1:])
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad term {term!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) else 1
            k = 0 if m.group(2) is None else int(m.group(3) or 1)
            out[k] = out.get(k, 0) + sign * c
        n = max(out) + 1
        return cls([out.get(k, 0) for k in range(n)])

    # -- basic properties ---------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            body = str(mag) if k == 0 else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    # -- ring operations ----------------------------------------------

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        result = IntPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "IntPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return IntPoly([0] * k + list(self.coeffs))

    def __call__(self, x: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number) -> int:
        """Sign of the value at a rational point, computed with integers only."""
        if isinstance(x, Fraction):
            a, b = x.numerator, x.denominator
            acc = 0
            bp = 1
            # homogenised: sum c_k a^k b^(n-k); b > 0 so the sign is preserved
            for c in reversed(self.coeffs):
                acc = acc * a + c * bp
                bp *= b
            v = acc
        else:
            v = self(x)
        return (v > 0) - (v < 0)

    def derivative(self) -> "IntPoly":
        return IntPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPoly([c // g for c in self.coeffs])

    def reciprocal(self) -> "IntPoly":
        """``t**deg * p(1/t)``: the coefficient reversal. Requires ``p(0) != 0``."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("reciprocal polynomial needs a nonzero constant term")
        return IntPoly(reversed(self.coeffs))

    def trailing_zeros(self) -> int:
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k

    def scale_argument(self, r: Fraction) -> "IntPoly":
        """An integer multiple (by a positive constant) of ``p(r*t)``."""
        r = Fraction(r)
        a, b = r.numerator, r.denominator
        n = self.degree
        return IntPoly([c * a**k * b ** (n - k) for k, c in enumerate(self.coeffs)])

    # -- division -----------------------------------------------------

    def pdivrem(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly", int]:
        """Pseudo-division: ``m * self = q * d + r`` with ``m = |lc(d)|**(deg+1)``.

        The multiplier is positive so sign information is preserved.
        """
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dn = d.degree
        e = len(r) - 1 - dn
        if e < 0:
            return IntPoly(), self, 1
        lcd = d.lc
        alc = abs(lcd)
        sgn = 1 if lcd > 0 else -1
        q = [0] * (e + 1)
        dc = d.coeffs
        for k in range(e, -1, -1):
            top = r[k + dn]
            # scale everything by |lc|, then cancel top term
            r = [x * alc for x in r[: k + dn]]
            q = [x * alc for x in q]
            q[k] = top * sgn
            if top:
                f = top * sgn
                for i in range(dn):
                    r[k + i] -= f * dc[i]
        return IntPoly(q), IntPoly(r), alc ** (e + 1)

    def divrem_monic(self, d: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Integer division by a divisor with leading coefficient +-1."""
        if not d or abs(d.lc) != 1:
            raise ValueError("divisor must have leading coefficient +-1")
        r = list(self.coeffs)
        dn, lcd, dc = d.degree, d.lc, d.coeffs
        e = len(r) - 1 - dn
        if e < 0:
            return IntPoly(), self
        q = [0] * (e + 1)
        for k in range(e, -1, -1):
            f = r[k + dn] * lcd
            q[k] = f
            if f:
                for i in range(dn + 1):
                    r[k + i] -= f * dc[i]
        return IntPoly(q), IntPoly(r[:dn])

    def exact_div(self, d: "IntPoly") -> "IntPoly":
        """Quotient when ``d`` divides ``self`` exactly in Z[t]; raises otherwise."""
        if d and abs(d.lc) == 1:
            q, rem = self.divrem_monic(d)
            if rem:
                raise ArithmeticError(f"{d} does not divide {self} over Z")
            return q
        q, r = divrem(self, d)
        if any(r) or any(x.denominator != 1 for x in q):
            raise ArithmeticError(f"{d} does not divide {self} over Z")
        return IntPoly([int(x) for x in q])

    def divides(self, other: "IntPoly") -> bool:
        """True iff ``self`` divides ``other`` in Q[t]."""
        _, r = divrem(other, self)
        return not any(r)


def divrem(a: IntPoly, d: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Euclidean division over Q: ``a = q*d + r`` with ``deg r < deg d``.

    Returns coefficient lists of Fractions (low degree first, stripped).
    """
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a.coeffs]
    dn = d.degree
    lcd = d.lc
    if len(r) - 1 < dn:
        return [], list(_strip(r))
    q = [Fraction(0)] * (len(r) - dn)
    for k in range(len(r) - 1 - dn, -1, -1):
        f = r[k + dn] / lcd
        q[k] = f
        if f:
            for i, c in enumerate(d.coeffs):
                r[k + i] -= f * c
    return list(_strip(q)), list(_strip(r[:dn]))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    ca, cb = a.content(), b.content()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        _, r, _ = a.pdivrem(b)
        a, b = b, (r.primitive() if r else r)
    return a.primitive()


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    return p.exact_div(g).primitive()


def cyclotomic(n: int, _cache: dict = {}) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of ``t^n - 1``."""
    if n in _cache:
        return _cache[n]
    p = IntPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p.exact_div(cyclotomic(d))
    _cache[n] = p
    return p


class RatFunc:
    """Reduced quotient ``num/den`` of integer polynomials.

    Canonical form: ``gcd(num, den) = 1``, the joint content of num and den is
    1, and ``lc(den) > 0``.  Two equal rational functions therefore have equal
    representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: IntPoly | None = None, *, reduced: bool = False):
        if isinstance(num, int):
            num = IntPoly.const(num)
        if den is None:
            den = IntPoly.const(1)
        elif isinstance(den, int):
            den = IntPoly.const(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num, den = _canonical(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, IntPoly)):
            other = RatFunc(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc(({self.num}) / ({self.den}))"

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def series(self, n: int) -> list[Fraction]:
        return series_coefficients(self, n)


def _as_ratfunc(x) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def _canonical(num: IntPoly, den: IntPoly) -> tuple[IntPoly, IntPoly]:
    if not num:
        return IntPoly(), IntPoly.const(1)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = _div_common(num, den, g)
    c = gcd(num.content(), den.content())
    if den.lc < 0:
        c = -c
    return IntPoly([x // c for x in num.coeffs]), IntPoly([x // c for x in den.coeffs])


def _div_common(num: IntPoly, den: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly]:
    # g is primitive, so by Gauss's lemma it divides both over Z
    return num.exact_div(g), den.exact_div(g)


def series_coefficients(f: RatFunc, n: int) -> list[Fraction]:
    """First ``n + 1`` Taylor coefficients at 0, via the recurrence given by the denominator."""
    den, num = f.den, f.num
    d0 = den[0]
    if d0 == 0:
        raise ValueError("denominator vanishes at 0: no power series expansion")
    out: list[Fraction] = []
    dc = den.coeffs
    for k in range(n + 1):
        acc = Fraction(num[k])
        for j in range(1, min(k, len(dc) - 1) + 1):
            if dc[j]:
                acc -= dc[j] * out[k - j]
        out.append(acc / d0)
    return out


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
