"""Certified real-root isolation (Sturm), disk root counting (Schur-Cohn) and
irreducibility evidence modulo primes.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

import gmpy2
from gmpy2 import mpz

from .poly import IntPoly, squarefree_part


class BoundaryRootError(ArithmeticError):
    """Raised when a disk count hits a root on (or a degeneracy at) the circle."""


@dataclass(frozen=True)
class IsolatingInterval:
    """Rational bracket ``[lo, hi]`` holding exactly one real root of ``poly``.

    ``poly`` is square-free, so the root is simple and (unless ``lo == hi``)
    ``poly`` changes sign strictly between the endpoints.
    """

    poly: IntPoly
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def reciprocal_bracket(self) -> tuple[Fraction, Fraction]:
        """Bracket of ``1/root`` (requires ``lo > 0``)."""
        if self.lo <= 0:
            raise ValueError("reciprocal bracket needs a positive interval")
        return 1 / self.hi, 1 / self.lo


# -- Sturm sequences ---------------------------------------------------------


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of the square-free part of ``p``.

    Uses a primitive pseudo-remainder sequence; every scaling factor is
    positive so sign variations equal those of the classical chain.
    """
    p = squarefree_part(p)
    seq = [p, p.derivative()]
    if not seq[1]:
        return [p]
    while True:
        _, r, _ = seq[-2].pdivrem(seq[-1])
        if not r:
            break
        c = r.content()
        seq.append(IntPoly([-x // c for x in r.coeffs]))
    return seq


def _sign_at_infinity(p: IntPoly, positive: bool) -> int:
    s = 1 if p.lc > 0 else -1
    if not positive and p.degree % 2:
        s = -s
    return s


def sign_variations(seq: list[IntPoly], x) -> int:
    """Sign variations of a Sturm chain at a rational ``x`` (or ``±inf`` via float)."""
    signs = []
    for q in seq:
        if isinstance(x, float):
            s = _sign_at_infinity(q, x > 0)
        else:
            s = q.sign_at(Fraction(x))
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(seq: list[IntPoly], lo, hi) -> int:
    """Number of distinct real roots in ``(lo, hi]``."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def _tighten(p: IntPoly, seq, a: Fraction, b: Fraction) -> IsolatingInterval:
    # exactly one root in (a, b]
    if p.sign_at(b) == 0:
        return IsolatingInterval(p, b, b)
    while p.sign_at(a) == 0:
        m = (a + b) / 2
        if p.sign_at(m) == 0:
            return IsolatingInterval(p, m, m)
        if count_real_roots(seq, a, m) == 1:
            b = m
        else:
            a = m
    return IsolatingInterval(p, a, b)


def isolate_real_roots(p: IntPoly, lo, hi) -> list[IsolatingInterval]:
    """Disjoint isolating intervals, one per distinct real root in ``(lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not p:
        raise ValueError("zero polynomial has no isolated roots")
    if lo >= hi:
        raise ValueError("need lo < hi")
    seq = sturm_sequence(p)
    sqf = seq[0]
    if sqf.degree <= 0:
        return []
    out: list[IsolatingInterval] = []
    stack = [(lo, hi, count_real_roots(seq, lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_tighten(sqf, seq, a, b))
            continue
        m = (a + b) / 2
        nl = count_real_roots(seq, a, m)
        # push right half first so the left half is processed first
        stack.append((m, b, n - nl))
        stack.append((a, m, nl))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(iv: IsolatingInterval, eps) -> IsolatingInterval:
    """Bisect until the width is at most ``eps``, keeping the same root."""
    eps = Fraction(eps)
    p, a, b = iv.poly, iv.lo, iv.hi
    if a == b:
        return iv
    sa = p.sign_at(a)
    sb = p.sign_at(b)
    if sa == 0 or sb == 0 or sa == sb:
        raise ValueError("interval is not sign-certified")
    while b - a > eps:
        m = (a + b) / 2
        sm = p.sign_at(m)
        if sm == 0:
            return IsolatingInterval(p, m, m)
        if sm == sa:
            a = m
        else:
            b = m
    return IsolatingInterval(p, a, b)


def check_certificate(iv: IsolatingInterval) -> bool:
    """Independent re-check: one Sturm root in the closed interval plus a sign change."""
    seq = sturm_sequence(iv.poly)
    if iv.lo == iv.hi:
        return iv.poly.sign_at(iv.lo) == 0
    n = count_real_roots(seq, iv.lo, iv.hi) + (1 if iv.poly.sign_at(iv.lo) == 0 else 0)
    return n == 1 and iv.poly.sign_at(iv.lo) * iv.poly.sign_at(iv.hi) <= 0


# -- Schur-Cohn --------------------------------------------------------------


def _schur_cohn_unit(coeffs: list[int]) -> int:
    """Zeros (with multiplicity) strictly inside the unit disk of an integer polynomial."""
    q = [mpz(x) for x in coeffs]
    while q and q[-1] == 0:
        q.pop()
    if not q:
        raise ValueError("zero polynomial")
    # step: T q = a0*q - an*q^rev, deg T q < deg q.  From the third step on,
    # T q_k is exactly divisible by q_{k-1}(0) (Bareiss-like), which keeps
    # coefficient growth linear; divisibility is checked, never assumed.
    plan: list[tuple[int, int]] = []  # (degree, sign of delta)
    prev_a0 = mpz(0)
    while len(q) > 1:
        n = len(q) - 1
        a0, an = q[0], q[-1]
        delta = a0 * a0 - an * an
        if delta == 0:
            raise BoundaryRootError("root on the circle or degenerate Schur-Cohn step")
        t = [a0 * x - an * y for x, y in zip(q, reversed(q))][:-1]
        while t and t[-1] == 0:
            t.pop()
        if not t:
            raise BoundaryRootError("self-inversive polynomial in Schur-Cohn recursion")
        d = abs(prev_a0)
        if len(plan) >= 2 and d > 1 and all(gmpy2.is_divisible(x, d) for x in t):
            t = [gmpy2.divexact(x, d) for x in t]
        else:
            g = mpz(0)
            for x in t:
                g = gmpy2.gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                t = [gmpy2.divexact(x, g) for x in t]
        plan.append((n, 1 if delta > 0 else -1))
        prev_a0 = a0
        q = t
    count = 0
    for n, s in reversed(plan):
        count = count if s > 0 else n - count
    return count


def count_roots_in_disk(p: IntPoly, radius) -> int:
    """Number of complex zeros of ``p`` with modulus ``< radius`` (with multiplicity).

    Raises :class:`BoundaryRootError` when a zero lies on the circle (or the
    recursion degenerates, which can only happen for circle-symmetric zero
    pairs; callers may retry with a nearby radius).
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if not p:
        raise ValueError("zero polynomial")
    k = p.trailing_zeros()
    q = IntPoly(p.coeffs[k:]).scale_argument(radius)
    return k + _schur_cohn_unit(list(q.coeffs))


# -- finite fields ---------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    for k in range(len(a) - 1 - db, -1, -1):
        f = a[k + db] * inv % p
        if f:
            for i in range(db + 1):
                a[k + i] = (a[k + i] - f * b[i]) % p
    return _trim(a[:db] if db else [])


def _gf_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _gf_rem([c % p for c in out], f, p)


def _gf_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _gf_rem(a, f, p)
    while e:
        if e & 1:
            result = _gf_mulmod(result, base, f, p)
        base = _gf_mulmod(base, base, f, p)
        e >>= 1
    return result


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _gf_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _gf_div(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        f = a[k + db] * inv % p
        q[k] = f
        if f:
            for i in range(db + 1):
                a[k + i] = (a[k + i] - f * b[i]) % p
    return _trim(q)


def factor_degrees_mod_p(f: IntPoly, prime: int) -> Optional[list[int]]:
    """Degrees of the irreducible factors of ``f mod prime`` (distinct-degree factorization).

    Returns ``None`` when ``f mod prime`` is not square-free (the pattern is
    then useless as irreducibility evidence).
    """
    if f.lc % prime == 0:
        raise ValueError(f"prime {prime} divides the leading coefficient")
    a = _trim([c % prime for c in f.coeffs])
    da = _trim([c % prime for c in f.derivative().coeffs])
    if not da or len(_gf_gcd(a, da, prime)) > 1:
        return None
    degrees: list[int] = []
    x = [0, 1]
    h = x
    d = 0
    while len(a) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_powmod(h, prime, a, prime)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % prime
        g = _gf_gcd(a, _trim(diff), prime)
        if len(g) > 1:
            k = (len(g) - 1) // d
            degrees.extend([d] * k)
            a = _gf_div(a, g, prime)
            h = _gf_rem(h, a, prime) if len(a) > 1 else h
    if len(a) > 1:
        degrees.append(len(a) - 1)
    return sorted(degrees)


def irreducible_mod_p(f: IntPoly, prime: int) -> bool:
    """True iff ``f mod prime`` is irreducible over GF(prime)."""
    degs = factor_degrees_mod_p(f, prime)
    return degs is not None and degs == [f.degree]


def _subset_sums(degrees: Iterable[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def first_primes(count: int, avoid_divisors_of: int = 1) -> list[int]:
    out = []
    n = 2
    while len(out) < count:
        if all(n % q for q in range(2, int(n**0.5) + 1)) and avoid_divisors_of % n:
            out.append(n)
        n += 1
    return out


@dataclass
class IrreducibilityReport:
    verdict: str  # "certified" | "reducible-mod-all" | "inconclusive"
    single_prime: Optional[int]
    patterns: dict[int, Optional[list[int]]]
    possible_factor_degrees: list[int]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certifying_prime": self.single_prime,
            "patterns": {str(q): d for q, d in self.patterns.items()},
            "possible_factor_degrees": self.possible_factor_degrees,
        }


def irreducibility_evidence(f: IntPoly, primes: Optional[list[int]] = None) -> IrreducibilityReport:
    """Collect mod-p factor degree patterns.

    The verdict is ``"certified"`` if some prime keeps ``f`` irreducible, or if
    the factor-degree patterns of different primes admit no common proper
    subset sum (so no factorization over Q is compatible with all of them).
    """
    if primes is None:
        primes = first_primes(25, f.lc)
    n = f.degree
    patterns: dict[int, Optional[list[int]]] = {}
    possible = set(range(1, n))
    single = None
    for q in primes:
        degs = factor_degrees_mod_p(f, q)
        patterns[q] = degs
        if degs is None:
            continue
        if degs == [n]:
            single = q
            possible = set()
            break
        possible &= _subset_sums(degs)
    verdict = "certified" if not possible and n >= 1 else "inconclusive"
    return IrreducibilityReport(verdict, single, patterns, sorted(possible))
