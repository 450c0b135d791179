"""Poincaré series and growth rates of Coxeter systems.

Finite types use the degrees of their basic invariants.  Arbitrary systems go
through Steinberg's alternating sum over spherical subsets; every summand is a
product of cyclotomic polynomials, which keeps the common denominator small.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .classify import IrreducibleType, Kind, classify, component_types, spherical_residues
from .coxcore import CoxeterMatrix
from .poly import IntPoly, RatFunc, cyclotomic, series_coefficients, squarefree_part
from .roots import (
    IrreducibilityReport,
    IsolatingInterval,
    count_real_roots,
    count_roots_in_disk,
    irreducibility_evidence,
    isolate_real_roots,
    refine,
    sturm_sequence,
)

DEFAULT_EPS = Fraction(1, 10**12)


def degrees(T: IrreducibleType) -> tuple[int, ...]:
    f, n = T.family, T.n
    if f == "A":
        return tuple(range(2, n + 2))
    if f == "B":
        return tuple(range(2, 2 * n + 1, 2))
    if f == "D":
        return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
    if f == "I":
        return (2, int(T.param))
    table = {
        ("E", 6): (2, 5, 6, 8, 9, 12),
        ("E", 7): (2, 6, 8, 10, 12, 14, 18),
        ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
        ("F", 4): (2, 6, 8, 12),
        ("H", 3): (2, 6, 10),
        ("H", 4): (2, 12, 20, 30),
    }
    try:
        return table[(f, n)]
    except KeyError:
        raise ValueError(f"{T.name} is not a spherical type") from None


def q_integer(d: int) -> IntPoly:
    """``1 + t + ... + t^(d-1)``."""
    return IntPoly([1] * d)


def group_order_from_degrees(T: IrreducibleType) -> int:
    out = 1
    for d in degrees(T):
        out *= d
    return out


def poincare_finite(T: IrreducibleType) -> IntPoly:
    if not T.spherical:
        raise ValueError(f"{T.name} is not spherical")
    p = IntPoly.const(1)
    for d in degrees(T):
        p = p * q_integer(d)
    return p


def _divisors(d: int) -> list[int]:
    return [k for k in range(2, d + 1) if d % k == 0]


def cyclotomic_exponents(types: Iterable[IrreducibleType]) -> Counter:
    """Multiset ``{k: e}`` with ``prod p_T = prod_k Phi_k^e``."""
    c: Counter = Counter()
    for T in types:
        for d in degrees(T):
            for k in _divisors(d):
                c[k] += 1
    return c


def _from_exponents(exps: dict) -> IntPoly:
    p = IntPoly.const(1)
    for k in sorted(exps):
        if exps[k]:
            p = p * cyclotomic(k) ** exps[k]
    return p


def steinberg_sum(M: CoxeterMatrix) -> tuple[IntPoly, Counter]:
    """``(U, L)`` with ``sum_{I spherical} (-1)^|I| / p_I(t) = U(t) / prod_k Phi_k^L[k]``.

    Subsets whose parabolic Poincaré polynomials coincide are merged first,
    then each class contributes ``coeff * prod_k Phi_k^(L[k] - e[k])``.
    """
    fam = spherical_residues(M)
    groups: Counter = Counter()
    for I, types in fam.members.items():
        key = tuple(sorted(cyclotomic_exponents(types).items()))
        groups[key] += -1 if len(I) % 2 else 1
    groups = Counter({k: v for k, v in groups.items() if v})
    lcm: Counter = Counter()
    for key in groups:
        for k, e in key:
            lcm[k] = max(lcm[k], e)
    U = IntPoly()
    for key in sorted(groups):
        exps = dict(key)
        cof = _from_exponents({k: lcm[k] - exps.get(k, 0) for k in lcm})
        U = U + cof * groups[key]
    return U, lcm


def poincare_steinberg(M: CoxeterMatrix) -> RatFunc:
    """Poincaré series from Steinberg's formula, for any Coxeter matrix.

    With ``q = U/L``, ``p(t) = 1/q(1/t) = t^(deg U - deg L) L*(t) / U*(t)``
    where ``*`` is coefficient reversal; ``L`` is palindromic (a product of
    ``Phi_k``, ``k > 1``) so ``L* = L``.  Common cyclotomic factors are
    cancelled by exact division before the reversal.
    """
    U, lcm = steinberg_sum(M)
    if not U:
        raise AssertionError("Steinberg sum vanished identically")
    exps = dict(lcm)
    for k in sorted(exps):
        phi = cyclotomic(k)
        while exps[k] > 0:
            q, r = U.divrem_monic(phi)
            if r:
                break
            U = q
            exps[k] -= 1
    L = _from_exponents(exps)
    a = U.trailing_zeros()
    shift = U.degree - L.degree
    Ustar = IntPoly(reversed(U.coeffs[a:]))
    num, den = L, Ustar
    if shift > 0:
        num = num.shift(shift)
    elif shift < 0:
        den = den.shift(-shift)
    # num is monic up to the t-power and coprime to den (den(0) != 0 and all
    # shared cyclotomic factors were cancelled); fix content and sign only
    from math import gcd

    c = gcd(num.content(), den.content())
    if den.lc < 0:
        c = -c
    if c != 1:
        num = IntPoly([x // c for x in num.coeffs])
        den = IntPoly([x // c for x in den.coeffs])
    return RatFunc(num, den, reduced=True)


def poincare(M: CoxeterMatrix) -> RatFunc:
    types = component_types(M) if M.rank else []
    if all(T.spherical for T in types):
        p = IntPoly.const(1)
        for T in types:
            p = p * poincare_finite(T)
        return RatFunc(p)
    return poincare_steinberg(M)


def poincare_product(parts: Sequence[RatFunc]) -> RatFunc:
    out = RatFunc(IntPoly.const(1))
    for p in parts:
        out = out * p
    return out


def growth_sequence(M: CoxeterMatrix, n: int) -> tuple[list[int], list[int]]:
    coeffs = series_coefficients(poincare(M), n)
    a = []
    for c in coeffs:
        if c.denominator != 1 or c < 0:
            raise AssertionError(f"Poincaré coefficient {c} is not a nonnegative integer")
        a.append(int(c))
    b, run = [], 0
    for x in a:
        run += x
        b.append(run)
    return a, b


# -- growth rates -------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRate:
    """``kind`` is ``"Zero"``, ``"One"`` or ``"Algebraic"``.

    For algebraic rates ``root`` isolates the smallest positive root of the
    reduced denominator and ``(lo, hi)`` brackets its reciprocal.
    """

    kind: str
    root: Optional[IsolatingInterval] = None
    denominator: Optional[IntPoly] = None

    @property
    def lo(self) -> Fraction:
        if self.kind == "Zero":
            return Fraction(0)
        if self.kind == "One":
            return Fraction(1)
        return 1 / self.root.hi

    @property
    def hi(self) -> Fraction:
        if self.kind == "Zero":
            return Fraction(0)
        if self.kind == "One":
            return Fraction(1)
        return 1 / self.root.lo

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_dict(self) -> dict:
        from .poly import format_fraction

        d = {"kind": self.kind, "bracket_lo": format_fraction(self.lo), "bracket_hi": format_fraction(self.hi)}
        d["approx"] = f"{float(self):.12f}"
        d["denominator"] = list(self.denominator.coeffs) if self.denominator is not None else None
        return d


def smallest_root_bracket(den: IntPoly) -> IsolatingInterval:
    """Isolating interval of the least root of ``den`` in ``(0, 1]``."""
    ivs = isolate_real_roots(squarefree_part(den), Fraction(0), Fraction(1))
    if not ivs:
        raise AssertionError("denominator has no root in (0, 1]")
    return ivs[0]


def growth_rate(M: CoxeterMatrix, eps=DEFAULT_EPS) -> GrowthRate:
    eps = Fraction(eps)
    cl = classify(M)
    if cl.kind == Kind.SPHERICAL:
        return GrowthRate("Zero")
    if all(k in (Kind.SPHERICAL, Kind.AFFINE) for k in cl.component_kinds):
        return GrowthRate("One")
    den = poincare(M).den
    iv = smallest_root_bracket(den)
    if iv.hi >= 1 and iv.lo == iv.hi == 1:
        raise AssertionError("non-affine infinite system with no root below 1")
    iv = _refine_reciprocal(iv, eps)
    return GrowthRate("Algebraic", iv, den)


def _refine_reciprocal(iv: IsolatingInterval, eps: Fraction) -> IsolatingInterval:
    """Refine until the reciprocal bracket has width <= eps."""
    target = eps * iv.lo**2 if iv.lo > 0 else eps / 4
    while True:
        iv = refine(iv, target)
        if iv.lo > 0 and 1 / iv.lo - 1 / iv.hi <= eps:
            return iv
        target /= 2


# -- minimal polynomial and Perron checks --------------------------------


@dataclass
class MinPolyReport:
    divides: bool
    root_in_bracket: bool
    irreducibility: Optional[IrreducibilityReport]
    quotient: Optional[IntPoly] = None

    @property
    def verdict(self) -> str:
        irr = self.irreducibility.verdict if self.irreducibility else "skipped"
        return f"divides={'pass' if self.divides else 'fail'} root={'pass' if self.root_in_bracket else 'fail'} irreducible={irr}"

    def to_dict(self) -> dict:
        return {
            "divides": self.divides,
            "root_in_bracket": self.root_in_bracket,
            "irreducibility": self.irreducibility.to_dict() if self.irreducibility else None,
            "quotient": list(self.quotient.coeffs) if self.quotient is not None else None,
        }


def minimal_polynomial_check(
    M: CoxeterMatrix,
    candidate: IntPoly,
    rate: Optional[GrowthRate] = None,
    primes: Optional[list[int]] = None,
    irreducibility: bool = True,
) -> MinPolyReport:
    """Check a candidate minimal polynomial of the growth rate of ``M``.

    (a) its reversal divides the reduced series denominator, (b) it changes
    sign across the growth-rate bracket, (c) mod-p irreducibility evidence.
    """
    if candidate[0] == 0:
        raise ValueError("candidate has zero constant term")
    den = poincare(M).den
    rev = candidate.reciprocal()
    divides = den.degree >= rev.degree and rev.divides(den)
    quotient = None
    if divides:
        q, r = _divrem_exact(den, rev)
        quotient = q
    if rate is None:
        rate = growth_rate(M)
    if rate.kind == "Algebraic":
        lo, hi = rate.lo, rate.hi
        s_lo, s_hi = candidate.sign_at(lo), candidate.sign_at(hi)
        root_ok = s_lo == 0 or s_hi == 0 or s_lo != s_hi
    else:
        root_ok = False
    irr = irreducibility_evidence(candidate, primes) if irreducibility else None
    return MinPolyReport(divides, root_ok, irr, quotient)


def _divrem_exact(a: IntPoly, d: IntPoly):
    from .poly import divrem

    q, r = divrem(a, d)
    if all(x.denominator == 1 for x in q):
        return IntPoly([int(x) for x in q]), r
    return None, r


@dataclass
class PerronCertificate:
    ok: bool
    radius: Optional[Fraction]
    inside: Optional[int]
    degree: int
    real_roots_above: Optional[int]
    trials: list = field(default_factory=list)

    def to_dict(self) -> dict:
        from .poly import format_fraction

        return {
            "ok": self.ok,
            "radius": format_fraction(self.radius) if self.radius is not None else None,
            "roots_inside": self.inside,
            "degree": self.degree,
            "real_roots_above_radius": self.real_roots_above,
            "trials": [format_fraction(r) for r in self.trials],
        }


def perron_certificate(candidate: IntPoly, bracket_lo, max_steps: int = 40) -> PerronCertificate:
    """Search for rational ``rho < bracket_lo`` with ``deg - 1`` roots inside ``|z| < rho``.

    Trial radii are dyadic truncations ``floor(lo 2^j) / 2^j`` (one step lower
    when that would reach ``lo``), so they increase towards the bracket.  Success, together with a single real root
    above ``rho``, proves that the root in the bracket strictly dominates all
    of its conjugates in modulus.
    """
    from .roots import BoundaryRootError

    lo = Fraction(bracket_lo)
    n = candidate.degree
    trials = []
    for j in range(1, max_steps + 1):
        rho = Fraction((lo.numerator * 2**j) // lo.denominator, 2**j)
        if rho >= lo:
            rho -= Fraction(1, 2**j)
        if rho <= 0 or rho in trials:
            continue
        trials.append(rho)
        try:
            inside = count_roots_in_disk(candidate, rho)
        except BoundaryRootError:
            continue
        if inside == n - 1:
            sq = squarefree_part(candidate)
            above = count_real_roots(sturm_sequence(sq), rho, float("inf"))
            return PerronCertificate(above == 1, rho, inside, n, above, trials)
    return PerronCertificate(False, None, None, n, None, trials)


def perron_verify(candidate: IntPoly, rate_bracket) -> bool:
    """True iff the root in ``rate_bracket`` strictly dominates its conjugates.

    ``rate_bracket`` is an ``IsolatingInterval`` (or any object with ``lo``)
    around the dominant root of ``candidate`` itself.
    """
    if candidate.degree == 1:
        return True
    return perron_certificate(candidate, rate_bracket.lo).ok
