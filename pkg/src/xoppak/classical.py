"""Classical Meixner and Laguerre polynomials.

The Meixner normalization used throughout is

    m_n(x) = a^n/(1-a)^n * sum_j a^(-j) C(x, j) C(-x-c, n-j),

which is monic-free but fixed by its three-term recurrence; everything
downstream (determinants, duality constants) depends on this exact scaling,
so the recurrence is the only trusted cross-check.  Laguerre polynomials use
the standard normalization L_n(0) = (1+alpha)_n / n!.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .exact import (
    ParameterError,
    Poly,
    RatFunc,
    as_int,
    binom_poly,
    gen_binomial,
    is_integer,
    pochhammer,
    rat,
    rat_pow,
)
from .factored import FactoredScalar
from .operators import DifferenceOperator, DifferentialOperator


class MeixnerParams:
    """Parameters (a, c) with a outside {0, 1} and c not a nonpositive integer."""

    __slots__ = ("a", "c")

    def __init__(self, a, c):
        a = rat(a)
        c = rat(c)
        if a == 0 or a == 1:
            raise ParameterError(f"parameter a must avoid 0 and 1: {a}")
        if is_integer(c) and c <= 0:
            raise ParameterError(f"parameter c must not be a nonpositive integer: {c}")
        self.a = a
        self.c = c

    def inverted(self) -> "MeixnerParams":
        return MeixnerParams(1 / self.a, self.c)

    def __eq__(self, other):
        if isinstance(other, MeixnerParams):
            return self.a == other.a and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.c))

    def __repr__(self):
        return f"MeixnerParams(a={self.a}, c={self.c})"


class LaguerreParams:
    """Parameter alpha; unrestricted for polynomial construction."""

    __slots__ = ("alpha",)

    def __init__(self, alpha):
        self.alpha = rat(alpha)

    def __eq__(self, other):
        if isinstance(other, LaguerreParams):
            return self.alpha == other.alpha
        return NotImplemented

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return f"LaguerreParams(alpha={self.alpha})"


@lru_cache(maxsize=None)
def _meixner_cached(n: int, a, c) -> Poly:
    if n < 0:
        return Poly.zero()
    x = Poly.x()
    minus_x_c = -x - c
    b1 = Poly.one()  # C(x, j)
    b2 = [Poly.one()]  # C(-x-c, i) for i = 0..n
    for i in range(1, n + 1):
        b2.append(b2[-1] * (minus_x_c - (i - 1)) / i)
    total = Poly.zero()
    for j in range(n + 1):
        if j > 0:
            b1 = b1 * (x - (j - 1)) / j
        total = total + rat_pow(rat(a), -j) * b1 * b2[n - j]
    scale = rat_pow(rat(a) / (1 - rat(a)), n)
    return total * scale


def meixner_raw(n: int, a, c) -> Poly:
    """Meixner polynomial without parameter validation (formal substitutions)."""
    return _meixner_cached(int(n), rat(a), rat(c))


def meixner(n: int, p: MeixnerParams) -> Poly:
    """Degree-n Meixner polynomial; zero for n < 0."""
    return _meixner_cached(int(n), p.a, p.c)


@lru_cache(maxsize=None)
def _laguerre_cached(n: int, alpha) -> Poly:
    if n < 0:
        return Poly.zero()
    cs = []
    for j in range(n + 1):
        cs.append(rat_pow(rat(-1), j) / math.factorial(j) * gen_binomial(rat(alpha) + n, n - j))
    return Poly(cs)


def laguerre(n: int, p) -> Poly:
    """Degree-n Laguerre polynomial; zero for n < 0."""
    alpha = p.alpha if isinstance(p, LaguerreParams) else rat(p)
    return _laguerre_cached(int(n), alpha)


def meixner_op(p: MeixnerParams) -> DifferenceOperator:
    """Second-order difference operator with meixner(n) as eigenvector for eigenvalue n."""
    x = Poly.x()
    d = p.a - 1
    return DifferenceOperator.three_point(
        hm1=RatFunc(x / d),
        h0=RatFunc(-((1 + p.a) * x + p.a * p.c) / d),
        h1=RatFunc(p.a * (x + p.c) / d),
    )


def laguerre_op(p: LaguerreParams) -> DifferentialOperator:
    """-x d2 - (alpha+1-x) d, with laguerre(n) as eigenvector for eigenvalue n."""
    x = Poly.x()
    return DifferentialOperator.second_order(
        a2=RatFunc(-x),
        a1=RatFunc(x - (p.alpha + 1)),
        a0=RatFunc(Poly.zero()),
    )


def check_identities(n: int, m: int, p: MeixnerParams, x0) -> dict:
    """Exact shift/derivative/parameter-shift identities for both families.

    Polynomial identities are checked coefficientwise and additionally
    evaluated at x0; the degree-swap duality is a scalar identity at the
    integer pair (n, m).  The Laguerre checks reuse alpha = c.
    """
    if n < 0 or m < 0:
        raise ParameterError("identity checks need nonnegative degrees")
    a, c = p.a, p.c
    x0 = rat(x0)
    inv = 1 / a
    report = {}

    lhs = meixner(n, p).shift(1) - meixner(n, p)
    rhs = meixner_raw(n - 1, a, c + 1)
    report["forward_difference"] = lhs == rhs and lhs(x0) == rhs(x0)

    lhs = meixner_raw(n, inv, c).shift(1) - a * meixner_raw(n, inv, c)
    rhs = (1 - a) * meixner_raw(n, inv, c + 1)
    report["twisted_difference"] = lhs == rhs and lhs(x0) == rhs(x0)

    lhs = meixner(n, p)
    rhs = rat_pow(rat(-1), n) * meixner_raw(n, inv, c).compose(-Poly.x() - c)
    report["reflection"] = lhs == rhs and lhs(x0) == rhs(x0)

    lhs_s = rat_pow(a, m - n) * math.factorial(n) * pochhammer(1 + c, m - 1) * meixner(n, p)(m)
    rhs_s = rat_pow(a - 1, m - n) * math.factorial(m) * pochhammer(1 + c, n - 1) * meixner(m, p)(n)
    report["degree_point_swap"] = lhs_s == rhs_s

    alpha = c
    lhs = laguerre(n, alpha).derivative()
    rhs = -laguerre(n - 1, alpha + 1)
    report["derivative_shift"] = lhs == rhs and lhs(x0) == rhs(x0)

    lhs = laguerre(n, alpha)
    rhs = laguerre(n - 1, alpha) + laguerre(n, alpha - 1)
    report["parameter_shift"] = lhs == rhs and lhs(x0) == rhs(x0)

    return report


def meixner_norm(n: int, p: MeixnerParams) -> FactoredScalar:
    """Squared norm a^n Gamma(n+c) / (n! (1-a)^(2n+c)) in factored form."""
    if n < 0:
        raise ParameterError("norms need a nonnegative degree")
    return FactoredScalar(
        rational=rat_pow(p.a, n) / math.factorial(n),
        gammas=[(n + p.c, 1)],
        powers=[(1 - p.a, -(2 * n + p.c))],
    )


def krawtchouk(n: int, a, N: int) -> Poly:
    """Krawtchouk polynomial via the formal substitution a -> -a, c -> -N+1."""
    a = rat(a)
    N = int(N)
    if N < 1:
        raise ParameterError("krawtchouk needs a positive integer N")
    if a == 0 or a == -1:
        raise ParameterError(f"krawtchouk parameter a must avoid 0 and -1: {a}")
    return meixner_raw(n, -a, -N + 1)
