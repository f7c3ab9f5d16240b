"""Exceptional Laguerre families built from Wronskian determinants.

A pair of finite sets (F1, F2) selects rows of classical Laguerre
polynomials at parameter alpha; rows indexed by F1 are differentiated
across the columns while rows indexed by F2 are reflected with a stepped
parameter.  Prepending a top row of derivatives of one more classical
polynomial gives a determinant L_n of degree n for every n in the gapped
index set sigma, and all of them are eigenfunctions of a single second
order differential operator with eigenvalue -n.  This module constructs
the family and everything attached to it: the operator, the weight
x^(alpha+k) exp(-x) / Omega^2 with its norms, differential Darboux
factorizations stripping the largest element of F2, the divisibility
criterion deciding membership in the spanned subspace, an alternative
determinantal representation through the involuted pair, the reflection
invariance of Omega, and the scaling limit recovering each object from its
difference-equation counterpart.  Identities are verified exactly over the
rationals; norms and orthogonality go through tail-bounded quadrature.
"""
from __future__ import annotations

import math
from math import comb

from .classical import LaguerreParams, MeixnerParams, laguerre
from .exact import (
    AdmissibilityRefusal,
    DomainError,
    ParameterError,
    PoleError,
    Poly,
    RatFunc,
    abs_rat,
    gen_binomial,
    is_integer,
    pochhammer,
    poly_det,
    rat,
    rat_pow,
    sturm_nonneg_roots,
)
from .factored import FactoredScalar
from .meixner import InvarianceReport, MeixnerExcFamily, NormCheck
from .numerics import collapse, laguerre_type_integral
from .operators import DifferentialOperator
from .pairs import FiniteSet, PairSpec, involute, is_admissible, vandermonde


class LaguerreExcFamily:
    """An exceptional Laguerre family for one alpha and one pair.

    Construction evaluates the k+1 top-row minors of the defining
    determinant once; every member is then a short signed combination of
    derivatives of a single classical polynomial against those minors, and
    the last minor is exactly the Wronskian determinant Omega.
    """

    def __init__(self, params: LaguerreParams, pair: PairSpec):
        alpha = params.alpha
        if is_integer(alpha) and alpha <= -1:
            raise ParameterError(
                f"alpha must stay off the negative integers, got {alpha}"
            )
        self.params = params
        self.pair = pair
        self._minors = self._top_row_minors()
        self._members = {}

    def __repr__(self):
        return f"LaguerreExcFamily({self.params!r}, {self.pair!r})"

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def idx(self):
        if self.pair.is_trivial:
            return None
        return self.pair.index_data()

    # -- defining determinant ------------------------------------------------

    def _block_rows(self):
        """Rows of the F-block: one per element of F1 then F2, columns j=0..k."""
        alpha = self.params.alpha
        k = self.pair.k
        rows = []
        for f in self.pair.F1:
            d = laguerre(f, alpha)
            row = []
            for _ in range(k + 1):
                row.append(d)
                d = d.derivative()
            rows.append(row)
        for f in self.pair.F2:
            rows.append([laguerre(f, alpha + j).reflect() for j in range(k + 1)])
        return rows

    def _top_row_minors(self):
        k = self.pair.k
        rows = self._block_rows()
        minors = []
        for j in range(k + 1):
            sub = [r[:j] + r[j + 1 :] for r in rows]
            minors.append(poly_det(sub))
        return minors

    @property
    def omega(self) -> Poly:
        """Wronskian determinant Omega (columns 0..k-1 of the block)."""
        return self._minors[-1]

    def member(self, n: int) -> Poly:
        """Family member of degree n; the zero polynomial off the index set."""
        if n < 0:
            raise DomainError(f"family members need a nonnegative degree, got {n}")
        got = self._members.get(n)
        if got is None:
            d = laguerre(n - self.pair.u, self.params.alpha)
            total = Poly.zero()
            for j, minor in enumerate(self._minors):
                piece = d * minor
                total = total + (piece if j % 2 == 0 else -piece)
                d = d.derivative()
            got = self._members[n] = total
        return got


def family(f1, f2, alpha) -> LaguerreExcFamily:
    return LaguerreExcFamily(LaguerreParams(alpha), PairSpec(f1, f2))


# -- the contract surface ----------------------------------------------------


def L_exc(n: int, fam: LaguerreExcFamily) -> Poly:
    return fam.member(n)


def omega_alpha(fam: LaguerreExcFamily) -> Poly:
    return fam.omega


def leading_coeff_law(n: int, fam: LaguerreExcFamily):
    """Closed form for the leading coefficient of the degree-n member."""
    pair = fam.pair
    if not pair.sigma_contains(n):
        raise DomainError(f"degree {n} is outside the index set of {pair!r}")
    u = pair.u
    num = vandermonde(pair.F1) * vandermonde(pair.F2)
    for f in pair.F1:
        num *= f - n + u
    den = rat(math.factorial(n - u))
    for f in pair.F1:
        den *= math.factorial(f)
    for f in pair.F2:
        den *= math.factorial(f)
    if (n - u + pair.F1.total) % 2:
        num = -num
    return num / den


def omega_f2_variant(fam: LaguerreExcFamily) -> Poly:
    """Omega rewritten as a pure Wronskian of reflected rows; needs F1 empty."""
    pair = fam.pair
    if pair.F1.elems:
        raise DomainError("the reflected Wronskian form needs F1 empty")
    rows = []
    for f in pair.F2:
        d = laguerre(f, fam.params.alpha).reflect()
        row = []
        for _ in range(pair.k):
            row.append(d)
            d = d.derivative()
        rows.append(row)
    return poly_det(rows)


def lowering_identity(fam: LaguerreExcFamily) -> bool:
    """The first member equals a signed Omega of the lowered pair at shifted alpha."""
    s, low_pair = fam.pair.down()
    low = LaguerreExcFamily(LaguerreParams(fam.params.alpha + s), low_pair)
    rhs = low.omega
    if (comb(s, 2) + s * fam.pair.k1) % 2:
        rhs = -rhs
    return fam.member(fam.pair.u) == rhs


def omega_at_zero(fam: LaguerreExcFamily):
    """Closed-form product for Omega(0), a polynomial expression in alpha."""
    alpha = fam.params.alpha
    pair = fam.pair
    total = rat(1)
    for F, kj in ((pair.F1, pair.k1), (pair.F2, pair.k2)):
        total *= vandermonde(F)
        for i in range(1, kj + 1):
            total *= pochhammer(alpha + i, kj - i + 1)
        for f in F:
            total *= pochhammer(alpha + kj + 1, f - kj)
            total /= math.factorial(f)
    for i in range(1, min(pair.k1, pair.k2) + 1):
        total /= pochhammer(alpha + i, pair.k1 + pair.k2 - 2 * i + 1)
    for f in pair.F1:
        for g in pair.F2:
            total *= alpha + f + g + 1
    if comb(pair.k1, 2) % 2:
        total = -total
    return total


# -- the second order differential operator ----------------------------------


def _operator_numerators(fam: LaguerreExcFamily):
    """Numerators over Omega of the first and zeroth order coefficients."""
    alpha = fam.params.alpha
    pair = fam.pair
    om = fam.omega
    om1 = om.derivative()
    om2 = om1.derivative()
    x = Poly.x()
    k = pair.k
    n1 = Poly([alpha + k + 1, -1]) * om - 2 * x * om1
    n0 = rat(-(pair.k1 + pair.u)) * om + Poly([-alpha - k, 1]) * om1 + x * om2
    return n1, n0


def operator(fam: LaguerreExcFamily) -> DifferentialOperator:
    """x d2 + h1 d + h0 with member(n) as eigenvector for eigenvalue -n."""
    om = fam.omega
    n1, n0 = _operator_numerators(fam)
    return DifferentialOperator.second_order(
        a2=RatFunc(Poly.x()),
        a1=RatFunc(n1, om),
        a0=RatFunc(n0, om),
    )


def eigen_residual(n: int, fam: LaguerreExcFamily) -> Poly:
    """Eigenfunction identity at degree n, cleared of denominators.

    Zero exactly when x p'' Omega + h1-numerator p' + h0-numerator p equals
    -n p Omega for p = member(n).
    """
    p = fam.member(n)
    p1 = p.derivative()
    om = fam.omega
    n1, n0 = _operator_numerators(fam)
    return Poly.x() * p1.derivative() * om + n1 * p1 + n0 * p + rat(n) * p * om


# -- weight, nonvanishing, norms ---------------------------------------------


def weight(fam: LaguerreExcFamily, x) -> FactoredScalar:
    """Weight value at x > 0 as (rational) * x^(alpha+k) * exp(-x)."""
    x = rat(x)
    if x <= 0:
        raise DomainError(f"the weight lives on (0, inf), got x={x}")
    d = fam.omega(x)
    if d == 0:
        raise PoleError(f"weight undefined: Omega vanishes at x={x}")
    return FactoredScalar(
        rational=1 / (d * d),
        powers=[(x, fam.params.alpha + fam.pair.k)],
        exp_arg=-x,
    )


def nonvanishing(fam: LaguerreExcFamily) -> bool:
    """Exact decision: Omega has no real root in [0, inf)."""
    return sturm_nonneg_roots(fam.omega) == 0


def inner_product(fam: LaguerreExcFamily, n: int, r: int):
    """Tail-bounded quadrature of the weighted product of members n and r."""
    om = fam.omega
    if sturm_nonneg_roots(om) != 0:
        raise PoleError("weight undefined: Omega vanishes on [0, inf)")
    prod = fam.member(n) * fam.member(r)
    return laguerre_type_integral(prod, om * om, fam.params.alpha + fam.pair.k)


def norm_closed_form(n: int, fam: LaguerreExcFamily) -> FactoredScalar:
    """pi(n-u) Gamma(n-u+alpha+1) / (n-u)! with pi the paired root product."""
    pair = fam.pair
    alpha = fam.params.alpha
    d = n - pair.u
    val = rat(1, math.factorial(d))
    for f in pair.F1:
        val *= d - f
    for f in pair.F2:
        val *= d + alpha + f + 1
    return FactoredScalar(rational=val, gammas=[(d + alpha + 1, 1)])


def norm_formula(n: int, fam: LaguerreExcFamily, rel_tol=None) -> NormCheck:
    """Verify the squared norm of member n against its closed form.

    Only meaningful when the weight is a positive measure; refuses
    otherwise, since the integral identity presumes admissibility.
    """
    pair = fam.pair
    alpha = fam.params.alpha
    if not pair.sigma_contains(n):
        raise DomainError(f"degree {n} is outside the index set of {pair!r}")
    if not is_admissible(alpha + 1, pair):
        raise AdmissibilityRefusal(
            f"norm identity needs a positive weight; (alpha={alpha}, {pair!r}) "
            f"is not admissible"
        )
    rel = rat(rel_tol) if rel_tol is not None else rat(1, 10**8)
    res = inner_product(fam, n, n)
    rhs = collapse(norm_closed_form(n, fam))
    err = abs(res.value - rhs)
    ok = err <= float(rel) * abs(rhs) + res.tail_bound
    return NormCheck(n, res.value, rhs, err / abs(rhs), res.tail_bound, ok)


# -- Darboux factorization ---------------------------------------------------


def darboux_pair(fam: LaguerreExcFamily):
    """First order operators (A, B, lower_family) stripping max(F2).

    A raises from the lower family (the pair without the largest element of
    F2) into this one; B goes back down.  Their two compositions reproduce
    the second order operators of the two families up to explicit constant
    shifts, which darboux_identities checks exactly.
    """
    pair = fam.pair
    if not pair.F2.elems:
        raise DomainError("Darboux step needs a nonempty second set")
    alpha = fam.params.alpha
    k = pair.k
    _, low_pair = pair.remove_f2_max()
    low = LaguerreExcFamily(fam.params, low_pair)
    om_up, om_lo = fam.omega, low.omega
    x = Poly.x()
    A = DifferentialOperator(
        {
            1: -RatFunc(om_up, om_lo),
            0: RatFunc(om_up.derivative() + om_up, om_lo),
        }
    )
    B = DifferentialOperator(
        {
            1: -RatFunc(x * om_lo, om_up),
            0: RatFunc(x * om_lo.derivative() - (alpha + k) * om_lo, om_up),
        }
    )
    return A, B, low


def darboux_identities(fam: LaguerreExcFamily) -> tuple[bool, bool]:
    """Exact operator identities for the two compositions of the Darboux pair."""
    A, B, low = darboux_pair(fam)
    alpha = fam.params.alpha
    f, _ = fam.pair.remove_f2_max()
    u_up = fam.pair.u
    u_lo = low.pair.u if not low.pair.is_trivial else 0
    # the shift constants carry the sign of the eigenvalue convention: with
    # D(member n) = -n * member n the compositions subtract the constants
    down_ok = (B @ A - (operator(low) - rat(alpha + f - u_lo + 1))).is_zero
    up_ok = (A @ B - (operator(fam) - rat(alpha + f - u_up + 1))).is_zero
    return down_ok, up_ok


def darboux_intertwining(fam: LaguerreExcFamily, n: int) -> bool:
    """A applied to the right lower member reproduces member n exactly."""
    A, _, low = darboux_pair(fam)
    f, _ = fam.pair.remove_f2_max()
    shift = n - f + fam.pair.k2 - 1
    if shift < 0:
        return fam.member(n).is_zero
    return A.apply(low.member(shift)) == RatFunc(fam.member(n))


# -- membership criterion ----------------------------------------------------


def membership_test(p: Poly, fam: LaguerreExcFamily) -> bool:
    """Whether p lies in the span of the family members.

    The span is exactly the set of polynomials p for which the operator
    image stays polynomial, which reduces to one divisibility by Omega.
    """
    alpha = fam.params.alpha
    pair = fam.pair
    om = fam.omega
    if om.degree <= 0:
        return True
    om1 = om.derivative()
    x = Poly.x()
    expr = (-2 * x * p.derivative() + Poly([-alpha - pair.k, 1]) * p) * om1
    expr = expr + x * p * om1.derivative()
    return (expr % om).is_zero


# -- alternative representation and invariance -------------------------------

class AltRepReport:
    """Outcome of the involuted-pair determinant comparison."""

    def __init__(self, n, poly, gamma, matches, discrepancy):
        self.n = n
        self.poly = poly
        self.gamma = gamma
        self.matches = matches
        self.discrepancy = discrepancy

    def __repr__(self):
        return f"AltRepReport(n={self.n}, gamma={self.gamma}, matches={self.matches})"


def alt_representation(n: int, fam: LaguerreExcFamily) -> AltRepReport:
    """Member n rebuilt from the involuted pair, with a fitted constant.

    The involuted determinant has order max(F1) + max(F2) + 2 - k, often far
    below the defining one.  The constant is recovered by matching leading
    coefficients; the report records whether the match is then exact.
    """
    pair = fam.pair
    alpha = fam.params.alpha
    v = pair.v
    if n < v:
        raise DomainError(f"alternative representation needs n >= {v}, got {n}")
    G1, G2 = involute(pair.F1), involute(pair.F2)
    m_ord = G1.card + G2.card
    atil = alpha + pair.F1.max_elem + pair.F2.max_elem + 2

    top = []
    for j in range(m_ord + 1):
        w = math.factorial(j) * gen_binomial(atil + (n - v), j)
        top.append(w * Poly.monomial(m_ord - j) * laguerre(n - v, atil - j))
    rows = [top]
    for g in G1:
        rows.append([laguerre(g, -atil + j).reflect() for j in range(m_ord + 1)])
    for g in G2:
        d = laguerre(g, -atil)
        row = []
        for _ in range(m_ord + 1):
            row.append(d)
            d = d.derivative()
        rows.append(row)
    det = poly_det(rows)
    target = fam.member(n)
    if det.is_zero:
        return AltRepReport(n, det, None, target.is_zero, -target)
    gamma = target.leading / det.leading
    fitted = det * gamma
    return AltRepReport(n, det, gamma, fitted == target, fitted - target)


def omega_raw(f1, f2, alpha) -> Poly:
    """Omega for a pair at an unvalidated alpha (the invariance needs
    reflected parameters that the public constructor would reject)."""
    F1 = f1 if isinstance(f1, FiniteSet) else FiniteSet(f1)
    F2 = f2 if isinstance(f2, FiniteSet) else FiniteSet(f2)
    alpha = rat(alpha)
    k = F1.card + F2.card
    rows = []
    for f in F1:
        d = laguerre(f, alpha)
        row = []
        for _ in range(k):
            row.append(d)
            d = d.derivative()
        rows.append(row)
    for f in F2:
        rows.append([laguerre(f, alpha + j).reflect() for j in range(k)])
    return poly_det(rows)


def invariance_conjecture(fam: LaguerreExcFamily) -> InvarianceReport:
    """Compare Omega with its reflected involuted-pair counterpart.

    Exact equality is conjectural over the full pair space; the report
    carries both sides so a sweep can record counterexamples.
    """
    pair = fam.pair
    alpha = fam.params.alpha
    G1, G2 = involute(pair.F1), involute(pair.F2)
    alpha_ref = -alpha - pair.F1.max_elem - pair.F2.max_elem - 2
    lhs = fam.omega
    rhs = omega_raw(G1, G2, alpha_ref).reflect()
    if (pair.u + pair.k1 + pair.F1.total + G1.total) % 2:
        rhs = -rhs
    return InvarianceReport(pair, (G1, G2), lhs == rhs, lhs, rhs)


# -- the scaling limit from the difference family ----------------------------

class LimitReport:
    """Deviations along an a-sequence for the member, Omega and Omega' limits.

    Each list holds one exact rational deviation per element of the
    sequence: the worst absolute difference over the sample points between
    the scaled difference-family quantity and its differential target.
    """

    def __init__(self, n, a_sequence, xs, member_dev, omega_dev, omega_prime_dev):
        self.n = n
        self.a_sequence = a_sequence
        self.xs = xs
        self.member_dev = member_dev
        self.omega_dev = omega_dev
        self.omega_prime_dev = omega_prime_dev

    @property
    def decreasing(self) -> bool:
        for devs in (self.member_dev, self.omega_dev, self.omega_prime_dev):
            for i in range(len(devs) - 1):
                if devs[i + 1] > devs[i]:
                    return False
        return True

    @property
    def final_dev(self):
        return self.member_dev[-1]

    def __repr__(self):
        return (
            f"LimitReport(n={self.n}, final_dev={self.final_dev}, "
            f"decreasing={self.decreasing})"
        )


def limit_from_meixner(n: int, fam: LaguerreExcFamily, a_sequence=None) -> LimitReport:
    """Scaled difference-family evaluations converging to this family.

    For each a in the sequence the degree-n member, Omega, and the first
    difference of Omega of the difference family at c = alpha + 1 are
    rescaled, evaluated exactly at x / (1 - a) for sample points x, and
    compared against the signed member, Omega, and Omega' here.
    """
    pair = fam.pair
    alpha = fam.params.alpha
    if not pair.sigma_contains(n):
        raise DomainError(f"degree {n} is outside the index set of {pair!r}")
    if a_sequence is None:
        a_sequence = [1 - rat(1, 2**t) for t in range(4, 11)]
    a_sequence = [rat(a) for a in a_sequence]
    for a in a_sequence:
        if not (0 < a < 1):
            raise DomainError(f"the limit runs along a in (0, 1), got a={a}")
    xs = (rat(1, 2), rat(1), rat(2))
    k1, k2, k = pair.k1, pair.k2, pair.k
    c = alpha + 1

    sign_m = -1 if (comb(k + 1, 2) + pair.F2.total) % 2 else 1
    target_m = [sign_m * fam.member(n)(x) for x in xs]
    sign_o = -1 if pair.F1.total % 2 else 1
    om = fam.omega
    om1 = om.derivative()
    target_o = [sign_o * om(x) for x in xs]
    target_o1 = [sign_o * om1(x) for x in xs]
    beta = pair.u + k1 * (1 - k2)

    member_dev, omega_dev, omega_prime_dev = [], [], []
    for a in a_sequence:
        mex = MeixnerExcFamily(MeixnerParams(a, c), pair)
        scale_m = rat_pow(a - 1, n - (k1 + 1) * k2)
        scale_o = rat_pow(1 - a, beta)
        p = mex.m(n)
        pom = mex.omega
        worst_m = worst_o = worst_o1 = rat(0)
        for i, x in enumerate(xs):
            xa = x / (1 - a)
            worst_m = max(worst_m, abs_rat(scale_m * p(xa) - target_m[i]))
            worst_o = max(worst_o, abs_rat(scale_o * pom(xa) - target_o[i]))
            diff = pom(xa + 1) - pom(xa)
            worst_o1 = max(
                worst_o1, abs_rat(scale_o / (1 - a) * diff - target_o1[i])
            )
        member_dev.append(worst_m)
        omega_dev.append(worst_o)
        omega_prime_dev.append(worst_o1)
    return LimitReport(n, a_sequence, xs, member_dev, omega_dev, omega_prime_dev)
