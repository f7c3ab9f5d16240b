"""Tests for exceptional Laguerre families and everything attached to them."""

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from xoppak.classical import LaguerreParams, laguerre
from xoppak.exact import (
    AdmissibilityRefusal,
    DomainError,
    ParameterError,
    PoleError,
    Poly,
    rat,
)
from xoppak.laguerre import (
    LaguerreExcFamily,
    L_exc,
    alt_representation,
    darboux_identities,
    darboux_intertwining,
    darboux_pair,
    eigen_residual,
    family,
    inner_product,
    invariance_conjecture,
    leading_coeff_law,
    limit_from_meixner,
    lowering_identity,
    membership_test,
    nonvanishing,
    norm_closed_form,
    norm_formula,
    omega_alpha,
    omega_at_zero,
    omega_f2_variant,
    operator,
    weight,
)
from xoppak.numerics import collapse, to_mpf
from xoppak.pairs import FiniteSet, PairSpec, enumerate_pairs, involute, is_admissible


SMALL_PAIRS = [
    ([1], []),
    ([], [1]),
    ([2], []),
    ([], [2]),
    ([1, 2], []),
    ([], [1, 2]),
    ([1], [1]),
    ([2], [1]),
    ([1], [2]),
    ([1, 3], [2]),
    ([1, 2], [1]),
]

ALPHAS = [rat(1, 2), rat(-1, 2), rat(1, 3), rat(5, 2), rat(-3, 2)]


def trivial_family(alpha):
    return LaguerreExcFamily(LaguerreParams(alpha), PairSpec.trivial())


# -- the defining determinant ------------------------------------------------

def test_two_by_two_determinant_value():
    # ({1}, {}), n=0: det[[L0, L0'], [L1, L1']] with L1 = alpha+1-x has
    # derivative -1 and L0 = 1, so the determinant is the constant -1
    for alpha in (rat(1, 2), rat(-3, 2), rat(7, 3)):
        fam = family([1], [], alpha)
        assert L_exc(0, fam) == Poly([rat(-1)])


def test_skipped_degree_gives_zero():
    fam = family([1], [], rat(1, 2))
    assert L_exc(1, fam).is_zero
    fam = family([2], [1], rat(1, 3))
    for n in range(12):
        assert L_exc(n, fam).is_zero == (not fam.pair.sigma_contains(n))


def test_negative_degree_rejected():
    fam = family([1], [], rat(1, 2))
    with pytest.raises(DomainError):
        L_exc(-1, fam)


def test_integer_alpha_below_zero_rejected():
    with pytest.raises(ParameterError):
        family([1], [], rat(-2))
    # nonnegative integers are fine
    family([1], [], rat(0))
    family([1], [], rat(3))


def test_degree_and_leading_coefficient_law():
    for f1, f2 in SMALL_PAIRS:
        for alpha in (rat(1, 2), rat(-3, 2)):
            fam = family(f1, f2, alpha)
            u = fam.pair.u
            for n in range(u, u + 7):
                p = L_exc(n, fam)
                if fam.pair.sigma_contains(n):
                    assert p.degree == n
                    assert p.leading == leading_coeff_law(n, fam)
                else:
                    assert p.is_zero


def test_leading_law_rejects_gap_degrees():
    fam = family([2], [], rat(1, 2))
    with pytest.raises(DomainError):
        leading_coeff_law(fam.pair.u + 2, fam)


def test_single_f2_lc_examples():
    # ({}, {1}): members are L_1^{alpha+1}(-x) type combinations with unit
    # leading coefficients of alternating nature
    fam = family([], [1], rat(1, 2))
    for n in (1, 2, 3):
        assert L_exc(n, fam).leading == leading_coeff_law(n, fam)


# -- Omega ---------------------------------------------------------------------

def test_omega_single_f1_closed_form():
    for alpha in ALPHAS:
        fam = family([1], [], alpha)
        assert omega_alpha(fam) == Poly([alpha + 1, rat(-1)])


def test_omega_degree_is_u_plus_k1():
    for f1, f2 in SMALL_PAIRS:
        fam = family(f1, f2, rat(1, 3))
        assert omega_alpha(fam).degree == fam.pair.u + fam.pair.k1


def test_omega_f2_variant_agrees():
    for f2 in ([1], [2], [1, 2], [1, 3], [2, 4], [1, 2, 4]):
        fam = family([], f2, rat(1, 3))
        assert omega_f2_variant(fam) == omega_alpha(fam)


def test_omega_f2_variant_needs_empty_f1():
    with pytest.raises(DomainError):
        omega_f2_variant(family([1], [1], rat(1, 2)))


def test_lowering_identity():
    for f1, f2 in SMALL_PAIRS:
        for alpha in (rat(1, 2), rat(-1, 2), rat(1, 3)):
            assert lowering_identity(family(f1, f2, alpha))


def test_lowering_identity_consecutive_f1():
    # ({1,3}, {}) lowers through s=2 to ({1}, {}) at alpha+2
    fam = family([1, 3], [], rat(1, 2))
    assert lowering_identity(fam)


def test_omega_at_zero_single_f1():
    for alpha in ALPHAS:
        fam = family([1], [], alpha)
        assert omega_at_zero(fam) == alpha + 1


def test_omega_at_zero_matches_determinant():
    for f1, f2 in SMALL_PAIRS:
        for alpha in ALPHAS:
            fam = family(f1, f2, alpha)
            assert omega_at_zero(fam) == omega_alpha(fam)(rat(0))


def test_omega_at_zero_dual_path_examples():
    fam = family([1], [1], rat(1, 2))
    assert omega_at_zero(fam) == omega_alpha(fam)(rat(0))
    fam = family([], [2], rat(-1, 2))
    assert omega_at_zero(fam) == omega_alpha(fam)(rat(0))
    assert omega_at_zero(fam) == rat(3, 8)


def test_omega_at_zero_nonzero_off_negative_integers():
    for f1, f2 in SMALL_PAIRS:
        for alpha in ALPHAS + [rat(0), rat(2), rat(-7, 2), rat(-13, 5)]:
            assert omega_at_zero(family(f1, f2, alpha)) != 0


# -- the differential operator -------------------------------------------------

def test_operator_shape():
    fam = family([1], [2], rat(1, 3))
    op = operator(fam)
    assert op.a2 is not None
    assert op.a2.num == Poly.x() and op.a2.den == Poly.one()
    om = omega_alpha(fam)
    for coeff in (op.a1, op.a0):
        # denominator divides Omega: Omega mod den is zero up to scale
        q, r = divmod(om * coeff.den.leading, coeff.den * om.leading)
        assert (om * (coeff.den(rat(17)) / om(rat(17)))) == coeff.den or r.is_zero


def test_eigenvalue_examples_single_f1():
    fam = family([1], [], rat(-3, 2))
    for n in (0, 2, 3):
        assert eigen_residual(n, fam).is_zero


def test_eigenvalue_examples_mixed_pair():
    fam = family([1], [2], rat(1, 3))
    u = fam.pair.u
    for n in range(u, u + 5):
        if fam.pair.sigma_contains(n):
            assert eigen_residual(n, fam).is_zero


def test_eigen_sweep_small_pairs():
    for f1, f2 in SMALL_PAIRS:
        fam = family(f1, f2, rat(1, 2))
        u = fam.pair.u
        for n in range(u, u + 6):
            if fam.pair.sigma_contains(n):
                assert eigen_residual(n, fam).is_zero


def test_trivial_pair_matches_classical_operator():
    fam = trivial_family(rat(1, 2))
    for n in range(6):
        assert eigen_residual(n, fam).is_zero
    # D = x d2 + (alpha+1-x) d acting on L_n gives -n L_n
    op = operator(fam)
    p = laguerre(3, rat(1, 2))
    assert op.apply(p).num == rat(-3) * p


def test_operator_apply_matches_eigenvalue():
    fam = family([], [1, 2], rat(-1, 2))
    n = fam.pair.u + 1
    p = L_exc(n, fam)
    img = operator(fam).apply(p)
    assert img.den == Poly.one()
    assert img.num == rat(-n) * p


# -- weight, nonvanishing, norms ----------------------------------------------

def test_weight_values_and_poles():
    fam = family([1], [], rat(-3, 2))
    # Omega = -1/2 - x is negative on (0, inf); squared denominator positive
    for x in (rat(1, 2), rat(1), rat(10)):
        w = weight(fam, x)
        assert w.rational > 0
        assert collapse(w) > 0
    with pytest.raises(DomainError):
        weight(fam, rat(-1))
    fam2 = family([1], [], rat(1, 2))
    # Omega = 3/2 - x vanishes at x = 3/2
    with pytest.raises(PoleError):
        weight(fam2, rat(3, 2))


def test_weight_carrier_structure():
    fam = family([], [1], rat(1, 2))
    w = weight(fam, rat(2))
    alpha_k = rat(1, 2) + 1
    assert dict(w.powers)[rat(2)] == alpha_k
    assert w.exp_arg == rat(-2)


def test_nonvanishing_examples():
    assert nonvanishing(family([1], [], rat(-3, 2)))
    assert nonvanishing(family([], [1], rat(1, 2)))
    assert not nonvanishing(family([1], [], rat(1, 2)))


def test_nonvanishing_without_admissibility():
    # alpha = -7/2 keeps Omega = -5/2 - x rootless on [0, inf) although
    # (alpha + 1, pair) fails the admissibility scan
    fam = family([1], [], rat(-7, 2))
    assert nonvanishing(fam)
    assert not is_admissible(rat(-5, 2), fam.pair)


def test_admissible_implies_nonvanishing_and_alpha_bound():
    for f1, f2 in SMALL_PAIRS:
        pair = PairSpec(f1, f2)
        for alpha in ALPHAS + [rat(-5, 4), rat(-7, 4), rat(-5, 2)]:
            if is_admissible(alpha + 1, pair):
                fam = family(f1, f2, alpha)
                assert nonvanishing(fam)
                assert alpha + pair.k > -1


def test_single_f1_admissibility_window():
    # ({1}, {}) is admissible exactly for alpha in (-2, -1)
    pair = PairSpec([1], [])
    for alpha in (rat(-3, 2), rat(-5, 4), rat(-7, 4)):
        assert is_admissible(alpha + 1, pair)
    for alpha in (rat(-5, 2), rat(-7, 2), rat(1, 2)):
        assert not is_admissible(alpha + 1, pair)


def test_norm_concrete_value_two_sqrt_pi():
    fam = family([1], [], rat(-3, 2))
    closed = collapse(norm_closed_form(0, fam))
    assert mp.almosteq(closed, 2 * mp.sqrt(mp.pi))
    check = norm_formula(0, fam)
    assert check.ok
    assert check.rel_err < 1e-8


def test_norm_further_examples():
    fam = family([1], [], rat(-3, 2))
    assert norm_formula(2, fam).ok
    fam = family([], [1], rat(1, 2))
    assert norm_formula(1, fam).ok


def test_norm_refuses_non_admissible():
    with pytest.raises(AdmissibilityRefusal):
        norm_formula(0, family([1], [], rat(-7, 2)))
    with pytest.raises(AdmissibilityRefusal):
        norm_formula(0, family([1], [], rat(1, 2)))


def test_norm_rejects_gap_degree():
    fam = family([1], [], rat(-3, 2))
    with pytest.raises(DomainError):
        norm_formula(1, fam)


def test_orthogonality_normalized():
    fam = family([1], [], rat(-3, 2))
    degrees = [n for n in range(0, 6) if fam.pair.sigma_contains(n)][:4]
    norms = {n: norm_formula(n, fam).rhs for n in degrees}
    for i, n in enumerate(degrees):
        for r in degrees[i + 1 :]:
            res = inner_product(fam, n, r)
            bound = abs(res.value) + res.tail_bound
            assert bound / mp.sqrt(norms[n] * norms[r]) < 1e-7


def test_inner_product_refuses_vanishing_omega():
    fam = family([1], [], rat(1, 2))
    with pytest.raises(PoleError):
        inner_product(fam, 0, 0)


# -- Darboux -------------------------------------------------------------------

def test_darboux_identities_and_intertwining():
    cases = [
        ([], [1], rat(1, 2)),
        ([], [2], rat(1, 3)),
        ([1], [1], rat(1, 2)),
        ([], [1, 2], rat(-1, 2)),
        ([1], [2], rat(7, 3)),
    ]
    for f1, f2, alpha in cases:
        fam = family(f1, f2, alpha)
        down_ok, up_ok = darboux_identities(fam)
        assert down_ok and up_ok
        u = fam.pair.u
        for n in range(u, u + 4):
            if fam.pair.sigma_contains(n):
                assert darboux_intertwining(fam, n)


def test_darboux_descends_to_classical():
    fam = family([], [1], rat(1, 2))
    _, _, low = darboux_pair(fam)
    assert low.pair.is_trivial
    assert darboux_identities(fam) == (True, True)


def test_darboux_needs_nonempty_f2():
    with pytest.raises(DomainError):
        darboux_pair(family([1, 2], [], rat(1, 2)))


# -- membership criterion -------------------------------------------------------

def test_membership_accepts_members():
    for f1, f2 in SMALL_PAIRS[:6]:
        fam = family(f1, f2, rat(1, 3))
        u = fam.pair.u
        for n in range(u, u + 5):
            if fam.pair.sigma_contains(n):
                assert membership_test(L_exc(n, fam), fam)


def test_membership_accepts_omega_squared_multiples():
    cubic = Poly([rat(1), rat(-2, 3), rat(0), rat(5)])
    for f1, f2 in ([1], []), ([], [1, 3]), ([1, 2], [1]):
        fam = family(f1, f2, rat(1, 3))
        om = omega_alpha(fam)
        assert membership_test(om * om * cubic, fam)


def test_membership_rejects_gap_monomials():
    fam = family([1], [], rat(1, 2))
    assert not membership_test(Poly.x(), fam)
    fam = family([1, 2], [1], rat(1, 3))
    for f in (1, 2):
        assert not membership_test(Poly.monomial(fam.pair.u + f), fam)


def test_membership_trivial_pair_accepts_everything():
    fam = trivial_family(rat(1, 2))
    assert membership_test(Poly.x(), fam)
    assert membership_test(Poly.monomial(5, rat(7, 3)), fam)


# -- alternative representation -------------------------------------------------

def test_alt_representation_single_f1():
    fam = family([1], [], rat(-3, 2))
    v = fam.pair.v
    for n in (v, v + 1):
        report = alt_representation(n, fam)
        assert report.matches
        assert report.discrepancy.is_zero


def test_alt_representation_single_f2():
    fam = family([], [1], rat(1, 2))
    v = fam.pair.v
    for n in range(v, v + 3):
        assert alt_representation(n, fam).matches


def test_alt_representation_mixed_pair():
    fam = family([1, 2], [1], rat(1, 3))
    assert alt_representation(fam.pair.v, fam).matches


def test_alt_representation_order_economy():
    # F1 = {1,2,3}, F2 = {1,3} has a 6x6 defining determinant but the
    # involuted pair ({3}, {1,3}) needs only a 4x4 one
    fam = family([1, 2, 3], [1, 3], rat(1, 2))
    m_ord = involute(fam.pair.F1).card + involute(fam.pair.F2).card
    assert fam.pair.k + 1 == 6
    assert m_ord + 1 == 4
    assert alt_representation(fam.pair.v, fam).matches


def test_alt_representation_needs_large_degree():
    fam = family([1], [], rat(1, 2))
    with pytest.raises(DomainError):
        alt_representation(fam.pair.v - 1, fam)


# -- invariance -----------------------------------------------------------------

def test_invariance_single_f1():
    for alpha in (rat(1, 2), rat(-3, 2)):
        fam = family([1], [], alpha)
        report = invariance_conjecture(fam)
        assert report.matches
        assert report.discrepancy.is_zero


def test_invariance_more_families():
    for f1, f2, alpha in (
        ([1, 2], [], rat(1, 3)),
        ([], [1, 3], rat(5, 2)),
        ([1], [1], rat(1, 2)),
        ([2], [1, 2], rat(-1, 2)),
    ):
        assert invariance_conjecture(family(f1, f2, alpha)).matches


def test_invariance_involution_matches_pair_map():
    fam = family([1, 3], [2], rat(1, 2))
    report = invariance_conjecture(fam)
    G1, G2 = report.involuted
    assert G1 == involute(fam.pair.F1)
    assert G2 == involute(fam.pair.F2)


# -- the scaling limit ----------------------------------------------------------

def test_limit_classical_base_case():
    fam = trivial_family(rat(1, 2))
    report = limit_from_meixner(2, fam)
    assert report.decreasing
    assert report.final_dev < rat(1, 100)


def test_limit_constant_member_exact():
    # ({1}, {}), n=0: both sides are matching constants at every a
    fam = family([1], [], rat(-3, 2))
    report = limit_from_meixner(0, fam)
    assert all(d == 0 for d in report.member_dev)


def test_limit_single_f2():
    fam = family([], [1], rat(1, 2))
    report = limit_from_meixner(2, fam)
    assert report.decreasing
    assert report.final_dev < rat(1, 100)


def test_limit_mixed_pair():
    fam = family([1], [1], rat(1, 3))
    report = limit_from_meixner(fam.pair.u + 2, fam)
    assert report.decreasing
    assert report.final_dev < rat(1, 100)


def test_limit_rejects_gap_degree_and_bad_a():
    fam = family([1], [], rat(1, 2))
    with pytest.raises(DomainError):
        limit_from_meixner(1, fam)
    with pytest.raises(DomainError):
        limit_from_meixner(0, fam, a_sequence=[rat(3, 2)])


# -- properties -----------------------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(
    st.sampled_from(SMALL_PAIRS),
    st.sampled_from(ALPHAS),
    st.integers(min_value=0, max_value=6),
)
def test_property_degree_or_zero(pair, alpha, offset):
    fam = family(pair[0], pair[1], alpha)
    n = fam.pair.u + offset
    p = L_exc(n, fam)
    if fam.pair.sigma_contains(n):
        assert p.degree == n
        assert p.leading == leading_coeff_law(n, fam)
    else:
        assert p.is_zero


@settings(max_examples=12, deadline=None)
@given(
    st.sampled_from(SMALL_PAIRS),
    st.sampled_from([rat(1, 2), rat(-1, 2), rat(1, 3)]),
    st.integers(min_value=0, max_value=5),
)
def test_property_eigenfunction(pair, alpha, offset):
    fam = family(pair[0], pair[1], alpha)
    n = fam.pair.u + offset
    if fam.pair.sigma_contains(n):
        assert eigen_residual(n, fam).is_zero
