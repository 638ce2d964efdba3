import math

import pytest
from hypothesis import given, strategies as st

from heytingq.supernatural import (
    ALL_PRIMES,
    EMPTY_PRIMES,
    INF,
    OMEGA,
    ONE,
    GroupKind,
    PrimeSet,
    SupernaturalNumber,
    omega,
    parse_supernatural,
    render_group,
    sn_divides,
    sn_equiv,
    sn_from_natural,
    sn_implies,
    sn_join,
    sn_meet,
    sn_neg,
    sn_product,
    varpi,
    varpi_compare,
    varpi_partition,
)

from conftest import SMALL_PRIMES, supernaturals

N = sn_from_natural


def exps(a, primes=SMALL_PRIMES):
    return [a.exponent(p) for p in primes] + [a.default_exponent]


# -- construction -------------------------------------------------------------


def test_from_natural_examples():
    assert N(1) == ONE
    assert N(900) == SupernaturalNumber(0, {2: 2, 3: 2, 5: 2})
    assert N(10) == SupernaturalNumber(0, {2: 1, 5: 1})
    assert OMEGA.default_exponent == INF and OMEGA.exceptions == ()


@given(st.integers(1, 10**6))
def test_from_natural_matches_trial_division(n):
    a = N(n)
    rest = n
    for p, e in a.exceptions:
        rest //= p**e
    assert rest == 1
    assert a.to_int() == n and a.is_natural


def test_canonical_form_drops_default_entries():
    assert SupernaturalNumber(INF, {2: INF, 3: 1}) == SupernaturalNumber(INF, {3: 1})
    assert hash(SupernaturalNumber(0, {5: 0})) == hash(ONE)


@pytest.mark.parametrize("bad", [{4: 1}, {1: 2}, {2: -1}, {2: 1.5}])
def test_rejects_invalid_exceptions(bad):
    with pytest.raises(ValueError):
        SupernaturalNumber(0, bad)


def test_rejects_bad_default():
    with pytest.raises(ValueError):
        SupernaturalNumber(2)


def test_from_natural_rejects_zero():
    with pytest.raises(ValueError):
        N(0)


# -- prime sets ---------------------------------------------------------------


def test_prime_set_algebra():
    a = PrimeSet.of([2, 3])
    b = PrimeSet.all_except([3, 5])
    assert 2 in a and 7 not in a and 7 in b and 3 not in b
    assert a | b == PrimeSet.all_except([5])
    assert a & b == PrimeSet.of([2])
    assert ~a == PrimeSet.all_except([2, 3])
    assert a - b == PrimeSet.of([3])
    assert str(a) == "{2,3}" and str(~a) == "~{2,3}"
    assert EMPTY_PRIMES.is_empty and ALL_PRIMES.is_all and not ALL_PRIMES.is_finite


prime_sets = st.builds(
    PrimeSet,
    st.booleans(),
    st.frozensets(st.sampled_from(SMALL_PRIMES), max_size=4),
)


@given(prime_sets, prime_sets, st.sampled_from(SMALL_PRIMES + [17, 19]))
def test_prime_set_ops_match_membership(a, b, p):
    assert (p in a | b) == (p in a or p in b)
    assert (p in a & b) == (p in a and p in b)
    assert (p in ~a) == (p not in a)
    assert (p in a - b) == (p in a and p not in b)


# -- order and lattice ----------------------------------------------------------


def test_divides_examples():
    assert sn_divides(N(10), N(900))
    assert not sn_divides(omega([2]), N(900))
    assert sn_divides(omega([2]), OMEGA)


@given(supernaturals())
def test_everything_divides_omega(a):
    assert sn_divides(a, OMEGA) and sn_divides(ONE, a)


def test_meet_join_examples():
    assert sn_meet(N(10), N(75)) == N(5)
    assert sn_join(N(10), N(75)) == N(150)
    assert sn_meet(N(900), OMEGA) == N(900)
    assert sn_join(N(900), ONE) == N(900)
    assert sn_meet(N(12), omega([2, 5])) == N(4)
    assert sn_meet() == OMEGA and sn_join() == ONE


@given(st.integers(1, 5000), st.integers(1, 5000))
def test_meet_join_agree_with_gcd_lcm(a, b):
    assert sn_meet(N(a), N(b)) == N(math.gcd(a, b))
    assert sn_join(N(a), N(b)) == N(math.lcm(a, b))


@given(supernaturals(), supernaturals())
def test_meet_is_greatest_lower_bound(a, b):
    m = sn_meet(a, b)
    assert sn_divides(m, a) and sn_divides(m, b)
    assert (sn_divides(a, b)) == (m == a)
    assert sn_join(a, sn_meet(a, b)) == a  # absorption


@given(supernaturals(), supernaturals(), supernaturals())
def test_distributive(a, b, c):
    assert sn_meet(a, sn_join(b, c)) == sn_join(sn_meet(a, b), sn_meet(a, c))


@given(supernaturals(), supernaturals())
def test_divides_is_pointwise(a, b):
    assert sn_divides(a, b) == all(x <= y for x, y in zip(exps(a), exps(b)))


# -- implication and negation ---------------------------------------------------


def test_implies_examples():
    assert sn_implies(N(900), N(900)) == OMEGA
    for p in (2, 3, 7, 97):
        assert sn_implies(N(p), ONE) == omega(PrimeSet.all_except([p]))
    assert sn_implies(N(10), N(75)) == SupernaturalNumber(INF, {2: 0})


def test_neg_examples():
    assert sn_neg(ONE) == OMEGA and sn_neg(OMEGA) == ONE
    assert sn_neg(N(2)) == omega(PrimeSet.all_except([2]))
    assert sn_neg(sn_neg(N(10))) == omega([2, 5])


def test_equiv_examples():
    assert sn_equiv(N(12), N(12)) == OMEGA
    assert sn_equiv(N(10), N(75)) == SupernaturalNumber(INF, {2: 0, 3: 0, 5: 1})
    assert sn_equiv(ONE, OMEGA) == ONE


def _greatest_exponent(a, b):
    # exponents reachable in the universe; the true answer is always among them
    return max(x for x in (0, 1, 2, 3, INF) if min(a, x) <= b)


@given(supernaturals(), supernaturals())
def test_implies_pointwise_oracle(a, b):
    got = sn_implies(a, b)
    assert exps(got) == [_greatest_exponent(x, y) for x, y in zip(exps(a), exps(b))]


@given(supernaturals(), supernaturals(), supernaturals())
def test_adjunction(a, b, x):
    assert sn_divides(sn_meet(a, x), b) == sn_divides(x, sn_implies(a, b))


@given(supernaturals(), supernaturals(), supernaturals())
def test_heyting_identities(a, b, c):
    assert sn_implies(a, a) == OMEGA
    assert sn_meet(a, sn_implies(a, b)) == sn_meet(a, b)
    assert sn_meet(b, sn_implies(a, b)) == b
    assert sn_implies(a, sn_meet(b, c)) == sn_meet(sn_implies(a, b), sn_implies(a, c))
    assert (sn_implies(a, b) == OMEGA) == sn_divides(a, b)


@given(supernaturals(), supernaturals())
def test_negation_laws(a, b):
    na, nb = sn_neg(a), sn_neg(b)
    assert sn_divides(a, sn_neg(na))
    assert na == sn_neg(sn_neg(na))
    assert sn_neg(sn_join(a, b)) == sn_meet(na, nb)
    assert sn_neg(sn_meet(a, b)) == sn_join(na, nb)  # Stone
    assert sn_join(na, sn_neg(na)) == OMEGA
    assert na.is_boolean


@given(supernaturals(), supernaturals())
def test_equiv_is_meet_of_implications(a, b):
    assert sn_equiv(a, b) == sn_meet(sn_implies(a, b), sn_implies(b, a))


@given(supernaturals())
def test_excluded_middle_iff_boolean(a):
    assert (sn_join(a, sn_neg(a)) == OMEGA) == a.is_boolean


# -- prime support ---------------------------------------------------------------


def test_varpi_examples():
    assert varpi_partition(N(900)) == (PrimeSet.of([2, 3, 5]), EMPTY_PRIMES)
    assert varpi_partition(OMEGA) == (EMPTY_PRIMES, ALL_PRIMES)
    assert varpi_partition(sn_product(N(4), omega([3]))) == (PrimeSet.of([2]), PrimeSet.of([3]))
    assert varpi(N(10)) == PrimeSet.of([2, 5])


def test_varpi_compare_examples():
    assert varpi_compare(N(10), N(75)) == (PrimeSet.of([2]), PrimeSet.all_except([2, 3, 5]), PrimeSet.of([3, 5]))
    assert varpi_compare(N(6), N(6)) == (EMPTY_PRIMES, ALL_PRIMES, EMPTY_PRIMES)
    assert varpi_compare(OMEGA, ONE) == (ALL_PRIMES, EMPTY_PRIMES, EMPTY_PRIMES)


@given(supernaturals(), supernaturals())
def test_varpi_compare_partitions(a, b):
    gt, eq, lt = varpi_compare(a, b)
    assert gt | eq | lt == ALL_PRIMES
    assert (gt & eq).is_empty and (gt & lt).is_empty and (eq & lt).is_empty


# -- text ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "value, text",
    [
        (N(900), "900"),
        (OMEGA, "Omega"),
        (ONE, "1"),
        (omega([2]), "Omega({2})"),
        (SupernaturalNumber(INF, {2: 0, 3: 0, 5: 1}), "5*Omega(~{2,3,5})"),
    ],
)
def test_str(value, text):
    assert str(value) == text


@given(supernaturals())
def test_str_parse_round_trip(a):
    assert parse_supernatural(str(a)) == a


def test_parse_literals():
    assert parse_supernatural("2^inf*3^2") == SupernaturalNumber(0, {2: INF, 3: 2})
    assert parse_supernatural("Omega(~{2})") == sn_neg(N(2))
    with pytest.raises(ValueError):
        parse_supernatural("0")
    with pytest.raises(ValueError):
        parse_supernatural("2^x")


# -- groups ----------------------------------------------------------------------


def test_group_rendering():
    assert render_group(N(900)).render() == "Z(900)"
    assert render_group(N(900), dual=True).render() == "Z(900)"
    assert render_group(omega([2])).render() == "Q_2/Z_2"
    assert render_group(omega([2]), dual=True).render() == "Z_2"
    assert render_group(OMEGA, dual=True).render(unicode=True) == "Ẑ ≅ ∏_p Z_p"
    assert render_group(OMEGA).render(unicode=True) == "Q/Z ≅ ⊕_p Q_p/Z_p"
    assert render_group(ONE).render() == "Z(1)"
    mixed = render_group(sn_product(N(4), omega([3, 5])))
    assert mixed.kind is GroupKind.MIXED
    assert mixed.render() == "Z(4) x (Q_3/Z_3 (+) Q_5/Z_5)"


@pytest.mark.parametrize(
    "value, dual, kind",
    [
        (N(12), False, GroupKind.CYCLIC_FINITE),
        (omega([7]), False, GroupKind.PRUFER),
        (omega([7]), True, GroupKind.PADIC),
        (omega([2, 3]), False, GroupKind.DIRECT_SUM_PRUFER),
        (OMEGA, True, GroupKind.PRODUCT_PADIC),
    ],
)
def test_group_kinds(value, dual, kind):
    assert render_group(value, dual).kind is kind


@given(supernaturals(), st.booleans())
def test_group_parts_recombine(a, dual):
    g = render_group(a, dual)
    assert sn_product(g.finite_part, omega(g.infinite_primes)) == a
    assert g.finite_part.is_natural
