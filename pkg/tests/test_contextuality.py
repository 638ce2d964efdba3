import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heytingq.arith import divisors
from heytingq.contextuality import (
    Context,
    SearchConfig,
    bell_check,
    candidate_tuples,
    example_density,
    heyting_factor,
    is_context,
    pseudo_distance,
    search,
    search_violation,
)
from heytingq.divisors import hall_divisors, make_modulus
from heytingq.quantum import DensityMatrix, ginibre_density


def trace_p(m, dense):
    n = dense.shape[0]
    return float(sum(dense[r, r].real for r in range(0, n, n // m)))


def bell_oracle(ms, dense):
    """Both sides of the inequality from dense traces and brute-force negation."""
    n = dense.shape[0]
    neg = lambda a: max(x for x in divisors(n) if math.gcd(a, x) == 1)
    lhs = sum(trace_p(m, dense) - trace_p(1, dense) for m in ms)
    fs = [1 - trace_p(math.lcm(m, neg(m)), dense) for m in ms]
    r = neg(math.gcd(*ms))
    return lhs, len(ms) - trace_p(r, dense) - sum(fs), fs


def test_context_examples():
    D18, D6, D900 = make_modulus(18), make_modulus(6), make_modulus(900)
    assert is_context([D18.element(m) for m in (1, 2, 6, 18)])
    assert not is_context([D6.element(2), D6.element(3)])
    assert not is_context([D900.element(10), D900.element(75)])
    assert Context(D18, (18, 2, 6)).members[0].value == 2
    with pytest.raises(ValueError):
        Context(D6, (2, 3))


def test_example_report():
    rep = bell_check((10, 75, 36), example_density(0.4, 0.3))
    assert [m.neg for m in rep.members] == [9, 4, 25]
    assert [m.join_neg for m in rep.members] == [90, 300, 900]
    assert rep.r == 900 and rep.meet == 1 and rep.tau_r == pytest.approx(1, abs=1e-12)
    assert rep.lhs == pytest.approx(1.1, abs=1e-9)
    assert rep.bound == pytest.approx(0.8, abs=1e-9)
    assert rep.heyting_factors == pytest.approx((0.6, 0.6, 0.0), abs=1e-9)
    assert rep.violated


def test_report_json_shape():
    rep = bell_check((10, 75, 36), example_density(0.4, 0.3), rho_label="x")
    d = json.loads(rep.to_json())
    assert list(d) == ["n", "tuple", "members", "meet", "r", "tau_r", "lhs", "bound", "margin", "violated", "rho"]
    assert list(d["members"][0]) == ["m", "neg", "join_neg", "tau_tilde", "tau_join_neg", "f"]


def test_heyting_factor_examples():
    rho = example_density(0.25, 0.5)
    assert heyting_factor(10, rho) == pytest.approx(0.75)
    assert heyting_factor(900, rho) == 0
    for h in hall_divisors(make_modulus(900)):
        assert heyting_factor(h.value, rho) == 0


def test_pseudo_distance_examples():
    rho = DensityMatrix.basis(6, 1)
    assert pseudo_distance(2, 3, rho) == 1
    assert pseudo_distance(3, 3, rho) == 0


@given(st.integers(0, 2**32 - 1))
def test_pseudo_distance_triangle_on_chain(seed):
    rho = ginibre_density(6, np.random.default_rng(seed))
    assert pseudo_distance(2, 6, rho) + pseudo_distance(1, 2, rho) >= pseudo_distance(1, 6, rho) - 1e-12


def test_rejects_bad_tuples():
    rho = example_density(0.4, 0.3)
    with pytest.raises(ValueError):
        bell_check((1, 10), rho)
    with pytest.raises(ValueError):
        bell_check((7,), rho)
    with pytest.raises(ValueError):
        bell_check((), rho)


@st.composite
def tuple_and_state(draw, max_n=48):
    n = draw(st.integers(2, max_n))
    pool = divisors(n)[1:]
    ms = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4, unique=True))
    seed = draw(st.integers(0, 2**32 - 1))
    return ms, ginibre_density(n, np.random.default_rng(seed))


@given(tuple_and_state())
def test_report_matches_dense_oracle(args):
    ms, rho = args
    rep = bell_check(ms, rho)
    lhs, bound, fs = bell_oracle(ms, rho.entries)
    assert abs(rep.lhs - lhs) < 1e-10 and abs(rep.bound - bound) < 1e-10
    assert np.allclose(rep.heyting_factors, fs, atol=1e-10)
    assert all(f > -1e-12 for f in fs)


@given(st.integers(2, 200), st.integers(0, 2**32 - 1))
def test_chains_never_violate(n, seed):
    rng = np.random.default_rng(seed)
    # a random maximal chain through D(n), minus the bottom
    mod = make_modulus(n)
    cur, members = 1, []
    while cur != n:
        nxt = [cur * p for p in mod.primes if (n // cur) % p == 0]
        cur = int(rng.choice(nxt))
        members.append(cur)
    diag = rng.dirichlet(np.ones(n))
    k = int(rng.integers(1, len(members) + 1))
    sub = sorted(rng.choice(members, size=k, replace=False).tolist())
    assert not bell_check(sub, DensityMatrix(n, diag)).violated


# -- search ----------------------------------------------------------------------


def test_candidate_tuples():
    found = candidate_tuples(make_modulus(900), 2)
    assert (10, 75) in found and (4, 9) in found and (2, 4) not in found
    assert candidate_tuples(make_modulus(30), 2)[0] == (2, 3)
    assert candidate_tuples(make_modulus(8), 2) == [(2,), (4,), (8,), (2, 4), (2, 8), (4, 8)]


def test_search_900_finds_violation():
    rep = search_violation(900, SearchConfig(seed=7))
    assert rep.violated and rep.margin >= 0.3 - 1e-9
    assert bell_check(rep.tuple, DensityMatrix(900, _diag_from_label(rep.rho, 900))).margin == pytest.approx(rep.margin)


def _diag_from_label(label, n):
    assert label.startswith("grid:")
    d = np.zeros(n)
    for part in label[5:].split(","):
        i, w = part.split("=")
        d[int(i)] = float(w)
    return d


@pytest.mark.parametrize("n", [6, 30, 8, 27, 7])
def test_search_no_violation(n):
    rep = search_violation(n, SearchConfig(seed=7, samples=200))
    assert not rep.violated
    if n in (6, 30):
        assert all(f == 0 for f in rep.heyting_factors)


def test_search_reproducible_and_seed_sensitive():
    cfg = SearchConfig(seed=3, samples=50, grid=5)
    a, b = search(36, cfg), search(36, cfg)
    assert a.best.to_json() == b.best.to_json() and a.csv() == b.csv()


@pytest.mark.parametrize("n", [12, 18, 36])
def test_vertex_search_matches_explicit_grid(n):
    fast = search(n, SearchConfig(samples=0, grid=4, max_len=3))
    slow = search(n, SearchConfig(samples=0, grid=4, max_len=3, explicit_grid=True))
    assert [round(m, 12) for _, m, _ in fast.rows] == [round(m, 12) for _, m, _ in slow.rows]


def test_search_rejects_trivial_modulus():
    with pytest.raises(ValueError):
        search(1)


def test_csv_rows():
    res = search(12, SearchConfig(samples=5))
    lines = res.csv().splitlines()
    assert lines[0] == "tuple,margin,violated,rho"
    assert len(lines) == len(res.rows) + 1
