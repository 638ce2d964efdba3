import math

from hypothesis import settings, strategies as st

from heytingq.supernatural import INF, SupernaturalNumber

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]
EXPONENTS = [0, 1, 2, 3, INF]


@st.composite
def supernaturals(draw, primes=SMALL_PRIMES, max_exceptions=3):
    default = draw(st.sampled_from([0, INF]))
    listed = draw(st.lists(st.sampled_from(primes), unique=True, max_size=max_exceptions))
    exps = [draw(st.sampled_from([e for e in EXPONENTS if e != default])) for _ in listed]
    return SupernaturalNumber(default, dict(zip(listed, exps)))


def divisor_oracle(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def relpc_oracle(n: int, a: int, b: int) -> int:
    """Largest x | n with gcd(a, x) | b, by scanning every divisor."""
    ok = [x for x in divisor_oracle(n) if b % math.gcd(a, x) == 0]
    best = max(ok)
    assert all(best % x == 0 for x in ok), "no greatest element"
    return best


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
