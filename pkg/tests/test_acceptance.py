"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import math
import time

import numpy as np
import pytest

from ginihardy import (
    ConcaveHardyQuery,
    SequenceSpec,
    bounds_report,
    c_upper,
    check_sign_condition,
    concave_hardy_constant,
    concavized_generator,
    custom_generator,
    gini_generator,
    gini_mean,
    hardy_limit_empirical,
    hardy_lower_limit,
    hardy_ratio,
    pas_upper,
    quasideviation_mean,
    residual_integral,
    special_mean_m12,
    trivial_upper,
)
from ginihardy.empirical import generate

# real root of 8c^3 - 12c^2 - 1, from mpmath.polyroots at 40 digits
CUBIC_ROOT = 1.551901701367768266582473666414464046209713

GRID = np.linspace(-4.0, -0.05, 20)
PROPERTY_CASES = 10_000


def test_c1_golden_quadruple(acceptance_log):
    t0 = time.perf_counter()
    params = (-1.0, -2.0)
    lower = hardy_lower_limit(params)
    triv = trivial_upper(params)
    pas = pas_upper(params)
    c = c_upper(params)
    elapsed = time.perf_counter() - t0
    ok = (
        lower == 1.5
        and abs(triv - math.sqrt(3)) <= 1e-12
        and pas == 1.625
        and abs(c - CUBIC_ROOT) <= 1e-9
        and elapsed < 1.0
    )
    acceptance_log(
        "1 golden quadruple (-1,-2)",
        ok,
        f"H={lower!r} trivial={triv!r} pas={pas!r} c={c!r} |c-root|={abs(c - CUBIC_ROOT):.1e} "
        f"in {elapsed:.3f}s",
    )
    assert lower == 1.5
    assert abs(triv - math.sqrt(3)) <= 1e-12
    assert pas == 1.625
    assert abs(c - CUBIC_ROOT) <= 1e-9
    assert elapsed < 1.0


def test_c2_oracle_equivalence(acceptance_log):
    t0 = time.perf_counter()
    worst = 0.0
    for p in GRID:
        for q in GRID:
            c = c_upper((p, q))
            worst = max(worst, abs(residual_integral((p, q), c)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-7 and elapsed < 30.0
    acceptance_log("2 oracle equivalence (20x20)", ok,
                   f"max |residual_integral| = {worst:.2e} in {elapsed:.2f}s")
    assert worst <= 1e-7
    assert elapsed < 30.0


def test_c3_bound_improvement(acceptance_log):
    violations = []
    for p in GRID:
        for q in GRID:
            rep = bounds_report((p, q))
            chain = rep.lower_H <= rep.c_upper <= rep.pas_upper + 1e-9
            if not (chain and rep.c_upper <= rep.trivial_upper + 1e-9):
                violations.append((p, q, rep.lower_H, rep.c_upper, rep.pas_upper, rep.trivial_upper))
    acceptance_log("3 H <= c <= min(pas, trivial) (20x20)", not violations,
                   f"{len(violations)} violating nodes of {GRID.size ** 2}")
    assert not violations, violations[:5]


def test_c4_concave_solver_agreement(acceptance_log):
    worst = 0.0
    for p in GRID[::4]:
        for q in GRID[::4]:
            query = ConcaveHardyQuery.from_generator(concavized_generator((p, q)))
            worst = max(worst, abs(concave_hardy_constant(query) - c_upper((p, q))))
    acceptance_log("4 concave solver vs c (5x5)", worst <= 1e-7, f"max difference {worst:.2e}")
    assert worst <= 1e-7


def test_c5_closed_form_vs_generic(acceptance_log):
    rng = np.random.default_rng(20240501)
    f = concavized_generator((-1, -2))
    worst_rel = 0.0
    worst_gini = 0.0
    gini_cases = 0
    for _ in range(1000):
        n = int(rng.integers(1, 65))
        x = rng.lognormal(0.0, rng.uniform(0.05, 1.5), size=n)
        value, _ = special_mean_m12(x)
        generic = quasideviation_mean(f, x)
        worst_rel = max(worst_rel, abs(value - generic) / generic)
        if x.max() <= 2 * value:
            gini_cases += 1
            worst_gini = max(worst_gini, abs(value - gini_mean((-1, -2), x)))
    ok = worst_rel <= 1e-9 and worst_gini <= 1e-10
    acceptance_log("5 closed form vs generic solver (1000 vectors)", ok,
                   f"max rel diff {worst_rel:.1e}; {gini_cases} cases with max(x) <= 2m, "
                   f"max |m - G| {worst_gini:.1e}")
    assert worst_rel <= 1e-9
    assert worst_gini <= 1e-10
    assert gini_cases > 0


def test_c6_empirical_limit(acceptance_log):
    t0 = time.perf_counter()
    v12 = hardy_limit_empirical((-1, -2), 100_000)
    v00 = hardy_limit_empirical((0, 0), 100_000)
    elapsed = time.perf_counter() - t0
    ok = abs(v12 - 1.5) <= 0.01 and abs(v00 - math.e) <= 0.01 and elapsed < 5.0
    acceptance_log("6 empirical limit n=1e5", ok,
                   f"(-1,-2): {v12:.6f}  (0,0): {v00:.6f}  in {elapsed:.3f}s")
    assert abs(v12 - 1.5) <= 0.01
    assert abs(v00 - math.e) <= 0.01
    assert elapsed < 5.0


@pytest.mark.slow
def test_c7_hardy_ratio_ceiling(acceptance_log):
    rng = np.random.default_rng(77)
    worst_gini = -math.inf
    worst_conc = -math.inf
    for i in range(200):
        p, q = rng.uniform(-4.0, -0.05, size=2)
        c = c_upper((p, q))
        sigma = float(rng.uniform(0.2, 2.0))
        spec = SequenceSpec("random_lognormal", 1000, sigma, seed=1000 + i)
        worst_gini = max(worst_gini, hardy_ratio((p, q), spec).ratio - c)
        x = generate(spec)[:200]
        conc = hardy_ratio(concavized_generator((p, q)), x, method="generic")
        worst_conc = max(worst_conc, conc.ratio - c)
    ok = worst_gini <= 1e-6 and worst_conc <= 1e-6
    acceptance_log("7 Hardy ratio ceiling (200 sequences)", ok,
                   f"max ratio - c: Gini {worst_gini:.3f}, concavized {worst_conc:.3f}")
    assert worst_gini <= 1e-6
    assert worst_conc <= 1e-6


def _random_vectors(rng, count, max_n=12):
    for _ in range(count):
        n = int(rng.integers(1, max_n + 1))
        yield rng.lognormal(0.0, rng.uniform(0.1, 2.0), size=n)


@pytest.mark.slow
def test_c8_property_suites(acceptance_log):
    rng = np.random.default_rng(8)
    failures = {}

    def fail(name, case):
        failures.setdefault(name, case)

    # betweenness and symmetry of Gini means
    for x in _random_vectors(rng, PROPERTY_CASES):
        p, q = rng.uniform(-5.0, 5.0, size=2)
        m = gini_mean((p, q), x)
        if not x.min() <= m <= x.max():
            fail("betweenness", (p, q, x))
        if gini_mean((q, p), x) != m:
            fail("symmetry", (p, q, x))

    # betweenness of quasideviation means
    for x in _random_vectors(rng, PROPERTY_CASES):
        p, q = rng.uniform(-4.0, -0.05, size=2)
        m = quasideviation_mean(concavized_generator((p, q)), x)
        if not x.min() <= m <= x.max():
            fail("betweenness (quasideviation)", (p, q, x))

    # homogeneity
    for x in _random_vectors(rng, PROPERTY_CASES):
        p, q = rng.uniform(-4.0, -0.05, size=2)
        t = float(np.exp(rng.uniform(-5, 5)))
        a, b = gini_mean((p, q), t * x), t * gini_mean((p, q), x)
        if abs(a - b) > 1e-12 * abs(b):
            fail("homogeneity (Gini)", (p, q, t, x))
        f = concavized_generator((p, q))
        a, b = quasideviation_mean(f, t * x), t * quasideviation_mean(f, x)
        if abs(a - b) > 1e-12 * abs(b):
            fail("homogeneity (quasideviation)", (p, q, t, x))

    # monotonicity in the parameters
    for x in _random_vectors(rng, PROPERTY_CASES):
        p, q = rng.uniform(-5.0, 5.0, size=2)
        dp, dq = rng.uniform(0.0, 2.0, size=2)
        if gini_mean((p, q), x) > gini_mean((p + dp, q + dq), x) + 1e-10:
            fail("parameter monotonicity", (p, q, dp, dq, x))

    # comparison of means generated by f <= g
    for x in _random_vectors(rng, PROPERTY_CASES):
        p, q = rng.uniform(-4.0, -0.05, size=2)
        a = float(rng.uniform(0.0, 2.0))
        low = gini_generator((p, q))
        mid = concavized_generator((p, q))
        high = custom_generator(lambda t, mid=mid, a=a: mid.fn(t) + a * np.maximum(t - 1.0, 0.0))
        m_low, m_mid, m_high = (quasideviation_mean(g, x) for g in (low, mid, high))
        if m_low > m_mid + 1e-10 or m_mid > m_high + 1e-10:
            fail("comparison", (p, q, a, x))
        if gini_mean((p, q), x) > m_mid + 1e-10:
            fail("majorization", (p, q, x))

    # concavity of the concavized generator
    for _ in range(PROPERTY_CASES):
        p, q = rng.uniform(-4.0, -0.05, size=2)
        f = concavized_generator((p, q))
        t1, t2 = np.exp(rng.uniform(np.log(0.2), np.log(50.0), size=2))
        lam = float(rng.uniform())
        lhs = f(lam * t1 + (1 - lam) * t2)
        rhs = lam * f(t1) + (1 - lam) * f(t2)
        if lhs < rhs - 1e-12:
            fail("concavity", (p, q, t1, t2, lam, lhs - rhs))

    # sign condition
    grid = np.concatenate([np.logspace(-2, -0.05, 20), [1.0], np.logspace(0.05, 2, 20)])
    for _ in range(PROPERTY_CASES):
        p, q = rng.uniform(-4.0, 0.95, size=2)
        if not check_sign_condition(gini_generator((p, q)), grid):
            fail("sign condition (Gini)", (p, q))
        if max(p, q) < 0 and not check_sign_condition(concavized_generator((p, q)), grid):
            fail("sign condition (concavized)", (p, q))

    acceptance_log("8 property suites (10^4 cases each)", not failures,
                   "all properties hold" if not failures else f"failed: {sorted(failures)}")
    assert not failures, failures
