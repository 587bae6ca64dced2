import math

import pytest
from hypothesis import given, settings, strategies as st

from ginihardy.errors import MaxIterations, NoConvergence, NonFinite, NoSignChange
from ginihardy.numerics import Bracket, Tolerance, find_bracket, integrate, solve_root

CUBIC_ROOT = 1.551901701367768266582473666414464046209713


def cubic(c):
    return 8 * c**3 - 12 * c**2 - 1


class TestFindBracket:
    def test_linear(self):
        b = find_bracket(lambda c: c - 2, 1.0, 1.5, expand_limit=100)
        assert b.lo <= 2 <= b.hi
        # width doubling lands exactly on the root; an exact zero endpoint is allowed
        assert b.f_lo < 0 and b.f_hi >= 0
        assert solve_root(lambda c: c - 2, b) == 2.0

    def test_cubic_inside_seeds(self):
        b = find_bracket(cubic, 1.0, 2.0, expand_limit=10)
        assert b.lo >= 1 and b.hi <= 2
        assert b.lo <= CUBIC_ROOT <= b.hi

    def test_no_real_root(self):
        with pytest.raises(NoSignChange):
            find_bracket(lambda c: c * c + 1, 1.0, 2.0, expand_limit=1e6)

    def test_expands_lower_end_toward_limit(self):
        b = find_bracket(lambda c: c - 0.3, 1.0, 2.0, expand_limit=4.0, lo_limit=0.0)
        assert 0.0 < b.lo <= 0.3 <= b.hi

    def test_non_finite_probe(self):
        with pytest.raises(NonFinite):
            find_bracket(lambda c: math.inf, 1.0, 2.0, expand_limit=4.0)

    def test_rejects_bad_seeds(self):
        with pytest.raises(ValueError):
            find_bracket(lambda c: c, 2.0, 1.0, expand_limit=4.0)


class TestBracket:
    def test_requires_order(self):
        with pytest.raises(ValueError):
            Bracket(1.0, 1.0, -1.0, 1.0)

    def test_requires_sign_change(self):
        with pytest.raises(NoSignChange):
            Bracket(0.0, 1.0, 1.0, 2.0)


class TestSolveRoot:
    def test_cubic(self):
        root = solve_root(cubic, Bracket.from_function(cubic, 1.0, 2.0))
        assert root == pytest.approx(CUBIC_ROOT, abs=1e-9)

    def test_identity(self):
        f = lambda x: x - 1
        assert solve_root(f, Bracket.from_function(f, 0.0, 2.0)) == pytest.approx(1.0, abs=1e-12)

    def test_integral_form_matches_polynomial(self):
        # g(2)/2 + int_{1/2}^c (t - t^2) dt is the cubic divided by -24
        def resid(c):
            return 0.125 + integrate(lambda t: t - t * t, 0.5, c, 1e-13)

        root = solve_root(resid, Bracket.from_function(resid, 1.0, 2.0))
        assert root == pytest.approx(CUBIC_ROOT, abs=1e-9)

    def test_endpoint_root(self):
        f = lambda x: x - 1
        assert solve_root(f, Bracket.from_function(f, 1.0, 3.0)) == 1.0

    def test_max_iterations(self):
        tol = Tolerance(abs_x=1e-300, abs_f=1e-300, max_iter=3)
        with pytest.raises(MaxIterations):
            solve_root(cubic, Bracket.from_function(cubic, 1.0, 2.0), tol, accelerate=False)

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            Tolerance(abs_x=0.0)
        with pytest.raises(ValueError):
            Tolerance(max_iter=0)

    @settings(max_examples=300, deadline=None)
    @given(
        root=st.floats(-50, 50),
        left=st.floats(1e-3, 20),
        right=st.floats(1e-3, 20),
        power=st.sampled_from([1, 3, 5]),
        scale=st.floats(0.1, 10),
    )
    def test_monotone_root_inside_bracket_and_acceleration_agnostic(self, root, left, right,
                                                                  power, scale):
        f = lambda x: scale * (x - root) ** power + (x - root)
        b = Bracket.from_function(f, root - left, root + right)
        tol = Tolerance(abs_x=1e-10, abs_f=1e-13)
        fast = solve_root(f, b, tol)
        slow = solve_root(f, b, tol, accelerate=False)
        assert b.lo <= fast <= b.hi
        assert b.lo <= slow <= b.hi
        assert fast == pytest.approx(slow, abs=2e-10)


class TestIntegrate:
    def test_linear(self):
        assert integrate(lambda t: t, 0.0, 1.0, 1e-12) == pytest.approx(0.5, abs=1e-10)

    def test_empty_interval(self):
        assert integrate(lambda t: 1 / t, 0.0, 0.0) == 0.0

    def test_second_term_of_defining_equation(self):
        # antiderivative t^2/2 - t^3/3 evaluated exactly; the sum with g(2)/2 vanishes
        exact = (CUBIC_ROOT**2 / 2 - CUBIC_ROOT**3 / 3) - (0.5**2 / 2 - 0.5**3 / 3)
        value = integrate(lambda t: t - t * t, 0.5, CUBIC_ROOT, 1e-12)
        assert value == pytest.approx(exact, abs=1e-12)
        assert value == pytest.approx(-0.125, abs=1e-8)

    def test_singular_endpoint_is_non_finite(self):
        with pytest.raises(NonFinite):
            integrate(lambda t: 1.0 / t, 0.0, 1.0)
        with pytest.raises(NonFinite):
            integrate(lambda t: t**-0.5 if t else math.inf, 0.0, 1.0)

    def test_depth_budget(self):
        with pytest.raises(NoConvergence):
            integrate(lambda t: math.sin(1e6 * t) * t, 0.0, 1.0, 1e-14, max_depth=4)

    def test_reversed_limits_rejected(self):
        with pytest.raises(ValueError):
            integrate(lambda t: t, 1.0, 0.0)

    @pytest.mark.parametrize("f,a,b,exact", [
        (math.exp, 0.0, 1.0, math.e - 1),
        (math.cos, 0.0, math.pi / 2, 1.0),
        (lambda t: t**-2.5, 0.3, 4.0, (0.3**-1.5 - 4.0**-1.5) / 1.5),
    ])
    def test_closed_forms(self, f, a, b, exact):
        assert integrate(f, a, b, 1e-11) == pytest.approx(exact, abs=1e-10)

    @settings(max_examples=200, deadline=None)
    @given(a=st.floats(-3, 3), w1=st.floats(0, 3), w2=st.floats(0, 3), k=st.floats(0.1, 3))
    def test_additive(self, a, w1, w2, k):
        tol = 1e-10
        f = lambda t: math.sin(k * t) + t * t
        b, c = a + w1, a + w1 + w2
        whole = integrate(f, a, c, tol)
        assert abs(whole - integrate(f, a, b, tol) - integrate(f, b, c, tol)) <= 3 * tol

    @settings(max_examples=200, deadline=None)
    @given(h=st.floats(0, 5), k=st.floats(0.1, 4))
    def test_odd_function(self, h, k):
        tol = 1e-10
        assert abs(integrate(lambda t: t**3 * math.cos(k * t), -h, h, tol)) <= tol
