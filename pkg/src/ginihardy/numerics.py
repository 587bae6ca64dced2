"""Scalar root finding and adaptive quadrature.

Nothing here knows about means; every other module builds on these three
primitives: :func:`find_bracket`, :func:`solve_root` and :func:`integrate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import MaxIterations, NoConvergence, NonFinite, NoSignChange

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True)
class Tolerance:
    abs_x: float = 1e-12
    abs_f: float = 1e-12
    max_iter: int = 200

    def __post_init__(self):
        if not (self.abs_x > 0 and self.abs_f > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class Bracket:
    """An interval ``[lo, hi]`` on which ``f`` changes sign.

    An endpoint value may be exactly zero (the root sits on the boundary);
    otherwise ``f_lo`` and ``f_hi`` have strictly opposite signs.
    """

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.f_lo * self.f_hi > 0 or (self.f_lo == 0 and self.f_hi == 0):
            raise NoSignChange(
                f"no sign change on [{self.lo}, {self.hi}]: "
                f"f(lo)={self.f_lo}, f(hi)={self.f_hi}"
            )

    @classmethod
    def from_function(cls, f: ScalarFunction, lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, _checked(f, lo), _checked(f, hi))


def _checked(f: ScalarFunction, x: float) -> float:
    try:
        y = float(f(x))
    except (ZeroDivisionError, OverflowError) as exc:
        raise NonFinite(f"{exc} at x={x}") from None
    if not math.isfinite(y):
        raise NonFinite(f"function value {y} at x={x}")
    return y


def _sign_change(a: float, b: float) -> bool:
    return a * b < 0 or (a == 0) != (b == 0)


def find_bracket(
    f: ScalarFunction,
    seed_lo: float,
    seed_hi: float,
    expand_limit: float,
    lo_limit: float = -math.inf,
    max_probes: int = 200,
) -> Bracket:
    """Locate a sign change of ``f`` starting from ``[seed_lo, seed_hi]``.

    The upper end is pushed out first, doubling the interval width each
    probe until it would pass ``expand_limit``. Failing that, the lower end
    moves toward ``lo_limit`` (halving its distance when the limit is
    finite, doubling the width otherwise).

    Raises:
        NoSignChange: no bracket within ``expand_limit`` and ``max_probes``.
    """
    if not seed_lo < seed_hi:
        raise ValueError("seed_lo must be smaller than seed_hi")
    if not expand_limit > seed_hi:
        raise ValueError("expand_limit must exceed seed_hi")

    lo, hi = seed_lo, seed_hi
    f_lo, f_hi = _checked(f, lo), _checked(f, hi)
    probes = 2
    if _sign_change(f_lo, f_hi):
        return Bracket(lo, hi, f_lo, f_hi)

    while probes < max_probes:
        new_hi = hi + (hi - lo)
        if new_hi > expand_limit:
            if hi >= expand_limit:
                break
            new_hi = expand_limit
        f_new = _checked(f, new_hi)
        probes += 1
        if _sign_change(f_hi, f_new):
            return Bracket(hi, new_hi, f_hi, f_new)
        hi, f_hi = new_hi, f_new

    # the upper side is exhausted; walk the lower end down
    lo, hi = seed_lo, seed_hi
    f_lo = _checked(f, lo)
    while probes < max_probes:
        if math.isfinite(lo_limit):
            new_lo = lo_limit + 0.5 * (lo - lo_limit)
        else:
            new_lo = lo - (hi - lo)
        if new_lo >= lo:
            break
        f_new = _checked(f, new_lo)
        probes += 1
        if _sign_change(f_new, f_lo):
            return Bracket(new_lo, lo, f_new, f_lo)
        lo, f_lo = new_lo, f_new

    raise NoSignChange(
        f"no sign change found from [{seed_lo}, {seed_hi}] up to {expand_limit} "
        f"in {probes} probes"
    )


def solve_root(
    f: ScalarFunction,
    bracket: Bracket,
    tol: Tolerance = DEFAULT_TOL,
    accelerate: bool = True,
) -> float:
    """Return a root of ``f`` inside ``bracket``.

    Bisection, with Illinois-weighted regula falsi steps when ``accelerate``
    is set. An interpolated point is used only if it lies strictly inside the
    current bracket, and a bisection step is forced whenever an interpolated
    step fails to halve the bracket. Stops when ``|f(x)| <= tol.abs_f`` or the
    bracket is narrower than ``tol.abs_x`` (or cannot be split further in
    floating point).

    Raises:
        MaxIterations: neither tolerance met within ``tol.max_iter`` steps.
    """
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if abs(f_lo) <= tol.abs_f and abs(f_lo) <= abs(f_hi):
        return lo
    if abs(f_hi) <= tol.abs_f:
        return hi

    # Illinois weights: halve the stale endpoint's value after repeated retention
    w_lo, w_hi = f_lo, f_hi
    side = 0
    force_bisect = False
    for _ in range(tol.max_iter):
        width = hi - lo
        mid = lo + 0.5 * width
        if width <= tol.abs_x or mid <= lo or mid >= hi:
            return lo if abs(f_lo) <= abs(f_hi) else hi

        x = mid
        interpolated = False
        if accelerate and not force_bisect:
            cand = lo - w_lo * (hi - lo) / (w_hi - w_lo)
            if lo < cand < hi:
                x = cand
                interpolated = True

        fx = _checked(f, x)
        if fx == 0 or abs(fx) <= tol.abs_f:
            return x

        if (fx < 0) == (f_lo < 0):
            lo, f_lo, w_lo = x, fx, fx
            if side == -1:
                w_hi *= 0.5
            side = -1
        else:
            hi, f_hi, w_hi = x, fx, fx
            if side == 1:
                w_lo *= 0.5
            side = 1

        force_bisect = interpolated and (hi - lo) > 0.5 * width
        if not interpolated:
            w_lo, w_hi, side = f_lo, f_hi, 0

    raise MaxIterations(
        f"root not located within {tol.max_iter} iterations; last bracket [{lo}, {hi}]"
    )


def integrate(
    f: ScalarFunction,
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 60,
) -> float:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    Panels are halved until the Richardson error estimate of each panel is
    within its share of ``tol``; the extrapolated value is returned.

    Raises:
        NonFinite: ``f`` is not finite at some node.
        NoConvergence: a panel still fails after ``max_depth`` halvings.
    """
    if b < a:
        raise ValueError(f"integrate requires a <= b, got [{a}, {b}]")
    if a == b:
        return 0.0

    m = 0.5 * (a + b)
    fa, fm, fb = _checked(f, a), _checked(f, m), _checked(f, b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    total = 0.0
    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, eps, depth = stack.pop()
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = _checked(f, lm), _checked(f, rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
            continue
        if depth >= max_depth:
            raise NoConvergence(
                f"quadrature did not converge near [{a}, {b}] after {max_depth} halvings"
            )
        stack.append((m, b, fm, frm, fb, right, 0.5 * eps, depth + 1))
        stack.append((a, m, fa, flm, fm, left, 0.5 * eps, depth + 1))
    return total
