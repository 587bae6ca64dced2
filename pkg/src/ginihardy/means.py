"""Gini means and homogeneous quasideviation means.

A quasideviation mean is generated by a function ``f`` on ``(0, inf)`` with
``sign(f(t)) == sign(t - 1)``; its value at ``x`` is the unique ``y`` solving
``sum(f(x_i / y)) == 0``. The Gini mean of parameters ``(p, q)`` is the one
generated by :func:`g_pq`, and the concavized generator freezes ``g_pq`` at
its maximum, giving a concave generator that dominates it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, Inconsistent, NonFinite, SignConditionViolated
from .numerics import Bracket, Tolerance, solve_root

# The mean solver works on log(y / max(x)), so abs_x is a relative tolerance.
MEAN_TOL = Tolerance(abs_x=1e-14, abs_f=1e-14, max_iter=200)


@dataclass(frozen=True)
class GiniParams:
    p: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise DomainError(f"Gini parameters must be finite, got ({self.p}, {self.q})")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def ordered(self) -> tuple[float, float]:
        """``(max(p, q), min(p, q))``; every formula is evaluated in this order."""
        return (self.p, self.q) if self.p >= self.q else (self.q, self.p)

    @property
    def is_diagonal(self) -> bool:
        return self.p == self.q

    @property
    def is_negative_quadrant(self) -> bool:
        return max(self.p, self.q) < 0

    @property
    def is_concave_region(self) -> bool:
        return min(self.p, self.q) <= 0 <= max(self.p, self.q) < 1

    @property
    def is_hardy(self) -> bool:
        return min(self.p, self.q) <= 0 and max(self.p, self.q) < 1

    def swapped(self) -> "GiniParams":
        return GiniParams(self.q, self.p)


def _as_params(params) -> GiniParams:
    if isinstance(params, GiniParams):
        return params
    p, q = params
    return GiniParams(p, q)


def as_positive_vector(x) -> np.ndarray:
    """Validate ``x`` as a non-empty vector of positive finite reals."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty one-dimensional vector")
    if not np.all(np.isfinite(arr)) or not np.all(arr > 0):
        raise ValueError("all entries must be positive and finite")
    return arr


def g_pq(params, t):
    """The Gini generator: ``(t**p - t**q) / (p - q)``, or ``t**p * log(t)`` when p == q.

    Accepts a scalar or an array of positive ``t``.

    Raises:
        NonFinite: the value overflows.
    """
    params = _as_params(params)
    p, q = params.ordered
    t_arr = np.asarray(t, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        if p == q:
            val = t_arr**p * np.log(t_arr)
        else:
            d = p - q
            lt = np.log(t_arr)
            # t**q * expm1(d*log t) / d avoids cancellation when d*log t is small
            near = np.abs(d * lt) < 0.5
            val = np.where(near, t_arr**q * np.expm1(d * lt) / d, (t_arr**p - t_arr**q) / d)
    if not np.all(np.isfinite(val)):
        raise NonFinite(f"g_pq{(params.p, params.q)} not finite at t={t}")
    return float(val) if val.ndim == 0 else val


def _pow1p(x: float, y: float) -> float:
    """``(1 + x)**y``, through ``log1p`` when ``x`` is small and ``y`` possibly huge."""
    if abs(x) < 1e-3:
        return math.exp(y * math.log1p(x))
    return (1.0 + x) ** y


def tau_pq(params) -> float:
    """Location of the global maximum of ``g_pq`` for negative parameters."""
    params = _as_params(params)
    if not params.is_negative_quadrant:
        raise DomainError(f"tau_pq needs max(p, q) < 0, got {(params.p, params.q)}")
    p, q = params.ordered
    if p == q:
        return math.exp(-1.0 / p)
    # p / q == 1 + (p - q) / q
    return _pow1p((p - q) / q, 1.0 / (q - p))


@dataclass(frozen=True)
class Generator:
    """A quasideviation generator ``t -> f(t)`` on ``(0, inf)``.

    ``fn`` must be free of side effects. If ``vectorized`` is true it is
    called with numpy arrays, otherwise element by element. ``concave``
    and ``tau`` are declared facts used by the Hardy-constant solvers; they
    are not checked.
    """

    fn: Callable
    kind: str = "custom"
    params: Optional[GiniParams] = None
    tau: Optional[float] = None
    concave: bool = False
    vectorized: bool = True
    name: str = field(default="custom", compare=False)

    def __call__(self, t):
        if np.ndim(t) == 0:
            return float(self.fn(float(t)))
        return self.many(t)

    def many(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.vectorized:
            return np.asarray(self.fn(t), dtype=float)
        return np.array([float(self.fn(float(v))) for v in t.ravel()]).reshape(t.shape)


def custom_generator(fn: Callable, concave: bool = False, vectorized: bool = True,
                     name: str = "custom") -> Generator:
    return Generator(fn=fn, kind="custom", concave=concave, vectorized=vectorized, name=name)


def gini_generator(params) -> Generator:
    params = _as_params(params)
    return Generator(
        fn=lambda t: g_pq(params, t),
        kind="gini",
        params=params,
        concave=False,
        name=f"g[{params.p:g},{params.q:g}]",
    )


def concavized_generator(params) -> Generator:
    """``g_pq`` up to its argmax ``tau`` and constant ``g_pq(tau)`` beyond it."""
    params = _as_params(params)
    tau = tau_pq(params)

    def fn(t):
        return g_pq(params, np.minimum(t, tau))

    return Generator(
        fn=fn,
        kind="concavized",
        params=params,
        tau=tau,
        concave=True,
        name=f"f[{params.p:g},{params.q:g}]",
    )


def gini_mean(params, x) -> float:
    """Evaluate the Gini mean of ``x`` from power sums.

    Logs are centred first and the power sums are never formed directly:
    with ``w`` the normalised weights ``x**q``, the mean is
    ``exp(log1p(sum(w * expm1((p - q) * log x))) / (p - q))``, which stays
    accurate as ``p`` approaches ``q``. Away from the diagonal the two
    power sums are compared through log-sum-exp instead. The result is
    clipped to ``[min(x), max(x)]`` to absorb the last rounding.
    """
    params = _as_params(params)
    x = as_positive_vector(x)
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return lo
    p, q = params.ordered
    log_x = np.log(x)
    centre = float(np.mean(log_x))
    lc = log_x - centre
    w = q * lc
    w = np.exp(w - w.max())
    w /= w.sum()
    d = p - q
    if d == 0:
        value = centre + float(np.dot(w, lc))
    elif d * float(np.max(np.abs(lc))) < 1.0:
        value = centre + math.log1p(float(np.dot(w, np.expm1(d * lc)))) / d
    else:
        lp = float(np.logaddexp.reduce(p * lc))
        lq = float(np.logaddexp.reduce(q * lc))
        value = centre + (lp - lq) / d
    return min(max(math.exp(value), lo), hi)


def quasideviation_mean(f: Generator, x, tol: Tolerance = MEAN_TOL) -> float:
    """Solve ``sum(f(x_i / y)) == 0`` for ``y`` in ``[min(x), max(x)]``.

    The search variable is ``u = log(y / max(x))`` so the tolerance acts
    relatively and the result is homogeneous up to rounding.

    Raises:
        SignConditionViolated: the sum has the wrong sign at an endpoint.
    """
    x = as_positive_vector(x)
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return lo
    s = x / hi

    def e(u):
        return float(np.sum(f.many(s / math.exp(u))))

    u_lo = math.log(lo / hi) + math.log1p(-1e-15)
    u_hi = math.log1p(1e-15)
    e_lo, e_hi = e(u_lo), e(u_hi)
    if e_lo < -tol.abs_f or e_hi > tol.abs_f:
        raise SignConditionViolated(
            f"e(min)={e_lo}, e(max)={e_hi}; generator {f.name} lacks the sign condition"
        )
    if e_lo <= 0:
        return lo
    if e_hi >= 0:
        return hi
    u = solve_root(e, Bracket(u_lo, u_hi, e_lo, e_hi), tol)
    return min(max(hi * math.exp(u), lo), hi)


def special_mean_m12(x) -> tuple[float, int]:
    """Closed form of the mean generated by the concavization of ``g[-1,-2]``.

    For sorted ``x`` and the largest ``k`` with ``x_k <= 2m``, the mean ``m``
    solves ``-s2*m**2 + s1*m + (n - k)/4 == 0`` with ``s1``, ``s2`` the sums of
    ``1/x_i`` and ``1/x_i**2`` over the first ``k`` entries. Candidates are
    scanned from ``k = n`` down.

    Returns:
        ``(m, k)`` with ``k`` one-based.
    """
    x = np.sort(as_positive_vector(x))
    n = x.size
    scale = float(x[0])
    s = x / scale
    s1 = np.cumsum(1.0 / s)
    s2 = np.cumsum(1.0 / s**2)
    slack = 1e-12
    for k in range(n, 0, -1):
        a1, a2 = s1[k - 1], s2[k - 1]
        m = (a1 + math.sqrt(a1 * a1 + a2 * (n - k))) / (2.0 * a2)
        if s[k - 1] > 2.0 * m * (1 + slack):
            continue
        if k == n or s[k] > 2.0 * m * (1 - slack):
            value = float(m) * scale
            return min(max(value, float(x[0])), float(x[-1])), k
    raise Inconsistent(f"no self-consistent index for x={x.tolist()}")


def check_sign_condition(f: Generator, grid: Sequence[float], abs_f: float = 1e-12) -> bool:
    """True iff ``sign(f(t)) == sign(t - 1)`` at every grid point.

    At ``t == 1`` the value only has to be within ``abs_f`` of zero.
    """
    t = np.asarray(grid, dtype=float)
    if t.size == 0:
        raise ValueError("grid must be non-empty")
    try:
        vals = f.many(t)
    except NonFinite:
        return False
    at_one = t == 1.0
    if np.any(np.abs(vals[at_one]) > abs_f):
        return False
    rest = ~at_one
    return bool(np.all(np.sign(vals[rest]) == np.sign(t[rest] - 1.0)))
