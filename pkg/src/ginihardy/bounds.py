"""Estimates of the Hardy constant of Gini means.

For a Hardy pair ``(p, q)`` the limit ``H = lim n * G(1, 1/2, ..., 1/n)`` is
always a lower bound, and it is the exact constant when the Gini mean is
concave. In the negative quadrant three upper bounds are available: the
comparison bound, the older power-type bound (:func:`pas_upper`) and the
concavization bound :func:`c_upper`, whose defining equation is checked
independently by quadrature in :func:`residual_integral`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, HardyError, NotIntegrable
from .means import Generator, GiniParams, _as_params, _pow1p, g_pq, tau_pq
from .numerics import DEFAULT_TOL, Tolerance, find_bracket, integrate, solve_root

QUAD_TOL = 1e-11


def _require_negative(params: GiniParams, what: str) -> None:
    if not params.is_negative_quadrant:
        raise DomainError(f"{what} needs max(p, q) < 0, got {(params.p, params.q)}")


def hardy_lower_limit(params) -> float:
    """``lim n * G_{p,q}(1, 1/2, ..., 1/n)``; a lower bound for every Hardy pair."""
    params = _as_params(params)
    if not params.is_hardy:
        raise DomainError(f"{(params.p, params.q)} is not a Hardy pair")
    p, q = params.ordered
    if p == q:
        return math.exp(1.0 / (1.0 - p))
    # (1 - q) / (1 - p) == 1 + (p - q) / (1 - p)
    return _pow1p((p - q) / (1.0 - p), 1.0 / (p - q))


def trivial_upper(params) -> float:
    """Hardy constant of ``G_{m,0}``, ``m = min(p, q)``, which dominates ``G_{p,q}``."""
    params = _as_params(params)
    _require_negative(params, "trivial_upper")
    m = min(params.p, params.q)
    return (1.0 - m) ** (-1.0 / m)


def pas_upper(params) -> float:
    params = _as_params(params)
    _require_negative(params, "pas_upper")
    p, q = params.ordered
    if p == q:
        return (math.e - p) / (1.0 - p)
    return (_pow1p((p - q) / (1.0 - p), (1.0 - p) / (p - q)) - p) / (1.0 - p)


def _scaled_residual(p: float, q: float, c: float) -> float:
    """Off-diagonal closed-form residual divided by ``p - q`` (``p > q``).

    With ``a = 1 - q``, ``b = 1 - p`` and ``d = p - q`` the residual is
    ``c**a/a - c**b/b - K`` where
    ``K = |q|**(b/(q-p)) * |p|**(a/(p-q)) * d/(a*b)``. Both parts are
    rewritten with ``expm1``/``log1p`` so nothing cancels or overflows as
    ``d -> 0``; the limit is ``-1/b**2`` times the diagonal residual.
    """
    a, b, d = 1.0 - q, 1.0 - p, p - q
    lc = math.log(c)
    lhs = c**b * (math.expm1(d * lc) / (d * a) - 1.0 / (a * b))
    # log K/d = log|p| - b * log(|q|/|p|) / d, and |q|/|p| == 1 + d/|p|
    k_over_d = math.exp(math.log(-p) - b * math.log1p(d / -p) / d) / (a * b)
    return lhs - k_over_d


def residual_algebraic(params, c: float) -> float:
    """Left minus right side of the closed-form equation for the bound ``c``.

    Off the diagonal: ``c**(1-q)/(1-q) - c**(1-p)/(1-p) - K`` with ``p > q``.
    On it: ``c**(1-p) * (1 - log(c**(1-p))) - p*exp((1-p)/p)``.
    """
    params = _as_params(params)
    _require_negative(params, "residual_algebraic")
    p, q = params.ordered
    if p == q:
        a = 1.0 - p
        return c**a * (1.0 - a * math.log(c)) - p * math.exp((1.0 - p) / p)
    return (p - q) * _scaled_residual(p, q, c)


def _solve_residual(params: GiniParams):
    p, q = params.ordered
    if p == q:
        return lambda c: residual_algebraic(params, c)
    return lambda c: _scaled_residual(p, q, c)


def c_upper(params, tol: Tolerance = DEFAULT_TOL) -> float:
    """The concavization bound: the root in ``(1, inf)`` of the closed-form equation."""
    params = _as_params(params)
    _require_negative(params, "c_upper")
    phi = _solve_residual(params)
    bracket = find_bracket(phi, 1.0 + 1e-9, pas_upper(params) + 1.0, expand_limit=1e6,
                           lo_limit=1.0)
    return solve_root(phi, bracket, tol)


def residual_integral(params, c: float, quad_tol: float = QUAD_TOL) -> float:
    """``g(tau)/tau + integral_{1/tau}^{c} g(1/t) dt``, evaluated by quadrature."""
    params = _as_params(params)
    tau = tau_pq(params)
    start = 1.0 / tau
    if c < start:
        raise DomainError(f"c={c} lies below 1/tau={start}")
    head = g_pq(params, tau) / tau
    return head + integrate(lambda t: g_pq(params, 1.0 / t), start, c, quad_tol)


@dataclass(frozen=True)
class ConcaveHardyQuery:
    """A concave generator together with its probed value of ``int_0^1 f(1/t) dt``.

    ``integrability_probe`` is ``inf`` when the probe judged the integral
    divergent.
    """

    generator: Generator
    integrability_probe: float

    def __post_init__(self):
        if not self.generator.concave:
            raise DomainError(f"generator {self.generator.name} is not declared concave")

    @classmethod
    def from_generator(cls, generator: Generator, quad_tol: float = QUAD_TOL) -> "ConcaveHardyQuery":
        return cls(generator, integral_to_one(generator, quad_tol))


def integral_to_one(f: Generator, quad_tol: float = QUAD_TOL) -> float:
    """``int_0^1 f(1/t) dt``, or ``inf`` if it appears to diverge.

    Concavized generators are constant on ``[0, 1/tau]`` and use the closed
    form there. Other generators are integrated decade by decade toward 0;
    the contributions must decay geometrically, and the remaining tail is
    extrapolated from the last ratio.
    """
    h = lambda t: f(1.0 / t)
    if f.kind == "concavized":
        params = f.params
        tau = f.tau
        return g_pq(params, tau) / tau + integrate(h, 1.0 / tau, 1.0, quad_tol)

    total = 0.0
    prev = None
    stalls = 0
    hi = 1.0
    ratio = 1.0
    for _ in range(16):
        lo = hi / 10.0
        try:
            piece = integrate(h, lo, hi, quad_tol)
        except HardyError:
            return math.inf
        total += piece
        if prev is not None and prev != 0:
            ratio = abs(piece / prev)
            stalls = stalls + 1 if ratio >= 0.5 else 0
            if stalls >= 3:
                return math.inf
        if abs(piece) <= quad_tol:
            return total
        prev = piece
        hi = lo
    if ratio >= 0.5:
        return math.inf
    return total + prev * ratio / (1.0 - ratio)


def concave_hardy_constant(query: ConcaveHardyQuery, tol: Tolerance = DEFAULT_TOL,
                           quad_tol: float = QUAD_TOL) -> float:
    """Hardy constant of the mean generated by a concave generator.

    It is the root ``c > 1`` of ``int_0^c f(1/t) dt == 0``; the part up to 1
    comes from the query, the rest from quadrature over ``[1, c]``.

    Raises:
        NotIntegrable: the query's probe is infinite.
    """
    base = query.integrability_probe
    if not math.isfinite(base):
        raise NotIntegrable(f"int_0^1 f(1/t) dt diverges for {query.generator.name}")
    f = query.generator
    h = lambda t: f(1.0 / t)

    def total(c):
        return base + integrate(h, 1.0, c, quad_tol)

    bracket = find_bracket(total, 1.0, 2.0, expand_limit=1e6)
    return solve_root(total, bracket, tol)


_REPORT_VALUES = (
    "lower_H",
    "exact_constant",
    "trivial_upper",
    "pas_upper",
    "c_upper",
    "residual_integral",
    "residual_algebraic",
)


@dataclass
class BoundsReport:
    """All applicable Hardy-constant estimates for one parameter pair.

    Absent values are ``None`` with an explanation in ``reasons``.
    """

    params: GiniParams
    is_hardy: bool
    lower_H: Optional[float] = None
    exact_constant: Optional[float] = None
    trivial_upper: Optional[float] = None
    pas_upper: Optional[float] = None
    c_upper: Optional[float] = None
    residual_integral: Optional[float] = None
    residual_algebraic: Optional[float] = None
    reasons: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        """Flat record: ``p``, ``q``, ``is_hardy``, the values, and ``<name>_reason`` for absent ones."""
        rec = {"p": self.params.p, "q": self.params.q, "is_hardy": self.is_hardy}
        for name in _REPORT_VALUES:
            rec[name] = getattr(self, name)
        for name in _REPORT_VALUES:
            if name in self.reasons:
                rec[f"{name}_reason"] = self.reasons[name]
        return rec

    @classmethod
    def from_record(cls, rec: dict) -> "BoundsReport":
        reasons = {
            name: rec[f"{name}_reason"] for name in _REPORT_VALUES if f"{name}_reason" in rec
        }
        return cls(
            params=GiniParams(rec["p"], rec["q"]),
            is_hardy=bool(rec["is_hardy"]),
            reasons=reasons,
            **{name: rec.get(name) for name in _REPORT_VALUES},
        )


def bounds_report(params, tol: Tolerance = DEFAULT_TOL, quad_tol: float = QUAD_TOL) -> BoundsReport:
    params = _as_params(params)
    rep = BoundsReport(params=params, is_hardy=params.is_hardy)
    if not params.is_hardy:
        for name in _REPORT_VALUES:
            rep.reasons[name] = "not a Hardy mean: needs min(p,q) <= 0 and max(p,q) < 1"
        return rep

    rep.lower_H = hardy_lower_limit(params)
    if params.is_concave_region:
        rep.exact_constant = rep.lower_H
        why = "concave Gini mean: the exact constant is known"
        for name in ("trivial_upper", "pas_upper", "c_upper", "residual_integral",
                     "residual_algebraic"):
            rep.reasons[name] = why
        return rep

    rep.reasons["exact_constant"] = "negative quadrant: exact constant unknown"
    rep.trivial_upper = trivial_upper(params)
    rep.pas_upper = pas_upper(params)
    try:
        c = c_upper(params, tol)
    except HardyError as exc:
        for name in ("c_upper", "residual_integral", "residual_algebraic"):
            rep.reasons[name] = f"solver failed: {exc}"
        return rep
    rep.c_upper = c
    rep.residual_algebraic = residual_algebraic(params, c)
    try:
        rep.residual_integral = residual_integral(params, c, quad_tol)
    except HardyError as exc:
        rep.reasons["residual_integral"] = f"quadrature failed: {exc}"
    return rep
