"""Finite-n experiments with the Hardy inequality.

The Hardy constant is a supremum over infinite sequences, so everything here
is a lower witness: ``hardy_ratio`` of a truncated sequence never exceeds the
true constant, and the reported ``n`` always travels with the number.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, HardyError, InvalidSpec
from .means import (
    MEAN_TOL,
    Generator,
    GiniParams,
    _as_params,
    as_positive_vector,
    g_pq,
    gini_mean,
    quasideviation_mean,
)
from .numerics import Bracket, solve_root

SEQUENCE_KINDS = ("harmonic", "geometric", "constant", "random_lognormal", "explicit")


@dataclass(frozen=True)
class SequenceSpec:
    """Recipe for a positive sequence of length ``n``.

    ``param`` is the ratio for ``geometric``, the value for ``constant`` and
    sigma for ``random_lognormal``. ``explicit`` sequences are truncated to
    ``n`` (which defaults to their length).
    """

    kind: str
    n: int
    param: Optional[float] = None
    seed: int = 0
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in SEQUENCE_KINDS:
            raise InvalidSpec(f"unknown sequence kind {self.kind!r}")
        if int(self.n) != self.n or self.n < 1:
            raise InvalidSpec(f"length must be a positive integer, got {self.n}")
        if self.kind in ("geometric", "constant", "random_lognormal"):
            if self.param is None or not (self.param > 0 and math.isfinite(self.param)):
                raise InvalidSpec(f"{self.kind} needs a positive finite parameter")
        if self.kind == "explicit":
            if len(self.values) < self.n:
                raise InvalidSpec(f"explicit sequence has {len(self.values)} < {self.n} values")
            if not all(v > 0 and math.isfinite(v) for v in self.values):
                raise InvalidSpec("explicit values must be positive and finite")

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "SequenceSpec":
        """Parse ``harmonic``, ``geometric:R``, ``constant:C``,
        ``lognormal:SEED[:SIGMA]`` or ``explicit:V1,V2,...``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        try:
            if kind == "harmonic":
                return cls("harmonic", n or 1)
            if kind in ("geometric", "constant"):
                return cls(kind, n or 1, param=float(rest))
            if kind in ("lognormal", "random_lognormal"):
                parts = rest.split(":") if rest else []
                seed = int(parts[0]) if parts else 0
                sigma = float(parts[1]) if len(parts) > 1 else 1.0
                return cls("random_lognormal", n or 1, param=sigma, seed=seed)
            if kind == "explicit":
                values = tuple(float(v) for v in rest.split(",") if v.strip())
                return cls("explicit", n or len(values), values=values)
        except ValueError as exc:
            raise InvalidSpec(f"cannot parse sequence {text!r}: {exc}") from None
        raise InvalidSpec(f"unknown sequence kind in {text!r}")

    def describe(self) -> str:
        if self.kind == "harmonic":
            return "harmonic"
        if self.kind == "random_lognormal":
            return f"lognormal:{self.seed}:{self.param:g}"
        if self.kind == "explicit":
            return "explicit"
        return f"{self.kind}:{self.param:g}"


def generate(spec: SequenceSpec) -> np.ndarray:
    n = spec.n
    if spec.kind == "harmonic":
        return 1.0 / np.arange(1, n + 1, dtype=float)
    if spec.kind == "geometric":
        x = spec.param ** np.arange(n, dtype=float)
    elif spec.kind == "constant":
        x = np.full(n, float(spec.param))
    elif spec.kind == "random_lognormal":
        rng = np.random.default_rng(spec.seed)
        x = rng.lognormal(mean=0.0, sigma=spec.param, size=n)
    else:
        x = np.array(spec.values[:n], dtype=float)
    if not np.all(np.isfinite(x) & (x > 0)):
        raise InvalidSpec(f"{spec.describe()} of length {n} leaves the positive floats")
    return x


@dataclass
class RatioResult:
    ratio: float
    n: int
    mean_id: str
    partial_trace: Optional[list] = field(default=None, repr=False)

    def to_record(self) -> dict:
        return {"mean": self.mean_id, "n": self.n, "ratio": self.ratio}


MeanLike = Union[GiniParams, tuple, Generator, Callable[[np.ndarray], float]]


def _signed_accumulate(log_w, v, log_norm):
    """Running ``sum(exp(log_w) * v) / exp(log_norm)`` with signed ``v``.

    Positive and negative parts of ``v`` are accumulated as separate
    log-sum-exps so nothing overflows.
    """
    with np.errstate(divide="ignore"):
        lpos = np.logaddexp.accumulate(log_w + np.log(np.maximum(v, 0.0)))
        lneg = np.logaddexp.accumulate(log_w + np.log(np.maximum(-v, 0.0)))
    return np.exp(lpos - log_norm) - np.exp(lneg - log_norm)


def gini_prefix_means(params, x) -> np.ndarray:
    """``G_{p,q}(x_1..x_k)`` for every ``k``, from running log power sums.

    O(n) overall; each prefix is effectively rescaled by its own largest
    term, so no power sum overflows.
    """
    params = _as_params(params)
    x = as_positive_vector(x)
    p, q = params.ordered
    d = p - q
    lx = np.log(x)
    centre = float(np.mean(lx))
    lc = lx - centre
    if d == 0:
        lw = np.logaddexp.accumulate(p * lc)
        vals = np.exp(centre + _signed_accumulate(p * lc, lc, lw))
    elif d * float(np.max(np.abs(lc))) < 1.0:
        # near the diagonal: log(S_p / S_q) = log1p(weighted mean of expm1(d * lc))
        lw = np.logaddexp.accumulate(q * lc)
        ratio_m1 = _signed_accumulate(q * lc, np.expm1(d * lc), lw)
        vals = np.exp(centre + np.log1p(ratio_m1) / d)
    else:
        lp = np.logaddexp.accumulate(p * lc)
        lq = np.logaddexp.accumulate(q * lc)
        vals = np.exp(centre + (lp - lq) / d)
    return np.clip(vals, np.minimum.accumulate(x), np.maximum.accumulate(x))


class _Fenwick:
    """Prefix sums of three parallel columns over a fixed index set."""

    def __init__(self, size: int):
        self.size = size
        self.a = [0.0] * (size + 1)
        self.b = [0.0] * (size + 1)
        self.c = [0.0] * (size + 1)

    def add(self, i: int, va: float, vb: float, vc: float) -> None:
        a, b, c = self.a, self.b, self.c
        i += 1
        while i <= self.size:
            a[i] += va
            b[i] += vb
            c[i] += vc
            i += i & -i

    def prefix(self, i: int) -> tuple[float, float, float]:
        """Column sums over positions ``< i``."""
        a, b, c = self.a, self.b, self.c
        sa = sb = sc = 0.0
        while i > 0:
            sa += a[i]
            sb += b[i]
            sc += c[i]
            i &= i - 1
        return sa, sb, sc


def concavized_prefix_means(f: Generator, x) -> np.ndarray:
    """Prefix means for a concavized generator without re-scanning each prefix.

    Entries below ``tau * y`` contribute ``y**-p * S_p - y**-q * S_q`` (a log
    variant on the diagonal), the others a constant, so one Fenwick tree over
    the sorted entries evaluates the defining sum in O(log n). The new mean
    always lies between the previous mean and the entry just added, which
    gives a tight starting bracket.
    """
    if f.kind != "concavized":
        raise ValueError("concavized_prefix_means needs a concavized generator")
    x = as_positive_vector(x)
    params, tau = f.params, f.tau
    p, q = params.ordered
    g_tau = g_pq(params, tau)
    ref = math.exp(float(np.mean(np.log(x))))
    s = x / ref
    with np.errstate(over="raise"):
        col_a = s**p
        col_b = s**p * np.log(s) if p == q else s**q
    order = np.argsort(s, kind="stable")
    sorted_s = s[order].tolist()
    rank = np.empty(len(s), dtype=int)
    rank[order] = np.arange(len(s))
    tree = _Fenwick(len(s))

    out = np.empty(len(s))
    y = float(s[0])
    for k in range(len(s)):
        sk = float(s[k])
        tree.add(int(rank[k]), float(col_a[k]), float(col_b[k]), 1.0)
        if sk == y:
            out[k] = y
            continue
        count = k + 1

        def e(u):
            yy = math.exp(u)
            sa, sb, sc = tree.prefix(bisect.bisect_right(sorted_s, tau * yy))
            if p == q:
                inner = yy**-p * (sb - u * sa)
            else:
                inner = (yy**-p * sa - yy**-q * sb) / (p - q)
            return inner + (count - sc) * g_tau

        u_lo, u_hi = sorted((math.log(y), math.log(sk)))
        e_lo, e_hi = e(u_lo), e(u_hi)
        if e_lo <= 0:
            u = u_lo
        elif e_hi >= 0:
            u = u_hi
        else:
            u = solve_root(e, Bracket(u_lo, u_hi, e_lo, e_hi), MEAN_TOL)
        y = math.exp(u)
        out[k] = y
    lo = np.minimum.accumulate(s)
    hi = np.maximum.accumulate(s)
    return np.clip(out, lo, hi) * ref


def _mean_id(mean) -> str:
    if isinstance(mean, (GiniParams, tuple)):
        params = _as_params(mean)
        return f"G[{params.p:g},{params.q:g}]"
    if isinstance(mean, Generator):
        return f"E[{mean.name}]"
    return getattr(mean, "__name__", "custom")


def prefix_means(mean: MeanLike, x, method: str = "auto") -> np.ndarray:
    """Mean of every prefix of ``x``.

    ``method="auto"`` uses running power sums for Gini means and a Fenwick
    tree for concavized generators; ``"generic"`` re-solves each prefix.
    """
    x = as_positive_vector(x)
    if method not in ("auto", "generic"):
        raise ValueError(f"unknown method {method!r}")
    if isinstance(mean, (GiniParams, tuple)):
        if method == "auto":
            return gini_prefix_means(mean, x)
        return np.array([gini_mean(mean, x[: k + 1]) for k in range(len(x))])
    if isinstance(mean, Generator):
        if method == "auto" and mean.kind == "concavized":
            try:
                return concavized_prefix_means(mean, x)
            except FloatingPointError:
                pass
        return np.array([quasideviation_mean(mean, x[: k + 1]) for k in range(len(x))])
    return np.array([float(mean(x[: k + 1])) for k in range(len(x))])


def hardy_ratio(mean: MeanLike, spec: Union[SequenceSpec, Sequence[float]],
                trace: bool = False, method: str = "auto") -> RatioResult:
    """``sum_k M(x_1..x_k) / sum_k x_k`` over the generated sequence."""
    x = generate(spec) if isinstance(spec, SequenceSpec) else as_positive_vector(spec)
    means = prefix_means(mean, x, method)
    ratio = float(np.sum(means) / np.sum(x))
    partial = None
    if trace:
        partial = (np.cumsum(means) / np.cumsum(x)).tolist()
    return RatioResult(ratio=ratio, n=len(x), mean_id=_mean_id(mean), partial_trace=partial)


def hardy_limit_empirical(params, n: int) -> float:
    """``n * G_{p,q}(1, 1/2, ..., 1/n)``."""
    params = _as_params(params)
    if not params.is_hardy:
        raise DomainError(f"{(params.p, params.q)} is not a Hardy pair")
    if n < 1:
        raise DomainError("n must be at least 1")
    return n * gini_mean(params, generate(SequenceSpec("harmonic", n)))


def adversarial_search(mean: MeanLike, n: int, budget: int, seed: int = 0,
                       step: float = 0.5, decay: float = 0.7,
                       method: str = "auto") -> tuple[np.ndarray, float]:
    """Hill-climb the Hardy ratio over positive sequences of length ``n``.

    Works on ``log(x)`` starting from the harmonic sequence. Each of the
    ``budget`` proposals perturbs one coordinate by a normal step; a proposal
    is kept only if it raises the ratio, and the step shrinks by ``decay``
    after a run of ``max(10, n // 4)`` rejections.

    Returns:
        The best sequence found (scaled so its first entry is 1) and its ratio.
    """
    if n < 1 or budget < 1:
        raise ValueError("n and budget must be positive")
    rng = np.random.default_rng(seed)
    z = -np.log(np.arange(1, n + 1, dtype=float))

    def score(z):
        x = np.exp(z - z.max())
        try:
            return float(np.sum(prefix_means(mean, x, method)) / np.sum(x))
        except (HardyError, ValueError):
            return -math.inf

    best = score(z)
    patience = max(10, n // 4)
    misses = 0
    for _ in range(budget):
        i = int(rng.integers(n))
        delta = step * float(rng.standard_normal())
        old = z[i]
        z[i] = old + delta
        r = score(z)
        if r > best:
            best = r
            misses = 0
        else:
            z[i] = old
            misses += 1
            if misses >= patience:
                step *= decay
                misses = 0
    x = np.exp(z - z[0])
    return x, best
