"""Numerical cross-checks of the analytic dimension.

Two independent estimators work straight from covers:

* cover sums: S_k(t) = sum over depth-k intervals of |I|^t. Because every
  survivor is re-tiled with one fixed pattern, S_k(t) = Y(t)^k where Y is the
  depth-1 sum, and the exponent t where S crosses 1 is depth-independent. The
  sums need only the cover's length multiset, so deep covers never have to be
  materialized; gamma^(-m*t) is evaluated as exp(-m*t*log gamma) in working
  precision since m*t can reach a few hundred.

* box counting: N(eps) over the grid [j*eps, (j+1)*eps). Counting is done on
  a cover deep enough that every interval is at most eps wide - counting the
  depth-k cover at a finer scale would measure the solid intervals (slope
  pulled toward 1), not the limit set. Scales follow eps_k = gamma^(-n*k),
  and the dimension is the least-squares slope of log N against log(1/eps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import mpmath
import numpy as np

from .errors import CapExceeded
from .fractal import FractalSpec, IntervalCover, _survivor_pattern
from .limits import DEFAULT_BITS, resolve_cap


def _multiset_sum(counts: dict[int, int], t, log_gamma: mpmath.mpf) -> mpmath.mpf:
    """sum count_m * gamma^(-m*t) over the exponent multiset, in mpf."""
    total = mpmath.mpf(0)
    for m, count in sorted(counts.items()):
        total += count * mpmath.exp(-m * t * log_gamma)
    return total


@dataclass(frozen=True)
class HausdorffSum:
    depth: int
    t: float
    value: float
    y: float


def hausdorff_sum(cover: IntervalCover, t: float, bits: int = DEFAULT_BITS) -> HausdorffSum:
    """Cover sum S_k(t) and the per-level factor Y(t)."""
    if t < 0:
        raise ValueError("exponent t must be >= 0")
    spec = cover.spec
    na, nb = spec.survivor_counts
    with mpmath.workprec(bits):
        log_gamma = mpmath.log(spec.params.gamma_mpf(bits))
        value = _multiset_sum(cover.exponent_counts(), mpmath.mpf(t), log_gamma)
        y = _multiset_sum({spec.n - 1: na, spec.n: nb}, mpmath.mpf(t), log_gamma)
    return HausdorffSum(cover.depth, float(t), float(value), float(y))


def empirical_dimension(cover: IntervalCover, bits: int = DEFAULT_BITS) -> float:
    """The exponent t in [0,1] where the cover sum equals 1, by bisection.

    A single-survivor spec shrinks to one point; its exponent is 0 by
    convention. A removal-free spec has total length 1 at every depth, giving
    exactly 1.
    """
    if cover.depth < 1:
        raise ValueError("cover depth must be >= 1")
    spec = cover.spec
    na, nb = spec.survivor_counts
    if na + nb == 1:
        return 0.0
    if spec.l == 0 and spec.s == 0:
        # full tilings: the sum at t=1 is exactly 1 at every depth
        return 1.0
    counts = cover.exponent_counts()
    with mpmath.workprec(bits):
        log_gamma = mpmath.log(spec.params.gamma_mpf(bits))
        if _multiset_sum(counts, mpmath.mpf(1), log_gamma) >= 1:
            return 1.0
        lo, hi = mpmath.mpf(0), mpmath.mpf(1)
        while hi - lo > mpmath.mpf("1e-13"):
            mid = (lo + hi) / 2
            if _multiset_sum(counts, mid, log_gamma) >= 1:
                lo = mid
            else:
                hi = mid
        return float((lo + hi) / 2)


def _float_endpoints(cover: IntervalCover, bits: int) -> Iterator[tuple[mpmath.mpf, mpmath.mpf]]:
    """Interval endpoints at `bits` precision, streamed in sorted order."""
    if cover.intervals is not None:
        for iv in cover.intervals:
            start = iv.start.to_mpf(bits)
            yield start, start + iv.length.to_mpf(bits)
        return
    yield from _walk_endpoints(cover.spec, cover.depth, bits)


def _walk_endpoints(spec: FractalSpec, depth: int, bits: int) -> Iterator[tuple[mpmath.mpf, mpmath.mpf]]:
    """Depth-first float walk of the cover tree (error ~2^-bits per level)."""
    pattern = [
        (rel.to_mpf(bits), mpmath.power(spec.params.gamma_mpf(bits), -exp))
        for rel, exp, _ in _survivor_pattern(spec)
    ]

    def walk(start, scale, remaining):
        if remaining == 0:
            yield start, start + scale
            return
        for rel_start, rel_len in pattern:
            yield from walk(start + rel_start * scale, scale * rel_len, remaining - 1)

    yield from walk(mpmath.mpf(0), mpmath.mpf(1), depth)


def _count_boxes(endpoints: Iterable[tuple[mpmath.mpf, mpmath.mpf]], eps: mpmath.mpf) -> int:
    """Distinct grid boxes [j*eps, (j+1)*eps) meeting the sorted intervals
    (positive-length overlap, so [s,e) semantics)."""
    total = 0
    last = None
    for s, e in endpoints:
        j0 = int(mpmath.floor(s / eps))
        j1 = int(mpmath.ceil(e / eps)) - 1
        if last is not None and j0 <= last:
            j0 = last + 1
        if j1 >= j0:
            total += j1 - j0 + 1
            last = j1
    return total


def box_count(cover: IntervalCover, eps, bits: int = DEFAULT_BITS) -> int:
    """Number of eps-grid boxes intersecting the cover."""
    with mpmath.workprec(bits):
        eps_mpf = mpmath.mpf(eps)
        if not 0 < eps_mpf < 1:
            raise ValueError("eps must lie in (0, 1)")
        return _count_boxes(_float_endpoints(cover, bits), eps_mpf)


@dataclass(frozen=True)
class BoxCountFit:
    """Least-squares fit of log N(eps) against log(1/eps).

    residual is the standard error of the fitted slope: lattice scaling makes
    the per-point misfit log-periodic (it does not vanish with more scales),
    while the slope uncertainty genuinely shrinks as scales are added.
    rms_misfit keeps the raw per-point figure.
    """

    slope: float
    intercept: float
    residual: float
    rms_misfit: float
    box_counts: tuple[int, ...]
    depths: tuple[int, ...]


def _fit_depth(spec: FractalSpec, k: int) -> int:
    """Cover depth whose widest interval is at most gamma^(-n*k)."""
    return math.ceil(spec.n * k / (spec.n - 1))


def box_dimension(spec: FractalSpec, k_max: int, cap: int | None = None,
                  bits: int = DEFAULT_BITS) -> BoxCountFit:
    """Least-squares box-counting estimate over eps_k = gamma^(-n*k), k=2..k_max.

    residual is the RMS misfit of the fitted line; CapExceeded if the deepest
    cover needed would exceed the enumeration cap.
    """
    if k_max < 4:
        raise ValueError("k_max must be >= 4")
    limit = resolve_cap(cap)
    na, nb = spec.survivor_counts
    deepest = _fit_depth(spec, k_max)
    if (na + nb) ** deepest > limit:
        raise CapExceeded(
            f"box fit needs a depth-{deepest} cover of {(na + nb) ** deepest} "
            f"intervals, above cap {limit}"
        )
    log_inv_eps = []
    log_counts = []
    counts = []
    depths = []
    with mpmath.workprec(bits):
        gamma = spec.params.gamma_mpf(bits)
        for k in range(2, k_max + 1):
            eps = mpmath.power(gamma, -spec.n * k)
            depth = _fit_depth(spec, k)
            n_boxes = _count_boxes(_walk_endpoints(spec, depth, bits), eps)
            log_inv_eps.append(float(spec.n * k * mpmath.log(gamma)))
            log_counts.append(math.log(n_boxes))
            counts.append(n_boxes)
            depths.append(depth)
    xs = np.asarray(log_inv_eps)
    ys = np.asarray(log_counts)
    slope, intercept = np.polyfit(xs, ys, 1)
    misfit = ys - (slope * xs + intercept)
    rms = float(np.sqrt(np.mean(misfit**2)))
    dof = len(xs) - 2
    slope_se = float(np.sqrt(np.sum(misfit**2) / dof / np.sum((xs - xs.mean()) ** 2)))
    return BoxCountFit(float(slope), float(intercept), slope_se, rms,
                       tuple(counts), tuple(depths))
