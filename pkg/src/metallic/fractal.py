"""Removal fractals built from the step-n tiling.

A spec (p, q, n, l, s) removes l long and s short tiles from the step-n
tiling, then recursively re-tiles every surviving interval with the same
(scaled) survivor pattern. The depth-k cover is the set of intervals left
after k rounds; its lengths are pure powers of gamma, so covers are carried as
exact (start, length-exponent) pairs plus the path of tile kinds that led to
each interval.

Which tiles get removed is a free choice (the dimension only sees the counts):
the default "keep-first" policy drops the last l long and last s short tiles
in word order, "keep-last" drops the first ones, and "explicit" removes named
word positions so published figures can be reproduced exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import (
    CapExceeded,
    EmptyFractal,
    InvalidRemovalCount,
    PolicyIndexMismatch,
    ValidationError,
)
from .limits import resolve_cap
from .quadfield import MetallicParams, QuadElement, gamma_pow
from .substitution import tile_counts, word_at_step
from .tiling import Tile, tiling_at_step

POLICIES = ("keep-first", "keep-last", "explicit")


@dataclass(frozen=True)
class FractalSpec:
    params: MetallicParams
    n: int
    l: int
    s: int
    policy: str = "keep-first"
    indices: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValidationError("fractal step index n must be >= 2")
        if self.policy not in POLICIES:
            raise ValidationError(f"policy must be one of {POLICIES}, got {self.policy!r}")
        counts = tile_counts(self.params, self.n)
        if not (0 <= self.l <= counts.N_a):
            raise InvalidRemovalCount(
                f"l={self.l} long removals out of range 0..{counts.N_a}"
            )
        if not (0 <= self.s <= counts.N_b):
            raise InvalidRemovalCount(
                f"s={self.s} short removals out of range 0..{counts.N_b}"
            )
        if counts.total - self.l - self.s < 1:
            raise EmptyFractal("removal leaves no surviving tile")
        if self.policy == "explicit":
            if self.indices is None:
                raise PolicyIndexMismatch("explicit policy requires removal indices")
            object.__setattr__(self, "indices", tuple(sorted(self.indices)))
            self._check_explicit_indices()
        elif self.indices is not None:
            raise PolicyIndexMismatch("indices are only valid with the explicit policy")

    def _check_explicit_indices(self) -> None:
        word = word_at_step(self.params, self.n)
        idx = self.indices
        if len(set(idx)) != len(idx):
            raise PolicyIndexMismatch("removal indices must be distinct")
        if idx and not (0 <= idx[0] and idx[-1] < len(word)):
            raise PolicyIndexMismatch(f"removal indices must lie in 0..{len(word) - 1}")
        removed_long = sum(1 for i in idx if word[i] == "a")
        removed_short = len(idx) - removed_long
        if removed_long != self.l or removed_short != self.s:
            raise PolicyIndexMismatch(
                f"indices remove {removed_long} long / {removed_short} short tiles, "
                f"spec says {self.l} / {self.s}"
            )

    @property
    def survivor_counts(self) -> tuple[int, int]:
        """(N_a - l, N_b - s): long and short tiles kept per level."""
        counts = tile_counts(self.params, self.n)
        return counts.N_a - self.l, counts.N_b - self.s


def removed_positions(spec: FractalSpec) -> frozenset[int]:
    """Word positions deleted from the step-n tiling under the spec's policy."""
    if spec.policy == "explicit":
        return frozenset(spec.indices)
    word = word_at_step(spec.params, spec.n)
    longs = [i for i, ch in enumerate(word) if ch == "a"]
    shorts = [i for i, ch in enumerate(word) if ch == "b"]
    if spec.policy == "keep-first":
        picked = longs[len(longs) - spec.l:] + shorts[len(shorts) - spec.s:]
    else:  # keep-last
        picked = longs[: spec.l] + shorts[: spec.s]
    return frozenset(picked)


def survivors(spec: FractalSpec) -> tuple[Tile, ...]:
    """The step-n tiles that remain after removal, in word order."""
    tiling = tiling_at_step(spec.params, spec.n)
    removed = removed_positions(spec)
    return tuple(t for i, t in enumerate(tiling.tiles) if i not in removed)


@dataclass(frozen=True, slots=True)
class CoverInterval:
    """One surviving interval: exact start, length gamma^-exponent, kind path."""

    start: QuadElement
    length_exponent: int
    kind_path: str

    @property
    def length(self) -> QuadElement:
        return gamma_pow(self.start.params, -self.length_exponent)

    @property
    def end(self) -> QuadElement:
        return self.start + self.length


@dataclass(frozen=True)
class IntervalCover:
    """The depth-k stage of the construction.

    `intervals` is None for summary covers, which carry only the (exact)
    length multiset; interval positions can always be re-streamed from the
    spec.
    """

    spec: FractalSpec
    depth: int
    intervals: tuple[CoverInterval, ...] | None

    @property
    def count(self) -> int:
        na, nb = self.spec.survivor_counts
        return (na + nb) ** self.depth

    def exponent_counts(self) -> dict[int, int]:
        """Multiset of length exponents, {m: count of intervals gamma^-m}.

        Tallied from the actual intervals when materialized; summary covers
        use the k-fold product of the depth-1 multiset, which is the same
        thing because every survivor is re-tiled with one fixed pattern.
        """
        if self.intervals is not None:
            return dict(Counter(iv.length_exponent for iv in self.intervals))
        na, nb = self.spec.survivor_counts
        level = {self.spec.n - 1: na, self.spec.n: nb}
        acc = {0: 1}
        for _ in range(self.depth):
            nxt: dict[int, int] = {}
            for m1, c1 in acc.items():
                for m2, c2 in level.items():
                    if c2:
                        nxt[m1 + m2] = nxt.get(m1 + m2, 0) + c1 * c2
            acc = nxt
        return acc

    def total_length(self) -> QuadElement:
        """Exact total length of the cover as a field element."""
        params = self.spec.params
        acc = params.zero()
        for exponent, count in sorted(self.exponent_counts().items()):
            acc = acc + count * gamma_pow(params, -exponent)
        return acc


@lru_cache(maxsize=128)
def _survivor_pattern(spec: FractalSpec) -> tuple[tuple[QuadElement, int, str], ...]:
    """Relative (start, length-exponent, kind letter) of each survivor."""
    return tuple(
        (t.start, t.length_exponent, t.kind.value) for t in survivors(spec)
    )


def refine(cover: IntervalCover) -> IntervalCover:
    """Replace every interval by the survivor pattern scaled into it."""
    if cover.intervals is None:
        raise ValidationError("refine needs a materialized cover")
    pattern = _survivor_pattern(cover.spec)
    params = cover.spec.params
    out = []
    for iv in cover.intervals:
        scale = gamma_pow(params, -iv.length_exponent)
        for rel_start, rel_exp, letter in pattern:
            out.append(
                CoverInterval(
                    iv.start + rel_start * scale,
                    iv.length_exponent + rel_exp,
                    iv.kind_path + letter,
                )
            )
    return IntervalCover(cover.spec, cover.depth + 1, tuple(out))


def cover_at_depth(spec: FractalSpec, k: int, cap: int | None = None) -> IntervalCover:
    """Materialized depth-k cover (k-fold refinement of [0,1])."""
    if k < 0:
        raise ValueError("depth must be >= 0")
    limit = resolve_cap(cap)
    na, nb = spec.survivor_counts
    if (na + nb) ** k > limit:
        raise CapExceeded(
            f"depth-{k} cover has {(na + nb) ** k} intervals, above cap {limit}"
        )
    cover = IntervalCover(spec, 0, (CoverInterval(spec.params.zero(), 0, ""),))
    for _ in range(k):
        cover = refine(cover)
    return cover


def cover_summary(spec: FractalSpec, k: int) -> IntervalCover:
    """Depth-k cover without interval positions (length multiset only)."""
    if k < 0:
        raise ValueError("depth must be >= 0")
    return IntervalCover(spec, k, None)


def iter_cover_intervals(spec: FractalSpec, k: int) -> Iterator[CoverInterval]:
    """Stream the depth-k cover left to right without materializing it."""
    if k < 0:
        raise ValueError("depth must be >= 0")
    pattern = _survivor_pattern(spec)
    params = spec.params
    rel_scales = {exp: gamma_pow(params, -exp) for _, exp, _ in pattern}

    def walk(start: QuadElement, scale: QuadElement, exponent: int, path: str,
             remaining: int) -> Iterator[CoverInterval]:
        if remaining == 0:
            yield CoverInterval(start, exponent, path)
            return
        for rel_start, rel_exp, letter in pattern:
            yield from walk(
                start + rel_start * scale,
                scale * rel_scales[rel_exp],
                exponent + rel_exp,
                path + letter,
                remaining - 1,
            )

    yield from walk(params.zero(), params.one(), 0, "", k)


def gaps(cover: IntervalCover) -> tuple[tuple[QuadElement, QuadElement], ...]:
    """Open complement of the cover in [0,1], as (start, length) pairs."""
    if cover.intervals is None:
        raise ValidationError("gaps need a materialized cover")
    params = cover.spec.params
    out = []
    cursor = params.zero()
    for iv in cover.intervals:
        width = iv.start - cursor
        if width.sign() > 0:
            out.append((cursor, width))
        cursor = iv.end
    tail = params.one() - cursor
    if tail.sign() > 0:
        out.append((cursor, tail))
    return tuple(out)
