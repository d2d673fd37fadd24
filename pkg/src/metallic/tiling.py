"""The step-n tiling of [0,1] with exact endpoints.

Letters map to tiles: a is a long tile of length gamma^-(n-1), b a short tile
of length gamma^-n, laid out left to right in word order. Endpoints are exact
field elements, so the unit total length can be checked symbolically.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .limits import resolve_cap
from .quadfield import MetallicParams, QuadElement, gamma_pow
from .substitution import tile_counts, word_at_step


class TileKind(enum.Enum):
    LONG = "a"
    SHORT = "b"


@dataclass(frozen=True, slots=True)
class Tile:
    kind: TileKind
    start: QuadElement
    length_exponent: int

    @property
    def length(self) -> QuadElement:
        return gamma_pow(self.start.params, -self.length_exponent)

    @property
    def end(self) -> QuadElement:
        return self.start + self.length


@dataclass(frozen=True)
class Tiling:
    params: MetallicParams
    n: int
    tiles: tuple[Tile, ...]

    def __len__(self) -> int:
        return len(self.tiles)

    @property
    def word(self) -> str:
        return "".join(t.kind.value for t in self.tiles)


def tiling_at_step(params: MetallicParams, n: int, cap: int | None = None) -> Tiling:
    """Build the step-n tiling with exact cumulative endpoints.

    Step 0 is the single short tile of length 1; for n >= 1 long tiles have
    exponent n-1 and short tiles exponent n.
    """
    if n < 0:
        raise ValueError("step index must be >= 0")
    limit = resolve_cap(cap)
    count = tile_counts(params, n).total
    if count > limit:
        raise CapExceeded(f"step-{n} tiling has {count} tiles, above cap {limit}")
    if n == 0:
        return Tiling(params, 0, (Tile(TileKind.SHORT, params.zero(), 0),))

    word = word_at_step(params, n, cap=limit)
    long_len = gamma_pow(params, -(n - 1))
    short_len = gamma_pow(params, -n)
    # Z[gamma] is closed under the gamma^2 rewrite, so gamma^-m has integer
    # basis coordinates over q^m; accumulating integer numerators over the
    # common denominator q^n avoids a Fraction normalization per tile.
    qn = params.q**n
    dl = (int(long_len.c0 * qn), int(long_len.c1 * qn))
    ds = (int(short_len.c0 * qn), int(short_len.c1 * qn))
    tiles = []
    num0 = num1 = 0
    for letter in word:
        start = QuadElement(Fraction(num0, qn), Fraction(num1, qn), params)
        if letter == "a":
            tiles.append(Tile(TileKind.LONG, start, n - 1))
            num0 += dl[0]
            num1 += dl[1]
        else:
            tiles.append(Tile(TileKind.SHORT, start, n))
            num0 += ds[0]
            num1 += ds[1]
    return Tiling(params, n, tuple(tiles))


def total_length(t: Tiling) -> QuadElement:
    """Exact sum of tile lengths (grouped by exponent; the sum is the same)."""
    counts = Counter(tile.length_exponent for tile in t.tiles)
    acc = t.params.zero()
    for exponent, count in sorted(counts.items()):
        acc = acc + count * gamma_pow(t.params, -exponent)
    return acc
