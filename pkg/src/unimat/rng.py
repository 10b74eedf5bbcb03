"""Counter-based deterministic 64-bit generator (splitmix64).

The generator is a pure function of (seed, counter), so any slice of the
stream can be produced independently and in any order: word k of the stream
seeded by s is

    word(s, k) = finalize((s + (k + 1) * GOLDEN) mod 2^64)

where GOLDEN = 0x9E3779B97F4A7C15 and finalize is the splitmix64 output
mix. This is exactly the sequential splitmix64 generator of Steele,
Lea & Flood with initial state s, reindexed by counter.

Reference vectors (seed 0): the first three words are
0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F.

Bounded integers come from the multiply-shift map
((word * r) >> 64), which sends a 64-bit word to [0, r) with bias below
r / 2^64 -- negligible against sampling noise for every box used here, and
it consumes exactly one word per draw, which keeps counter layouts static.
"""

from __future__ import annotations

from typing import Iterator

_MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def word(seed: int, counter: int) -> int:
    """The counter-th 64-bit word of the stream seeded by seed."""
    z = (seed + (counter + 1) * GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def words(seed: int, start: int, count: int) -> Iterator[int]:
    """Words start .. start+count-1 of the stream, as a generator."""
    z = (seed + start * GOLDEN) & _MASK64
    for _ in range(count):
        z = (z + GOLDEN) & _MASK64
        w = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        w = ((w ^ (w >> 27)) * _MIX2) & _MASK64
        yield w ^ (w >> 31)


def bounded(w: int, r: int) -> int:
    """Map a 64-bit word to [0, r) by multiply-shift."""
    return (w * r) >> 64


def derive_seed(seed: int, index: int, salt: int) -> int:
    """A sub-seed for stream number index, domain-separated by salt.

    Used to give each bound in a sweep its own stream while everything still
    flows from one base seed.
    """
    return word((seed ^ salt) & _MASK64, index)
