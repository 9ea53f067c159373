"""Seeded data generators for tests and benchmarks.

Reproducibility across runs and platforms matters more here than statistical
quality, so the generator stack is fixed and self-contained:

* SplitMix64 supplies the 64-bit stream: ``s += 0x9E3779B97F4A7C15`` followed
  by two xor-multiply finalisation steps (Steele, Lea and Flood's published
  constants).  Pure integer arithmetic, exactly portable.
* Uniform doubles take the top 53 bits of a draw, mapped to [0, 1).
* Standard normals use Marsaglia's polar method: draw (u, v) uniform on the
  square, accept when s = u^2 + v^2 lies in (0, 1), and return
  ``u * sqrt(-2 ln(s) / s)`` with the paired value cached for the next call.
* Grid levels map a draw to {-2, -1, 0, 1, 2} via fixed-point scaling
  ``((bits >> 11) * 5) >> 53``, again exact integer arithmetic.

Points are emitted row by row, coordinate by coordinate, so a generated
cloud is a pure function of its spec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORMAL = "normal"
GRID = "grid"

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GeneratorSpec:
    """One reproducible cloud: distribution, shape, and seed."""

    distribution: str
    d: int
    n: int
    seed: int

    def __post_init__(self) -> None:
        if self.distribution not in (NORMAL, GRID):
            raise ValueError(f"unknown distribution: {self.distribution!r}")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if self.n < 1:
            raise ValueError("n must be at least 1")


class SplitMix64:
    """Counter-based 64-bit PRNG with the standard SplitMix64 finaliser."""

    __slots__ = ("_state", "_spare")

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64
        self._spare: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_double(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_normal(self) -> float:
        if self._spare is not None:
            value, self._spare = self._spare, None
            return value
        while True:
            u = 2.0 * self.next_double() - 1.0
            v = 2.0 * self.next_double() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        factor = math.sqrt(-2.0 * math.log(s) / s)
        self._spare = v * factor
        return u * factor

    def next_grid_level(self) -> int:
        return (((self.next_u64() >> 11) * 5) >> 53) - 2


def generate(spec: GeneratorSpec) -> np.ndarray:
    """Materialise the cloud described by ``spec`` as an (n, d) matrix."""
    rng = SplitMix64(spec.seed)
    out = np.empty((spec.n, spec.d), dtype=np.float64)
    if spec.distribution == NORMAL:
        for i in range(spec.n):
            for j in range(spec.d):
                out[i, j] = rng.next_normal()
    else:
        for i in range(spec.n):
            for j in range(spec.d):
                out[i, j] = float(rng.next_grid_level())
    return out
