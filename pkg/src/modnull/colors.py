"""Color (community label) distributions under independent random labeling.

The null model assigns each vertex an independent color with fixed
probabilities p_1..p_K.  Everything downstream is a function of the
power sums p_(l) = sum_k p_k^l: the centered kernel, its conditional
moments, and the two variance constants

    r1 = p_(2) + p_(2)^2 - 2 p_(3)   (variance of the centered kernel)
    r2 = p_(3) - p_(2)^2             (variance of p_{c} - p_(2))

A distribution concentrated on one color has r1 = 0, which makes every
standardized statistic undefined; such distributions are flagged
degenerate and rejected by the simulation layer.
"""

from __future__ import annotations

import math
from functools import cached_property

import numpy as np

from .errors import DomainError, InputError
from .rng import uniform_block

_SUM_TOL = 1e-12


class ColorDistribution:
    """Probabilities p_1..p_K with cached power sums p_(2), p_(3), p_(4)."""

    def __init__(self, probabilities):
        p = np.asarray(probabilities, dtype=np.float64)
        if p.ndim != 1 or p.size == 0:
            raise InputError("probabilities must be a nonempty vector")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            raise InputError("probabilities must be finite and nonnegative")
        total = math.fsum(p.tolist())
        if abs(total - 1.0) > _SUM_TOL:
            raise InputError(f"probabilities sum to {total!r}, not 1")
        p = p.copy()
        p.setflags(write=False)
        self.p = p
        self.K = int(p.size)
        self.p2 = math.fsum((p * p).tolist())
        self.p3 = math.fsum((p * p * p).tolist())
        self.p4 = math.fsum((p * p * p * p).tolist())
        # Both constants are variances; clamp the last-ulp negatives away.
        self.r1 = max(0.0, self.p2 + self.p2 * self.p2 - 2.0 * self.p3)
        self.r2 = max(0.0, self.p3 - self.p2 * self.p2)

    @classmethod
    def uniform(cls, K: int) -> "ColorDistribution":
        if K < 1:
            raise InputError("need at least one color")
        return cls(np.full(K, 1.0 / K))

    @classmethod
    def from_coloring(cls, colors, K: int | None = None) -> "ColorDistribution":
        """Empirical frequencies of an observed coloring (colors in 1..K)."""
        c = np.asarray(colors, dtype=np.int64)
        if c.size == 0:
            raise InputError("coloring is empty")
        if c.min() < 1:
            raise InputError("colors must be integers >= 1")
        used = int(c.max())
        if K is None:
            K = used
        elif K < used:
            raise InputError(f"K={K} but coloring uses color {used}")
        counts = np.bincount(c, minlength=K + 1)[1:]
        return cls(counts / c.size)

    @property
    def is_degenerate(self) -> bool:
        return self.r1 <= 0.0

    def power_sum(self, l: int) -> float:
        """p_(l) = sum_k p_k^l for l >= 1."""
        if l < 1:
            raise InputError("power-sum order must be >= 1")
        if l == 1:
            return math.fsum(self.p.tolist())
        return math.fsum((self.p ** l).tolist())

    def _check_color(self, a: int) -> int:
        if not 1 <= a <= self.K:
            raise InputError(f"color {a} outside 1..{self.K}")
        return int(a)

    def centered_kernel(self, a: int, b: int) -> float:
        """Same-color indicator of (a, b), centered to zero conditional mean.

        delta_{a,b} - p_a - p_b + p_(2); always in [-2, 2].
        """
        a = self._check_color(a)
        b = self._check_color(b)
        delta = 1.0 if a == b else 0.0
        return delta - self.p[a - 1] - self.p[b - 1] + self.p2

    def cond_second_moment(self, a: int) -> float:
        """E[centered_kernel(a, c)^2] over a random color c."""
        a = self._check_color(a)
        pa = self.p[a - 1]
        return pa - 3.0 * pa * pa + 2.0 * self.p2 * pa - self.p2 * self.p2 + self.p3

    def cond_cross_moment(self, a: int, b: int) -> float:
        """E[centered_kernel(a, c) * centered_kernel(b, c)] over a random c."""
        a = self._check_color(a)
        b = self._check_color(b)
        pa = self.p[a - 1]
        pb = self.p[b - 1]
        delta = 0.5 * (pa + pb) if a == b else 0.0
        return (
            delta
            - pa * pb
            - pa * pa
            + pa * self.p2
            - pb * pb
            + pb * self.p2
            + self.p3
            - self.p2 * self.p2
        )

    def moment_constants(self) -> tuple[float, float]:
        """(r1, r2) as defined in the module docstring."""
        return self.r1, self.r2

    @cached_property
    def _csm_table(self) -> np.ndarray:
        t = np.array([self.cond_second_moment(a) for a in range(1, self.K + 1)])
        t.setflags(write=False)
        return t

    @cached_property
    def _ccm_table(self) -> np.ndarray:
        t = np.array(
            [
                [self.cond_cross_moment(a, b) for b in range(1, self.K + 1)]
                for a in range(1, self.K + 1)
            ]
        )
        t.setflags(write=False)
        return t

    @cached_property
    def _cum(self) -> np.ndarray:
        # Inverse-CDF table; +inf in the last slot absorbs the float
        # rounding of the cumulative sum so every draw maps to a color.
        c = np.cumsum(self.p)
        c[-1] = np.inf
        c.setflags(write=False)
        return c

    def sample_coloring(self, n: int, seed: int, allow_degenerate: bool = False) -> np.ndarray:
        """n i.i.d. colors via inverse-CDF lookup on the stream ``seed``.

        Identical (distribution, n, seed) always yields the identical
        coloring.
        """
        if n < 1:
            raise InputError("need at least one vertex to color")
        if self.is_degenerate and not allow_degenerate:
            raise DomainError("degenerate color distribution (single color has mass 1)")
        u = uniform_block(seed, n)
        return np.searchsorted(self._cum, u, side="right").astype(np.int64) + 1

    def __repr__(self) -> str:
        return f"ColorDistribution({self.p.tolist()})"


def validate_coloring(colors, n: int | None = None, K: int | None = None) -> np.ndarray:
    """Check entries are in 1..K (and length n if given); return int64 array."""
    c = np.asarray(colors, dtype=np.int64)
    if c.ndim != 1 or c.size == 0:
        raise InputError("coloring must be a nonempty vector")
    if n is not None and c.size != n:
        raise InputError(f"coloring has length {c.size}, expected {n}")
    if c.min() < 1:
        raise InputError("colors must be integers >= 1")
    if K is not None and int(c.max()) > K:
        raise InputError(f"coloring uses color {int(c.max())} but K={K}")
    return c


def parse_probability_text(text: str) -> ColorDistribution:
    """One probability per line; must sum to 1 within 1e-9, then is renormalized."""
    values = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise InputError(f"line {ln}: not a probability: {raw!r}") from None
    if not values:
        raise InputError("probability file is empty")
    total = math.fsum(values)
    if abs(total - 1.0) > 1e-9:
        raise InputError(f"probabilities sum to {total!r}, outside 1 +/- 1e-9")
    p = np.asarray(values, dtype=np.float64) / total
    return ColorDistribution(p)
