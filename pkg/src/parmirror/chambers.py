"""Weight systems, walls, genericity, and tensor-by-line-bundle shifts.

A weight system assigns to each marked point a strictly increasing tuple of
rationals in [0, 1). Walls are the rational hyperplanes cut out by numerical
destabilizing data (subbundle rank, per-point weight subsets, subbundle
degree); the enumeration is a numerical superset of the geometrically
realizable destabilizers, so weights generic here are generic in every
stronger sense. All arithmetic is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import lcm

from .exactpoly import format_rat, parse_rat
from .moduli import ModuliParams

WEIGHT_DENOMINATOR = 10**6
_SAMPLE_TRIES = 64


class NonGenericWeightsError(ValueError):
    """The weight system lies on at least one wall."""


class SamplingExhaustedError(RuntimeError):
    """No generic weight system found within the retry budget."""


class CollisionError(ValueError):
    """A tensor shift produced two equal weights at one point."""


@dataclass(frozen=True)
class WeightSystem:
    """Per-point full-flag weights: alpha[p] strictly increasing in [0, 1)."""

    alpha: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.alpha:
            raise ValueError("need at least one marked point")
        n = len(self.alpha[0])
        for p, row in enumerate(self.alpha):
            if len(row) != n:
                raise ValueError(f"point {p} has {len(row)} weights, expected {n}")
            for a in row:
                if not isinstance(a, Fraction):
                    raise TypeError(f"weight {a!r} is not a Fraction")
                if not (0 <= a < 1):
                    raise ValueError(f"weight {a} outside [0, 1)")
            if any(row[i] >= row[i + 1] for i in range(n - 1)):
                raise ValueError(f"weights at point {p} are not strictly increasing: {row}")

    @classmethod
    def from_rows(cls, rows) -> WeightSystem:
        return cls(tuple(tuple(Fraction(a) for a in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.alpha[0])

    @property
    def k(self) -> int:
        return len(self.alpha)

    def to_jsonable(self) -> dict:
        return {"points": [[format_rat(a) for a in row] for row in self.alpha]}

    @classmethod
    def from_jsonable(cls, data) -> WeightSystem:
        return cls.from_rows([[parse_rat(a) for a in row] for row in data["points"]])


@dataclass(frozen=True)
class Wall:
    """Numerical destabilizing datum: subbundle rank nprime, one weight
    index subset (1-based, size nprime) per point, subbundle degree dprime."""

    nprime: int
    subsets: tuple[tuple[int, ...], ...]
    dprime: int

    def to_jsonable(self) -> dict:
        return {
            "nprime": self.nprime,
            "subsets": [list(s) for s in self.subsets],
            "dprime": self.dprime,
        }

    @classmethod
    def from_jsonable(cls, data) -> Wall:
        return cls(
            nprime=int(data["nprime"]),
            subsets=tuple(tuple(int(i) for i in s) for s in data["subsets"]),
            dprime=int(data["dprime"]),
        )


def wall_value(w: WeightSystem, p: ModuliParams, wall: Wall) -> Fraction:
    """Exact value of the wall equation n(d' + sum_J alpha) - n'(d + sum alpha);
    the weight system sits on the wall iff this vanishes."""
    val = Fraction(p.n * wall.dprime - wall.nprime * p.d)
    for row, subset in zip(w.alpha, wall.subsets):
        val += p.n * sum(row[i - 1] for i in subset) - wall.nprime * sum(row)
    return val


@lru_cache(maxsize=None)
def enumerate_walls(p: ModuliParams) -> tuple[Wall, ...]:
    """All walls meeting the open weight simplex.

    For fixed (nprime, subsets), the wall equation is linear in the weights
    with per-point coefficients n*[i in J_p] - nprime. Its extreme values
    over the closed simplex occur at the threshold vertices (0,..,0,1,..,1),
    i.e. at suffix sums of the coefficient vector, so a candidate dprime is
    kept iff it makes the equation change sign strictly inside the simplex.
    Complementary data (n-n', complements, d-d') describe the same
    hyperplane and are listed as distinct records.
    """
    n, k, d = p.n, p.k, p.d
    walls = []
    for nprime in range(1, n):
        choices = list(combinations(range(1, n + 1), nprime))
        for subsets in product(choices, repeat=k):
            lo = hi = 0
            for subset in subsets:
                coeffs = [n * (i in subset) - nprime for i in range(1, n + 1)]
                suffix = [0]
                acc = 0
                for c in reversed(coeffs):
                    acc += c
                    suffix.append(acc)
                lo += min(suffix)
                hi += max(suffix)
            # need nprime*d - n*dprime strictly inside (lo, hi)
            d_lo = (nprime * d - hi) // n + 1
            d_hi = (nprime * d - lo - 1) // n
            for dprime in range(d_lo, d_hi + 1):
                walls.append(Wall(nprime, subsets, dprime))
    walls.sort(key=lambda w: (w.nprime, w.subsets, w.dprime))
    return tuple(walls)


def is_generic(w: WeightSystem, p: ModuliParams) -> bool:
    """True iff the weight system lies on no wall."""
    if w.n != p.n or w.k != p.k:
        raise ValueError(f"weight system shape ({w.n}, {w.k}) does not match ({p.n}, {p.k})")
    return all(wall_value(w, p, wall) != 0 for wall in enumerate_walls(p))


def sample_generic_weights(p: ModuliParams, seed: int, scale=Fraction(1)) -> WeightSystem:
    """Deterministic generic weights below the given bound.

    All weights share the denominator 10^6 and satisfy alpha < scale.
    Resamples on wall hits; raises SamplingExhaustedError after a fixed
    budget (only reachable for adversarially tiny scales).
    """
    scale = Fraction(scale)
    if not (0 < scale <= 1):
        raise ValueError(f"scale {scale} outside (0, 1]")
    top = scale * WEIGHT_DENOMINATOR
    a_max = int(top) - 1 if top.denominator == 1 else int(top)
    if a_max + 1 < p.n:
        raise SamplingExhaustedError(f"scale {scale} leaves fewer than n = {p.n} weight values")
    rng = random.Random(seed)
    for _ in range(_SAMPLE_TRIES):
        rows = tuple(
            tuple(Fraction(a, WEIGHT_DENOMINATOR) for a in sorted(rng.sample(range(a_max + 1), p.n)))
            for _ in range(p.k)
        )
        w = WeightSystem(rows)
        if is_generic(w, p):
            return w
    raise SamplingExhaustedError(f"no generic weights below {scale} after {_SAMPLE_TRIES} draws")


def small_weight_margin(p: ModuliParams) -> Fraction:
    """A bound eps such that every weight system with all weights below eps
    is generic and gives the same chamber: all stability inequalities hold
    with the integer terms at their worst corners.

    Certified per destabilizing index l by two exact checks. First, over the
    corners m_j in {0, 2g-2} and s_j in {0, k} of the integer box, the
    left side max equals the weight-free right side with the descent term at
    its own corner max (so the inequality is tight there before weights).
    Second, the descent corner max k*M_l is attained per point only by the
    strictly decreasing word, whose weight summand is a positive sum of
    weight gaps, while any other word drops at least one integer from the
    descent term and loses at most n(n-l+1)*eps in weights; the returned eps
    keeps that loss below 1.
    """
    n, g, k = p.n, p.g, p.k
    eps = Fraction(1, 2 * n * (n - 1))
    for l in range(2, n + 1):
        coef = [(n - l + 1) * j if j <= l - 1 else (l - 1) * (n - j) for j in range(1, n)]
        assert min(coef) >= 1
        lhs_max = max(
            sum(c * m for c, m in zip(coef, corner))
            for corner in product((0, 2 * g - 2), repeat=n - 1)
        )
        s_max = max(
            sum(c * s for c, s in zip(coef, corner))
            for corner in product((0, k), repeat=n - 1)
        )
        point_load = Fraction(n * (n - l + 1) * (l - 1), 2)
        if point_load.denominator != 1 or s_max != k * point_load:
            raise ValueError(f"descent corner mismatch at l = {l}")
        weight_free_rhs = Fraction(n * (n - l + 1) * (l - 1) * (2 * g - 2 + k), 2)
        if lhs_max != weight_free_rhs - k * point_load:
            raise ValueError(f"tight corner identity fails at l = {l}")
        if not n * (n - l + 1) * eps < 1:
            raise ValueError(f"weight slack too large at l = {l}")
    return eps


def tensor_transform(w: WeightSystem, beta) -> tuple[WeightSystem, tuple[int, ...]]:
    """Shift the weights at each point by beta[p] modulo 1.

    Returns the re-sorted weight system and the per-point wrap counts (how
    many weights passed 1). The wrapped weights are exactly the largest ones,
    so the new order is a cyclic rotation of the old; that is asserted.
    """
    betas = tuple(Fraction(b) for b in beta)
    if len(betas) != w.k:
        raise ValueError(f"need {w.k} shifts, got {len(betas)}")
    for b in betas:
        if not (0 <= b < 1):
            raise ValueError(f"shift {b} outside [0, 1)")
    rows = []
    wraps = []
    for row, b in zip(w.alpha, betas):
        raw = [a + b if a + b < 1 else a + b - 1 for a in row]
        if len(set(raw)) != len(raw):
            raise CollisionError(f"shift {b} collides weights {row}")
        wrap = sum(1 for a in row if a + b >= 1)
        rotated = raw[len(raw) - wrap:] + raw[: len(raw) - wrap]
        assert rotated == sorted(raw)
        rows.append(tuple(rotated))
        wraps.append(wrap)
    return WeightSystem(tuple(rows)), tuple(wraps)


def tensor_degree(p: ModuliParams, ell: int, wrap_total: int) -> int:
    """Degree d + n*ell + (total wraps) after tensoring by a degree-ell line
    bundle whose parabolic shifts wrapped wrap_total weights past 1."""
    return p.d + p.n * ell + wrap_total


def solve_beta_for_degree(w: WeightSystem, point: int, kshift: int) -> Fraction:
    """Midpoint of the beta interval at one point that wraps exactly kshift
    of its weights: [1 - alpha_{n-kshift+1}, 1 - alpha_{n-kshift}), read with
    alpha_0 = 0 and alpha_{n+1} = 1."""
    row = w.alpha[point]
    n = len(row)
    if not 0 <= kshift <= n:
        raise ValueError(f"wrap count {kshift} outside 0..{n}")
    lo = Fraction(0) if kshift == 0 else 1 - row[n - kshift]
    hi = Fraction(1) if kshift == n else 1 - row[n - kshift - 1]
    if not lo < hi:
        raise ValueError(f"no shift wraps exactly {kshift} weights at point {point}")
    return (lo + hi) / 2


def weight_denominator(w: WeightSystem) -> int:
    """Least common denominator of all weights."""
    return lcm(*(a.denominator for row in w.alpha for a in row), 1)


def walls_to_jsonable(walls) -> list[dict]:
    return [wall.to_jsonable() for wall in walls]
