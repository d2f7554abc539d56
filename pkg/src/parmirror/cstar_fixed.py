"""Census of scaling-action fixed components of type (1, ..., 1) and the
three equal ways to total their variant E-polynomials.

A component is labeled by one permutation word per marked point plus a
vector m of twist jumps. The census filters by the degree congruence and by
strict parabolic stability; the variant total over the census, the closed
product formula, and the root-of-unity filtered sum agree exactly for
generic weights. Also houses the descent-statistics counting lemma that
makes the filtered sum collapse.
"""

from __future__ import annotations

import csv
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import kernels
from .chambers import (
    NonGenericWeightsError,
    WeightSystem,
    is_generic,
    weight_denominator,
)
from .exactpoly import (
    ONE,
    U,
    V,
    ZERO,
    BivarPoly,
    CycBivarPoly,
    CycInt,
    binom_deg_slice,
    cyc_project,
)
from .moduli import ModuliParams, dim_hitchin_base

log = logging.getLogger(__name__)


class LimitError(ValueError):
    """Requested brute-force size exceeds the supported budget."""


class NonIntegralDegreeError(ValueError):
    """The degree congruence fails, so the component degree is not an integer."""


@dataclass(frozen=True)
class PermWord:
    """A permutation of 1..n as a letter tuple."""

    letters: tuple[int, ...]

    def __post_init__(self):
        n = len(self.letters)
        if sorted(self.letters) != list(range(1, n + 1)):
            raise ValueError(f"{self.letters} is not a permutation word of 1..{n}")

    @classmethod
    def from_string(cls, text: str) -> PermWord:
        if "." in text:
            return cls(tuple(int(part) for part in text.split(".")))
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if self.n <= 9:
            return "".join(str(a) for a in self.letters)
        return ".".join(str(a) for a in self.letters)


@dataclass(frozen=True)
class PermTuple:
    """One permutation word per marked point."""

    words: tuple[PermWord, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("need at least one word")
        n = self.words[0].n
        if any(w.n != n for w in self.words):
            raise ValueError("words have mixed sizes")

    @classmethod
    def from_strings(cls, *texts: str) -> PermTuple:
        return cls(tuple(PermWord.from_string(t) for t in texts))

    @property
    def n(self) -> int:
        return self.words[0].n

    @property
    def k(self) -> int:
        return len(self.words)

    def __str__(self) -> str:
        return "|".join(str(w) for w in self.words)


def sigma(word) -> int:
    """Descent statistic: sum of the positions where the word steps down."""
    letters = word.letters if isinstance(word, PermWord) else word
    return sum(i + 1 for i in range(len(letters) - 1) if letters[i] > letters[i + 1])


def descent_stats(t: PermTuple) -> tuple[int, ...]:
    """s_j: how many of the words step down at position j."""
    n = t.n
    s = [0] * (n - 1)
    for w in t.words:
        for i in range(n - 1):
            if w.letters[i] > w.letters[i + 1]:
                s[i] += 1
    return tuple(s)


@dataclass(frozen=True)
class ComponentType11:
    """A fixed component: words, twist jumps m, descent counts s, and the
    common degree d_n of its line-bundle factors."""

    words: PermTuple
    m: tuple[int, ...]
    s: tuple[int, ...]
    d_n: int

    def __post_init__(self):
        if len(self.m) != self.words.n - 1 or len(self.s) != self.words.n - 1:
            raise ValueError("m and s must have length n-1")
        if any(mj < 0 for mj in self.m):
            raise ValueError(f"negative twist jump in {self.m}")
        if self.s != descent_stats(self.words):
            raise ValueError(f"s = {self.s} does not match the words {self.words}")


def degree_constraint(p: ModuliParams, t: PermTuple, m) -> bool:
    """Degree congruence for a type-(1,...,1) component to exist."""
    s = descent_stats(t)
    if p.n == 2:
        return (p.d + m[0] + s[0] - p.k) % 2 == 0
    total = sum((j + 1) * (m[j] + s[j]) for j in range(p.n - 1))
    return (p.d + total) % p.n == 0


def component_dn(p: ModuliParams, t: PermTuple, m) -> int:
    """Common factor degree d_n with
    n*d_n = d + sum j(m_j + s_j) - n(n-1)(g - 1 + k/2)."""
    s = descent_stats(t)
    num = p.d + sum((j + 1) * (m[j] + s[j]) for j in range(p.n - 1))
    num -= p.n * (p.n - 1) * (2 * p.g - 2 + p.k) // 2
    if num % p.n:
        raise NonIntegralDegreeError(f"degree congruence fails for m={tuple(m)}, t={t}")
    return num // p.n


def stability_check(p: ModuliParams, w: WeightSystem, t: PermTuple, m) -> bool:
    """Strict stability of the component data against every destabilizing
    index l = 2..n, evaluated in exact rational arithmetic. Reference
    implementation; the kernels must agree with it."""
    n, g, k = p.n, p.g, p.k
    s = descent_stats(t)
    for l in range(2, n + 1):
        coef = [(n - l + 1) * j if j <= l - 1 else (l - 1) * (n - j) for j in range(1, n)]
        lhs = sum(c * (mj + sj) for c, mj, sj in zip(coef, m, s))
        rhs = Fraction((n - l + 1) * (l - 1) * n * (2 * g - 2 + k), 2)
        for row, word in zip(w.alpha, t.words):
            rhs += (n - l + 1) * sum(row) - n * sum(
                row[word.letters[j] - 1] for j in range(l - 1, n)
            )
        if not lhs < rhs:
            return False
    return True


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    base, extra = divmod(total, parts)
    spans = []
    lo = 0
    for i in range(parts):
        hi = lo + base + (1 if i < extra else 0)
        spans.append((lo, hi))
        lo = hi
    return spans


def _census_rows(p: ModuliParams, wnum, den, threads: int):
    if threads <= 1:
        return kernels.enumerate_census(p.n, p.g, p.k, p.d, wnum, den)
    spans = _chunks(factorial(p.n), threads)
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        futures = [
            pool.submit(kernels.enumerate_census, p.n, p.g, p.k, p.d, wnum, den, lo, hi)
            for lo, hi in spans
        ]
        rows = []
        for f in futures:
            rows.extend(f.result())
    return rows


def enumerate_components(p: ModuliParams, w: WeightSystem, threads: int = 1):
    """All type-(1,...,1) fixed components for generic weights, in canonical
    (word tuple, m) order."""
    if not is_generic(w, p):
        raise NonGenericWeightsError(f"weights sit on a wall for {p}")
    den = weight_denominator(w)
    wnum = tuple(tuple(int(a * den) for a in row) for row in w.alpha)
    words = kernels.words_lex(p.n)
    out = []
    for t_idx, m, s, dn in _census_rows(p, wnum, den, threads):
        t = PermTuple(tuple(PermWord(words[i]) for i in t_idx))
        out.append(ComponentType11(t, tuple(int(x) for x in m), tuple(int(x) for x in s), int(dn)))
    return tuple(out)


def component_variant_epoly(p: ModuliParams, c: ComponentType11) -> BivarPoly:
    """Variant E-polynomial contribution of one component:
    (n^2g - 1) times the product of the degree-m_j slices of
    ((1-u)(1-v))^(g-1); zero once any m_j exceeds 2g-2."""
    poly = BivarPoly.constant(p.n ** (2 * p.g) - 1)
    for mj in c.m:
        poly = poly * binom_deg_slice(p.g - 1, mj)
    return poly


def variant_total_bruteforce(
    p: ModuliParams, w: WeightSystem, threads: int = 1, components=None
) -> BivarPoly:
    """Sum of the census contributions, shifted by (uv)^(dim/2).

    Computed twice: term by term over every census row, and grouped by m
    with rows beyond the slice support dropped. Both must agree.
    """
    if components is None:
        components = enumerate_components(p, w, threads)
    full = ZERO
    for c in components:
        full = full + component_variant_epoly(p, c)
    scalar = p.n ** (2 * p.g) - 1
    counts = Counter(c.m for c in components if max(c.m, default=0) <= 2 * p.g - 2)
    grouped = ZERO
    for m, cnt in sorted(counts.items()):
        term = BivarPoly.constant(cnt * scalar)
        for mj in m:
            term = term * binom_deg_slice(p.g - 1, mj)
        grouped = grouped + term
    assert full == grouped
    h = dim_hitchin_base(p)
    return full.shift(h, h)


def variant_closed_form(p: ModuliParams) -> BivarPoly:
    """((n^2g - 1)/n) (n!)^k (uv)^(dim/2) ((1-u)(1-v))^((n-1)(g-1))."""
    n, g, k = p.n, p.g, p.k
    c = (n ** (2 * g) - 1) * factorial(n) ** k
    assert c % n == 0
    h = dim_hitchin_base(p)
    return (((ONE - U) * (ONE - V)) ** ((n - 1) * (g - 1)) * (c // n)).shift(h, h)


def _root_shift_product(n: int, g: int, l: int) -> CycBivarPoly:
    """Product over j = 1..n-1 of (1 - xi^(jl) u)^(g-1) (1 - xi^(jl) v)^(g-1)."""
    poly = CycBivarPoly.one(n)
    for j in range(1, n):
        r = CycInt.root_power(n, (j * l) % n)
        fu = CycBivarPoly(n, {(0, 0): CycInt.from_int(n, 1), (1, 0): -r})
        fv = CycBivarPoly(n, {(0, 0): CycInt.from_int(n, 1), (0, 1): -r})
        poly = poly * fu ** (g - 1) * fv ** (g - 1)
    return poly


def _filter_counts_chunk(n, k, d, sig, lo, hi):
    from itertools import product

    nw = len(sig)
    counts = [[0] * n for _ in range(n)]
    ranges = [range(lo, hi)] + [range(nw)] * (k - 1)
    for t in product(*ranges):
        st = 0
        for i in t:
            st += sig[i]
        base = (d + st - k) if n == 2 else (d + st)
        counts[0][0] += 1
        for l in range(1, n):
            counts[l][(l * base) % n] += 1
    return counts


def _filter_exponent_counts(n, k, d, sig, threads):
    if threads <= 1:
        return _filter_counts_chunk(n, k, d, sig, 0, len(sig))
    spans = _chunks(len(sig), threads)
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        futures = [pool.submit(_filter_counts_chunk, n, k, d, sig, lo, hi) for lo, hi in spans]
        counts = [[0] * n for _ in range(n)]
        for f in futures:
            part = f.result()
            for l in range(n):
                for e in range(n):
                    counts[l][e] += part[l][e]
    return counts


def variant_total_cyclotomic(p: ModuliParams, threads: int = 1) -> BivarPoly:
    """Root-of-unity filtered form of the variant total.

    Sums xi^(l * congruence exponent) over every word tuple and every
    l = 0..n-1, with the m sums folded into the per-l product of
    (1 - xi^(jl) u)^(g-1) (1 - xi^(jl) v)^(g-1); then divides by n inside
    the cyclotomic ring, projects to Z[u, v], and applies the
    (n^2g - 1)(uv)^(dim/2) prefactor. Exact at every step.
    """
    n, g, k, d = p.n, p.g, p.k, p.d
    words = kernels.words_lex(n)
    sig = [sigma(w) for w in words]
    counts = _filter_exponent_counts(n, k, d, sig, threads)
    total = CycBivarPoly.zero(n)
    for l in range(n):
        scal = CycInt.zero(n)
        for e in range(n):
            if counts[l][e]:
                scal = scal + CycInt.root_power(n, e) * counts[l][e]
        if not scal.is_zero():
            total = total + _root_shift_product(n, g, l).scale(scal)
    proj = cyc_project(total.exact_div(n))
    h = dim_hitchin_base(p)
    return (proj * (n ** (2 * g) - 1)).shift(h, h)


def descent_character_sum(n: int, l: int) -> CycInt:
    """Sum over S_n of xi^(l * sigma(word)); zero for every l not divisible
    by n because each residue class of sigma has exactly (n-1)! words."""
    acc = CycInt.zero(n)
    for w in kernels.words_lex(n):
        acc = acc + CycInt.root_power(n, (l * sigma(w)) % n)
    return acc


def cyclotomic_discarded_term(p: ModuliParams) -> BivarPoly:
    """Closed form of each discarded l != 0 filter term:
    ((1-u^n)(1-v^n)/((1-u)(1-v)))^(g-1) * (n*count_S(n) - n!)^k.
    The scalar factor vanishes, so this is the zero polynomial."""
    n, g, k = p.n, p.g, p.k
    geom_u = sum((U**i for i in range(n)), ZERO)
    geom_v = sum((V**i for i in range(n)), ZERO)
    weight = (n * count_S(n) - factorial(n)) ** k
    return (geom_u * geom_v) ** (g - 1) * weight


def count_S(n: int, residue: int = 0) -> int:
    """Number of words in S_n whose descent statistic is congruent to the
    given residue mod n; equals (n-1)! for every residue."""
    if not 1 <= n <= 10:
        raise LimitError(f"count_S supports 1 <= n <= 10, got {n}")
    residue %= n
    return sum(1 for w in kernels.words_lex(n) if sigma(w) % n == residue)


def insertion_bijection_check(prev: PermWord) -> bool:
    """Insert the letter n into a word of S_(n-1) at each of the n slots and
    check that the descent statistic shifts hit every residue mod n once.

    Each insertion is classified (end, front, interior at an ascent,
    interior at a descent), its predicted shift is checked against direct
    recomputation, and the branch is logged.
    """
    w = prev.letters
    n = len(w) + 1
    if n > 10:
        raise LimitError(f"insertion check supports n <= 10, got {n}")
    sig_prev = sigma(w)
    dsc = [1 if w[i] > w[i + 1] else 0 for i in range(len(w) - 1)]
    residues = []
    for j in range(n):
        inserted = w[:j] + (n,) + w[j:]
        shift = (sigma(inserted) - sig_prev) % n
        if j == n - 1:
            branch, pred = "end", 0
        elif j == 0:
            branch, pred = "front", 1 + sum(dsc)
        elif dsc[j - 1]:
            branch, pred = "interior-descent", 1 + sum(dsc[j:])
        else:
            branch, pred = "interior-ascent", j + 1 + sum(dsc[j:])
        log.debug("insert n=%d at slot %d: %s, residue %d", n, j, branch, shift)
        if shift != pred % n:
            return False
        residues.append(shift)
    return sorted(residues) == list(range(n))


def components_to_csv(components, dest) -> None:
    """Write the census as CSV: words, m, s, d_n, homogeneous degree."""
    own = isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__")
    fh = open(dest, "w", newline="") if own else dest
    try:
        writer = csv.writer(fh)
        writer.writerow(["words", "m", "s", "d_n", "degree"])
        for c in components:
            writer.writerow(
                [
                    str(c.words),
                    " ".join(str(x) for x in c.m),
                    " ".join(str(x) for x in c.s),
                    c.d_n,
                    sum(c.m),
                ]
            )
    finally:
        if own:
            fh.close()
