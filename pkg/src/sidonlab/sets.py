"""Sidon and almost-Sidon sets with exact representation statistics.

A set S inside the integer interval [1, N] is Sidon when all pairwise
differences are distinct, equivalently when its additive energy E(S), the
number of quadruples (x, x', y, y') in S^4 with x - x' = y - y', equals the
trivial-solution count 2|S|^2 - |S|.  Everything in this module is computed
in exact integer or rational arithmetic so that inequalities involving the
energy excess eta and the density delta are decided exactly.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class IntegerSet:
    """A finite set of integers inside the ambient interval [1, ambient_n]."""

    elements: tuple[int, ...]
    ambient_n: int

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(x) for x in self.elements))
        if self.ambient_n < 1:
            raise ValidationError(f"ambient_n must be positive, got {self.ambient_n}")
        for prev, cur in zip(self.elements, self.elements[1:]):
            if cur <= prev:
                raise ValidationError("elements must be strictly increasing")
        if self.elements:
            if self.elements[0] < 1 or self.elements[-1] > self.ambient_n:
                raise ValidationError(
                    f"elements must lie in [1, {self.ambient_n}]"
                )

    @property
    def size(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    def indicator(self) -> tuple[list[int], int]:
        """Dense 0/1 weight list over [min(S), max(S)] and its offset."""
        if not self.elements:
            return [], 0
        lo, hi = self.elements[0], self.elements[-1]
        w = [0] * (hi - lo + 1)
        for x in self.elements:
            w[x - lo] = 1
        return w, lo

    def padded_to_square(self) -> "IntegerSet":
        """Same elements with the ambient enlarged to the next perfect square."""
        c = ceil_sqrt(self.ambient_n)
        return IntegerSet(self.elements, c * c)


@dataclass(frozen=True)
class RepresentationProfile:
    """The difference-representation counts r_S(n) and the energy E(S).

    `counts` maps each difference n with r_S(n) > 0 to the number of ordered
    pairs (n1, n2) in S^2 with n1 - n2 = n; differences not present have
    count zero.  `energy` is the exact sum of the squared counts.
    """

    counts: dict[int, int]
    energy: int

    def count(self, n: int) -> int:
        return self.counts.get(n, 0)

    @property
    def repeated_difference_sum(self) -> int:
        """Sum of r_S(n) over nonzero n with r_S(n) > 1."""
        return sum(v for n, v in self.counts.items() if n != 0 and v > 1)


@dataclass(frozen=True)
class AlmostSidonParams:
    """Exact energy excess eta and density delta of a set.

    eta is the least nonnegative rational with E(S) <= (2 + eta)|S|^2.
    delta = |S| / ceil(sqrt(N)) is the reported density witness; the density
    hypothesis |S| >= delta * sqrt(N) is decided exactly via
    delta^2 * N <= |S|^2.
    """

    eta: Fraction
    delta: Fraction


def ceil_sqrt(n: int) -> int:
    c = isqrt(n)
    return c if c * c == n else c + 1


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin, valid for all 64-bit inputs
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def erdos_turan(p: int) -> IntegerSet:
    """Dense Sidon set {2pa + (a^2 mod p) + 1 : 0 <= a < p} in [1, 2p^2].

    Requires p prime.  The set has p elements, so its density against the
    ambient length 2p^2 is p / sqrt(2p^2) = 2^(-1/2).
    """
    if not _is_prime(p):
        raise ValidationError(f"erdos_turan requires a prime, got {p}")
    elems = sorted(2 * p * a + (a * a % p) + 1 for a in range(p))
    return IntegerSet(tuple(elems), 2 * p * p)


def mian_chowla(k: int) -> IntegerSet:
    """First k terms of the greedy Sidon sequence 1, 2, 4, 8, 13, ...

    Starting from 1, repeatedly append the least integer that keeps all
    pairwise differences distinct.  The ambient interval ends at the last
    term.
    """
    if k < 1:
        raise ValidationError(f"mian_chowla requires k >= 1, got {k}")
    elems = [1]
    diffs: set[int] = set()
    c = 1
    while len(elems) < k:
        c += 1
        new = [c - x for x in elems]
        if any(d in diffs for d in new):
            continue
        elems.append(c)
        diffs.update(new)
    return IntegerSet(tuple(elems), elems[-1])


def representation_profile(s: IntegerSet) -> RepresentationProfile:
    """All difference counts r_S(n) and the energy E(S) = sum r_S(n)^2."""
    counts: dict[int, int] = {}
    for x in s.elements:
        for y in s.elements:
            d = x - y
            counts[d] = counts.get(d, 0) + 1
    energy = sum(v * v for v in counts.values())
    return RepresentationProfile(counts, energy)


def is_sidon(s: IntegerSet) -> bool:
    """True iff E(S) equals the trivial-tuple count 2|S|^2 - |S|."""
    k = s.size
    return representation_profile(s).energy == 2 * k * k - k


def almost_sidon_params(s: IntegerSet) -> AlmostSidonParams:
    """Exact (eta, delta) for a nonempty set; see AlmostSidonParams.

    delta is capped at 1 for sets denser than sqrt(N), keeping it a valid
    density witness (delta^2 N <= |S|^2 still holds exactly).
    """
    if s.size == 0:
        raise ValidationError("almost_sidon_params requires a nonempty set")
    k = s.size
    energy = representation_profile(s).energy
    eta = max(Fraction(0), Fraction(energy, k * k) - 2)
    delta = min(Fraction(1), Fraction(k, ceil_sqrt(s.ambient_n)))
    return AlmostSidonParams(eta, delta)


def perturb_almost_sidon(s: IntegerSet, extra: int, seed: int) -> IntegerSet:
    """S together with `extra` pseudorandom new points of [1, N].

    Draws are made with a Philox counter-based generator keyed by `seed`
    (chosen for reproducibility and splittability), removing each pick from
    the candidate pool, so the result is a deterministic function of
    (S, extra, seed).  Note that adding points may either create or avoid
    difference coincidences, so no monotonicity of eta is implied.
    """
    if extra < 0:
        raise ValidationError(f"extra must be nonnegative, got {extra}")
    if s.size + extra > s.ambient_n:
        raise ValidationError(
            f"cannot add {extra} points: only {s.ambient_n - s.size} slots free"
        )
    if extra == 0:
        return s
    rng = np.random.Generator(np.random.Philox(key=seed))
    present = set(s.elements)
    pool = [n for n in range(1, s.ambient_n + 1) if n not in present]
    picks = []
    for _ in range(extra):
        j = int(rng.integers(0, len(pool)))
        picks.append(pool.pop(j))
    return IntegerSet(tuple(sorted(present | set(picks))), s.ambient_n)


# --- set file format -------------------------------------------------------
#
# Line 1:  "N <ambient_n>"
# then one element per line in increasing order, decimal, newline-terminated.
# Lines starting with '#' are comments and may appear anywhere.


def format_set_file(s: IntegerSet) -> str:
    lines = [f"N {s.ambient_n}"]
    lines.extend(str(x) for x in s.elements)
    return "\n".join(lines) + "\n"


def parse_set_file(text: str) -> IntegerSet:
    ambient = None
    elems = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ambient is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "N":
                raise ValidationError(f"expected 'N <ambient>' header, got {line!r}")
            ambient = int(parts[1])
        else:
            elems.append(int(line))
    if ambient is None:
        raise ValidationError("set file has no 'N <ambient>' header")
    return IntegerSet(tuple(elems), ambient)


def write_set_file(s: IntegerSet, path) -> None:
    if isinstance(path, io.TextIOBase):
        path.write(format_set_file(s))
        return
    with open(path, "w") as fh:
        fh.write(format_set_file(s))


def read_set_file(path) -> IntegerSet:
    with open(path) as fh:
        return parse_set_file(fh.read())
