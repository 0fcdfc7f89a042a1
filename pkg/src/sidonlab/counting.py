"""Exact counting of solutions to a1*x1 + ... + as*xs = 0.

The fast path dilates each input function onto the lattice m = a_i * x_i,
convolves the dilated sequences with the exact engine from `convolve`, and
reads off the coefficient at zero.  Weighted inputs are handled by clearing
denominators per function, so every intermediate is a Python integer and
the result is an exact rational.

The all-variables-distinct count is obtained from the plain counts by
inclusion-exclusion over the lattice of set partitions: merging the
variables of each block (block coefficient = sum of member coefficients)
and weighting the merged count by the partition Mobius function
mu(P) = prod over blocks of (-1)^(|b|-1) * (|b|-1)!.  Blocks whose merged
coefficient vanishes leave their variable unconstrained inside S and
contribute a free factor |S|.

`brute_force_count` is the independent oracle: direct enumeration over all
tuples of the first s-1 supports, solving for the last variable.  It never
touches the convolution engine.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import factorial, gcd, prod

import numpy as np

from .convolve import convolve_many
from .errors import BudgetExceededError, ValidationError
from .sets import IntegerSet, representation_profile

DEFAULT_BRUTE_BUDGET = 10**9
MAX_DISTINCT_VARS = 12

_CHUNK = 1 << 21
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class EquationCoeffs:
    """Nonzero integer coefficients of a linear equation in s >= 2 variables."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if len(self.coeffs) < 2:
            raise ValidationError("an equation needs at least two variables")
        if any(a == 0 for a in self.coeffs):
            raise ValidationError("all coefficients must be nonzero")

    @property
    def s(self) -> int:
        return len(self.coeffs)

    @property
    def translation_invariant(self) -> bool:
        return sum(self.coeffs) == 0


@dataclass(frozen=True)
class ScaledFunction:
    """A finitely supported function weights * N^(half_power/2).

    `weights[j]` is the exact rational weight at the integer offset + j.
    The represented function is that weight array times N^(h/2) where
    h = half_power and N = ambient_n, so with h = 0 this is a plain
    weighted function and with h = 1 it is scaled by sqrt(N).  When N is a
    perfect square every value is an exact rational for any h.  Weights may
    be signed; nonnegativity is a property of particular uses (indicators,
    measures, majorants), not of the container.
    """

    offset: int
    weights: tuple[Fraction, ...]
    half_power: int = 0
    ambient_n: int = 1

    def __post_init__(self):
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )
        if self.ambient_n < 1:
            raise ValidationError(f"ambient_n must be positive, got {self.ambient_n}")

    @classmethod
    def from_set(cls, s: IntegerSet, half_power: int = 0) -> "ScaledFunction":
        """Indicator of S (times N^(h/2)) with the set's ambient."""
        w, off = s.indicator()
        return cls(off, tuple(Fraction(x) for x in w), half_power, s.ambient_n)

    @classmethod
    def from_interval(cls, lo: int, hi: int, ambient_n: int,
                      half_power: int = 0) -> "ScaledFunction":
        if hi < lo:
            raise ValidationError("empty interval")
        return cls(lo, (Fraction(1),) * (hi - lo + 1), half_power, ambient_n)

    def trimmed(self) -> "ScaledFunction":
        """Drop zero weights at both ends (empty support gives zero length)."""
        lo = 0
        hi = len(self.weights)
        while lo < hi and self.weights[lo] == 0:
            lo += 1
        while hi > lo and self.weights[hi - 1] == 0:
            hi -= 1
        return ScaledFunction(self.offset + lo, self.weights[lo:hi],
                              self.half_power, self.ambient_n)

    def support(self) -> list[int]:
        return [self.offset + j for j, w in enumerate(self.weights) if w != 0]

    def weight_at(self, x: int) -> Fraction:
        j = x - self.offset
        if 0 <= j < len(self.weights):
            return self.weights[j]
        return Fraction(0)

    def mass(self) -> Fraction:
        """Sum of the weights (without the N^(h/2) factor)."""
        return sum(self.weights, Fraction(0))

    def l2_weights(self) -> Fraction:
        return sum((w * w for w in self.weights), Fraction(0))

    def scaled_by(self, q) -> "ScaledFunction":
        q = Fraction(q)
        return ScaledFunction(self.offset, tuple(w * q for w in self.weights),
                              self.half_power, self.ambient_n)

    def __add__(self, other: "ScaledFunction") -> "ScaledFunction":
        if (other.half_power != self.half_power
                or other.ambient_n != self.ambient_n):
            raise ValidationError("can only add functions with equal scale")
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.weights),
                 other.offset + len(other.weights))
        w = [Fraction(0)] * (hi - lo)
        for f in (self, other):
            for j, x in enumerate(f.weights):
                w[f.offset + j - lo] += x
        return ScaledFunction(lo, tuple(w), self.half_power, self.ambient_n)

    def dominated_by(self, nu: "ScaledFunction") -> bool:
        """Exact pointwise check |self| <= nu (same scale required)."""
        if (nu.half_power != self.half_power
                or nu.ambient_n != self.ambient_n):
            raise ValidationError("majorant must carry the same scale")
        for j, w in enumerate(self.weights):
            if abs(w) > nu.weight_at(self.offset + j):
                return False
        return True

    def integerized(self) -> tuple[list[int], int]:
        """Weights scaled to integers by the lcm of denominators.

        Returns (integer weights, denominator); weight[j] = ints[j]/den.
        """
        den = reduce(lambda acc, w: acc * w.denominator // gcd(acc, w.denominator),
                     self.weights, 1)
        return [int(w * den) for w in self.weights], den

    def scale_exact(self) -> Fraction:
        """N^(half_power/2) as an exact rational, when it is one."""
        h, n = self.half_power, self.ambient_n
        if h % 2 == 0:
            return Fraction(n) ** (h // 2)
        root = _exact_sqrt(n)
        if root is None:
            raise ValidationError(
                f"N^{h}/2 is irrational: {n} is not a perfect square"
            )
        return Fraction(root) ** h

    def scale_float(self) -> float:
        return float(self.ambient_n) ** (self.half_power / 2)

    def float_weights(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights], dtype=float)


def _exact_sqrt(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class SolutionCount:
    """An exact count `value * N^(half_power/2)` with the scale kept apart."""

    value: Fraction
    half_power: int = 0
    ambient_n: int | None = None

    def scaled(self) -> Fraction:
        """Materialize the count, requiring the scale to be rational."""
        if self.half_power == 0:
            return self.value
        if self.ambient_n is None:
            raise ValidationError("no ambient recorded for a scaled count")
        h, n = self.half_power, self.ambient_n
        if h % 2 == 0:
            return self.value * Fraction(n) ** (h // 2)
        root = _exact_sqrt(n)
        if root is None:
            raise ValidationError(f"{n} is not a perfect square")
        return self.value * Fraction(root) ** h


def _dilate(ints: list[int], offset: int, a: int) -> tuple[list[int], int]:
    """Place ints[j] (value at x = offset + j) at lattice point a * x."""
    n = len(ints)
    if a == 0:
        return [sum(ints)], 0
    mag = abs(a)
    out = [0] * (mag * (n - 1) + 1)
    if a > 0:
        for j, v in enumerate(ints):
            out[mag * j] = v
        return out, a * offset
    for j, v in enumerate(ints):
        out[mag * (n - 1 - j)] = v
    return out, a * (offset + n - 1)


def _common_ambient(fns) -> int | None:
    ambients = {f.ambient_n for f in fns}
    if len(ambients) == 1:
        return ambients.pop()
    if any(f.half_power != 0 for f in fns):
        raise ValidationError(
            "scaled functions in one count must share the same ambient N"
        )
    return None


def count_solutions(eq: EquationCoeffs, fns, ntt_threshold: int | None = None
                    ) -> SolutionCount:
    """Exact weighted count of solutions to sum a_i x_i = 0.

    Returns sum over integer tuples (x_1, ..., x_s) with a1 x1 + ... = 0 of
    the product of the function values, with the common N^(h/2) scale kept
    in `half_power`.  Each function is dilated to the lattice m = a_i x_i
    and the dilations are convolved exactly; the answer is the coefficient
    at zero.
    """
    fns = list(fns)
    if len(fns) != eq.s:
        raise ValidationError(
            f"equation has {eq.s} variables but {len(fns)} functions given"
        )
    ambient = _common_ambient(fns)
    half = sum(f.half_power for f in fns)
    seqs = []
    total_offset = 0
    den_product = 1
    for a, f in zip(eq.coeffs, fns):
        t = f.trimmed()
        if not t.weights:
            return SolutionCount(Fraction(0), half, ambient)
        ints, den = t.integerized()
        den_product *= den
        arr, off = _dilate(ints, t.offset, a)
        seqs.append(arr)
        total_offset += off
    out = convolve_many(seqs, ntt_threshold)
    idx = -total_offset
    coeff = out[idx] if 0 <= idx < len(out) else 0
    return SolutionCount(Fraction(coeff, den_product), half, ambient)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def _partition_mobius(part) -> int:
    m = 1
    for block in part:
        b = len(block)
        m *= (-1) ** (b - 1) * factorial(b - 1)
    return m


def count_distinct_solutions(eq: EquationCoeffs, s_set: IntegerSet,
                             ntt_threshold: int | None = None) -> SolutionCount:
    """Count solutions in S with all variables pairwise distinct.

    Inclusion-exclusion over set partitions of the variable indices; blocks
    with zero merged coefficient contribute a free factor |S| each.  Raises
    for s > 12 (Bell-number blowup); use brute_force_count there instead.
    """
    if eq.s > MAX_DISTINCT_VARS:
        raise ValidationError(
            f"s = {eq.s} > {MAX_DISTINCT_VARS}: the partition lattice is too "
            "large, use brute_force_count(distinct_only=True) instead"
        )
    ints, off = s_set.indicator()
    k = s_set.size
    total = 0
    for part in _set_partitions(list(range(eq.s))):
        merged = [sum(eq.coeffs[i] for i in block) for block in part]
        nonzero = [c for c in merged if c != 0]
        free = len(merged) - len(nonzero)
        if nonzero:
            if k == 0:
                continue
            seqs = []
            total_offset = 0
            for c in nonzero:
                arr, o = _dilate(ints, off, c)
                seqs.append(arr)
                total_offset += o
            out = convolve_many(seqs, ntt_threshold)
            idx = -total_offset
            merged_count = out[idx] if 0 <= idx < len(out) else 0
        else:
            merged_count = 1
        total += _partition_mobius(part) * k**free * merged_count
    return SolutionCount(Fraction(total), 0, s_set.ambient_n)


def _resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("SIDONLAB_BUDGET")
    if env is not None:
        return int(env)
    return DEFAULT_BRUTE_BUDGET


def brute_force_count(eq: EquationCoeffs, fns, distinct_only: bool = False,
                      budget: int | None = None) -> SolutionCount:
    """Oracle: enumerate tuples of the first s-1 supports, solve the last.

    The cost is the product of the first s-1 support sizes; it must not
    exceed the budget (argument, else SIDONLAB_BUDGET, else 10^9).  The
    enumeration never uses convolution.  Inner grids are evaluated in
    numpy int64 blocks when a rigorous product bound permits, otherwise in
    exact big-integer recursion; both are plain enumeration.
    """
    fns = [f.trimmed() for f in fns]
    if len(fns) != eq.s:
        raise ValidationError(
            f"equation has {eq.s} variables but {len(fns)} functions given"
        )
    ambient = _common_ambient(fns)
    half = sum(f.half_power for f in fns)
    if any(not f.weights for f in fns):
        return SolutionCount(Fraction(0), half, ambient)
    supports = [f.support() for f in fns]
    cost = prod(len(sup) for sup in supports[:-1])
    limit = _resolve_budget(budget)
    if cost > limit:
        raise BudgetExceededError(
            f"enumeration needs {cost} tuples, budget is {limit}"
        )
    int_weights = []
    dens = []
    for f in fns:
        ints, den = f.integerized()
        int_weights.append([ints[x - f.offset] for x in f.support()])
        dens.append(den)
    den_product = prod(dens)
    wmax = prod(max(abs(w) for w in ws) for ws in int_weights)
    if wmax < _INT64_SAFE:
        total = _enumerate_vectorized(eq.coeffs, supports, int_weights,
                                      distinct_only)
    else:
        total = _enumerate_exact(eq.coeffs, supports, int_weights,
                                 distinct_only)
    return SolutionCount(Fraction(total, den_product), half, ambient)


def _enumerate_vectorized(coeffs, supports, weights, distinct_only) -> int:
    s = len(coeffs)
    pos = [np.asarray(p, dtype=np.int64) for p in supports]
    wts = [np.asarray(w, dtype=np.int64) for w in weights]
    a_last = coeffs[-1]
    pos_last, wts_last = pos[-1], wts[-1]

    def solve_block(tsum, wprod, coords):
        q, r = np.divmod(-tsum, a_last)
        mask = r == 0
        idx = np.clip(np.searchsorted(pos_last, q), 0, len(pos_last) - 1)
        mask = mask & (pos_last[idx] == q)
        if distinct_only:
            for i in range(len(coords)):
                for j in range(i + 1, len(coords)):
                    mask = mask & (coords[i] != coords[j])
                mask = mask & (coords[i] != q)
        vals = wprod * wts_last[idx] * mask
        return int(np.sum(vals, dtype=object))

    def walk(axis, tsum, wprod, fixed):
        rem = prod(len(pos[k]) for k in range(axis, s - 1))
        if rem <= _CHUNK:
            nax = s - 1 - axis
            t = np.int64(tsum)
            w = np.int64(wprod)
            coords = [np.int64(x) for x in fixed]
            for t_i, k in enumerate(range(axis, s - 1)):
                shape = [1] * nax
                shape[t_i] = len(pos[k])
                pk = pos[k].reshape(shape)
                t = t + coeffs[k] * pk
                w = w * wts[k].reshape(shape)
                coords.append(pk)
            return solve_block(t, w, coords)
        out = 0
        for j in range(len(pos[axis])):
            x = int(pos[axis][j])
            if distinct_only and x in fixed:
                continue
            out += walk(axis + 1, tsum + coeffs[axis] * x,
                        wprod * int(wts[axis][j]), fixed + [x])
        return out

    return walk(0, 0, 1, [])


def _enumerate_exact(coeffs, supports, weights, distinct_only) -> int:
    s = len(coeffs)
    a_last = coeffs[-1]
    last = dict(zip(supports[-1], weights[-1]))

    def walk(axis, tsum, wprod, used):
        if axis == s - 1:
            q, r = divmod(-tsum, a_last)
            if r != 0:
                return 0
            if distinct_only and q in used:
                return 0
            return wprod * last.get(q, 0)
        out = 0
        for x, w in zip(supports[axis], weights[axis]):
            if distinct_only and x in used:
                continue
            out += walk(axis + 1, tsum + coeffs[axis] * x, wprod * w,
                        used | {x} if distinct_only else used)
        return out

    return walk(0, 0, 1, frozenset())


@dataclass(frozen=True)
class DegenerateBoundReport:
    """Per-shift three-variable counts against the energy bound E(S)^(3/4).

    For each shift n realized by the variables x_4 .. x_s with the last two
    merged, `max_shift_count` is the largest observed number of (x1, x2, x3)
    in S^3 with a1 x1 + a2 x2 + a3 x3 = -n.  `bound_holds` is the exact
    comparison count^4 <= E(S)^3 for every shift (fourth powers keep the
    comparison in integer arithmetic).  `degenerate_total` is the number of
    solutions with at least one repeated variable, total minus distinct
    (only filled when s <= 12).
    """

    max_shift_count: int
    bound_holds: bool
    energy: int
    shifts_checked: int
    merged_pair_total: int
    total: int
    distinct: int | None
    degenerate_total: int | None


def degenerate_bound_check(eq: EquationCoeffs, s_set: IntegerSet
                           ) -> DegenerateBoundReport:
    """Check the three-variable counts behind degenerate solutions.

    Fixes x_{s-1} = x_s (one representative of the repeated-pair classes),
    enumerates every realizable shift n = a4 x4 + ... + as xs, and verifies
    count(n)^4 <= E(S)^3 for the exact count of (x1,x2,x3) solving the
    complementary equation.  Requires s >= 5.
    """
    if eq.s < 5:
        raise ValidationError(f"degenerate bound check needs s >= 5, got {eq.s}")
    ints, off = s_set.indicator()
    if not ints:
        raise ValidationError("degenerate bound check needs a nonempty set")
    energy = representation_profile(s_set).energy
    e_cubed = energy**3

    head_seqs = []
    head_off = 0
    for c in eq.coeffs[:3]:
        arr, o = _dilate(ints, off, c)
        head_seqs.append(arr)
        head_off += o
    head = convolve_many(head_seqs)

    tail_coeffs = list(eq.coeffs[3:-2]) + [eq.coeffs[-2] + eq.coeffs[-1]]
    tail_seqs = []
    tail_off = 0
    for c in tail_coeffs:
        arr, o = _dilate(ints, off, c)
        tail_seqs.append(arr)
        tail_off += o
    tail = convolve_many(tail_seqs)

    max_count = 0
    holds = True
    shifts = 0
    merged_pair_total = 0
    for j, mult in enumerate(tail):
        if mult == 0:
            continue
        shifts += 1
        n = tail_off + j
        idx = -n - head_off
        c = head[idx] if 0 <= idx < len(head) else 0
        merged_pair_total += mult * c
        if c > max_count:
            max_count = c
        if c**4 > e_cubed:
            holds = False

    ind = ScaledFunction.from_set(s_set)
    total = int(count_solutions(eq, [ind] * eq.s).value)
    distinct = None
    degenerate = None
    if eq.s <= MAX_DISTINCT_VARS:
        distinct = int(count_distinct_solutions(eq, s_set).value)
        degenerate = total - distinct
    return DegenerateBoundReport(max_count, holds, energy, shifts,
                                 merged_pair_total, total, distinct, degenerate)
