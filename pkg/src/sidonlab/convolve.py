"""Exact linear convolution of integer sequences.

Two routes, both exact:

* schoolbook multiplication for product lengths up to ``NTT_THRESHOLD``
  (a numpy int64 inner loop is used whenever a rigorous coefficient bound
  rules out overflow, otherwise plain big-integer loops);
* above the threshold, number-theoretic transforms modulo several fixed
  62-bit primes of the form c * 2^32 + 1, recombined coefficientwise by the
  Chinese remainder theorem and mapped back to signed integers.

Enough primes are chosen so that their product exceeds twice a proven bound
on the largest output coefficient, so CRT reconstruction is unambiguous and
no wraparound can occur.  The transform length is the next power of two at
or above the product length, which always exceeds the full support span.
Should a coefficient bound ever exceed what the whole prime table covers,
the engine falls back to schoolbook big-integer arithmetic, which has no
size limit.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

# 62-bit primes c * 2^32 + 1 with a primitive root, supporting transform
# lengths up to 2^32.  Product of all six is about 2^371.
NTT_PRIMES: tuple[tuple[int, int], ...] = (
    (2305843185307353089, 3),
    (2305843262616764417, 11),
    (2305843322746306561, 37),
    (2305843391465783297, 3),
    (2305843546084605953, 3),
    (2305843700703428609, 3),
)

_MAX_NTT_LEN = 1 << 32

# Product lengths at or below this use schoolbook multiplication; the value
# is configurable per call for benchmarking the two routes.
NTT_THRESHOLD = 1 << 14

_INT64_SAFE = 1 << 62


def _next_pow2(n: int) -> int:
    return 1 if n <= 1 else 1 << (n - 1).bit_length()


def _coeff_bound(a: list[int], b: list[int]) -> int:
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    return min(len(a), len(b)) * ma * mb


def _schoolbook(a: list[int], b: list[int]) -> list[int]:
    if _coeff_bound(a, b) < _INT64_SAFE:
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return [int(x) for x in out]
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _ntt(a: list[int], p: int, g: int, invert: bool) -> None:
    """In-place iterative radix-2 transform modulo p; g is a primitive root."""
    n = len(a)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    length = 2
    while length <= n:
        w = pow(g, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        half = length >> 1
        for start in range(0, n, length):
            wn = 1
            for k in range(start, start + half):
                u = a[k]
                v = a[k + half] * wn % p
                a[k] = (u + v) % p
                a[k + half] = (u - v) % p
                wn = wn * w % p
        length <<= 1
    if invert:
        inv_n = pow(n, p - 2, p)
        for i in range(n):
            a[i] = a[i] * inv_n % p


def _ntt_convolve(a: list[int], b: list[int]) -> list[int] | None:
    """Multi-prime NTT convolution, or None if the prime table cannot
    cover the coefficient bound (caller falls back to schoolbook)."""
    out_len = len(a) + len(b) - 1
    length = _next_pow2(out_len)
    if length > _MAX_NTT_LEN:
        raise ValidationError(f"transform length {length} exceeds 2^32")
    bound = _coeff_bound(a, b)
    primes = []
    prod = 1
    for p, g in NTT_PRIMES:
        primes.append((p, g))
        prod *= p
        if prod > 2 * bound:
            break
    if prod <= 2 * bound:
        return None
    residues = []
    for p, g in primes:
        fa = [x % p for x in a] + [0] * (length - len(a))
        fb = [x % p for x in b] + [0] * (length - len(b))
        _ntt(fa, p, g, invert=False)
        _ntt(fb, p, g, invert=False)
        for i in range(length):
            fa[i] = fa[i] * fb[i] % p
        _ntt(fa, p, g, invert=True)
        residues.append(fa)
    out = []
    half = prod // 2
    for i in range(out_len):
        # incremental CRT over the chosen primes
        x = residues[0][i]
        m = primes[0][0]
        for (p, _), res in zip(primes[1:], residues[1:]):
            t = (res[i] - x) * pow(m, p - 2, p) % p
            x += m * t
            m *= p
        if x > half:
            x -= prod
        out.append(x)
    return out


def convolve(a: list[int], b: list[int], ntt_threshold: int | None = None) -> list[int]:
    """Exact linear convolution of two integer sequences.

    Output index k holds sum over i+j = k of a[i]*b[j] as a Python integer.
    `ntt_threshold` overrides the schoolbook/NTT switch point (the product
    length above which the NTT route is taken).
    """
    if not a or not b:
        return []
    thr = NTT_THRESHOLD if ntt_threshold is None else ntt_threshold
    out_len = len(a) + len(b) - 1
    if out_len > thr:
        out = _ntt_convolve(a, b)
        if out is not None:
            return out
    return _schoolbook(a, b)


def convolve_many(seqs: list[list[int]], ntt_threshold: int | None = None) -> list[int]:
    """Left fold of `convolve` over a nonempty list of sequences."""
    if not seqs:
        raise ValidationError("convolve_many requires at least one sequence")
    acc = list(seqs[0])
    for nxt in seqs[1:]:
        if not acc:
            return []
        acc = convolve(acc, nxt, ntt_threshold)
    return acc
