"""The exact convolution engine: schoolbook and NTT/CRT routes agree."""

import numpy as np
import pytest

from sidonlab.convolve import (
    NTT_PRIMES,
    _ntt,
    _schoolbook,
    convolve,
    convolve_many,
)


def slow_reference(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_prime_table():
    for p, g in NTT_PRIMES:
        assert (p - 1) % (1 << 32) == 0
        assert p.bit_length() == 62
        # g generates the full multiplicative group: nontrivial for the
        # prime factors 2 and (p-1)/2^32 (odd part is prime by search)
        assert pow(g, (p - 1) // 2, p) != 1
        odd = (p - 1) >> 32
        assert pow(g, (p - 1) // odd, p) != 1


def test_ntt_roundtrip():
    p, g = NTT_PRIMES[0]
    vals = [3, 1, 4, 1, 5, 9, 2, 6]
    a = list(vals)
    _ntt(a, p, g, invert=False)
    _ntt(a, p, g, invert=True)
    assert a == vals


def test_basic():
    assert convolve([1, 2], [3, 4]) == [3, 10, 8]
    assert convolve([1], [5]) == [5]
    assert convolve([], [1, 2]) == []
    assert convolve([1, 2], []) == []


def test_signed_small():
    a = [3, -1, 0, 7]
    b = [-2, 5, 1]
    assert convolve(a, b) == slow_reference(a, b)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_schoolbook_vs_ntt_random(seed):
    rng = np.random.Generator(np.random.Philox(key=seed))
    for _ in range(20):
        la = int(rng.integers(1, 60))
        lb = int(rng.integers(1, 60))
        a = [int(x) for x in rng.integers(-10**6, 10**6, size=la)]
        b = [int(x) for x in rng.integers(-10**6, 10**6, size=lb)]
        school = convolve(a, b, ntt_threshold=10**9)
        ntt = convolve(a, b, ntt_threshold=1)
        assert school == ntt == slow_reference(a, b)


def test_big_values_use_more_primes():
    # coefficients near 2^120 force more than two primes in the CRT
    rng = np.random.Generator(np.random.Philox(key=9))
    a = [int(x) * 2**100 + int(y) for x, y in
         zip(rng.integers(-10**6, 10**6, size=9), rng.integers(0, 100, size=9))]
    b = [int(x) * 2**100 for x in rng.integers(-10**6, 10**6, size=7)]
    assert convolve(a, b, ntt_threshold=1) == slow_reference(a, b)


def test_values_beyond_prime_capacity_fall_back():
    # products around 2^800 exceed the six-prime CRT capacity; the engine
    # must still be exact through the schoolbook fallback
    a = [2**400 + 1, -(2**399), 17]
    b = [2**400 - 3, 2**398]
    assert convolve(a, b, ntt_threshold=1) == slow_reference(a, b)


def test_int64_overflow_edge():
    # bound check must route near-2^62 products away from the int64 path
    big = 2**31
    a = [big] * 40
    b = [big] * 40
    out = convolve(a, b)
    assert out[39] == 40 * big * big


def test_pure_python_schoolbook_matches_numpy_path():
    a = [2**40, -(2**41), 3]
    b = [2**40, 5]
    assert _schoolbook(a, b) == slow_reference(a, b)


def test_convolve_many_associative():
    rng = np.random.Generator(np.random.Philox(key=4))
    seqs = [[int(x) for x in rng.integers(-9, 10, size=int(rng.integers(1, 8)))]
            for _ in range(4)]
    folded = convolve_many(seqs)
    manual = slow_reference(slow_reference(slow_reference(seqs[0], seqs[1]),
                                           seqs[2]), seqs[3])
    assert folded == manual


def test_threshold_boundary():
    # exactly at the threshold stays schoolbook, one beyond goes NTT;
    # both must agree
    a = list(range(1, 130))
    b = list(range(1, 130))
    out_len = len(a) + len(b) - 1
    assert convolve(a, b, ntt_threshold=out_len) == \
        convolve(a, b, ntt_threshold=out_len - 1)
