"""Seeded verification suites.

Every suite is a deterministic function of its seed: instances are drawn
from a Philox counter-based generator, so a failure can be replayed from
the (seed, trial index) pair alone.  Suites return a SuiteResult whose
`failures` list carries one human-readable witness per failed trial.

These back both the command-line `verify` subcommand and the acceptance
tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counting import (
    EquationCoeffs,
    ScaledFunction,
    brute_force_count,
    count_distinct_solutions,
    count_solutions,
)
from .sets import (
    IntegerSet,
    erdos_turan,
    mian_chowla,
    perturb_almost_sidon,
    representation_profile,
)
from .spectral import energy_via_fourier, large_sieve_diagnostic
from .transference import (
    dense_model,
    scaled_energy,
    scaled_mass_squared,
    verify_counting_bound,
    verify_model_l2,
    verify_repeated_difference_bound,
    verify_size_bound,
)

DENSE_MODEL_GRID = (
    (11, Fraction(1, 5)),
    (11, Fraction(1, 10)),
    (13, Fraction(1, 5)),
    (13, Fraction(1, 10)),
)

FOURIER_DISTANCE_C = 16


@dataclass
class SuiteResult:
    name: str
    trials: int
    passes: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "passes": self.passes,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed))


def _random_set(rng: np.random.Generator, n_max: int) -> IntegerSet:
    n = int(rng.integers(4, n_max + 1))
    size = int(rng.integers(1, max(2, n // 2) + 1))
    elems = sorted(int(x) + 1 for x in rng.choice(n, size=size, replace=False))
    return IntegerSet(tuple(elems), n)


def _random_coeffs(rng: np.random.Generator, s: int) -> EquationCoeffs:
    coeffs = []
    for _ in range(s):
        a = 0
        while a == 0:
            a = int(rng.integers(-3, 4))
        coeffs.append(a)
    return EquationCoeffs(tuple(coeffs))


def suite_oracle_equivalence(seed: int, trials: int = 200) -> SuiteResult:
    """count_solutions against brute-force enumeration on random instances
    (N <= 40, 2 <= s <= 5, |a_i| <= 3), exact equality."""
    rng = _rng(seed)
    res = SuiteResult("oracle_equivalence", trials, 0)
    for t in range(trials):
        s = int(rng.integers(2, 6))
        eq = _random_coeffs(rng, s)
        fns = [ScaledFunction.from_set(_random_set(rng, 40)) for _ in range(s)]
        fast = count_solutions(eq, fns)
        slow = brute_force_count(eq, fns)
        if fast.value == slow.value:
            res.passes += 1
        else:
            res.failures.append(
                f"trial {t}: eq {eq.coeffs} fast {fast.value} != brute {slow.value}"
            )
    return res


def suite_distinct_equivalence(seed: int, trials: int = 100) -> SuiteResult:
    """Partition inclusion-exclusion against brute-force distinct counting
    on random instances (N <= 25, s <= 5), exact equality."""
    rng = _rng(seed)
    res = SuiteResult("distinct_equivalence", trials, 0)
    for t in range(trials):
        s = int(rng.integers(2, 6))
        eq = _random_coeffs(rng, s)
        s_set = _random_set(rng, 25)
        ie = count_distinct_solutions(eq, s_set)
        slow = brute_force_count(
            eq, [ScaledFunction.from_set(s_set)] * s, distinct_only=True
        )
        if ie.value == slow.value:
            res.passes += 1
        else:
            res.failures.append(
                f"trial {t}: eq {eq.coeffs} S {s_set.elements} "
                f"IE {ie.value} != brute {slow.value}"
            )
    return res


def suite_energy_three_ways(seed: int, trials: int = 50) -> SuiteResult:
    """Profile energy, brute-force quadruple enumeration, and the
    convolution route must agree exactly on random sets with N <= 64."""
    rng = _rng(seed)
    eq = EquationCoeffs((1, -1, -1, 1))
    res = SuiteResult("energy_three_ways", trials, 0)
    for t in range(trials):
        s_set = _random_set(rng, 64)
        e_profile = representation_profile(s_set).energy
        e_brute = int(
            brute_force_count(eq, [ScaledFunction.from_set(s_set)] * 4).value
        )
        e_fourier = energy_via_fourier(s_set)
        if e_profile == e_brute == e_fourier:
            res.passes += 1
        else:
            res.failures.append(
                f"trial {t}: S {s_set.elements} profile {e_profile} "
                f"brute {e_brute} fourier {e_fourier}"
            )
    return res


def suite_lemma_inequalities(seed: int, trials: int = 100) -> SuiteResult:
    """Repeated-difference and cardinality bounds on seeded almost-Sidon
    perturbations with eta < 1; both are theorems, any failure is a bug."""
    rng = _rng(seed)
    bases = [erdos_turan(p) for p in (5, 7, 11, 13)] + [
        mian_chowla(k) for k in (8, 12, 20)
    ]
    res = SuiteResult("lemma_inequalities", trials, 0)
    done = 0
    attempts = 0
    while done < trials and attempts < 50 * trials:
        attempts += 1
        base = bases[int(rng.integers(0, len(bases)))]
        extra = int(rng.integers(0, max(2, base.size // 2) + 1))
        s_set = perturb_almost_sidon(base, extra, seed=int(rng.integers(0, 2**31)))
        prof = representation_profile(s_set)
        k = s_set.size
        eta = Fraction(max(0, prof.energy - 2 * k * k), k * k)
        if eta >= 1:
            continue
        done += 1
        rd = verify_repeated_difference_bound(s_set)
        sb = verify_size_bound(s_set)
        if rd.holds and sb.holds:
            res.passes += 1
        else:
            res.failures.append(
                f"trial {done}: S {s_set.elements} repeated-difference "
                f"{rd.lhs}<={rd.rhs}:{rd.holds} size {sb.lhs}<={sb.rhs}:{sb.holds}"
            )
    res.trials = done
    return res


def scale_to_counting_hypotheses(nu: ScaledFunction) -> ScaledFunction:
    """Halve nu until sum nu <= N and E(nu) <= N^3 hold exactly.

    This realizes the absolute-constant normalization of the majorant with
    a power of two, keeping every weight an exact rational.
    """
    n = nu.ambient_n
    while (scaled_mass_squared(nu) > Fraction(n) ** 2
           or scaled_energy(nu) > Fraction(n) ** 3):
        nu = nu.scaled_by(Fraction(1, 2))
    return nu


def suite_counting_bound(seed: int, trials: int = 50) -> SuiteResult:
    """Counting inequality on signed functions dominated by a dense-model
    majorant, s = 5.  The majorant nu = f + sqrt(N) 1_S is halved until its
    mass and energy hypotheses hold exactly; each trial draws signed
    rational multipliers in [-1, 1] per support point."""
    rng = _rng(seed)
    majorants = []
    for p in (7, 11):
        model = dense_model(erdos_turan(p), Fraction(1, 5))
        majorants.append(scale_to_counting_hypotheses(model.majorant_nu))
    # a structured set whose Bohr set is nontrivial, so one majorant has
    # genuinely smoothed weights
    evens = IntegerSet(tuple(range(2, 65, 2)), 64)
    model = dense_model(evens, Fraction(1, 4))
    majorants.append(scale_to_counting_hypotheses(model.majorant_nu))
    res = SuiteResult("counting_bound", trials, 0)
    for t in range(trials):
        nu = majorants[int(rng.integers(0, len(majorants)))]
        eq = _random_coeffs(rng, 5)
        fns = []
        for _ in range(5):
            ws = tuple(
                Fraction(int(rng.integers(-8, 9)), 8) * w for w in nu.weights
            )
            fns.append(ScaledFunction(nu.offset, ws, nu.half_power, nu.ambient_n))
        v = verify_counting_bound(nu, fns, eq)
        if v.holds and v.premise_mass_ok and v.premise_energy_ok:
            res.passes += 1
        else:
            res.failures.append(
                f"trial {t}: eq {eq.coeffs} lhs {v.lhs_abs:.6g} "
                f"rhs {v.rhs:.6g} premises {v.premise_mass_ok},{v.premise_energy_ok}"
            )
    return res


def suite_dense_model() -> SuiteResult:
    """Dense-model certification on the fixed grid of instances.

    For each (p, eps): the mass identity sum g = |S||B|, the exact
    autocorrelation bound, the Fourier distance against 16 eps N, the
    separated-frequency Bohr containment, the sign-corrected size bound,
    and the large-sieve diagnostic on the separated spectrum.
    """
    res = SuiteResult("dense_model", len(DENSE_MODEL_GRID), 0)
    for p, eps in DENSE_MODEL_GRID:
        s_set = erdos_turan(p)
        model = dense_model(s_set, eps)
        checks = {
            "mass_identity": model.diagnostics.mass_identity_holds,
            "model_l2": verify_model_l2(model).holds,
            "fourier_distance": model.diagnostics.fourier_distance
            <= FOURIER_DISTANCE_C * float(eps) * model.n_padded,
            "containment": model.containment_holds,
            "size_bound": model.size_bound.holds,
        }
        padded = IntegerSet(s_set.elements, model.n_padded)
        sieve = large_sieve_diagnostic(padded, model.spectrum)
        checks["large_sieve"] = sieve.holds
        bad = [k for k, v in checks.items() if not v]
        if bad:
            res.failures.append(f"p={p} eps={eps}: failed {bad}")
        else:
            res.passes += 1
    return res


def run_suites(which: str, seed: int, trials: int) -> list[SuiteResult]:
    """Suites for the `verify` command: lemmas, counting, model, or all."""
    if which == "lemmas":
        return [suite_lemma_inequalities(seed, trials)]
    if which == "counting":
        return [
            suite_oracle_equivalence(seed, trials),
            suite_distinct_equivalence(seed + 1, trials),
            suite_energy_three_ways(seed + 2, trials),
            suite_counting_bound(seed + 3, trials),
        ]
    if which == "model":
        return [suite_dense_model()]
    if which == "all":
        return [
            suite_lemma_inequalities(seed, trials),
            suite_oracle_equivalence(seed, trials),
            suite_distinct_equivalence(seed + 1, trials),
            suite_energy_three_ways(seed + 2, trials),
            suite_counting_bound(seed + 3, trials),
            suite_dense_model(),
        ]
    raise ValueError(f"unknown suite {which!r}")
