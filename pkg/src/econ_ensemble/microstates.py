"""Exact brute-force statistical mechanics for small discrete level systems.

Counts are kept as exact rationals (``fractions.Fraction``) internally so
small instances can be compared bit-exactly against independent oracles;
public functions return floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .dos import EnsembleParams
from .errors import (DegenerateDifferenceError, InfeasibleError,
                     ResourceLimitError, TruncationError, ParameterDomainError)

DEFAULT_N_CAP = 20
MAX_LEVELS = 12


class CountingMode(Enum):
    # Pi w_l^a_l / a_l! -- the counting consistent with Z_l = exp[w e^(-a-b*eps)]
    CORRECTED_BOLTZMANN = "corrected_boltzmann"
    # N! * Pi w_l^a_l / a_l! -- labeled individuals
    DISTINGUISHABLE = "distinguishable"


@dataclass(frozen=True)
class LevelSystem:
    """Discrete wealth levels (eps_l, w_l) with strictly increasing eps."""

    levels: tuple[tuple[float, int], ...]

    def __post_init__(self) -> None:
        lv = tuple((float(e), int(w)) for e, w in self.levels)
        object.__setattr__(self, "levels", lv)
        eps = [e for e, _ in lv]
        if any(e < 0 for e in eps):
            raise ParameterDomainError("wealth levels must be non-negative")
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise ParameterDomainError("wealth levels must be strictly increasing")
        if any(w < 1 for _, w in lv):
            raise ParameterDomainError("degeneracies must be >= 1")

    @classmethod
    def from_lists(cls, eps: list[float], weights: list[int]) -> "LevelSystem":
        if len(eps) != len(weights):
            raise ParameterDomainError("eps and weights must have equal length")
        return cls(levels=tuple(zip(eps, weights)))

    @property
    def eps(self) -> tuple[float, ...]:
        return tuple(e for e, _ in self.levels)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, w in self.levels)


@dataclass(frozen=True)
class OccupationVector:
    """A distribution {a_l} plus its redundant totals."""

    a: tuple[int, ...]
    n_total: int
    e_total: float

    @classmethod
    def from_counts(cls, sys: LevelSystem, a: tuple[int, ...]) -> "OccupationVector":
        if len(a) != len(sys.levels):
            raise ParameterDomainError("occupation vector misaligned with levels")
        return cls(a=tuple(int(x) for x in a),
                   n_total=sum(a),
                   e_total=sum(ai * ei for ai, ei in zip(a, sys.eps)))


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of non-negative ints summing to n, ascending lexicographic."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def enumerate_distributions(sys: LevelSystem, n: int, e: float,
                            e_tol: float = 0.0, *,
                            n_cap: int = DEFAULT_N_CAP) -> list[OccupationVector]:
    """Every {a_l} with sum a = n and |sum a*eps - e| <= e_tol, lex ascending."""
    if n < 0:
        raise ParameterDomainError(f"n must be non-negative, got {n}")
    if n > n_cap:
        raise ResourceLimitError(f"n={n} exceeds the enumeration cap {n_cap}")
    if len(sys.levels) > MAX_LEVELS:
        raise ResourceLimitError(
            f"{len(sys.levels)} levels exceed the cap {MAX_LEVELS}")
    out = []
    for a in _compositions(n, len(sys.levels)):
        energy = sum(ai * ei for ai, ei in zip(a, sys.eps))
        if abs(energy - e) <= e_tol:
            out.append(OccupationVector.from_counts(sys, a))
    return out


def _count_exact(occ: OccupationVector, sys: LevelSystem,
                 mode: CountingMode) -> Fraction:
    num = 1
    den = 1
    for ai, wi in zip(occ.a, sys.weights):
        num *= wi ** ai
        den *= math.factorial(ai)
    omega = Fraction(num, den)
    if mode is CountingMode.DISTINGUISHABLE:
        omega *= math.factorial(occ.n_total)
    return omega


def microstate_count(occ: OccupationVector, sys: LevelSystem,
                     mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN) -> float:
    """Omega{a} for the selected counting mode."""
    if len(occ.a) != len(sys.levels):
        raise ParameterDomainError("occupation vector misaligned with levels")
    return float(_count_exact(occ, sys, mode))


def total_microstates_exact(sys: LevelSystem, n: int, e: float,
                            e_tol: float = 0.0,
                            mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                            *, n_cap: int = DEFAULT_N_CAP) -> Fraction:
    return sum((_count_exact(occ, sys, mode)
                for occ in enumerate_distributions(sys, n, e, e_tol, n_cap=n_cap)),
               Fraction(0))


def total_microstates(sys: LevelSystem, n: int, e: float, e_tol: float = 0.0,
                      mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                      *, n_cap: int = DEFAULT_N_CAP) -> float:
    """Omega(N, E) = sum of Omega{a} over all matching distributions."""
    return float(total_microstates_exact(sys, n, e, e_tol, mode, n_cap=n_cap))


def most_probable_distribution(sys: LevelSystem, n: int, e: float,
                               e_tol: float = 0.0,
                               mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                               *, n_cap: int = DEFAULT_N_CAP) -> OccupationVector:
    """The enumerated vector maximizing Omega{a}; ties go to the lex-smallest."""
    best: OccupationVector | None = None
    best_count: Fraction | None = None
    for occ in enumerate_distributions(sys, n, e, e_tol, n_cap=n_cap):
        c = _count_exact(occ, sys, mode)
        if best_count is None or c > best_count:
            best, best_count = occ, c
    if best is None:
        raise InfeasibleError(f"no distribution with N={n}, E={e} (tol {e_tol})")
    return best


def _ln_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def temperature_from_entropy(sys: LevelSystem, n: int, e: float, delta_e: float,
                             mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                             *, e_tol: float = 0.0,
                             n_cap: int = DEFAULT_N_CAP) -> float:
    """T = delta_e / (ln Omega(n, e+delta_e) - ln Omega(n, e)), forward difference."""
    w0 = total_microstates_exact(sys, n, e, e_tol, mode, n_cap=n_cap)
    w1 = total_microstates_exact(sys, n, e + delta_e, e_tol, mode, n_cap=n_cap)
    if w0 == 0 or w1 == 0:
        raise InfeasibleError(f"(n={n}, e={e}) or its +{delta_e} neighbor is infeasible")
    if w0 == w1:
        raise DegenerateDifferenceError("ln Omega is flat across the energy step")
    return delta_e / (_ln_fraction(w1) - _ln_fraction(w0))


def potential_from_entropy(sys: LevelSystem, n: int, e: float, delta_n: int,
                           mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                           *, e_tol: float = 0.0,
                           n_cap: int = DEFAULT_N_CAP) -> float:
    """mu = delta_n / (ln Omega(n+delta_n, e) - ln Omega(n, e))."""
    w0 = total_microstates_exact(sys, n, e, e_tol, mode, n_cap=n_cap)
    w1 = total_microstates_exact(sys, n + delta_n, e, e_tol, mode, n_cap=n_cap)
    if w0 == 0 or w1 == 0:
        raise InfeasibleError(f"(n={n}, e={e}) or its +{delta_n} neighbor is infeasible")
    if w0 == w1:
        raise DegenerateDifferenceError("ln Omega is flat across the individual step")
    return delta_n / (_ln_fraction(w1) - _ln_fraction(w0))


@dataclass(frozen=True)
class GrandSumResult:
    direct: float
    factorized: float
    tail_bound: float


def grand_sum_check(sys: LevelSystem, params: EnsembleParams,
                    n_cap: int = 30, e_cap: float = math.inf,
                    tolerance: float = 1e-6) -> GrandSumResult:
    """Truncated direct grand sum vs the factorized exp(sum_l w_l e^(-a-b*eps_l)).

    direct sums Omega{a} * exp(-alpha*N - beta*E) (corrected-Boltzmann
    counting) over all vectors with N <= n_cap and E <= e_cap.  The tail bound
    combines the analytic N-tail of exp(X) with the exactly-computed weight of
    the energy-excluded vectors; a bound above `tolerance` raises.
    """
    k = len(sys.levels)
    if k > 8:
        raise ResourceLimitError(f"{k} levels exceed the grand-sum cap of 8")
    if math.comb(n_cap + k, k) > 2_000_000:
        raise ResourceLimitError("n_cap too large for exhaustive enumeration")

    x = [w * math.exp(-params.alpha - params.beta * e) for e, w in sys.levels]
    big_x = sum(x)
    factorized = math.exp(big_x)

    direct = 0.0
    energy_excluded = 0.0
    for total_n in range(n_cap + 1):
        for a in _compositions(total_n, k):
            energy = sum(ai * ei for ai, ei in zip(a, sys.eps))
            weight = 1.0
            for ai, xi in zip(a, x):
                weight *= xi ** ai / math.factorial(ai)
            if energy <= e_cap:
                direct += weight
            else:
                energy_excluded += weight

    # sum_{N > m} X^N/N! <= X^(m+1)/(m+1)! * 1/(1 - X/(m+2)) for X < m+2
    m = n_cap
    if big_x >= m + 2:
        raise TruncationError(
            f"n_cap={n_cap} too small for X={big_x:.3g}; no geometric tail bound")
    n_tail = (big_x ** (m + 1) / math.factorial(m + 1)) / (1.0 - big_x / (m + 2))
    tail_bound = n_tail + energy_excluded
    if tail_bound > tolerance:
        raise TruncationError(
            f"tail bound {tail_bound:.3g} exceeds tolerance {tolerance:.3g} "
            f"(n_cap={n_cap}, e_cap={e_cap})")
    return GrandSumResult(direct=direct, factorized=factorized,
                          tail_bound=tail_bound)
