"""Two-system analysis: joint equilibrium, flow direction, invasion verdicts.

The flow and invasion predicates are pure comparisons with a relative
tolerance band; joint equilibrium is an exhaustive product-maximization over
all lattice splits, which is the ground truth the flow corollaries are
checked against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .dos import DensityOfStates, EnsembleParams
from .ensemble import Observables, observables
from .errors import (InfeasibleError, NumericalError, ParameterDomainError)
from .microstates import (CountingMode, LevelSystem, total_microstates_exact)

DEFAULT_TOLERANCE = 1e-9


class FlowDirection(Enum):
    ONE_TO_TWO = "one_to_two"
    TWO_TO_ONE = "two_to_one"
    NONE = "none"


@dataclass(frozen=True)
class FlowPrediction:
    wealth_flow: FlowDirection
    individual_flow: FlowDirection


class InvasionVerdict(Enum):
    FIRST_INVADES_SECOND = "first_invades_second"
    SECOND_INVADES_FIRST = "second_invades_first"
    DYNAMIC_EQUILIBRIUM = "dynamic_equilibrium"


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b))


def flow_direction(t1: float, mu1: float, t2: float, mu2: float,
                   tol: float = DEFAULT_TOLERANCE) -> FlowPrediction:
    """Wealth flows from higher T to lower T, individuals from higher mu to lower mu."""
    if not (t1 > 0 and t2 > 0):
        raise ParameterDomainError("temperatures must be positive")
    if _close(t1, t2, tol):
        wflow = FlowDirection.NONE
    elif t1 > t2:
        wflow = FlowDirection.ONE_TO_TWO
    else:
        wflow = FlowDirection.TWO_TO_ONE
    if _close(mu1, mu2, tol):
        iflow = FlowDirection.NONE
    elif mu1 > mu2:
        iflow = FlowDirection.ONE_TO_TWO
    else:
        iflow = FlowDirection.TWO_TO_ONE
    return FlowPrediction(wealth_flow=wflow, individual_flow=iflow)


def invasion_outcome(p1: float, p2: float,
                     tol: float = DEFAULT_TOLERANCE) -> InvasionVerdict:
    """The larger-pressure system invades; equal within tol is dynamic equilibrium."""
    if _close(p1, p2, tol):
        return InvasionVerdict.DYNAMIC_EQUILIBRIUM
    if p1 > p2:
        return InvasionVerdict.FIRST_INVADES_SECOND
    return InvasionVerdict.SECOND_INVADES_FIRST


@dataclass(frozen=True)
class JointEquilibrium:
    e1: int
    n1: int
    t1: float | None
    mu1: float | None
    t2: float | None
    mu2: float | None
    t_common: float | None
    mu_common: float | None
    omega_log_total: float


@dataclass(frozen=True)
class SplitTableEntry:
    e1: int
    n1: int
    omega_log_total: float


def _ln_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def _quotient(lo: Fraction, hi: Fraction, step: float) -> float | None:
    """1/derivative from a lattice difference of ln Omega; None if degenerate."""
    if lo == 0 or hi == 0:
        return None
    d = _ln_fraction(hi) - _ln_fraction(lo)
    if d == 0.0:
        return None
    return step / d


def _lattice_reciprocal_slope(omega, coord: int, lo_ok: bool, hi_ok: bool,
                              at, step: int = 1) -> float | None:
    """Central difference quotient where both neighbors exist, else one-sided."""
    w0 = at(coord)
    if lo_ok and hi_ok:
        return _quotient(at(coord - step), at(coord + step), 2.0 * step)
    if hi_ok:
        return _quotient(w0, at(coord + step), float(step))
    if lo_ok:
        return _quotient(at(coord - step), w0, float(step))
    return None


def joint_equilibrium(sys1: LevelSystem, sys2: LevelSystem, e_total: int,
                      n_total: int,
                      mode: CountingMode = CountingMode.CORRECTED_BOLTZMANN,
                      *, n_cap: int = 20,
                      collect_table: bool = False
                      ) -> tuple[JointEquilibrium, list[SplitTableEntry]]:
    """Exhaustive search over integer splits (e1, n1) maximizing ln Omega1 + ln Omega2.

    Works on the integer energy lattice, so level energies should be integers.
    Ties go to the lexicographically smallest (e1, n1).  Difference-quotient T
    and mu are reported per subsystem at the optimum (None when degenerate).
    """
    if e_total < 0 or n_total < 0:
        raise ParameterDomainError("e_total and n_total must be non-negative")

    def omega(sys: LevelSystem, n: int, e: int) -> Fraction:
        if n < 0 or e < 0:
            return Fraction(0)
        return total_microstates_exact(sys, n, float(e), 1e-9, mode, n_cap=n_cap)

    best: tuple[int, int] | None = None
    best_prod: Fraction | None = None
    table: list[SplitTableEntry] = []
    for e1 in range(e_total + 1):
        for n1 in range(n_total + 1):
            w1 = omega(sys1, n1, e1)
            if w1 == 0:
                continue
            w2 = omega(sys2, n_total - n1, e_total - e1)
            if w2 == 0:
                continue
            prod = w1 * w2
            if collect_table:
                table.append(SplitTableEntry(e1=e1, n1=n1,
                                             omega_log_total=_ln_fraction(prod)))
            if best_prod is None or prod > best_prod:
                best, best_prod = (e1, n1), prod
    if best is None:
        raise InfeasibleError("no feasible split of (e_total, n_total)")

    e1, n1 = best
    e2, n2 = e_total - e1, n_total - n1

    def t_of(sys: LevelSystem, n: int, e: int) -> float | None:
        return _lattice_reciprocal_slope(
            omega, e,
            lo_ok=e - 1 >= 0 and omega(sys, n, e - 1) != 0,
            hi_ok=omega(sys, n, e + 1) != 0,
            at=lambda ee: omega(sys, n, ee))

    def mu_of(sys: LevelSystem, n: int, e: int) -> float | None:
        return _lattice_reciprocal_slope(
            omega, n,
            lo_ok=n - 1 >= 0 and omega(sys, n - 1, e) != 0,
            hi_ok=omega(sys, n + 1, e) != 0,
            at=lambda nn: omega(sys, nn, e))

    t1, mu1 = t_of(sys1, n1, e1), mu_of(sys1, n1, e1)
    t2, mu2 = t_of(sys2, n2, e2), mu_of(sys2, n2, e2)
    t_common = None if (t1 is None or t2 is None) else 0.5 * (t1 + t2)
    mu_common = None if (mu1 is None or mu2 is None) else 0.5 * (mu1 + mu2)
    result = JointEquilibrium(e1=e1, n1=n1, t1=t1, mu1=mu1, t2=t2, mu2=mu2,
                              t_common=t_common, mu_common=mu_common,
                              omega_log_total=_ln_fraction(best_prod))
    return result, table


def quasi_static_trajectory(dos: DensityOfStates,
                            schedule: list[EnsembleParams]) -> list[Observables]:
    """Slow parameter change modeled as a chain of equilibria."""
    if not schedule:
        raise ParameterDomainError("schedule must be non-empty")
    out = []
    for i, params in enumerate(schedule):
        try:
            out.append(observables(dos, params))
        except NumericalError as exc:
            raise type(exc)(f"schedule point {i}: {exc}") from exc
    return out
