"""Density-of-states objects and the ensemble parameter conventions.

Every quantity is a dimensionless real.  A density of states g(eps) counts
wealth levels per unit wealth; how it responds to the economic volume V is an
explicit property of the object (``VolumeCoupling``) because volume
derivatives are meaningless without it.

All objects are frozen dataclasses; every function here is pure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import OverflowRangeError, ParameterDomainError

# natural-log exponent beyond which exp() is treated as out of range
EXP_LIMIT = 700.0


class VolumeCoupling(Enum):
    PROPORTIONAL = "proportional"  # g scales linearly with V
    FIXED = "fixed"                # g does not depend on V


@dataclass(frozen=True)
class EnsembleParams:
    """Reservoir parameters (alpha, beta) plus the economic volume V.

    alpha = 1/mu (reciprocal economic potential, any real) and
    beta = 1/T (reciprocal economic temperature, strictly positive).
    """

    alpha: float
    beta: float
    volume: float = 1.0

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise ParameterDomainError(f"beta must be positive, got {self.beta}")
        if not self.volume > 0:
            raise ParameterDomainError(f"volume must be positive, got {self.volume}")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta

    @property
    def potential(self) -> float:
        if self.alpha == 0.0:
            return math.inf
        return 1.0 / self.alpha

    @classmethod
    def from_temperature(cls, temperature: float, alpha: float,
                         volume: float = 1.0) -> "EnsembleParams":
        if not temperature > 0:
            raise ParameterDomainError(f"temperature must be positive, got {temperature}")
        return cls(alpha=alpha, beta=1.0 / temperature, volume=volume)


@dataclass(frozen=True)
class ParabolicDos:
    """g(eps) = -C * V * eps * (eps - eps_star) on the support [0, eps_star].

    Carries an explicit V factor, hence always Proportional coupling.
    """

    c: float
    eps_star: float
    volume_coupling: VolumeCoupling = field(default=VolumeCoupling.PROPORTIONAL,
                                            init=False)

    def __post_init__(self) -> None:
        if not self.c > 0:
            raise ParameterDomainError(f"C must be positive, got {self.c}")
        if not self.eps_star > 0:
            raise ParameterDomainError(f"eps_star must be positive, got {self.eps_star}")

    def base_value(self, eps: float) -> float:
        """Density at unit volume; zero outside [0, eps_star]."""
        if eps < 0.0 or eps > self.eps_star:
            return 0.0
        return -self.c * eps * (eps - self.eps_star)


@dataclass(frozen=True)
class TabulatedDos:
    """Piecewise-linear density given by (eps, g) samples.

    The constructor is deliberately permissive so that broken tables can be
    built and then inspected with :func:`validate_dos`; evaluation assumes a
    strictly increasing eps grid.
    """

    samples: tuple[tuple[float, float], ...]
    volume_coupling: VolumeCoupling = VolumeCoupling.FIXED

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples",
                           tuple((float(e), float(g)) for e, g in self.samples))
        if len(self.samples) < 2:
            raise ParameterDomainError("tabulated DOS needs at least two samples")

    def base_value(self, eps: float) -> float:
        pts = self.samples
        if eps < pts[0][0] or eps > pts[-1][0]:
            return 0.0
        for (e0, g0), (e1, g1) in zip(pts, pts[1:]):
            if e0 <= eps <= e1:
                if e1 == e0:
                    return g0
                t = (eps - e0) / (e1 - e0)
                return g0 + t * (g1 - g0)
        return 0.0  # unreachable on a monotone grid


@dataclass(frozen=True)
class MaxPressureDos:
    """The pressure-maximizing density g(eps) = c3*exp(exp(a+b*eps)-a)/b + c4.

    ``alpha`` and ``beta`` here are the profile's own constants, frozen at
    construction; they coincide with the reservoir parameters the profile was
    derived for.  Grows double-exponentially, so evaluation guards the
    exponent range explicitly instead of silently returning inf.
    """

    c3: float
    c4: float
    alpha: float
    beta: float
    volume_coupling: VolumeCoupling = VolumeCoupling.FIXED

    def __post_init__(self) -> None:
        if not self.beta > 0:
            raise ParameterDomainError(f"beta must be positive, got {self.beta}")

    def _inner(self, eps: float) -> float:
        s = self.alpha + self.beta * eps
        if s > EXP_LIMIT:
            raise OverflowRangeError(f"exp({s:.3g}) out of range at eps={eps:.6g}")
        return math.exp(s)

    def base_value(self, eps: float) -> float:
        if self.c3 == 0.0:
            return self.c4
        e = self._inner(eps)
        if e - self.alpha > EXP_LIMIT:
            raise OverflowRangeError(
                f"exp(exp(alpha+beta*eps)-alpha) out of range at eps={eps:.6g}")
        return self.c3 * math.exp(e - self.alpha) / self.beta + self.c4

    def derivative(self, eps: float) -> float:
        if self.c3 == 0.0:
            return 0.0
        e = self._inner(eps)
        if e - self.alpha > EXP_LIMIT:
            raise OverflowRangeError(f"derivative out of range at eps={eps:.6g}")
        return self.c3 * e * math.exp(e - self.alpha)

    def second_derivative(self, eps: float) -> float:
        if self.c3 == 0.0:
            return 0.0
        e = self._inner(eps)
        if e - self.alpha > EXP_LIMIT:
            raise OverflowRangeError(f"second derivative out of range at eps={eps:.6g}")
        return self.c3 * self.beta * e * (1.0 + e) * math.exp(e - self.alpha)


DensityOfStates = ParabolicDos | TabulatedDos | MaxPressureDos


def make_parabolic_dos(c: float, eps_star: float) -> ParabolicDos:
    """Parabolic density with support exactly [0, eps_star]."""
    return ParabolicDos(c=c, eps_star=eps_star)


def evaluate_dos(dos: DensityOfStates, eps: float, volume: float = 1.0) -> float:
    """g(eps) at the given volume; zero outside the support."""
    if eps < 0.0:
        raise ParameterDomainError(f"eps must be non-negative, got {eps}")
    if not volume > 0:
        raise ParameterDomainError(f"volume must be positive, got {volume}")
    g = dos.base_value(eps)
    if dos.volume_coupling is VolumeCoupling.PROPORTIONAL:
        g *= volume
    return g


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def is_valid(self) -> bool:
        return not self.violations


def validate_dos(dos: DensityOfStates) -> ValidationReport:
    """Report every violated invariant; never raises."""
    bad: list[str] = []
    if isinstance(dos, ParabolicDos):
        # constructor guarantees C > 0 and eps_star > 0, nothing left to check
        pass
    elif isinstance(dos, TabulatedDos):
        eps = [e for e, _ in dos.samples]
        gs = [g for _, g in dos.samples]
        if any(e1 <= e0 for e0, e1 in zip(eps, eps[1:])):
            bad.append("eps grid is not strictly increasing")
        if eps[0] != 0.0:
            bad.append(f"first sample must sit at eps=0, got {eps[0]}")
        if any(e < 0 for e in eps):
            bad.append("negative eps sample")
        if any(g < 0 for g in gs):
            bad.append("negative density value")
        if gs[0] != 0.0:
            bad.append(f"g(0) != 0 (got {gs[0]})")
    elif isinstance(dos, MaxPressureDos):
        # the cutoff eps0 route replaces the g(inf)=0 boundary condition here
        try:
            if dos.base_value(0.0) < 0:
                bad.append("g(0) < 0")
        except OverflowRangeError:
            bad.append("g(0) exceeds the exponent range")
    else:
        bad.append(f"unknown DOS kind {type(dos).__name__}")
    return ValidationReport(violations=tuple(bad))
