"""Grand-partition observables lnZ, U, N, p for a density of states.

lnZ = integral_0^inf g(eps) * exp(-alpha - beta*eps) d eps.  The parabolic
density has closed forms; everything else goes through adaptive
Gauss-Kronrod quadrature (scipy's QUADPACK) at rel tol 1e-10.

Because lnZ carries a single factor exp(-alpha) for every density in this
model, the population N = -d lnZ/d alpha equals lnZ identically; that
identity is how N is computed, with the finite-difference route kept as a
test oracle.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from scipy.integrate import quad

from .dos import (DensityOfStates, EnsembleParams, MaxPressureDos,
                  ParabolicDos, TabulatedDos, VolumeCoupling, evaluate_dos)
from .errors import NumericalDomainError, ParameterDomainError

_QUAD_KW = dict(epsabs=1e-12, epsrel=1e-10, limit=200)

# Below this value of x = beta*eps_star the closed forms switch to their
# series, avoiding the beta^3/beta^4 cancellation.
_SERIES_CUTOVER = 0.5
_SERIES_TERMS = 40


def _shape3(x: float) -> float:
    """f(x)/x^3 with f(x) = (x-2) + (x+2)e^-x; series sum_{n>=3} (-1)^n (2-n) x^(n-3)/n!."""
    if x < _SERIES_CUTOVER:
        total, term_pow, fact = 0.0, 1.0, 6.0  # x^(n-3), n! starting at n=3
        for n in range(3, _SERIES_TERMS):
            total += (-1.0) ** n * (2.0 - n) / fact * term_pow
            term_pow *= x
            fact *= n + 1
        return total
    return ((x - 2.0) + (x + 2.0) * math.exp(-x)) / x ** 3


def _shape4(x: float) -> float:
    """h(x)/x^4 with h(x) = 2x-6 + (x^2+4x+6)e^-x; series sum_{n>=4} (-1)^n (n-2)(n-3) x^(n-4)/n!."""
    if x < _SERIES_CUTOVER:
        total, term_pow, fact = 0.0, 1.0, 24.0
        for n in range(4, _SERIES_TERMS):
            total += (-1.0) ** n * (n - 2.0) * (n - 3.0) / fact * term_pow
            term_pow *= x
            fact *= n + 1
        return total
    return (2.0 * x - 6.0 + (x * x + 4.0 * x + 6.0) * math.exp(-x)) / x ** 4


def ln_z_parabolic_closed_form(dos: ParabolicDos, params: EnsembleParams) -> float:
    """C V e^-alpha eps*^3 * shape(beta*eps*); the exponent typo is read as eps*."""
    x = params.beta * dos.eps_star
    return dos.c * params.volume * math.exp(-params.alpha) * dos.eps_star ** 3 * _shape3(x)


def wealth_parabolic_closed_form(dos: ParabolicDos, params: EnsembleParams) -> float:
    x = params.beta * dos.eps_star
    return dos.c * params.volume * math.exp(-params.alpha) * dos.eps_star ** 4 * _shape4(x)


def _integrate(f, lo: float, hi: float) -> float:
    val, _err = quad(f, lo, hi, **_QUAD_KW)
    return val


def _moment_quadrature(dos: DensityOfStates, params: EnsembleParams,
                       power: int) -> float:
    """integral of eps^power * g(eps) * exp(-alpha-beta*eps) over the support."""
    al, be, vol = params.alpha, params.beta, params.volume

    def integrand(eps: float) -> float:
        return eps ** power * evaluate_dos(dos, eps, vol) * math.exp(-al - be * eps)

    if isinstance(dos, ParabolicDos):
        return _integrate(integrand, 0.0, dos.eps_star)
    if isinstance(dos, TabulatedDos):
        total = 0.0
        for (e0, _), (e1, _) in zip(dos.samples, dos.samples[1:]):
            total += _integrate(integrand, e0, e1)
        return total
    if isinstance(dos, MaxPressureDos):
        if dos.c3 != 0.0:
            raise NumericalDomainError(
                "lnZ diverges: the max-pressure density grows double-exponentially "
                "on [0, inf); restrict it via a tabulated cutoff first")
        return _integrate(integrand, 0.0, math.inf)
    raise ParameterDomainError(f"unknown DOS kind {type(dos).__name__}")


def ln_grand_partition_quadrature(dos: DensityOfStates,
                                  params: EnsembleParams) -> float:
    """Quadrature route for lnZ, also the cross-check oracle for closed forms."""
    return _moment_quadrature(dos, params, 0)


def ln_grand_partition(dos: DensityOfStates, params: EnsembleParams) -> float:
    if isinstance(dos, ParabolicDos):
        return ln_z_parabolic_closed_form(dos, params)
    return ln_grand_partition_quadrature(dos, params)


def wealth_direct_integral(dos: DensityOfStates, params: EnsembleParams) -> float:
    """U as integral of eps*g*exp(-alpha-beta*eps); equivalent to -d lnZ/d beta."""
    return _moment_quadrature(dos, params, 1)


def wealth(dos: DensityOfStates, params: EnsembleParams) -> float:
    if isinstance(dos, ParabolicDos):
        return wealth_parabolic_closed_form(dos, params)
    return wealth_direct_integral(dos, params)


def population(dos: DensityOfStates, params: EnsembleParams) -> float:
    # N = -d lnZ/d alpha = lnZ because lnZ factors as exp(-alpha) * (rest)
    return ln_grand_partition(dos, params)


def pressure(dos: DensityOfStates, params: EnsembleParams) -> float:
    """p for Proportional coupling is lnZ/(beta*V); Fixed coupling gives 0.

    Sign convention: the positive closed form is reproduced; the derivation's
    leading minus would flip it, and verbose CLI output surfaces both.
    """
    if dos.volume_coupling is VolumeCoupling.FIXED:
        return 0.0
    return ln_grand_partition(dos, params) / (params.beta * params.volume)


def state_probability(e_s: float, n_s: int, params: EnsembleParams,
                      ln_z: float) -> float:
    """P(E_s, N_s) = exp(-alpha*N_s - beta*E_s) / Z for the given reservoir."""
    if e_s < 0:
        raise ParameterDomainError(f"E_s must be non-negative, got {e_s}")
    if n_s < 0:
        raise ParameterDomainError(f"N_s must be non-negative, got {n_s}")
    return math.exp(-params.alpha * n_s - params.beta * e_s - ln_z)


@dataclass(frozen=True)
class Observables:
    ln_z: float
    wealth_u: float
    population_n: float
    pressure_p: float
    params: EnsembleParams


def observables(dos: DensityOfStates, params: EnsembleParams) -> Observables:
    ln_z = ln_grand_partition(dos, params)
    u = wealth(dos, params)
    if dos.volume_coupling is VolumeCoupling.PROPORTIONAL:
        p = ln_z / (params.beta * params.volume)
    else:
        p = 0.0
    return Observables(ln_z=ln_z, wealth_u=u, population_n=ln_z, pressure_p=p,
                       params=params)


@dataclass(frozen=True)
class SweepRow:
    temperature: float
    ln_z: float
    wealth_u: float
    population_n: float
    pressure_p: float


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]


def _worker_count() -> int:
    raw = os.environ.get("ECON_ENSEMBLE_THREADS")
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def sweep_temperature(dos: DensityOfStates, alpha: float, t_min: float,
                      t_max: float, steps: int, volume: float = 1.0) -> SweepTable:
    """Observables on `steps` evenly spaced temperatures from t_min to t_max.

    steps=1 evaluates at t_min only.  Points are independent; the result is
    deterministic regardless of how many worker threads evaluate them.
    """
    if not (0 < t_min):
        raise ParameterDomainError(f"t_min must be positive, got {t_min}")
    if steps > 1 and not (t_min < t_max):
        raise ParameterDomainError("need t_min < t_max")
    if steps < 1:
        raise ParameterDomainError(f"steps must be positive, got {steps}")

    if steps == 1:
        temps = [t_min]
    else:
        dt = (t_max - t_min) / (steps - 1)
        temps = [t_min + i * dt for i in range(steps)]

    def at(t: float) -> SweepRow:
        try:
            obs = observables(dos, EnsembleParams.from_temperature(t, alpha, volume))
        except NumericalDomainError as exc:
            raise NumericalDomainError(f"T={t:.6g}: {exc}") from exc
        return SweepRow(temperature=t, ln_z=obs.ln_z, wealth_u=obs.wealth_u,
                        population_n=obs.population_n, pressure_p=obs.pressure_p)

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(at, temps))
    else:
        rows = [at(t) for t in temps]
    return SweepTable(rows=tuple(rows))
