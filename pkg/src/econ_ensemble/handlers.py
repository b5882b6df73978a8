"""Subcommand implementations shared by the CLI and the HTTP service."""
from __future__ import annotations

import math

from . import schemas as sch
from .dos import (DensityOfStates, EnsembleParams, MaxPressureDos,
                  TabulatedDos, VolumeCoupling, make_parabolic_dos,
                  validate_dos)
from .ensemble import observables, sweep_temperature
from .equilibria import flow_direction, invasion_outcome, joint_equilibrium
from .errors import (ConfigurationError, DegenerateDifferenceError,
                     InfeasibleError)
from .microstates import (CountingMode, LevelSystem, enumerate_distributions,
                          microstate_count, most_probable_distribution,
                          potential_from_entropy, temperature_from_entropy,
                          total_microstates)
from .variational import (annihilated_reading, euler_lagrange_residual,
                          cutoff_level_mass, optimal_dos_profile,
                          optimal_volume_profile, sample_profile,
                          stationarity_check, wealth_cutoff)


def build_dos(spec: sch.ParabolicSpec | sch.TabulatedSpec | sch.MaxPressureSpec
              ) -> DensityOfStates:
    if isinstance(spec, sch.ParabolicSpec):
        return make_parabolic_dos(spec.C, spec.eps_star)
    if isinstance(spec, sch.TabulatedSpec):
        return TabulatedDos(samples=tuple(tuple(s) for s in spec.samples),
                            volume_coupling=VolumeCoupling(spec.volume_coupling))
    return MaxPressureDos(c3=spec.c3, c4=spec.c4, alpha=spec.alpha,
                          beta=spec.beta)


def build_params(spec: sch.PointParams) -> EnsembleParams:
    beta = spec.beta if spec.beta is not None else 1.0 / spec.temperature
    return EnsembleParams(alpha=spec.alpha, beta=beta, volume=spec.volume)


def build_levels(spec: sch.LevelsSpec) -> LevelSystem:
    return LevelSystem.from_lists(spec.eps, spec.weights)


def _require(section, name: str):
    if section is None:
        raise ConfigurationError(f"scenario is missing the '{name}' section")
    return section


def run_observables(sc: sch.Scenario, verbose: bool = False
                    ) -> sch.ObservablesResponse:
    dos = build_dos(_require(sc.dos, "dos"))
    params = build_params(_require(sc.params, "params"))
    obs = observables(dos, params)
    mu = params.potential
    return sch.ObservablesResponse(
        ln_z=obs.ln_z, U=obs.wealth_u, N=obs.population_n, p=obs.pressure_p,
        T=params.temperature, mu=None if math.isinf(mu) else mu,
        p_derivation_signed=-obs.pressure_p if verbose else None)


def run_sweep(sc: sch.Scenario) -> sch.SweepResponse:
    dos = build_dos(_require(sc.dos, "dos"))
    sweep = _require(sc.sweep, "sweep")
    table = sweep_temperature(dos, sweep.alpha, sweep.t_min, sweep.t_max,
                              sweep.steps, sweep.volume)
    return sch.SweepResponse(rows=[
        sch.SweepRowModel(T=r.temperature, ln_z=r.ln_z, U=r.wealth_u,
                          N=r.population_n, p=r.pressure_p)
        for r in table.rows])


def run_enumerate(sc: sch.Scenario) -> sch.EnumerateResponse:
    sys = build_levels(_require(sc.levels, "levels"))
    en = _require(sc.enumerate, "enumerate")
    mode = CountingMode(en.mode)
    occs = enumerate_distributions(sys, en.n, en.e, en.e_tol, n_cap=en.n_cap)
    if not occs:
        return sch.EnumerateResponse(
            infeasible=True, distributions=[], most_probable=None,
            total_omega=0.0, temperature_quotient=None, potential_quotient=None)
    best = most_probable_distribution(sys, en.n, en.e, en.e_tol, mode,
                                      n_cap=en.n_cap)

    def quotient(fn, delta):
        try:
            return fn(sys, en.n, en.e, delta, mode, e_tol=en.e_tol,
                      n_cap=en.n_cap)
        except (InfeasibleError, DegenerateDifferenceError):
            return None

    return sch.EnumerateResponse(
        infeasible=False,
        distributions=[sch.DistributionModel(
            a=list(o.a), omega=microstate_count(o, sys, mode)) for o in occs],
        most_probable=list(best.a),
        total_omega=total_microstates(sys, en.n, en.e, en.e_tol, mode,
                                      n_cap=en.n_cap),
        temperature_quotient=quotient(temperature_from_entropy, en.delta_e),
        potential_quotient=quotient(potential_from_entropy, en.delta_n))


def run_equilibrate(sc: sch.Scenario, verbose: bool = False
                    ) -> sch.EquilibrateResponse:
    sys1 = build_levels(_require(sc.levels, "levels"))
    eq = _require(sc.equilibrate, "equilibrate")
    sys2 = build_levels(eq.levels2) if eq.levels2 is not None else sys1
    result, table = joint_equilibrium(sys1, sys2, eq.e_total, eq.n_total,
                                      CountingMode(eq.mode), n_cap=eq.n_cap,
                                      collect_table=verbose)
    wealth_flow = individual_flow = None
    if None not in (result.t1, result.t2, result.mu1, result.mu2):
        flows = flow_direction(result.t1, result.mu1, result.t2, result.mu2,
                               eq.tolerance)
        wealth_flow = flows.wealth_flow.value
        individual_flow = flows.individual_flow.value
    invasion = None
    if eq.pressures is not None:
        invasion = invasion_outcome(*eq.pressures, eq.tolerance).value
    return sch.EquilibrateResponse(
        e1=result.e1, n1=result.n1, t1=result.t1, mu1=result.mu1,
        t2=result.t2, mu2=result.mu2, t_common=result.t_common,
        mu_common=result.mu_common, omega_log_total=result.omega_log_total,
        wealth_flow=wealth_flow, individual_flow=individual_flow,
        invasion=invasion,
        splits=[sch.SplitModel(e1=s.e1, n1=s.n1,
                               omega_log_total=s.omega_log_total)
                for s in table] if verbose else None)


def run_optimize(sc: sch.Scenario) -> sch.OptimizeResponse:
    opt = _require(sc.optimize, "optimize")
    vp = optimal_volume_profile(opt.c1, opt.c2, opt.alpha, opt.beta)
    gp = optimal_dos_profile(opt.c3, opt.c4, opt.alpha, opt.beta)
    rg = opt.residual_grid
    step = (rg.max - rg.min) / (rg.points - 1)
    grid = [rg.min + i * step for i in range(rg.points)]
    max_v, max_g = euler_lagrange_residual(vp, gp, grid)

    st = opt.stationarity
    base = sample_profile(gp.base_value, st.min, st.max, st.points)
    report = stationarity_check(base, vp, opt.alpha, opt.beta,
                                st.num_perturbations, st.scale, seed=st.seed,
                                reading=st.reading)
    which = annihilated_reading(base, vp, opt.alpha, opt.beta,
                                num_perturbations=st.num_perturbations,
                                scale=st.scale, seed=st.seed)
    eps0 = level_mass = None
    if opt.b is not None:
        eps0 = wealth_cutoff(vp, opt.b)
        level_mass = cutoff_level_mass(gp, eps0)
    return sch.OptimizeResponse(
        c1=opt.c1, c2=opt.c2, c3=opt.c3, c4=opt.c4, alpha=opt.alpha,
        beta=opt.beta, v_at_zero=vp.value(0.0), g_at_zero=gp.base_value(0.0),
        eps0=eps0, level_mass=level_mass, residual_max_v=max_v,
        residual_max_g=max_g,
        stationarity=sch.StationarityModel(
            max_first_order_variation=report.max_first_order_variation,
            variations=list(report.variations), reading=report.reading,
            annihilated_reading=which))


def run_validate(sc: sch.Scenario) -> sch.ValidateResponse:
    dos = build_dos(_require(sc.dos, "dos"))
    report = validate_dos(dos)
    return sch.ValidateResponse(valid=report.is_valid,
                                violations=list(report.violations))
