"""Equilibrium statistical model of economic systems.

Core objects: densities of states (`dos`), grand-partition observables
(`ensemble`), exact microstate enumeration (`microstates`), two-system
equilibria (`equilibria`), and the pressure-maximizing variational profiles
(`variational`).  `cli` and `service` expose the same scenario-driven
operations on the command line and over HTTP.
"""

from .dos import (DensityOfStates, EnsembleParams, MaxPressureDos,
                  ParabolicDos, TabulatedDos, ValidationReport,
                  VolumeCoupling, evaluate_dos, make_parabolic_dos,
                  validate_dos)
from .ensemble import (Observables, SweepRow, SweepTable, ln_grand_partition,
                       ln_grand_partition_quadrature, observables, population,
                       pressure, state_probability, sweep_temperature, wealth,
                       wealth_direct_integral)
from .equilibria import (FlowDirection, FlowPrediction, InvasionVerdict,
                         JointEquilibrium, flow_direction, invasion_outcome,
                         joint_equilibrium, quasi_static_trajectory)
from .microstates import (CountingMode, GrandSumResult, LevelSystem,
                          OccupationVector, enumerate_distributions,
                          grand_sum_check, microstate_count,
                          most_probable_distribution, potential_from_entropy,
                          temperature_from_entropy, total_microstates)
from .variational import (StationarityReport, VolumeProfile,
                          cutoff_level_mass, euler_lagrange_residual,
                          optimal_dos_profile, optimal_volume_profile,
                          stationarity_check, wealth_cutoff)

__version__ = "0.1.0"
