"""Coherent states for the radial Coulomb problem on a 3-sphere and
their flat-space limits: spectra, wavefunctions, state construction,
and the verification suite behind the `coulombcs` command."""

__version__ = "0.1.0"

from .coherent import (CoherentLabel, DiscreteExpansion, FlatCoherentState,
                       WeightFunction, action_identity_residual,
                       build_curved_state, build_flat_state,
                       energy_expectation, evolve, moment_residuals,
                       norm_curved, norm_flat, overlap, position_amplitude,
                       swave_weight, temporal_stability_residual)
from .limits import (ConvergenceReport, bound_energy_convergence,
                     bound_wavefunction_convergence,
                     continuum_energy_convergence,
                     continuum_wavefunction_convergence,
                     factorial_convergence)
from .numerics import (QuadResult, QuadratureError, SeriesError, SeriesResult,
                       integrate_adaptive, integrate_halfline, sum_series)
from .specfun import (PoleError, gamma, gamma_abs, hyp1f1, hyp2f1, ln_gamma,
                      nu, pochhammer)
from .spectrum import (ConfigurationError, ContinuumLabel, GenNumber,
                       PhysicalConfig, Sector, SpectralIndex, continuum_label,
                       critical_index, energy_curved, energy_flat_bound,
                       energy_flat_continuum, gen_factorial_curved,
                       gen_factorial_flat, gen_number_curved, gen_number_flat,
                       spectral_index)
from .wavefunctions import (WaveParams, curved_norm_diagnostic, radial_curved,
                            radial_flat_bound, radial_flat_continuum,
                            wave_params)
