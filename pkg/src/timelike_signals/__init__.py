"""Timelike signaling through a massless field in 1+1 dimensions.

Information sent by a detector reaches the interior of its lightcone, while
the energy it injects stays on the lightcone.  The package provides the
symplectic detector-cavity engine, closed-form field commutators,
perturbative detector energy densities and classical d'Alembert checks.
"""

from .cavity import (
    CavitySpec,
    cavity_commutator_closed,
    cavity_commutator_modesum,
    coupling_weight,
    lightray_delays,
    minkowski_commutator,
    mode_frequency,
)
from .classical import (
    DomainError,
    InitialData,
    energy_density_boundary,
    energy_density_direct,
    evolve_phi,
    evolve_pi,
    left_right_fluxes,
)
from .config import ConfigError, RunConfig, parse_config, preset
from .dynamics import (
    DetectorSpec,
    GeneratorSpec,
    IntegrationError,
    evolve_samples,
    evolve_window,
    propagate,
    symplecticity_defect,
)
from .fock import CutoffError, FockConfig, evolve_fock
from .gaussian import (
    DimensionError,
    GaussianState,
    PhysicalityError,
    QuadratureLayout,
    apply_symplectic,
    embed,
    excitation_probability,
    make_coherent_state,
    make_squeezed_state,
    make_thermal_covariance,
    make_vacuum,
    reduce_to_subsystem,
)
from .scenarios import (
    ScenarioConfig,
    ScenarioResult,
    SenderInit,
    classify_separation,
    receiver_covariance_map,
    receiver_mean_map,
    run_scenario,
    sweep,
)
from .special import sine_integral
from .udw import UdwParams, energy_density, energy_profile, total_energy

__version__ = "0.1.0"
