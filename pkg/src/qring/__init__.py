"""qring: a 2D quantum ring in superposed uniform and Aharonov-Bohm fields.

The package computes the single-electron spectrum, persistent current,
magnetization, position/momentum radial waveforms and the standard
quantum-information measures (Shannon, Fisher, Onicescu, CGL complexity,
Renyi, Tsallis, second moments) for the quadratic-plus-inverse-quadratic
ring potential, in units hbar = m* = e = 1.
"""

__version__ = "0.1.0"

from .model import (
    RingParams,
    QuantumState,
    DerivedScales,
    SingularStateError,
    derive_scales,
    potential,
    energy,
    persistent_current,
    magnetization,
)
from .quadrature import (
    QuadConfig,
    QuadResult,
    QuadratureError,
    integrate_finite,
    integrate_semi_infinite,
)
from .waveforms import (
    GridDump,
    dump_grid,
    radial_position,
    radial_momentum,
    qd_ground_momentum,
)
from .measures import (
    MeasureSet,
    measure_bundle,
    shannon_rho,
    shannon_rho_closed_n0,
    shannon_gamma,
    shannon_gamma_closed_qd,
    fisher_rho,
    fisher_rho_integral,
    fisher_gamma,
    onicescu_rho,
    onicescu_rho_closed_n0,
    onicescu_gamma,
    onicescu_gamma_closed_qd,
    cgl,
    r2_moment,
    k2_moment,
    k2_closed_qd,
    renyi,
    renyi_closed_qd,
    renyi_conjugate_limit_sum_qd,
    tsallis,
)

__all__ = [
    "__version__",
    "RingParams",
    "QuantumState",
    "DerivedScales",
    "SingularStateError",
    "derive_scales",
    "potential",
    "energy",
    "persistent_current",
    "magnetization",
    "QuadConfig",
    "QuadResult",
    "QuadratureError",
    "integrate_finite",
    "integrate_semi_infinite",
    "GridDump",
    "dump_grid",
    "radial_position",
    "radial_momentum",
    "qd_ground_momentum",
    "MeasureSet",
    "measure_bundle",
    "shannon_rho",
    "shannon_rho_closed_n0",
    "shannon_gamma",
    "shannon_gamma_closed_qd",
    "fisher_rho",
    "fisher_rho_integral",
    "fisher_gamma",
    "onicescu_rho",
    "onicescu_rho_closed_n0",
    "onicescu_gamma",
    "onicescu_gamma_closed_qd",
    "cgl",
    "r2_moment",
    "k2_moment",
    "k2_closed_qd",
    "renyi",
    "renyi_closed_qd",
    "renyi_conjugate_limit_sum_qd",
    "tsallis",
]
