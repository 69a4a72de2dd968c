"""Analytic layer of the ring model.

Units convention: hbar = m* = e = 1 throughout, with the confinement
frequency ``omega0`` as the free scale.  The characteristic radius is then
``r0 = sqrt(1/(2*omega0))``; choosing ``omega0 = 1/2`` makes ``r0 = 1``,
which is the convention used for figure-style sweeps.

The confining profile is a superposition of a quadratic well and an inverse
quadratic core,

    U(r) = omega0**2 * r**2 / 2 + a / (2 r**2) - omega0 * sqrt(a),

whose sole minimum U(r_min) = 0 sits at r_min = sqrt(2) * a**(1/4) * r0.
A uniform transverse field enters through the cyclotron frequency omega_c
and a flux line through the dimensionless Aharonov-Bohm number nu.
"""

import math
from dataclasses import dataclass

__all__ = [
    "RingParams",
    "QuantumState",
    "DerivedScales",
    "SingularStateError",
    "derive_scales",
    "potential",
    "energy",
    "persistent_current",
    "magnetization",
]


class SingularStateError(ValueError):
    """A quantity is undefined for the requested (params, state) combination."""


@dataclass(frozen=True)
class RingParams:
    """Physical parameters of the ring.

    a       : dimensionless antidot (core repulsion) strength, >= 0
    omega0  : confinement frequency, > 0
    omega_c : cyclotron frequency of the uniform field, >= 0
    nu      : Aharonov-Bohm flux in units of the flux quantum
    """

    a: float = 0.0
    omega0: float = 1.0
    omega_c: float = 0.0
    nu: float = 0.0

    def __post_init__(self):
        if self.a < 0:
            raise ValueError(f"antidot strength must be >= 0, got {self.a}")
        if self.omega0 <= 0:
            raise ValueError(f"omega0 must be > 0, got {self.omega0}")
        if self.omega_c < 0:
            raise ValueError(f"omega_c must be >= 0, got {self.omega_c}")
        if not math.isfinite(self.nu):
            raise ValueError("nu must be finite")

    @property
    def r0(self):
        """Characteristic confinement radius sqrt(1/(2*omega0))."""
        return math.sqrt(1.0 / (2.0 * self.omega0))


@dataclass(frozen=True)
class QuantumState:
    """Orbital labels: principal n >= 0 and magnetic m (any integer)."""

    n: int = 0
    m: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"principal quantum number must be >= 0, got {self.n}")


@dataclass(frozen=True)
class DerivedScales:
    """Cached field- and state-dependent scales for a (params, state) pair."""

    omega_eff: float
    r_eff: float
    lam: float
    m_phi: float
    r0: float
    r_min: float


def derive_scales(params: RingParams, state: QuantumState) -> DerivedScales:
    """Effective frequency/length and the radial order for one orbital.

    omega_eff = sqrt(omega0**2 + omega_c**2 / 4)
    r_eff     = sqrt(1 / (2 * omega_eff))
    m_phi     = m + nu
    lam       = sqrt(m_phi**2 + a)
    """
    omega_eff = math.hypot(params.omega0, 0.5 * params.omega_c)
    m_phi = state.m + params.nu
    return DerivedScales(
        omega_eff=omega_eff,
        r_eff=math.sqrt(1.0 / (2.0 * omega_eff)),
        lam=math.sqrt(m_phi * m_phi + params.a),
        m_phi=m_phi,
        r0=params.r0,
        r_min=math.sqrt(2.0) * params.a ** 0.25 * params.r0,
    )


def potential(params: RingParams, r: float) -> float:
    """Radial confinement U(r); zero at its minimum r_min."""
    if r < 0 or (r == 0 and params.a > 0):
        raise ValueError(f"potential undefined at r={r} for a={params.a}")
    if r == 0:
        return 0.0
    w0 = params.omega0
    return 0.5 * w0 * w0 * r * r + 0.5 * params.a / (r * r) - w0 * math.sqrt(params.a)


def energy(params: RingParams, state: QuantumState) -> float:
    """Orbital energy E_nm = omega_eff (2n + lam + 1) + m_phi omega_c / 2 - omega0 sqrt(a)."""
    s = derive_scales(params, state)
    return (
        s.omega_eff * (2 * state.n + s.lam + 1)
        + 0.5 * s.m_phi * params.omega_c
        - params.omega0 * math.sqrt(params.a)
    )


def persistent_current(params: RingParams, state: QuantumState) -> float:
    """Equilibrium azimuthal current J_nm = -dE/dphi_AB.

    Closed form (units e = hbar = m* = 1):

        J = -(omega0 / 2 pi) [ (m_phi / lam) sqrt(1 + (omega_c / 2 omega0)**2)
                               + omega_c / (2 omega0) ]

    Undefined when lam = 0 (dot geometry with m_phi = 0), where the m_phi/lam
    slope is singular.
    """
    s = derive_scales(params, state)
    if s.lam == 0.0:
        raise SingularStateError(
            "persistent current is undefined at lam=0 (a=0 with m + nu = 0)"
        )
    ratio = params.omega_c / params.omega0
    return -(params.omega0 / (2 * math.pi)) * (
        (s.m_phi / s.lam) * math.sqrt(1.0 + 0.25 * ratio * ratio) + 0.5 * ratio
    )


def magnetization(params: RingParams, state: QuantumState) -> float:
    """Orbital magnetization M_nm = -dE/dB (units e = hbar = m* = 1)."""
    s = derive_scales(params, state)
    return -0.5 * (
        0.5 * (params.omega_c / s.omega_eff) * (2 * state.n + s.lam + 1) + s.m_phi
    )
