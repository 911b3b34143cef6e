"""Physical constants and unit bridges (natural units, hbar = c = 1, energies in eV)."""

import math

HBARC_EV_NM = 197.3269804
"""hbar*c in eV nm; converts nm^3 to eV^-3 via division by its cube."""

KB_EV_PER_K = 8.617333262e-5
"""Boltzmann constant in eV/K."""

J_PER_EV = 1.602176634e-19

ELECTRON_OMEGA_C_PER_TESLA = 1.15767e-4
"""Electron cyclotron energy hbar*e*B/m_e per tesla, in eV (6 digits)."""

EULER_GAMMA = 0.57721566490153286061

GOLD_OMEGA_P = 9.0
GOLD_ETA = 0.035


def kelvin_to_beta(temperature):
    """Inverse temperature in eV^-1 for a temperature in kelvin."""
    if not (temperature > 0 and math.isfinite(temperature)):
        raise ValueError(f"temperature must be positive and finite, got {temperature!r}")
    return 1.0 / (KB_EV_PER_K * temperature)


def beta_to_kelvin(beta):
    return 1.0 / (KB_EV_PER_K * beta)


def sphere_volume_nm3(radius_nm):
    return 4.0 * math.pi / 3.0 * radius_nm ** 3


def volume_to_natural(volume_nm3):
    """Volume in eV^-3."""
    return volume_nm3 / HBARC_EV_NM ** 3


def tesla_to_omega_c(b_field):
    """Electron cyclotron energy (eV) for a field in tesla."""
    return ELECTRON_OMEGA_C_PER_TESLA * b_field
