"""Unit conventions and conversions.

All physics internals work in micrometres and picoseconds:

* wavevectors k, q          -> rad/um
* angular frequencies       -> rad/ps
* times and delays          -> ps
* transverse coordinates    -> um

Public configuration objects keep the bench units (mm for macroscopic
distances, nm for wavelengths, um for beam waists) in explicitly suffixed
field names; conversion happens once, at the boundary.
"""

import math

C_UM_PER_PS = 299.792458  # speed of light in vacuum

MM_TO_UM = 1.0e3
NM_TO_UM = 1.0e-3


def omega_from_wavelength_nm(wavelength_nm):
    """Angular frequency (rad/ps) of a vacuum wavelength given in nm."""
    return 2.0 * math.pi * C_UM_PER_PS / (wavelength_nm * NM_TO_UM)


def wavelength_nm_from_omega(omega_rad_ps):
    """Vacuum wavelength (nm) of an angular frequency given in rad/ps."""
    return 2.0 * math.pi * C_UM_PER_PS / omega_rad_ps / NM_TO_UM


def k_air(omega_rad_ps):
    """Vacuum/air wavenumber omega/c in rad/um."""
    return omega_rad_ps / C_UM_PER_PS
