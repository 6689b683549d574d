"""Temperature-dependent dispersion for the type-II ppKTP process.

Provides Sellmeier refractive indices with thermo-optic corrections,
longitudinal wavevectors, the quasi-phase-matching mismatch, the degenerate
phase-matching temperature, and the group-velocity walk-off constants that
set the arrival-time-delay window.

Coefficients live in an external JSON file (see ``data/ktp_dispersion.json``)
so the published set backing each crystal axis can be swapped without code
changes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DispersionRangeError, EvanescentWaveError, SolverError
from .units import C_UM_PER_PS, NM_TO_UM, omega_from_wavelength_nm

__all__ = [
    "SellmeierSet",
    "DispersionData",
    "CrystalConfig",
    "WalkoffConstants",
    "load_dispersion_data",
    "refractive_index",
    "poling_period",
    "kz",
    "delta_kz",
    "solve_T0",
    "walkoff_constants",
]


@dataclass(frozen=True)
class SellmeierSet:
    """One crystal axis: n^2(lambda) model plus thermo-optic correction.

    ``n^2 = constant + sum_j strength_j / (1 - resonance_um2_j / lambda^2)
    - lambda_sq_um2 * lambda^2`` with lambda in um, followed by
    ``n += n1(lambda) dT + n2(lambda) dT^2`` where n1, n2 are cubic
    polynomials in 1/lambda and dT = T - t_ref_c.
    """

    axis: str
    constant: float
    resonances: tuple[tuple[float, float], ...]  # (strength, resonance um^2)
    lambda_sq_um2: float
    thermo_linear: tuple[float, ...]      # n1 coefficients, per K
    thermo_quadratic: tuple[float, ...]   # n2 coefficients, per K^2
    t_ref_c: float
    wavelength_range_nm: tuple[float, float]
    temperature_range_c: tuple[float, float]
    citation: str = ""


@dataclass(frozen=True)
class DispersionData:
    """Loaded dispersion file: one SellmeierSet per wave plus poling expansion."""

    pump: SellmeierSet
    signal: SellmeierSet
    idler: SellmeierSet
    expansion_alpha_per_k: float
    expansion_beta_per_k2: float
    expansion_t_ref_c: float
    citation: str = ""

    def set_for(self, wave: str) -> SellmeierSet:
        try:
            return {"pump": self.pump, "signal": self.signal, "idler": self.idler}[wave]
        except KeyError:
            raise KeyError(f"unknown wave label {wave!r}; expected pump/signal/idler")


def _parse_axis(name: str, entry: dict) -> SellmeierSet:
    sel = entry["sellmeier_n_squared"]
    thermo = entry["thermo_optic"]
    return SellmeierSet(
        axis=entry["axis"],
        constant=float(sel["constant"]),
        resonances=tuple(
            (float(r["strength"]), float(r["resonance_um2"])) for r in sel["resonances"]
        ),
        lambda_sq_um2=float(sel["lambda_sq_um2"]),
        thermo_linear=tuple(float(c) for c in thermo["linear_per_k"]),
        thermo_quadratic=tuple(float(c) for c in thermo["quadratic_per_k2"]),
        t_ref_c=float(thermo["t_ref_c"]),
        wavelength_range_nm=tuple(float(x) for x in entry["wavelength_range_nm"]),
        temperature_range_c=tuple(float(x) for x in entry["temperature_range_c"]),
        citation=entry.get("citation", ""),
    )


def load_dispersion_data(path: str | Path | None = None) -> DispersionData:
    """Load a dispersion data file; the packaged ppKTP set is the default."""
    if path is None:
        text = resources.files("spdcdelay.data").joinpath("ktp_dispersion.json").read_text()
    else:
        text = Path(path).read_text()
    doc = json.loads(text)
    axes = doc["axes"]
    exp = doc["poling_expansion"]
    return DispersionData(
        pump=_parse_axis("pump", axes["pump"]),
        signal=_parse_axis("signal", axes["signal"]),
        idler=_parse_axis("idler", axes["idler"]),
        expansion_alpha_per_k=float(exp["alpha_per_k"]),
        expansion_beta_per_k2=float(exp["beta_per_k2"]),
        expansion_t_ref_c=float(exp["t_ref_c"]),
        citation=doc.get("material", ""),
    )


@dataclass(frozen=True)
class CrystalConfig:
    """Crystal geometry, poling, operating temperature and position.

    ``poling_period_um`` is the period at the expansion reference temperature
    of the dispersion data; ``z_c_mm`` is the crystal-centre position relative
    to the alignment in which pump focus and crystal centre coincide.
    """

    length_mm: float
    poling_period_um: float
    temperature_c: float
    pump_wavelength_nm: float
    z_c_mm: float = 0.0
    dispersion: DispersionData = field(default_factory=load_dispersion_data)

    def __post_init__(self):
        if self.length_mm <= 0:
            raise ValueError(f"crystal length must be positive, got {self.length_mm} mm")
        if self.poling_period_um <= 0:
            raise ValueError(f"poling period must be positive, got {self.poling_period_um} um")

    @property
    def length_um(self) -> float:
        return self.length_mm * 1.0e3

    @property
    def omega_pump(self) -> float:
        """Pump angular frequency, rad/ps."""
        return omega_from_wavelength_nm(self.pump_wavelength_nm)

    @property
    def degenerate_wavelength_nm(self) -> float:
        """Exactly twice the pump wavelength (monochromatic pump)."""
        return 2.0 * self.pump_wavelength_nm


@dataclass(frozen=True)
class WalkoffConstants:
    """First-order expansion constants of the phase mismatch at degeneracy.

    ``d_ps_per_mm`` is the inverse-group-velocity difference between signal
    and idler; ``e_per_mm_k`` the temperature derivative of the mismatch.
    ``t0_c`` and the finite-difference steps are carried as metadata.
    """

    d_ps_per_mm: float
    e_per_mm_k: float
    n_pump: float
    n_mean: float
    t0_c: float
    omega_step_rad_ps: float
    temperature_step_k: float

    @property
    def d_ps_per_um(self) -> float:
        return self.d_ps_per_mm * 1.0e-3

    @property
    def e_per_um_k(self) -> float:
        return self.e_per_mm_k * 1.0e-3

    def walkoff_window_ps(self, length_mm: float) -> float:
        """|D|*L, the maximum birefringent walk-off delay over the crystal."""
        return abs(self.d_ps_per_mm) * length_mm


def _check_range(value, lo, hi, name, axis):
    arr = np.asarray(value, dtype=float)
    if np.any(arr < lo) or np.any(arr > hi):
        bad = arr[(arr < lo) | (arr > hi)].flat[0]
        raise DispersionRangeError(
            f"{name}={bad:g} outside validity range [{lo:g}, {hi:g}] of axis {axis!r}"
        )


def refractive_index(sellmeier: SellmeierSet, wavelength_nm, temperature_c):
    """n(lambda, T) for one axis. Accepts scalar or array wavelengths.

    Raises DispersionRangeError outside the validity range of the data; no
    silent extrapolation.
    """
    lo, hi = sellmeier.wavelength_range_nm
    _check_range(wavelength_nm, lo, hi, "wavelength_nm", sellmeier.axis)
    tlo, thi = sellmeier.temperature_range_c
    _check_range(temperature_c, tlo, thi, "temperature_c", sellmeier.axis)

    lam = np.asarray(wavelength_nm, dtype=float) * NM_TO_UM
    lam_sq = lam * lam
    n_sq = sellmeier.constant - sellmeier.lambda_sq_um2 * lam_sq
    for strength, resonance in sellmeier.resonances:
        n_sq = n_sq + strength / (1.0 - resonance / lam_sq)
    n = np.sqrt(n_sq)

    dt = np.asarray(temperature_c, dtype=float) - sellmeier.t_ref_c
    inv = 1.0 / lam
    n1 = sum(c * inv**m for m, c in enumerate(sellmeier.thermo_linear))
    n2 = sum(c * inv**m for m, c in enumerate(sellmeier.thermo_quadratic))
    n = n + n1 * dt + n2 * dt * dt
    if n.ndim == 0:
        return float(n)
    return n


def poling_period(cfg: CrystalConfig, temperature_c: float | None = None) -> float:
    """Poling period at temperature (um), thermally expanded from the reference."""
    disp = cfg.dispersion
    t = cfg.temperature_c if temperature_c is None else temperature_c
    dt = t - disp.expansion_t_ref_c
    return cfg.poling_period_um * (
        1.0 + disp.expansion_alpha_per_k * dt + disp.expansion_beta_per_k2 * dt * dt
    )


def kz(sellmeier: SellmeierSet, omega_rad_ps, q_um_inv, temperature_c):
    """Longitudinal wavevector sqrt((n*omega/c)^2 - |q|^2) in rad/um.

    ``q_um_inv`` is the transverse wavevector magnitude. Raises
    EvanescentWaveError when |q| exceeds n*omega/c anywhere.
    """
    omega = np.asarray(omega_rad_ps, dtype=float)
    lam_nm = 2.0e3 * np.pi * C_UM_PER_PS / omega
    n = refractive_index(sellmeier, lam_nm, temperature_c)
    k = n * omega / C_UM_PER_PS
    q = np.asarray(q_um_inv, dtype=float)
    k_sq = k * k - q * q
    if np.any(k_sq < 0.0):
        raise EvanescentWaveError(
            f"|q| exceeds n*omega/c on axis {sellmeier.axis!r}; wave is evanescent"
        )
    out = np.sqrt(k_sq)
    if out.ndim == 0:
        return float(out)
    return out


def _q_vector(q):
    """Interpret q as a transverse vector: scalars mean (q, 0)."""
    arr = np.asarray(q, dtype=float)
    if arr.ndim == 0:
        return arr[None], np.zeros(1)
    if arr.shape[-1] == 2:
        return arr[..., 0], arr[..., 1]
    raise ValueError("transverse wavevector must be a scalar or have shape (..., 2)")


def delta_kz(q_s, q_i, omega_detuning, cfg: CrystalConfig, temperature_c=None):
    """Quasi-phase-matching mismatch k_pz - k_sz - k_iz - 2*pi/Lambda(T), rad/um.

    ``omega_detuning`` is the idler detuning from degeneracy (rad/ps); the
    signal sits at the mirror frequency. ``q_s``/``q_i`` are transverse
    wavevectors: scalars are taken as the x component with q_y = 0.
    """
    t = cfg.temperature_c if temperature_c is None else temperature_c
    disp = cfg.dispersion
    omega_p = cfg.omega_pump
    omega_half = 0.5 * omega_p
    det = np.asarray(omega_detuning, dtype=float)

    qsx, qsy = _q_vector(q_s)
    qix, qiy = _q_vector(q_i)
    q_s_mag = np.hypot(qsx, qsy)
    q_i_mag = np.hypot(qix, qiy)
    q_p_mag = np.hypot(qsx + qix, qsy + qiy)

    k_p = kz(disp.pump, omega_p, q_p_mag, t)
    k_s = kz(disp.signal, omega_half - det, q_s_mag, t)
    k_i = kz(disp.idler, omega_half + det, q_i_mag, t)
    out = k_p - k_s - k_i - 2.0 * np.pi / poling_period(cfg, t)
    out = np.asarray(out)
    if out.ndim == 0 or out.size == 1:
        return float(out.reshape(-1)[0])
    return out


_T_BRACKET = (20.0, 120.0)


def solve_T0(cfg: CrystalConfig, bracket=_T_BRACKET, method="bisection", xtol_k=1.0e-6):
    """Temperature at which the collinear degenerate mismatch vanishes.

    Bracketed bisection by default (``xtol_k`` well below the 1 mK target);
    ``method="secant"`` provides an independent solver for cross-checks.
    Raises SolverError when the mismatch does not change sign in the bracket.
    """

    def f(t):
        return delta_kz(0.0, 0.0, 0.0, cfg, temperature_c=t)

    lo, hi = bracket
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise SolverError(
            f"no degenerate phase-matching root in [{lo}, {hi}] C: "
            f"delta_kz = {f_lo:.3e} .. {f_hi:.3e} 1/um"
        )

    if method == "bisection":
        while hi - lo > xtol_k:
            mid = 0.5 * (lo + hi)
            f_mid = f(mid)
            if f_mid == 0.0:
                return mid
            if np.sign(f_mid) == np.sign(f_lo):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        return 0.5 * (lo + hi)
    if method == "secant":
        a, b, f_a, f_b = lo, hi, f_lo, f_hi
        for _ in range(200):
            c = b - f_b * (b - a) / (f_b - f_a)
            c = min(max(c, bracket[0]), bracket[1])
            f_c = f(c)
            if abs(c - b) < xtol_k or f_c == 0.0:
                return c
            a, f_a, b, f_b = b, f_b, c, f_c
        raise SolverError("secant solver did not converge")
    raise ValueError(f"unknown solver method {method!r}")


def walkoff_constants(
    cfg: CrystalConfig,
    omega_step_rad_ps: float = 1.0e-3,
    temperature_step_k: float = 0.01,
) -> WalkoffConstants:
    """D, E and the reference indices at the degenerate point (Omega=0, T=T0).

    D = d k_s/d omega - d k_i/d omega (signal/idler group-slowness
    difference), E = d(delta_kz)/dT, both by centred finite differences with
    the given steps.
    """
    t0 = solve_T0(cfg)
    disp = cfg.dispersion
    omega_half = 0.5 * cfg.omega_pump
    h = omega_step_rad_ps

    def slope(sel):
        return (kz(sel, omega_half + h, 0.0, t0) - kz(sel, omega_half - h, 0.0, t0)) / (2 * h)

    d_ps_per_um = slope(disp.signal) - slope(disp.idler)

    ht = temperature_step_k
    e_per_um_k = (
        delta_kz(0.0, 0.0, 0.0, cfg, temperature_c=t0 + ht)
        - delta_kz(0.0, 0.0, 0.0, cfg, temperature_c=t0 - ht)
    ) / (2 * ht)

    lam_deg = cfg.degenerate_wavelength_nm
    n_pump = refractive_index(disp.pump, cfg.pump_wavelength_nm, t0)
    n_mean = 0.5 * (
        refractive_index(disp.signal, lam_deg, t0)
        + refractive_index(disp.idler, lam_deg, t0)
    )
    return WalkoffConstants(
        d_ps_per_mm=d_ps_per_um * 1.0e3,
        e_per_mm_k=e_per_um_k * 1.0e3,
        n_pump=float(n_pump),
        n_mean=float(n_mean),
        t0_c=t0,
        omega_step_rad_ps=omega_step_rad_ps,
        temperature_step_k=temperature_step_k,
    )
