"""Closed-form free Gaussian packets, their streamline law, and superpositions.

A free packet with initial center x0, momentum p0 and width sigma0 evolves
with complex width
    sigma_c(t) = sigma0 * (1 + i*hbar*t / (2*m*sigma0^2)),
its density width |sigma_c| spreading as
    sigma(t) = sigma0 * sqrt(1 + (hbar*t / (2*m*sigma0^2))^2),
and the amplitude

    psi(x,t) = (2*pi*sigma_c^2)^(-1/4)
               * exp(-(x - xc)^2 / (4*sigma_c*sigma0)
                     + i*p0*(x - xc)/hbar + i*E*t/hbar),

where xc = x0 + (p0/m) t and E = p0^2/(2m) (a global phase; it cannot move
rho or v).  The streamline through x(0) is the affine map

    x(t) = xc(t) + (sigma(t)/sigma0) * (x(0) - x0),

so initial ordering is preserved for all t: the 1D non-crossing rule in
closed form.  The crossover between classically-dominated and
spreading-dominated motion happens at the characteristic time
tau = 2*m*sigma0^2/hbar.
"""

import cmath
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GridTooNarrowError, NodeSingularityError
from .fields import NODE_THRESHOLD_RATIO, WaveField
from .grids import Grid1D

BOUNDARY_DECAY_RATIO = 1e-8


@dataclass(frozen=True)
class GaussianSpec:
    """Analytic parameters of one free Gaussian packet."""

    x0: float
    p0: float
    sigma0: float
    m: float = 1.0
    hbar: float = 1.0
    weight: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.sigma0 <= 0 or self.m <= 0 or self.hbar <= 0:
            raise ValueError("sigma0, m and hbar must all be positive")

    @property
    def v0(self) -> float:
        return self.p0 / self.m

    @property
    def energy(self) -> float:
        return self.p0 ** 2 / (2.0 * self.m)

    @property
    def tau(self) -> float:
        """Characteristic spreading time 2*m*sigma0^2/hbar."""
        return 2.0 * self.m * self.sigma0 ** 2 / self.hbar

    def sigma_complex(self, t: float) -> complex:
        return self.sigma0 * (1.0 + 1j * self.hbar * t / (2.0 * self.m * self.sigma0 ** 2))

    def x_classical(self, t: float) -> float:
        return self.x0 + self.v0 * t


class Regime(Enum):
    EHRENFEST = "ehrenfest-huygens"
    FRESNEL = "fresnel"
    FRAUNHOFER = "fraunhofer"


# Committed decade thresholds on t/tau separating the three regimes.
REGIME_EHRENFEST_MAX = 0.01
REGIME_FRAUNHOFER_MIN = 10.0


@dataclass(frozen=True)
class RegimeReport:
    tau: float
    ratio: float
    regime: Regime


def sigma_t(spec: GaussianSpec, t: float) -> float:
    """Density-width spreading law sigma0*sqrt(1 + (hbar t / 2 m sigma0^2)^2)."""
    alpha = spec.hbar * t / (2.0 * spec.m * spec.sigma0 ** 2)
    return spec.sigma0 * np.sqrt(1.0 + alpha * alpha)


def classify_regime(spec: GaussianSpec, t: float) -> RegimeReport:
    if t < 0:
        raise ValueError("t must be >= 0")
    ratio = t / spec.tau
    if ratio < REGIME_EHRENFEST_MAX:
        regime = Regime.EHRENFEST
    elif ratio < REGIME_FRAUNHOFER_MIN:
        regime = Regime.FRESNEL
    else:
        regime = Regime.FRAUNHOFER
    return RegimeReport(tau=spec.tau, ratio=ratio, regime=regime)


def analytic_bohmian_trajectory(spec: GaussianSpec, x_init, t):
    """Streamline position x_cl + (sigma_t/sigma0) * (x_init - x0); vectorized."""
    stretch = sigma_t(spec, t) / spec.sigma0
    return spec.x_classical(t) + stretch * (np.asarray(x_init) - spec.x0)


def packet_amplitude(spec: GaussianSpec, x, t: float) -> np.ndarray:
    """Sample the packet (weight excluded) at positions x and time t."""
    sc = spec.sigma_complex(t)
    u = np.asarray(x, dtype=float) - spec.x_classical(t)
    prefactor = (2.0 * np.pi * sc * sc) ** (-0.25)
    phase = 1j * (spec.p0 * u + spec.energy * t) / spec.hbar
    return prefactor * np.exp(-u * u / (4.0 * sc * spec.sigma0) + phase)


def packet_amplitude_gradient(spec: GaussianSpec, x, t: float) -> np.ndarray:
    sc = spec.sigma_complex(t)
    u = np.asarray(x, dtype=float) - spec.x_classical(t)
    return packet_amplitude(spec, x, t) * (-u / (2.0 * spec.sigma0 * sc) + 1j * spec.p0 / spec.hbar)


def packet_action(spec: GaussianSpec, x, t: float) -> np.ndarray:
    """Continuous phase action S with the weight's phase folded in.

    S(x,t) = hbar^2 t u^2 / (8 m sigma0^2 sigma_t^2) + p0 u + E t
             - (hbar/2) atan(hbar t / 2 m sigma0^2) + hbar*arg(weight).
    """
    u = np.asarray(x, dtype=float) - spec.x_classical(t)
    alpha = spec.hbar * t / (2.0 * spec.m * spec.sigma0 ** 2)
    st2 = sigma_t(spec, t) ** 2
    return (spec.hbar * alpha * u * u / (4.0 * st2) + spec.p0 * u + spec.energy * t
            - 0.5 * spec.hbar * np.arctan(alpha) + spec.hbar * cmath.phase(spec.weight))


def packet_density(spec: GaussianSpec, x, t: float) -> np.ndarray:
    """|weight|^2 * |psi|^2."""
    u = np.asarray(x, dtype=float) - spec.x_classical(t)
    st = sigma_t(spec, t)
    return abs(spec.weight) ** 2 * np.exp(-u * u / (2.0 * st * st)) / (st * np.sqrt(2.0 * np.pi))


def _check_boundary_decay(values: np.ndarray):
    peak = np.abs(values).max()
    edge = max(abs(values[0]), abs(values[-1]))
    if peak == 0.0 or edge > BOUNDARY_DECAY_RATIO * peak:
        raise GridTooNarrowError(
            f"boundary amplitude {edge:.3e} exceeds {BOUNDARY_DECAY_RATIO:.0e} of peak {peak:.3e}")


def evaluate_packet(spec: GaussianSpec, grid: Grid1D, t: float) -> WaveField:
    """Sample one packet on the grid and renormalize to unit discrete norm."""
    values = spec.weight * packet_amplitude(spec, grid.x, t)
    _check_boundary_decay(values)
    field = WaveField(grid, values, param=t, hbar=spec.hbar, mass=spec.m)
    return field.normalized()


def _common_units(specs) -> tuple[float, float]:
    hbars = {s.hbar for s in specs}
    masses = {s.m for s in specs}
    if len(hbars) != 1 or len(masses) != 1:
        raise ValueError("all packets in a superposition must share m and hbar")
    return hbars.pop(), masses.pop()


def superposition_field(specs, grid: Grid1D, t: float) -> WaveField:
    """Sample sum_i w_i psi_i on the grid, renormalized to unit discrete norm."""
    if not specs:
        raise ValueError("need at least one packet spec")
    hbar, m = _common_units(specs)
    values = np.zeros(grid.n_points, dtype=np.complex128)
    for spec in specs:
        values += spec.weight * packet_amplitude(spec, grid.x, t)
    _check_boundary_decay(values)
    field = WaveField(grid, values, param=t, hbar=hbar, mass=m)
    return field.normalized()


def superposition_density(specs, x, t: float) -> np.ndarray:
    """rho = rho1 + rho2 + 2 sqrt(rho1 rho2) cos(phi) for a packet pair.

    For other counts falls back to |sum_i w_i psi_i|^2 (identical result).
    """
    if len(specs) == 2:
        s1, s2 = specs
        hbar, _ = _common_units(specs)
        rho1 = packet_density(s1, x, t)
        rho2 = packet_density(s2, x, t)
        phi = (packet_action(s2, x, t) - packet_action(s1, x, t)) / hbar
        return rho1 + rho2 + 2.0 * np.sqrt(rho1 * rho2) * np.cos(phi)
    psi = np.zeros(np.shape(np.asarray(x, dtype=float)), dtype=np.complex128)
    for spec in specs:
        psi = psi + spec.weight * packet_amplitude(spec, x, t)
    return np.abs(psi) ** 2


def superposition_velocity(specs, x, t: float):
    """Two-packet guidance velocity assembled from rho_i, S_i and phi.

    v = (1/m) [rho1 S1' + rho2 S2' + sqrt(rho1 rho2) (S1'+S2') cos(phi)] / rho
      + (hbar/m) [sqrt(rho1) d(sqrt(rho2)) - sqrt(rho2) d(sqrt(rho1))] sin(phi) / rho

    with rho = rho1 + rho2 + 2 sqrt(rho1 rho2) cos(phi) in *both* denominators
    (the density itself, as J/rho demands).  Equals the grid J/rho of the
    sampled superposition wherever rho is above the node threshold.
    """
    if len(specs) != 2:
        raise ValueError("superposition_velocity is the two-packet closed form")
    s1, s2 = specs
    hbar, m = _common_units(specs)
    x = np.asarray(x, dtype=float)

    rho1 = packet_density(s1, x, t)
    rho2 = packet_density(s2, x, t)
    sq1, sq2 = np.sqrt(rho1), np.sqrt(rho2)
    # d/dx sqrt(rho_i) for a Gaussian lobe: -(x - xc_i)/(2 sigma_i(t)^2) * sqrt(rho_i)
    dsq1 = -(x - s1.x_classical(t)) / (2.0 * sigma_t(s1, t) ** 2) * sq1
    dsq2 = -(x - s2.x_classical(t)) / (2.0 * sigma_t(s2, t) ** 2) * sq2

    ds1 = _action_gradient(s1, x, t)
    ds2 = _action_gradient(s2, x, t)
    phi = (packet_action(s2, x, t) - packet_action(s1, x, t)) / hbar

    rho = rho1 + rho2 + 2.0 * sq1 * sq2 * np.cos(phi)
    scale = max(float(np.max(rho1)), float(np.max(rho2)),
                packet_density(s1, s1.x_classical(t), t),
                packet_density(s2, s2.x_classical(t), t))
    if np.any(rho <= NODE_THRESHOLD_RATIO * scale):
        raise NodeSingularityError("velocity requested at a node of the superposition")

    drift = (rho1 * ds1 + rho2 * ds2 + sq1 * sq2 * (ds1 + ds2) * np.cos(phi)) / rho
    osmotic = hbar * (sq1 * dsq2 - sq2 * dsq1) * np.sin(phi) / rho
    return (drift + osmotic) / m


def _action_gradient(spec: GaussianSpec, x, t: float) -> np.ndarray:
    u = np.asarray(x, dtype=float) - spec.x_classical(t)
    st2 = sigma_t(spec, t) ** 2
    return spec.hbar ** 2 * t * u / (4.0 * spec.m * spec.sigma0 ** 2 * st2) + spec.p0


def packet_velocity(spec: GaussianSpec, x, t: float) -> np.ndarray:
    """Single-packet guidance velocity v0 + (sigma_dot/sigma) (x - xc)."""
    return _action_gradient(spec, x, t) / spec.m


class PacketFlow:
    """Guidance field of an analytic packet superposition (no grid sampling).

    Provides the velocity/density interface trajectory integration expects,
    evaluated in closed form: exact interference structure, zero
    interpolation error.
    """

    def __init__(self, specs, grid: Grid1D, times):
        self.specs = list(specs)
        self.hbar, self.mass = _common_units(self.specs)
        self.grid = grid
        self.times = np.asarray(times, dtype=float)
        if self.times.ndim != 1 or len(self.times) < 2 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing with >= 2 entries")

    def velocity(self, x, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if len(self.specs) == 1:
            return packet_velocity(self.specs[0], x, t)
        psi = np.zeros_like(x, dtype=np.complex128)
        dpsi = np.zeros_like(x, dtype=np.complex128)
        for spec in self.specs:
            psi += spec.weight * packet_amplitude(spec, x, t)
            dpsi += spec.weight * packet_amplitude_gradient(spec, x, t)
        rho = np.abs(psi) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            v = self.hbar * np.imag(np.conj(psi) * dpsi) / (self.mass * rho)
        return np.where(rho > self.node_threshold(t), v, np.nan)

    def density(self, x, t: float) -> np.ndarray:
        return superposition_density(self.specs, x, t)

    def node_threshold(self, t: float) -> float:
        peak = max(packet_density(s, s.x_classical(t), t) for s in self.specs)
        return NODE_THRESHOLD_RATIO * peak
