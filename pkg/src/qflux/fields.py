"""Complex scalar fields on uniform grids and their hydrodynamic decomposition.

A field psi = R * exp(i*S/hbar) carries a probability density rho = R^2,
a current density J = (hbar/m) * Im(psi* grad psi) = rho * grad(S)/m, a local
velocity v = J/rho, and a curvature ("quantum") potential
Q = -(hbar^2/2m) * lap(R)/R.  All spatial derivatives are spectral (FFT on
the periodic grid), giving exponential accuracy for smooth, decayed fields.

The velocity field is undefined wherever the field has a node; points with
rho <= NODE_THRESHOLD_RATIO * max(rho) are masked and v is reported as NaN
there.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, NonFiniteError
from .grids import Grid, Grid1D, Grid2D

# Density threshold (relative to max rho) below which a point counts as a node.
NODE_THRESHOLD_RATIO = 1e-10


@dataclass(frozen=True)
class WaveField:
    """Complex amplitude sampled on a grid at one evolution-parameter value.

    Parameters
    ----------
    grid : Grid1D or Grid2D
    values : complex ndarray matching grid.shape
    param : evolution-parameter value (time t in quantum mode, distance z
        in optics mode)
    mode : "quantum" or "optics"
    hbar, mass : units of the governing equation; optics mode uses hbar=1
        and mass = k_z (the longitudinal wavenumber acting as optical mass)
    """

    grid: Grid
    values: np.ndarray
    param: float = 0.0
    mode: str = "quantum"
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != self.grid.shape:
            raise ValueError(f"values shape {values.shape} != grid shape {self.grid.shape}")
        if not np.all(np.isfinite(values.view(np.float64))):
            raise NonFiniteError("field values contain NaN/Inf")
        if self.mode not in ("quantum", "optics"):
            raise ValueError(f"unknown mode {self.mode!r}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def with_values(self, values: np.ndarray, param: float | None = None) -> "WaveField":
        return WaveField(self.grid, values,
                         param=self.param if param is None else param,
                         mode=self.mode, hbar=self.hbar, mass=self.mass)

    @property
    def rho(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def norm(self) -> float:
        return norm(self)

    def normalized(self) -> "WaveField":
        n = self.norm()
        if n <= 0.0:
            raise ValueError("cannot normalize a zero field")
        return self.with_values(self.values / np.sqrt(n))


@dataclass(frozen=True)
class HydroFields:
    """Hydrodynamic decomposition of a WaveField.

    v is NaN at masked points (rho <= node threshold); `defined` flags where
    the velocity is meaningful.  For 1D grids J and v are shape (n,); for 2D
    they are shape (2, nx, ny) with axis 0 indexing the spatial component.
    """

    rho: np.ndarray
    S: np.ndarray
    J: np.ndarray
    v: np.ndarray
    Q: np.ndarray
    defined: np.ndarray


def _cell_volume(grid: Grid) -> float:
    return grid.dx if isinstance(grid, Grid1D) else grid.dx * grid.dy


def norm(field: WaveField) -> float:
    """Riemann quadrature of rho over the grid (what unitary stepping conserves)."""
    return float(np.sum(field.rho) * _cell_volume(field.grid))


def spectral_gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    """FFT derivative per axis; returns (n,) for 1D, (2, nx, ny) for 2D."""
    if isinstance(grid, Grid1D):
        return np.fft.ifft(1j * grid.k * np.fft.fft(values))
    gx = np.fft.ifft(1j * grid.kx[:, None] * np.fft.fft(values, axis=0), axis=0)
    gy = np.fft.ifft(1j * grid.ky[None, :] * np.fft.fft(values, axis=1), axis=1)
    return np.stack([gx, gy])


def spectral_laplacian(values: np.ndarray, grid: Grid) -> np.ndarray:
    if isinstance(grid, Grid1D):
        return np.fft.ifft(-grid.k ** 2 * np.fft.fft(values))
    vhat = np.fft.fft2(values)
    k2 = grid.kx[:, None] ** 2 + grid.ky[None, :] ** 2
    return np.fft.ifft2(-k2 * vhat)


def _unwrap_from(theta: np.ndarray, start: int) -> np.ndarray:
    """Unwrap a 1D phase array outward from index `start`."""
    out = theta.copy()
    out[start:] = np.unwrap(theta[start:])
    out[: start + 1] = np.unwrap(theta[start::-1])[::-1]
    return out


def unwrap_phase(theta: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Remove 2*pi jumps along each axis starting from the max-rho point.

    2D: unwrap the anchor row first, then each column outward from that row,
    keeping the anchor row's (already unwrapped) value as the column offset.
    The result is gauge-fixed to 0 at the max-rho point.
    """
    if theta.ndim == 1:
        i0 = int(np.argmax(rho))
        out = _unwrap_from(theta, i0)
        return out - out[i0]
    i0, j0 = np.unravel_index(np.argmax(rho), rho.shape)
    out = theta.copy()
    out[i0, :] = _unwrap_from(theta[i0, :], j0)
    for j in range(theta.shape[1]):
        col = theta[:, j].copy()
        col[i0] = out[i0, j]
        out[:, j] = _unwrap_from(col, i0)
    return out - out[i0, j0]


def decompose(field: WaveField) -> HydroFields:
    """Split psi into rho, unwrapped S, current J, velocity v and potential Q.

    v = J/rho is masked (NaN) where rho <= NODE_THRESHOLD_RATIO * max(rho);
    Q = -(hbar^2/2m) lap(R)/R with R = |psi|, masked at the same points.
    """
    grid, psi = field.grid, field.values
    hbar, m = field.hbar, field.mass
    rho = np.abs(psi) ** 2
    eps_node = NODE_THRESHOLD_RATIO * rho.max() if rho.max() > 0 else 0.0
    defined = rho > eps_node

    S = hbar * unwrap_phase(np.angle(psi), rho)

    grad = spectral_gradient(psi, grid)
    if isinstance(grid, Grid1D):
        J = (hbar / m) * np.imag(np.conj(psi) * grad)
    else:
        J = (hbar / m) * np.imag(np.conj(psi)[None, :, :] * grad)

    with np.errstate(divide="ignore", invalid="ignore"):
        v = J / np.where(defined, rho, np.nan)

    R = np.abs(psi)
    lapR = np.real(spectral_laplacian(R, grid))
    with np.errstate(divide="ignore", invalid="ignore"):
        Q = np.where(defined, -(hbar ** 2 / (2.0 * m)) * lapR / np.where(defined, R, 1.0), np.nan)

    for name, arr in (("J", J), ("Q", Q), ("v", v)):
        bad = ~np.isfinite(arr)
        if isinstance(grid, Grid2D) and arr.ndim == 3:
            bad = bad & defined[None, :, :]
        else:
            bad = bad & defined
        if np.any(bad):
            raise NonFiniteError(f"{name} evaluated non-finite away from masked nodes")
    return HydroFields(rho=rho, S=S, J=J, v=v, Q=Q, defined=defined)


def reconstruct(field: WaveField, hydro: HydroFields) -> np.ndarray:
    """R * exp(i S / hbar) — should reproduce field.values where rho > threshold."""
    return np.sqrt(hydro.rho) * np.exp(1j * hydro.S / field.hbar)


def divergence(J: np.ndarray, grid: Grid) -> np.ndarray:
    if isinstance(grid, Grid1D):
        return np.real(spectral_gradient(J.astype(np.complex128), grid))
    dJx = np.real(np.fft.ifft(1j * grid.kx[:, None] * np.fft.fft(J[0], axis=0), axis=0))
    dJy = np.real(np.fft.ifft(1j * grid.ky[None, :] * np.fft.fft(J[1], axis=1), axis=1))
    return dJx + dJy


def continuity_residual(field_a: WaveField, field_b: WaveField) -> float:
    """Max-norm residual of d(rho)/dt + div J across two consecutive snapshots.

    The time derivative is the forward difference (rho_b - rho_a)/dparam and
    div J is evaluated at the midpoint field (psi_a + psi_b)/2.  Identical
    params degrade gracefully to the static residual |div J|.
    """
    if field_a.grid != field_b.grid:
        raise GridMismatchError("continuity residual requires a shared grid")
    d_param = field_b.param - field_a.param
    psi_mid = 0.5 * (field_a.values + field_b.values)
    mid = field_a.with_values(psi_mid)
    hydro = decompose(mid)
    div_j = divergence(hydro.J, mid.grid)
    if d_param == 0.0:
        return float(np.max(np.abs(div_j[hydro.defined])))
    drho_dt = (field_b.rho - field_a.rho) / d_param
    residual = drho_dt + div_j
    return float(np.max(np.abs(residual[hydro.defined])))
