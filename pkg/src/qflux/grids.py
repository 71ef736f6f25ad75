"""Uniform periodic grids for spectral field representations.

Grids are endpoint-inclusive: spacing dx = (x_max - x_min) / (n_points - 1).
Spectral (FFT) operations treat the samples as one period of length
n_points * dx, which is valid because every field handled here decays to
~0 well inside the boundaries (enforced by boundary-amplitude guards).

Points are generated symmetrically about the grid midpoint so that a grid
centered on 0 is exactly mirror-symmetric in floating point.
"""

from dataclasses import dataclass, field

import numpy as np


def _validate_axis(x_min: float, x_max: float, n_points: int, name: str = "n_points"):
    if n_points < 8 or (n_points & (n_points - 1)) != 0:
        raise ValueError(f"{name} must be >= 8 and a power of two, got {n_points}")
    if not x_max > x_min:
        raise ValueError(f"grid bounds must satisfy x_max > x_min, got [{x_min}, {x_max}]")


@dataclass(frozen=True)
class Grid1D:
    """Uniform 1D grid with n_points a power of two (spectral requirement)."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        _validate_axis(self.x_min, self.x_max, self.n_points)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        mid = 0.5 * (self.x_min + self.x_max)
        return mid + self.dx * (np.arange(self.n_points) - 0.5 * (self.n_points - 1))

    @property
    def k(self) -> np.ndarray:
        """Angular wavenumbers for spectral differentiation."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dx)

    @property
    def ndim(self) -> int:
        return 1

    @property
    def shape(self) -> tuple:
        return (self.n_points,)

    @property
    def width(self) -> float:
        return self.x_max - self.x_min


@dataclass(frozen=True)
class Grid2D:
    """Uniform 2D grid; each axis a power of two. Arrays indexed [ix, iy]."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int

    def __post_init__(self):
        _validate_axis(self.x_min, self.x_max, self.nx, "nx")
        _validate_axis(self.y_min, self.y_max, self.ny, "ny")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / (self.ny - 1)

    @property
    def x(self) -> np.ndarray:
        mid = 0.5 * (self.x_min + self.x_max)
        return mid + self.dx * (np.arange(self.nx) - 0.5 * (self.nx - 1))

    @property
    def y(self) -> np.ndarray:
        mid = 0.5 * (self.y_min + self.y_max)
        return mid + self.dy * (np.arange(self.ny) - 0.5 * (self.ny - 1))

    def meshgrid(self):
        return np.meshgrid(self.x, self.y, indexing="ij")

    @property
    def kx(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.nx, d=self.dx)

    @property
    def ky(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.ny, d=self.dy)

    @property
    def ndim(self) -> int:
        return 2

    @property
    def shape(self) -> tuple:
        return (self.nx, self.ny)


Grid = Grid1D | Grid2D
