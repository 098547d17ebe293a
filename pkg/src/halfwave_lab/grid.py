"""Periodic grid geometry and physical/spectral field representations.

The domain is the periodic box [-lx, lx) x [-ly, ly).  Fields are stored as
complex samples on the uniform grid x_a = -lx + a*dx, y_b = -ly + b*dy.
Spectra are Fourier-series coefficients c_{j,m} such that

    u(x, y) = sum_{j,m} c_{j,m} exp(i*(xi_j*x + eta_m*y)),

with xi_j = pi*j/lx, eta_m = pi*m/ly.  The canonical mode order along each
axis is the FFT order j = 0, 1, ..., n/2-1, -n/2, ..., -1 (the Nyquist mode
sits at index n/2 with the negative frequency -pi*(n/2)/l).  Consumers must
use the ``frequencies``/``mode_numbers`` accessors rather than assuming this
layout.

With this convention the forward transform is normalized by 1/(nx*ny), so
Young-type inequalities on the coefficient l1 norm hold with constant one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


class NonFiniteError(ValueError):
    """A field or spectrum contains NaN or Inf samples."""


@dataclass(frozen=True)
class GridSpec:
    """Periodic box geometry and Fourier mode lattice.

    nx, ny are the number of modes (= samples) per axis; lx, ly are the
    half-periods, so the box is [-lx, lx) x [-ly, ly).
    """

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        for n, name in ((self.nx, "nx"), (self.ny, "ny")):
            if not isinstance(n, (int, np.integer)) or n < 4 or n % 2 != 0:
                raise ValueError(f"{name} must be an even integer >= 4, got {n!r}")
        for l, name in ((self.lx, "lx"), (self.ly, "ly")):
            if not np.isfinite(l) or l <= 0:
                raise ValueError(f"{name} must be a positive finite length, got {l!r}")

    @property
    def dx(self) -> float:
        return 2.0 * self.lx / self.nx

    @property
    def dy(self) -> float:
        return 2.0 * self.ly / self.ny

    @property
    def area(self) -> float:
        """Box area A = 4*lx*ly."""
        return 4.0 * self.lx * self.ly

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (ny, nx); row-major storage makes x the fast index."""
        return (self.ny, self.nx)

    def mode_numbers(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer mode indices (j-list, m-list) in canonical FFT order."""
        j = np.fft.fftfreq(self.nx, d=1.0 / self.nx).astype(np.int64)
        m = np.fft.fftfreq(self.ny, d=1.0 / self.ny).astype(np.int64)
        return j, m

    def frequencies(self) -> tuple[np.ndarray, np.ndarray]:
        """Frequency lists (xi_j, eta_m) with xi_j = pi*j/lx, eta_m = pi*m/ly."""
        j, m = self.mode_numbers()
        return np.pi * j / self.lx, np.pi * m / self.ly

    def frequency_grids(self) -> tuple[np.ndarray, np.ndarray]:
        """Broadcast xi and eta onto the (ny, nx) coefficient layout."""
        xi, eta = self.frequencies()
        return np.broadcast_to(xi[None, :], self.shape), np.broadcast_to(
            eta[:, None], self.shape
        )

    def sample_points(self) -> tuple[np.ndarray, np.ndarray]:
        """Sample coordinates (x_a, y_b) with x_a = -lx + a*dx."""
        x = -self.lx + self.dx * np.arange(self.nx)
        y = -self.ly + self.dy * np.arange(self.ny)
        return x, y

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        x, y = self.sample_points()
        return np.broadcast_to(x[None, :], self.shape), np.broadcast_to(
            y[:, None], self.shape
        )


def make_grid(nx: int, ny: int, lx: float, ly: float) -> GridSpec:
    """Build a validated GridSpec for the box [-lx, lx) x [-ly, ly)."""
    return GridSpec(nx=int(nx), ny=int(ny), lx=float(lx), ly=float(ly))


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise NonFiniteError(f"{what} contains non-finite samples")


def _as_grid_array(grid: GridSpec, arr, what: str) -> np.ndarray:
    a = np.asarray(arr, dtype=np.complex128)
    if a.size != grid.nx * grid.ny:
        raise ValueError(
            f"{what} has {a.size} entries, expected {grid.nx * grid.ny} for grid "
            f"{grid.nx}x{grid.ny}"
        )
    a = a.reshape(grid.shape)
    _check_finite(a, what)
    return a


@dataclass(frozen=True)
class Field:
    """Complex samples u(x_a, y_b) on a GridSpec, stored (ny, nx), x fastest."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _as_grid_array(self.grid, self.values, "Field values")
        )


@dataclass(frozen=True)
class Spectrum:
    """Fourier-series coefficients c_{j,m} on a GridSpec, canonical mode order."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _as_grid_array(self.grid, self.coeffs, "Spectrum coeffs")
        )


def _phase_signs(grid: GridSpec) -> np.ndarray:
    # Samples start at -lx, not 0: exp(i*xi_j*(-lx)) = (-1)^j, same in y.
    j, m = grid.mode_numbers()
    return ((-1.0) ** j)[None, :] * ((-1.0) ** m)[:, None]


def to_spectrum(f: Field) -> Spectrum:
    """Forward transform: Fourier-series coefficients of the grid samples."""
    g = f.grid
    c = np.fft.fft2(f.values) * (_phase_signs(g) / (g.nx * g.ny))
    return Spectrum(g, c)


def to_field(s: Spectrum) -> Field:
    """Inverse transform: exact synthesis of the Fourier series at grid points."""
    g = s.grid
    v = np.fft.ifft2(s.coeffs * _phase_signs(g)) * (g.nx * g.ny)
    return Field(g, v)


def conjugate_spectrum(s: Spectrum) -> Spectrum:
    """Coefficients of the complex conjugate field: c_{j,m} -> conj(c_{-j,-m})."""
    c = np.conj(s.coeffs)
    # Index reversal with the FFT layout: mode -j lives at index (-idx) mod n.
    c = np.roll(c[::-1, ::-1], shift=(1, 1), axis=(0, 1))
    return Spectrum(s.grid, c)


def pad_spectrum(s: Spectrum, factor: int) -> Spectrum:
    """Embed the spectrum into a factor-times-finer mode lattice (same box)."""
    if factor < 1:
        raise ValueError(f"pad factor must be >= 1, got {factor}")
    if factor == 1:
        return s
    g = s.grid
    big = make_grid(g.nx * factor, g.ny * factor, g.lx, g.ly)
    shifted = np.fft.fftshift(s.coeffs)
    out = np.zeros(big.shape, dtype=np.complex128)
    oy = (big.ny - g.ny) // 2
    ox = (big.nx - g.nx) // 2
    out[oy : oy + g.ny, ox : ox + g.nx] = shifted
    return Spectrum(big, np.fft.ifftshift(out))


def truncate_spectrum(s: Spectrum, grid: GridSpec) -> Spectrum:
    """Restrict to the mode band of a coarser grid on the same box."""
    g = s.grid
    if not np.isclose(g.lx, grid.lx) or not np.isclose(g.ly, grid.ly):
        raise ValueError("truncation target must share the box lengths")
    if grid.nx > g.nx or grid.ny > g.ny:
        raise ValueError("truncation target must not be finer than the source")
    shifted = np.fft.fftshift(s.coeffs)
    oy = (g.ny - grid.ny) // 2
    ox = (g.nx - grid.nx) // 2
    kept = shifted[oy : oy + grid.ny, ox : ox + grid.nx]
    return Spectrum(grid, np.fft.ifftshift(kept))


# ---------------------------------------------------------------------------
# Closed-form initial conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gaussian:
    """a * exp(-(x^2/(2 sx^2) + y^2/(2 sy^2))) * exp(i (xi0 x + eta0 y))."""

    amplitude: complex = 1.0
    sigma: float = 1.0
    modulation: tuple[float, float] = (0.0, 0.0)
    sigma_y: float | None = None  # defaults to sigma (isotropic)


@dataclass(frozen=True)
class PlaneWave:
    """amplitude * exp(i (xi_j x + eta_m y)) for integer mode numbers j, m."""

    j: int = 0
    m: int = 0
    amplitude: complex = 1.0


@dataclass(frozen=True)
class Constant:
    value: complex = 1.0


Descriptor = Union[Gaussian, PlaneWave, Constant, Sequence]


def sample_function(grid: GridSpec, descriptor: Descriptor) -> Field:
    """Sample a built-in closed-form family (or a sum of them) on the grid."""
    if isinstance(descriptor, (list, tuple)):
        total = np.zeros(grid.shape, dtype=np.complex128)
        for d in descriptor:
            total += sample_function(grid, d).values
        return Field(grid, total)
    x, y = grid.meshgrid()
    if isinstance(descriptor, Constant):
        vals = np.full(grid.shape, complex(descriptor.value), dtype=np.complex128)
    elif isinstance(descriptor, PlaneWave):
        xi = np.pi * descriptor.j / grid.lx
        eta = np.pi * descriptor.m / grid.ly
        vals = descriptor.amplitude * np.exp(1j * (xi * x + eta * y))
    elif isinstance(descriptor, Gaussian):
        sx = descriptor.sigma
        sy = descriptor.sigma_y if descriptor.sigma_y is not None else sx
        if sx <= 0 or sy <= 0:
            raise ValueError("gaussian widths must be positive")
        xi0, eta0 = descriptor.modulation
        vals = descriptor.amplitude * np.exp(
            -(x**2 / (2.0 * sx**2) + y**2 / (2.0 * sy**2))
            + 1j * (xi0 * x + eta0 * y)
        )
    else:
        raise ValueError(f"unknown initial-condition descriptor: {descriptor!r}")
    return Field(grid, vals)


def parse_descriptor(text: str) -> Descriptor:
    """Parse a CLI descriptor like 'gaussian:1,1', 'constant:0.1', 'plane_wave:1,0,0.5'.

    Sums are written with '+', e.g. 'constant:0.1+plane_wave:1,0,0.05'.
    """
    parts = text.split("+")
    if len(parts) > 1:
        return tuple(parse_descriptor(p) for p in parts)
    name, _, argtext = text.partition(":")
    args = [a for a in argtext.split(",") if a != ""]
    try:
        if name == "constant":
            return Constant(value=complex(args[0]) if args else 1.0)
        if name == "plane_wave":
            j = int(args[0]) if len(args) > 0 else 0
            m = int(args[1]) if len(args) > 1 else 0
            a = complex(args[2]) if len(args) > 2 else 1.0
            return PlaneWave(j=j, m=m, amplitude=a)
        if name == "gaussian":
            a = complex(args[0]) if len(args) > 0 else 1.0
            s = float(args[1]) if len(args) > 1 else 1.0
            xi0 = float(args[2]) if len(args) > 2 else 0.0
            eta0 = float(args[3]) if len(args) > 3 else 0.0
            return Gaussian(amplitude=a, sigma=s, modulation=(xi0, eta0))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad parameters in descriptor {text!r}: {exc}") from exc
    raise ValueError(f"unknown initial-condition family {name!r}")
