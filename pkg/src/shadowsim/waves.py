"""1D Schroedinger dynamics of a dual wave function (psi, psi_shadow).

Time stepping uses the Cayley-form Crank-Nicolson map, which is unitary to
round-off, so the norm and shadow-lockstep invariants survive arbitrarily long
runs.  Collapse is realized on a finite zone partition of the grid: a zone is
sampled by the Born rule and both wave functions are confined to it in one
atomic step.  The double-slit accumulator propagates a two-Gaussian
superposition to the far field with the exact spectral free propagator and
collects single detections.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

NORM_TOL = 1e-8
MIRROR_TOL = 1e-10


@dataclass(frozen=True)
class WaveGrid:
    """Discretized dual wave function on a uniform 1D lattice."""

    x_min: float
    x_max: float
    psi_primary: np.ndarray
    psi_shadow: np.ndarray
    t: float = 0.0
    mass: float = 1.0

    def __post_init__(self):
        prim = np.array(self.psi_primary, dtype=complex)
        shad = np.array(self.psi_shadow, dtype=complex)
        if prim.ndim != 1 or prim.size < 16:
            raise ValueError("grid needs at least 16 points")
        if shad.shape != prim.shape:
            raise ValueError("shadow wave function has wrong shape")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        dx = (self.x_max - self.x_min) / prim.size
        if abs(np.sum(np.abs(prim) ** 2) * dx - 1.0) > NORM_TOL:
            raise ValueError("wave function is not normalized")
        if np.max(np.abs(prim - shad)) > MIRROR_TOL:
            raise ValueError("shadow wave function diverged from primary")
        prim.setflags(write=False)
        shad.setflags(write=False)
        object.__setattr__(self, "psi_primary", prim)
        object.__setattr__(self, "psi_shadow", shad)

    @property
    def points(self):
        return self.psi_primary.size

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.points

    @property
    def x(self):
        # cell-centered samples: symmetric packets stay symmetric on the grid
        return self.x_min + self.dx * (np.arange(self.points) + 0.5)

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.psi_primary) ** 2) * self.dx))

    def mirror_deviation(self):
        return float(np.max(np.abs(self.psi_primary - self.psi_shadow)))


def gaussian_packet(x_min, x_max, points, x0=0.0, sigma=1.0, k0=0.0, mass=1.0, t=0.0):
    """Normalized Gaussian wave packet with central momentum k0, mirrored."""
    dx_cell = (x_max - x_min) / points
    x = x_min + dx_cell * (np.arange(points) + 0.5)
    psi = np.exp(-((x - x0) ** 2) / (4.0 * sigma ** 2) + 1j * k0 * x)
    dx = (x_max - x_min) / points
    psi = psi / np.sqrt(np.sum(np.abs(psi) ** 2) * dx)
    return WaveGrid(x_min, x_max, psi, psi.copy(), t=t, mass=mass)


def from_samples(x_min, x_max, values, mass=1.0, t=0.0):
    """Wave grid from raw complex samples, normalized and mirrored."""
    psi = np.asarray(values, dtype=complex)
    dx = (x_max - x_min) / psi.size
    n = np.sqrt(np.sum(np.abs(psi) ** 2) * dx)
    if n == 0.0:
        raise ValueError("cannot normalize the zero wave function")
    psi = psi / n
    return WaveGrid(x_min, x_max, psi, psi.copy(), t=t, mass=mass)


@dataclass(frozen=True)
class Potential:
    """Real external potential sampled on the grid points."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if not np.all(np.isfinite(v)):
            raise ValueError("potential must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, grid):
        return cls(np.zeros(grid.points))

    @classmethod
    def harmonic(cls, grid, omega=1.0):
        return cls(0.5 * grid.mass * omega ** 2 * grid.x ** 2)


def _hamiltonian(grid, v, boundary):
    n = grid.points
    dx2 = grid.dx ** 2
    lap = sp.diags([np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)],
                   [-1, 0, 1], format="lil")
    if boundary == "periodic":
        lap[0, -1] = 1.0
        lap[-1, 0] = 1.0
    elif boundary != "hard-wall":
        raise ValueError(f"unknown boundary {boundary!r}")
    h = (-1.0 / (2.0 * grid.mass)) * lap.tocsc() / dx2 + sp.diags(v.values).tocsc()
    return h


def evolve(grid, v, dt, steps, boundary="periodic"):
    """Advance psi and its shadow by steps*dt with the Cayley-form step
    (1 + i dt H / 2) psi' = (1 - i dt H / 2) psi, unitary to round-off.

    Negative dt runs the evolution backwards (the scheme is time symmetric).
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if v.values.shape != (grid.points,):
        raise ValueError("potential length must match the grid")
    if steps == 0 or dt == 0.0:
        return grid
    h = _hamiltonian(grid, v, boundary)
    eye = sp.identity(grid.points, format="csc")
    forward = spla.splu((eye + 0.5j * dt * h).tocsc())
    back = (eye - 0.5j * dt * h).tocsc()
    prim = grid.psi_primary.copy()
    shad = grid.psi_shadow.copy()
    for _ in range(steps):
        prim = forward.solve(back @ prim)
        shad = forward.solve(back @ shad)
        if not np.all(np.isfinite(prim.view(float))):
            raise FloatingPointError(
                f"evolution produced non-finite amplitudes at t={grid.t} (dt={dt})"
            )
    return WaveGrid(grid.x_min, grid.x_max, prim, shad,
                    t=grid.t + steps * dt, mass=grid.mass)


def free_propagate(grid, duration):
    """Exact free evolution via the spectral propagator exp(-i k^2 t / 2m).

    Periodic in space; both registers advanced by the same diagonal unitary.
    """
    k = 2.0 * np.pi * np.fft.fftfreq(grid.points, d=grid.dx)
    phase = np.exp(-1j * k ** 2 * duration / (2.0 * grid.mass))
    prim = np.fft.ifft(phase * np.fft.fft(grid.psi_primary))
    shad = np.fft.ifft(phase * np.fft.fft(grid.psi_shadow))
    return WaveGrid(grid.x_min, grid.x_max, prim, shad,
                    t=grid.t + duration, mass=grid.mass)


# ---------------------------------------------------------------------------
# zone partitions and collapse


@dataclass(frozen=True)
class ZonePartition:
    """Contiguous zones delimited by grid-aligned cut indices."""

    cut_indices: tuple  # strictly increasing interior cut points, grid indices

    def __post_init__(self):
        cuts = tuple(int(c) for c in self.cut_indices)
        if len(cuts) < 1:
            raise ValueError("need at least one interior cut (two zones)")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError("cut indices must be strictly increasing")
        if cuts[0] <= 0:
            raise ValueError("first cut must be an interior grid index")
        object.__setattr__(self, "cut_indices", cuts)

    @property
    def zone_count(self):
        return len(self.cut_indices) + 1

    def slices(self, points):
        if self.cut_indices[-1] >= points:
            raise ValueError("cut index beyond the grid")
        edges = (0,) + self.cut_indices + (points,)
        return [slice(a, b) for a, b in zip(edges, edges[1:])]

    def volumes(self, grid):
        return np.array([s.stop - s.start for s in self.slices(grid.points)]) * grid.dx

    @classmethod
    def equal_zones(cls, points, k):
        if k < 2:
            raise ValueError("need at least two zones")
        cuts = [points * i // k for i in range(1, k)]
        return cls(tuple(cuts))


def zone_coefficients(grid, partition):
    """Zone weights c_i with sum |c_i|^2 = 1; the in-zone profile keeps the
    pre-collapse interior phase and integrates to one inside its zone."""
    probs = np.array([
        np.sum(np.abs(grid.psi_primary[s]) ** 2) * grid.dx
        for s in partition.slices(grid.points)
    ])
    return np.sqrt(probs).astype(complex)


def zone_profile(grid, partition, i):
    """Normalized in-zone wave function of zone i, zero everywhere else."""
    s = partition.slices(grid.points)[i]
    prof = np.zeros(grid.points, dtype=complex)
    inside = grid.psi_primary[s]
    w = np.sqrt(np.sum(np.abs(inside) ** 2) * grid.dx)
    if w == 0.0:
        raise ValueError(f"zone {i} has zero weight")
    prof[s] = inside / w
    return prof


def collapse_detect(grid, partition, rng=None):
    """Sample a zone by the Born rule and confine both wave functions to it."""
    rng = rng or np.random.default_rng()
    c = zone_coefficients(grid, partition)
    probs = np.abs(c) ** 2
    probs = probs / probs.sum()
    u = rng.random()
    zone = int(np.searchsorted(np.cumsum(probs), u))
    zone = min(zone, partition.zone_count - 1)
    prof = zone_profile(grid, partition, zone)
    collapsed = WaveGrid(grid.x_min, grid.x_max, prof, prof.copy(),
                         t=grid.t, mass=grid.mass)
    return zone, collapsed


# ---------------------------------------------------------------------------
# double slit


@dataclass(frozen=True)
class SlitGeometry:
    separation: float   # center-to-center slit distance
    width: float        # Gaussian aperture width per slit
    distance: float     # propagation distance to the screen

    def __post_init__(self):
        if self.separation <= 0 or self.width <= 0 or self.distance <= 0:
            raise ValueError("slit geometry values must be positive")
        if self.width >= self.separation:
            raise ValueError("slit apertures overlap")
        if self.distance < 10.0 * self.separation:
            raise ValueError("far-field regime requires distance >> separation")


@dataclass(frozen=True)
class DoubleSlitResult:
    bin_edges: np.ndarray
    counts: np.ndarray
    expected: np.ndarray     # expected counts per bin from the sampled intensity
    visibility: float        # from the propagated intensity, central fringe window
    fringe_spacing: float
    screen_grid: WaveGrid


def _evolved_gaussian(x, t, x0, sigma, mass):
    """Closed-form free evolution of exp(-(x-x0)^2 / (4 sigma^2)), normalized."""
    tau = 1.0 + 1j * t / (2.0 * mass * sigma ** 2)
    amp = (2.0 * np.pi * sigma ** 2) ** (-0.25) / np.sqrt(tau)
    return amp * np.exp(-((x - x0) ** 2) / (4.0 * sigma ** 2 * tau))


def analytic_screen_intensity(x, geometry, wavelength, mass=1.0, slits="both"):
    """Independent closed-form |psi|^2 on the screen (sum of evolved Gaussians)."""
    k0 = 2.0 * np.pi / wavelength
    t = mass * geometry.distance / k0
    half = geometry.separation / 2.0
    if slits == "both":
        psi = (_evolved_gaussian(x, t, -half, geometry.width, mass)
               + _evolved_gaussian(x, t, half, geometry.width, mass)) / np.sqrt(2.0)
    elif slits in ("left", "right"):
        x0 = -half if slits == "left" else half
        psi = _evolved_gaussian(x, t, x0, geometry.width, mass)
    else:
        raise ValueError(f"unknown slit selection {slits!r}")
    return np.abs(psi) ** 2


def fringe_visibility(x, intensity, spacing):
    # contrast inside one fringe window centered on the intensity peak:
    # near-flat for a single slit, bright-center / dark-edge for two slits
    peak = x[int(np.argmax(intensity))]
    window = np.abs(x - peak) <= spacing / 2.0
    imax = float(np.max(intensity[window]))
    imin = float(np.min(intensity[window]))
    return (imax - imin) / (imax + imin)


def double_slit_accumulate(geometry, shots, bins, rng=None, wavelength=0.05,
                           slits="both", screen_halfwidth=None, points=8192):
    """Accumulate single detections of a two-slit (or one-slit) pattern.

    The aperture state (one Gaussian per open slit, equal weights) is freely
    propagated to the screen; each shot samples one detection position from
    the resulting |psi|^2 and the histogram collects them bin by bin.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if bins < 2:
        raise ValueError("bins must be >= 2")
    k0 = 2.0 * np.pi / wavelength
    duration = geometry.distance / k0  # mass-normalized flight time, m = 1
    spacing = wavelength * geometry.distance / geometry.separation
    if screen_halfwidth is None:
        screen_halfwidth = 3.0 * spacing
    # domain wide enough that the spread packets stay clear of the wrap-around
    spread = duration / (2.0 * geometry.width)
    half_domain = max(4.0 * screen_halfwidth, 6.0 * spread)
    dx = 2.0 * half_domain / points
    x = -half_domain + dx * (np.arange(points) + 0.5)
    half = geometry.separation / 2.0
    if slits == "both":
        psi0 = (np.exp(-((x + half) ** 2) / (4.0 * geometry.width ** 2))
                + np.exp(-((x - half) ** 2) / (4.0 * geometry.width ** 2)))
    elif slits in ("left", "right"):
        x0 = -half if slits == "left" else half
        psi0 = np.exp(-((x - x0) ** 2) / (4.0 * geometry.width ** 2))
    else:
        raise ValueError(f"unknown slit selection {slits!r}")
    grid = from_samples(-half_domain, half_domain, psi0)
    screen = free_propagate(grid, duration)
    intensity = np.abs(screen.psi_primary) ** 2

    rng = rng or np.random.default_rng()
    window = np.abs(screen.x) <= screen_halfwidth
    xs = screen.x[window]
    p = intensity[window]
    p = p / p.sum()
    samples = rng.choice(xs, size=shots, p=p)
    edges = np.linspace(-screen_halfwidth, screen_halfwidth, bins + 1)
    counts, _ = np.histogram(samples, bins=edges)
    idx = np.clip(np.searchsorted(edges, xs, side="right") - 1, 0, bins - 1)
    expected = np.bincount(idx, weights=p, minlength=bins) * shots

    return DoubleSlitResult(
        bin_edges=edges,
        counts=counts,
        expected=expected,
        visibility=fringe_visibility(screen.x, intensity, spacing),
        fringe_spacing=spacing,
        screen_grid=screen,
    )
