# Copyright 2026 The wgsq-lib Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Finite-difference mode solver for trapezoidal ridge waveguides.

The cross-section is rasterized onto a cell-centered rectangular grid
(staircase, no index averaging) and the scalar Helmholtz eigenproblem

    (∂²/∂x² + ∂²/∂y² + k₀²n²(x, y)) ψ = β² ψ

is solved with a 5-point Laplacian and zero field on the window edge.
Eigenpairs come from ARPACK in shift-invert mode around (k₀·n_core)², so
the guided modes, which sit just below the core light line, converge first.

Lengths are in μm throughout this module.
"""

import csv
import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple

import numpy as np
import tenacity
from scipy import sparse
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from wgsq.exceptions import (
    BracketError,
    GeometryError,
    NumericalError,
    RangeError,
    WgsqException,
    is_retryable_exception,
)
from wgsq.materials.base import Axis, angular_frequency

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 20.0
DEFAULT_PADDING = 2.0
MIN_RESOLUTION = 4.0
MIN_PADDING = 2.0

# ARPACK settings; each retry doubles the Krylov subspace
MAX_ARPACK_ITERATIONS = 5000
MAX_SOLVE_ATTEMPTS = 3
RESIDUAL_TOLERANCE = 1e-8

DEFAULT_BOUNDARY_TOLERANCE = 0.05


class Polarization(str, enum.Enum):
    # Field along the substrate normal; sees the extraordinary index of a
    # z-cut crystal
    vertical = "vertical"
    horizontal = "horizontal"

    @property
    def axis(self):
        return Axis.extraordinary if self is Polarization.vertical else Axis.ordinary


@dataclass(frozen=True)
class WaveguideGeometry:
    core_thickness: float
    top_width: float
    sidewall_angle: float
    core_material: object
    substrate_material: object
    cladding_index: float = 1.0

    def __post_init__(self):
        if not self.core_thickness > 0:
            raise GeometryError(
                "core thickness must be positive, got {}".format(self.core_thickness)
            )
        if not self.top_width > 0:
            raise GeometryError(
                "top width must be positive, got {}".format(self.top_width)
            )
        if not (0 < self.sidewall_angle <= 90):
            raise GeometryError(
                "sidewall angle must lie in (0, 90] degrees, got {}".format(
                    self.sidewall_angle
                )
            )
        if not self.cladding_index >= 1.0:
            raise GeometryError(
                "cladding index must be at least 1, got {}".format(self.cladding_index)
            )

    @property
    def sidewall_run(self):
        """Horizontal extent of one sloped wall"""
        if self.sidewall_angle == 90:
            return 0.0
        return self.core_thickness / math.tan(math.radians(self.sidewall_angle))

    @property
    def bottom_width(self):
        return self.top_width + 2.0 * self.sidewall_run

    @property
    def area(self):
        return 0.5 * (self.top_width + self.bottom_width) * self.core_thickness

    def with_top_width(self, top_width):
        return replace(self, top_width=top_width)

    def with_core_thickness(self, core_thickness):
        return replace(self, core_thickness=core_thickness)

    def half_width_at(self, y):
        """Core half-width at height y above the substrate interface"""
        return 0.5 * self.top_width + (self.core_thickness - y) * (
            self.sidewall_run / self.core_thickness
        )

    def indices(self, wavelength):
        return (
            self.core_material.refractive_index(wavelength),
            self.substrate_material.refractive_index(wavelength),
            self.cladding_index,
        )


@dataclass(frozen=True, eq=False)
class IndexGrid:
    """Cell-centered index map, ``index_map[j, i]`` at (x[i], y[j]).

    The substrate interface is y = 0 and the core is centered on x = 0.
    """

    nx: int
    ny: int
    dx: float
    dy: float
    index_map: np.ndarray
    window: Tuple[float, float, float, float]
    wavelength: float
    core_index: float
    substrate_index: float
    cladding_index: float

    @property
    def x(self):
        return self.window[0] + (np.arange(self.nx) + 0.5) * self.dx

    @property
    def y(self):
        return self.window[2] + (np.arange(self.ny) + 0.5) * self.dy

    @property
    def core_mask(self):
        return self.index_map == self.core_index

    @property
    def core_area(self):
        return float(np.count_nonzero(self.core_mask)) * self.dx * self.dy


@dataclass(eq=False)
class ModeSolution:
    effective_index: float
    field: np.ndarray
    order_label: int
    wavelength: float
    polarization: Polarization = Polarization.vertical
    normalization: str = "unit L2 norm over the window, sum(ψ²)·dx·dy = 1"
    residual: float = 0.0

    @property
    def propagation_constant(self):
        """β in 1/m"""
        return 2.0 * np.pi * self.effective_index / (self.wavelength * 1e-6)


@dataclass
class DispersionTable:
    wavelengths: np.ndarray
    effective_indices: np.ndarray
    label: str = ""
    modes: List[ModeSolution] = field(default_factory=list, repr=False)

    def __post_init__(self):
        wavelengths = np.asarray(self.wavelengths, dtype=float)
        order = np.argsort(wavelengths, kind="stable")
        self.wavelengths = wavelengths[order]
        self.effective_indices = np.asarray(self.effective_indices, dtype=float)[order]
        if len(self.modes) == len(order):
            self.modes = [self.modes[i] for i in order]

    def interpolate(self, wavelength):
        """Linear interpolation; raises RangeError outside the table"""
        low, high = self.wavelengths[0], self.wavelengths[-1]
        arr = np.asarray(wavelength, dtype=float)
        if np.any((arr < low) | (arr > high)):
            raise RangeError(
                "wavelength {} μm outside dispersion table [{}, {}] μm".format(
                    wavelength, low, high
                ),
                name=self.label or "dispersion table",
                bounds=(low, high),
            )
        out = np.interp(arr, self.wavelengths, self.effective_indices)
        return float(out) if np.ndim(wavelength) == 0 else out


def _cells(length, resolution):
    return int(round(length * resolution))


def build_grid(
    geometry,
    wavelength,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
    polarization=Polarization.vertical,
):
    """
    Rasterize the waveguide cross-section at one wavelength.

    The window spans the trapezoid's bounding box plus ``padding`` on every
    side. Cell size is 1/resolution in both directions; the substrate
    interface and the core top fall on cell boundaries whenever
    thickness·resolution is an integer.
    """
    if resolution < MIN_RESOLUTION:
        raise GeometryError(
            "resolution must be at least {} cells/μm, got {}".format(
                MIN_RESOLUTION, resolution
            )
        )
    if padding < MIN_PADDING:
        raise GeometryError(
            "window padding {} μm leaves no room around the core; "
            "at least {} μm is required".format(padding, MIN_PADDING)
        )

    if geometry.core_material.axis is not polarization.axis:
        logger.warning(
            "%s polarization sees the %s axis but the core model %s is %s",
            polarization.value,
            polarization.axis.value,
            geometry.core_material.name,
            geometry.core_material.axis.value,
        )

    n_core, n_sub, n_clad = geometry.indices(wavelength)
    if not n_core > max(n_sub, n_clad):
        raise GeometryError(
            "core index {:.5f} does not exceed substrate {:.5f} and cladding "
            "{:.5f} at {} μm".format(n_core, n_sub, n_clad, wavelength)
        )

    h = 1.0 / resolution
    half_x = _cells(0.5 * geometry.bottom_width + padding, resolution)
    n_below = _cells(padding, resolution)
    n_above = _cells(geometry.core_thickness + padding, resolution)
    nx, ny = 2 * half_x, n_below + n_above
    window = (-half_x * h, half_x * h, -n_below * h, n_above * h)

    x = window[0] + (np.arange(nx) + 0.5) * h
    y = window[2] + (np.arange(ny) + 0.5) * h
    xx, yy = np.meshgrid(x, y)

    inside = (yy >= 0) & (yy <= geometry.core_thickness)
    inside &= np.abs(xx) <= geometry.half_width_at(yy)

    index_map = np.where(yy < 0, n_sub, n_clad)
    index_map = np.where(inside, n_core, index_map)

    if not np.any(inside):
        raise GeometryError(
            "core is not resolved at {} cells/μm".format(resolution)
        )

    logger.debug(
        "Index grid %dx%d at %.3f μm, top width %.3f μm", nx, ny, wavelength,
        geometry.top_width,
    )
    return IndexGrid(
        nx=nx,
        ny=ny,
        dx=h,
        dy=h,
        index_map=index_map,
        window=window,
        wavelength=float(wavelength),
        core_index=float(n_core),
        substrate_index=float(n_sub),
        cladding_index=float(n_clad),
    )


def _second_difference(n, h):
    return sparse.diags(
        [np.ones(n - 1), -2.0 * np.ones(n), np.ones(n - 1)], [-1, 0, 1]
    ) / h ** 2


def helmholtz_operator(grid):
    """Sparse symmetric operator for row-major flattened fields"""
    k0 = 2.0 * np.pi / grid.wavelength
    dxx = sparse.kron(sparse.identity(grid.ny), _second_difference(grid.nx, grid.dx))
    dyy = sparse.kron(_second_difference(grid.ny, grid.dy), sparse.identity(grid.nx))
    potential = sparse.diags((k0 * grid.index_map.ravel()) ** 2)
    return (dxx + dyy + potential).tocsc()


def _operator_scale(grid):
    k0 = 2.0 * np.pi / grid.wavelength
    return (k0 * grid.core_index) ** 2 + 4.0 / grid.dx ** 2 + 4.0 / grid.dy ** 2


def _eigenpairs(operator, n_eigen, sigma):
    size = operator.shape[0]
    # fixed start vector keeps repeated solves bitwise identical
    start = np.random.default_rng(0).standard_normal(size)
    base_ncv = min(size - 1, max(2 * n_eigen + 1, 20))

    for attempt in tenacity.Retrying(
        retry=tenacity.retry_if_exception(is_retryable_exception),
        stop=tenacity.stop_after_attempt(MAX_SOLVE_ATTEMPTS),
        reraise=True,
    ):
        with attempt:
            ncv = min(size - 1, base_ncv * 2 ** (attempt.retry_state.attempt_number - 1))
            if attempt.retry_state.attempt_number > 1:
                logger.info("Retrying eigen-solve with ncv=%d", ncv)
            return eigsh(
                operator,
                k=n_eigen,
                sigma=sigma,
                which="LM",
                v0=start,
                ncv=ncv,
                maxiter=MAX_ARPACK_ITERATIONS,
            )


def solve_modes(grid, wavelength=None, n_modes=1, polarization=Polarization.vertical):
    """
    Args:
        grid: IndexGrid from build_grid
        wavelength: μm; must match the grid's wavelength when given
        n_modes: number of eigenpairs requested
        polarization: recorded on each solution

    Returns:
        guided modes sorted by descending effective index, at most n_modes

    Raises:
        NumericalError: ARPACK did not converge or a residual check failed

    """
    if n_modes < 1:
        raise ValueError("n_modes must be at least 1, got {}".format(n_modes))
    if wavelength is None:
        wavelength = grid.wavelength
    if abs(wavelength - grid.wavelength) > 1e-12:
        raise GeometryError(
            "grid was built at {} μm, not {} μm".format(grid.wavelength, wavelength)
        )

    k0 = 2.0 * np.pi / wavelength
    operator = helmholtz_operator(grid)
    n_eigen = min(n_modes, operator.shape[0] - 2)

    try:
        values, vectors = _eigenpairs(operator, n_eigen, (k0 * grid.core_index) ** 2)
    except ArpackNoConvergence as err:
        residual = None
        if len(err.eigenvalues):
            residual = float(
                np.max(
                    np.linalg.norm(
                        operator @ err.eigenvectors - err.eigenvectors * err.eigenvalues,
                        axis=0,
                    )
                )
            )
        raise NumericalError(
            "eigen-solve did not converge after {} attempts of {} iterations "
            "(residual {})".format(MAX_SOLVE_ATTEMPTS, MAX_ARPACK_ITERATIONS, residual),
            residual=residual,
        )

    scale = _operator_scale(grid)
    cutoff = max(grid.substrate_index, grid.cladding_index)
    cell = grid.dx * grid.dy

    modes = []
    for idx in np.argsort(values)[::-1]:
        beta2 = values[idx]
        vec = vectors[:, idx]
        residual = float(
            np.linalg.norm(operator @ vec - beta2 * vec) / np.linalg.norm(vec)
        )
        if residual > RESIDUAL_TOLERANCE * scale:
            raise NumericalError(
                "eigenpair residual {:.3e} exceeds {:.1e} of the operator scale".format(
                    residual, RESIDUAL_TOLERANCE
                ),
                residual=residual,
            )
        if beta2 <= 0:
            continue

        n_eff = math.sqrt(beta2) / k0
        if not (cutoff < n_eff < grid.core_index):
            continue

        psi = vec / math.sqrt(np.sum(vec ** 2) * cell)
        # sign convention: largest excursion is positive
        if psi[np.argmax(np.abs(psi))] < 0:
            psi = -psi

        modes.append(
            ModeSolution(
                effective_index=n_eff,
                field=psi.reshape(grid.ny, grid.nx),
                order_label=len(modes) + 1,
                wavelength=float(wavelength),
                polarization=Polarization(polarization),
                residual=residual,
            )
        )

    logger.debug(
        "%d guided of %d requested modes at %.4f μm", len(modes), n_modes, wavelength
    )
    return modes


def fundamental_mode(geometry, wavelength, resolution=DEFAULT_RESOLUTION, padding=DEFAULT_PADDING):
    grid = build_grid(geometry, wavelength, resolution=resolution, padding=padding)
    modes = solve_modes(grid, wavelength, n_modes=1)
    if not modes:
        raise NumericalError(
            "no guided mode at {} μm for top width {} μm".format(
                wavelength, geometry.top_width
            )
        )
    return modes[0]


def _map(func, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]


def dispersion_sweep(
    geometry,
    wavelengths,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
    workers=1,
):
    """Fundamental-mode effective index at each wavelength"""

    def solve(wavelength):
        try:
            return fundamental_mode(geometry, wavelength, resolution, padding)
        except WgsqException as err:
            raise NumericalError(
                "mode solve failed at {} μm: {}".format(wavelength, err)
            ) from err

    modes = _map(solve, list(wavelengths), workers)
    return DispersionTable(
        wavelengths=[mode.wavelength for mode in modes],
        effective_indices=[mode.effective_index for mode in modes],
        label="top width {} μm".format(geometry.top_width),
        modes=modes,
    )


def guided_mode_count(
    geometry, wavelength, resolution=DEFAULT_RESOLUTION, padding=DEFAULT_PADDING, n_modes=4
):
    grid = build_grid(geometry, wavelength, resolution=resolution, padding=padding)
    return len(solve_modes(grid, wavelength, n_modes=n_modes))


def mode_count_sweep(
    geometry,
    wavelength,
    widths,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
    n_modes=4,
    workers=1,
):
    """Guided modes per top width as (width, grid, [ModeSolution, ...]) triples"""

    def solve(width):
        try:
            grid = build_grid(
                geometry.with_top_width(width), wavelength, resolution=resolution, padding=padding
            )
            return width, grid, solve_modes(grid, wavelength, n_modes=n_modes)
        except WgsqException as err:
            raise NumericalError(
                "mode solve failed at top width {} μm: {}".format(width, err)
            ) from err

    return _map(solve, list(widths), workers)


def single_mode_boundary(
    geometry,
    wavelength,
    width_range,
    tolerance=DEFAULT_BOUNDARY_TOLERANCE,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
):
    """
    Bisect on the guided-mode count for the top width where the
    second-order mode appears.

    Returns:
        midpoint of the final bracket, within ``tolerance``/2 of the
        transition on this grid

    Raises:
        BracketError: the low end is not single-mode or the high end is

    """
    low, high = sorted(float(w) for w in width_range)

    def count(width):
        n = guided_mode_count(
            geometry.with_top_width(width), wavelength, resolution, padding, n_modes=2
        )
        logger.debug("top width %.4f μm: %d guided modes", width, n)
        return n

    n_low, n_high = count(low), count(high)
    if n_low != 1 or n_high < 2:
        raise BracketError(
            "widths [{}, {}] μm do not bracket the single-mode boundary "
            "({} and {} guided modes)".format(low, high, n_low, n_high)
        )

    while high - low > tolerance:
        mid = 0.5 * (low + high)
        if count(mid) >= 2:
            high = mid
        else:
            low = mid

    boundary = 0.5 * (low + high)
    logger.info("Single-mode boundary %.3f μm at %.4f μm", boundary, wavelength)
    return boundary


def waveguide_group_index_and_gvd(
    geometry,
    wavelength,
    relative_step=1e-2,
    resolution=DEFAULT_RESOLUTION,
    padding=DEFAULT_PADDING,
):
    """Group index and β₂ (s²/m) of the fundamental mode from three solves"""
    omega = float(angular_frequency(wavelength))
    h = relative_step * omega
    omegas = (omega - h, omega, omega + h)
    betas = [
        fundamental_mode(
            geometry, 2.0 * np.pi * SPEED_OF_LIGHT / w * 1e6, resolution, padding
        ).propagation_constant
        for w in omegas
    ]
    n_g = SPEED_OF_LIGHT * (betas[2] - betas[0]) / (2.0 * h)
    beta2 = (betas[2] - 2.0 * betas[1] + betas[0]) / h ** 2
    return float(n_g), float(beta2)


def write_mode_field(path, grid, mode):
    """Header line ``nx ny dx dy n_eff``, then ny rows of nx field values"""
    with open(path, "w", encoding="utf-8") as f:
        f.write(
            "{} {} {:.10g} {:.10g} {:.12f}\n".format(
                grid.nx, grid.ny, grid.dx, grid.dy, mode.effective_index
            )
        )
        np.savetxt(f, mode.field, fmt="%.10e")


def write_dispersion_csv(path, table):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["wavelength_um", "n_eff"])
        for wavelength, n_eff in zip(table.wavelengths, table.effective_indices):
            writer.writerow(["{:.6f}".format(wavelength), "{:.10f}".format(n_eff)])


def mode_parity(grid, mode):
    """L2 norm of the x-antisymmetric part of a unit-norm field"""
    antisymmetric = 0.5 * (mode.field - mode.field[:, ::-1])
    return float(math.sqrt(np.sum(antisymmetric ** 2) * grid.dx * grid.dy))
