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

"""Single-pass degenerate squeezer with loss.

The pump power entering the squeezing model is the coupled power inside the
waveguide, in W. The normalized conversion efficiency ``a`` is carried in
W⁻¹ (1 W⁻¹ = 100 %/W); the %/W form only appears at the I/O boundary.

Relative noise powers for a total effective efficiency η::

    R± = 1 − η + η·exp(±2·sqrt(a·P))

The fit works on dB values of both branches at once with a trust-region
reflective least-squares solver and an analytic Jacobian.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import least_squares

from wgsq.exceptions import (
    DomainError,
    FitError,
    InconsistentBudgetError,
    RangeError,
)
from wgsq.units import db, from_db, per_watt, percent_per_watt

logger = logging.getLogger(__name__)

# Squeezing needed to build large-scale cluster states with the time-domain
# multiplexing scheme
CLUSTER_STATE_THRESHOLD_DB = 4.5

_DB_PER_NEPER = 10.0 / np.log(10.0)

# Lower bounds keep the model defined at the edge of the search box
_ETA_FLOOR = 1e-6
_A_FLOOR = 1e-9


@dataclass(frozen=True)
class SqueezerParams:
    eta: float
    a: float

    def __post_init__(self):
        if not (0.0 < self.eta <= 1.0):
            raise RangeError(
                "eta must lie in (0, 1], got {}".format(self.eta),
                name="eta",
                bounds=(0.0, 1.0),
            )
        if not (self.a >= 0.0) or not np.isfinite(self.a):
            raise RangeError(
                "a must be finite and non-negative, got {}".format(self.a),
                name="a",
            )

    @classmethod
    def from_percent_per_watt(cls, eta, a_percent_per_watt):
        return cls(eta=eta, a=per_watt(a_percent_per_watt))

    @property
    def a_percent_per_watt(self):
        return percent_per_watt(self.a)


@dataclass(frozen=True)
class LossBudget:
    """Waveguide loss plus detection loss, each as a power-loss fraction.

    The detection loss is either given directly as ``l_hd`` or built from
    photodiode quantum efficiency, optical transmittance and homodyne
    visibility as ``1 − QE·T·V^visibility_exponent``.
    """

    l_wg: float
    l_hd: Optional[float] = None
    quantum_efficiency: Optional[float] = None
    transmittance: Optional[float] = None
    visibility: Optional[float] = None
    visibility_exponent: float = 2.0

    def __post_init__(self):
        for name in ("l_wg", "l_hd", "quantum_efficiency", "transmittance", "visibility"):
            value = getattr(self, name)
            if value is not None and not (0.0 <= value <= 1.0):
                raise RangeError(
                    "{} must lie in [0, 1], got {}".format(name, value),
                    name=name,
                    bounds=(0.0, 1.0),
                )

        if self.visibility_exponent not in (1, 2):
            raise RangeError(
                "visibility exponent must be 1 or 2, got {}".format(
                    self.visibility_exponent
                ),
                name="visibility_exponent",
            )

        components = (self.quantum_efficiency, self.transmittance, self.visibility)
        if self.l_hd is None:
            if any(value is None for value in components):
                raise RangeError(
                    "detection loss needs l_hd or all of quantum_efficiency, "
                    "transmittance and visibility"
                )
            object.__setattr__(self, "l_hd", self.detection_loss_from_components())

        if self.l_wg >= 1.0 or self.l_hd >= 1.0:
            raise RangeError(
                "losses must be below 1, got l_wg={} l_hd={}".format(self.l_wg, self.l_hd)
            )

    def detection_loss_from_components(self):
        return 1.0 - (
            self.quantum_efficiency
            * self.transmittance
            * self.visibility ** self.visibility_exponent
        )


@dataclass(frozen=True)
class PumpSweepPoint:
    pump_power: float
    squeezing_db: float
    antisqueezing_db: float
    uncertainty_db: Optional[float] = None

    def __post_init__(self):
        if not (self.pump_power >= 0.0):
            raise RangeError(
                "pump power must be non-negative, got {}".format(self.pump_power),
                name="pump_power",
            )
        if self.squeezing_db > 0.0 or self.antisqueezing_db < 0.0:
            raise RangeError(
                "expected squeezing <= 0 <= anti-squeezing dB, got {} and {}".format(
                    self.squeezing_db, self.antisqueezing_db
                ),
                name="squeezing_db",
            )
        if self.uncertainty_db is not None and not (self.uncertainty_db > 0.0):
            raise RangeError(
                "uncertainty must be positive, got {}".format(self.uncertainty_db),
                name="uncertainty_db",
            )


@dataclass
class FitResult:
    params: SqueezerParams
    residuals: np.ndarray
    rms_db: float
    covariance: np.ndarray
    n_iterations: int
    converged: bool = True
    message: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def standard_errors(self):
        return np.sqrt(np.clip(np.diag(self.covariance), 0.0, None))


def squeeze_levels(params, pump_power):
    """
    Args:
        params: SqueezerParams
        pump_power: coupled pump power in W, scalar or array

    Returns:
        (R−, R+) as linear noise ratios relative to shot noise

    """
    p = np.asarray(pump_power, dtype=float)
    if np.any(p < 0):
        raise RangeError("pump power must be non-negative", name="pump_power")

    gain = 2.0 * np.sqrt(params.a * p)
    r_minus = 1.0 - params.eta + params.eta * np.exp(-gain)
    r_plus = 1.0 - params.eta + params.eta * np.exp(gain)
    if np.ndim(pump_power) == 0:
        return float(r_minus), float(r_plus)
    return r_minus, r_plus


def model_curve(params, pump_powers):
    """Squeezing and anti-squeezing in dB over a pump power grid"""
    r_minus, r_plus = squeeze_levels(params, np.asarray(pump_powers, dtype=float))
    return db(r_minus), db(r_plus)


def eta_from_budget(budget):
    return (1.0 - budget.l_wg) * (1.0 - budget.l_hd)


def infer_waveguide_loss(eta, l_hd):
    """Waveguide loss implied by a fitted η and a known detection loss"""
    if not eta > 0.0:
        raise RangeError("eta must be positive, got {}".format(eta), name="eta")
    if not (0.0 <= l_hd < 1.0):
        raise RangeError("l_hd must lie in [0, 1), got {}".format(l_hd), name="l_hd")

    l_wg = 1.0 - eta / (1.0 - l_hd)
    if l_wg < 0.0:
        raise InconsistentBudgetError(
            "eta={:.4f} exceeds the detection efficiency {:.4f}".format(
                eta, 1.0 - l_hd
            )
        )
    return l_wg


def squeezing_floor_db(eta):
    """Squeezing level approached at infinite pump power"""
    if eta >= 1.0:
        return -np.inf
    return db(1.0 - eta)


def pump_for_squeezing(params, target_db):
    """Coupled pump power (W) that gives ``target_db`` of squeezing"""
    if not target_db < 0.0:
        raise DomainError("target squeezing must be negative dB, got {}".format(target_db))

    floor = squeezing_floor_db(params.eta)
    if target_db <= floor or params.a == 0.0:
        raise RangeError(
            "{} dB is beyond the {:.2f} dB floor set by eta={}".format(
                target_db, floor, params.eta
            ),
            name="target_db",
        )

    decay = (from_db(target_db) - 1.0 + params.eta) / params.eta
    gain = -0.5 * np.log(decay)
    return float(gain ** 2 / params.a)


def _sweep_arrays(data):
    powers = np.array([point.pump_power for point in data], dtype=float)
    squeezing = np.array([point.squeezing_db for point in data], dtype=float)
    antisqueezing = np.array([point.antisqueezing_db for point in data], dtype=float)
    sigmas = [point.uncertainty_db for point in data]
    weighted = all(sigma is not None for sigma in sigmas)
    if weighted:
        sigmas = np.array(sigmas, dtype=float)
    else:
        sigmas = np.ones_like(powers)
    return powers, squeezing, antisqueezing, sigmas, weighted


def _branch_db(eta, a, powers, sign):
    return db(1.0 - eta + eta * np.exp(sign * 2.0 * np.sqrt(a * powers)))


def fit_residuals(x, powers, squeezing, antisqueezing, sigmas):
    """Weighted residuals, squeezing and anti-squeezing interleaved per point"""
    eta, a = x
    out = np.empty(2 * len(powers))
    out[0::2] = (_branch_db(eta, a, powers, -1.0) - squeezing) / sigmas
    out[1::2] = (_branch_db(eta, a, powers, +1.0) - antisqueezing) / sigmas
    return out


def fit_jacobian(x, powers, squeezing, antisqueezing, sigmas):
    """Analytic Jacobian of ``fit_residuals`` with respect to (η, a)"""
    eta, a = x
    root = np.sqrt(a * powers)
    # d(sqrt(a·P))/da · 2 = sqrt(P/a), zero where P = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        dgain = np.where(powers > 0, np.sqrt(powers / max(a, _A_FLOOR)), 0.0)

    jac = np.empty((2 * len(powers), 2))
    for offset, sign in ((0, -1.0), (1, +1.0)):
        decay = np.exp(sign * 2.0 * root)
        ratio = 1.0 - eta + eta * decay
        jac[offset::2, 0] = _DB_PER_NEPER * (decay - 1.0) / ratio / sigmas
        jac[offset::2, 1] = _DB_PER_NEPER * sign * eta * decay * dgain / ratio / sigmas
    return jac


def _seed(args):
    best, best_cost = None, np.inf
    for eta in np.linspace(0.3, 1.0, 15):
        for a in np.logspace(-1.0, 2.0, 31):
            cost = np.sum(fit_residuals((eta, a), *args) ** 2)
            if cost < best_cost:
                best, best_cost = (eta, a), cost
    return np.array(best)


def _numeric_jacobian(x, args, rel_step=1e-6):
    jac = np.empty((2 * len(args[0]), 2))
    for i in range(2):
        h = rel_step * max(abs(x[i]), 1e-3)
        up, down = np.array(x, dtype=float), np.array(x, dtype=float)
        up[i] += h
        down[i] -= h
        jac[:, i] = (fit_residuals(up, *args) - fit_residuals(down, *args)) / (2 * h)
    return jac


def fit_squeezer(data: Sequence[PumpSweepPoint], max_iterations=200):
    """
    Fit (η, a) to a pump-power sweep of squeezing and anti-squeezing levels.

    Points are weighted by 1/uncertainty² when every point carries an
    uncertainty, uniformly otherwise. The covariance is the Gauss-Newton
    estimate from a central-difference Jacobian at the optimum, scaled by
    the residual variance when no uncertainties were given.

    Raises:
        FitError: fewer than 3 points, fewer than 2 distinct positive pump
            powers, or no convergence within ``max_iterations``
    """
    data = list(data)
    powers, squeezing, antisqueezing, sigmas, weighted = _sweep_arrays(data)

    distinct = np.unique(powers[powers > 0])
    if len(data) < 3 or len(distinct) < 2:
        raise FitError(
            "need at least 3 points with 2 distinct positive pump powers, "
            "got {} points and {} distinct powers".format(len(data), len(distinct))
        )

    args = (powers, squeezing, antisqueezing, sigmas)
    x0 = _seed(args)
    logger.debug("Squeezer fit seed eta=%.4f a=%.4f /W", *x0)

    result = least_squares(
        fit_residuals,
        x0,
        jac=fit_jacobian,
        bounds=([_ETA_FLOOR, _A_FLOOR], [1.0, np.inf]),
        method="trf",
        x_scale="jac",
        ftol=1e-12,
        xtol=1e-12,
        gtol=1e-12,
        max_nfev=max_iterations,
        args=args,
    )

    eta, a = (float(v) for v in result.x)
    best = SqueezerParams(eta=min(max(eta, _ETA_FLOOR), 1.0), a=max(a, 0.0))
    if result.status <= 0:
        raise FitError(
            "fit did not converge after {} evaluations: {}".format(
                result.nfev, result.message
            ),
            best_params=best,
        )

    residuals = fit_residuals(result.x, *args)
    # residuals in dB, without weights, for reporting
    raw = residuals * np.repeat(sigmas, 2)
    rms = float(np.sqrt(np.mean(raw ** 2)))

    jac = _numeric_jacobian(result.x, args)
    dof = max(len(residuals) - 2, 1)
    scale = 1.0 if weighted else float(np.sum(residuals ** 2) / dof)
    covariance = np.linalg.pinv(jac.T @ jac) * scale

    logger.info(
        "Squeezer fit eta=%.4f a=%.1f %%/W rms=%.3f dB in %d evaluations",
        best.eta,
        best.a_percent_per_watt,
        rms,
        result.nfev,
    )
    return FitResult(
        params=best,
        residuals=raw.reshape(-1, 2),
        rms_db=rms,
        covariance=covariance,
        n_iterations=int(result.nfev),
        converged=True,
        message=str(result.message),
    )
