"""Dispersion model for the dispersive interferometer arm.

All quantities are in natural units with the central frequency set to one, so
the first- and second-order dispersion coefficients only ever appear multiplied
by the dispersive length (``alpha_l`` and ``beta_l``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DispersionParams:
    """Arm parameters: ``phase = phi0 + alpha_l*x + beta_l*x**2`` at detuning ``x``.

    ``sigma`` is the squared inverse bandwidth of each photon's Gaussian
    spectrum. Negative ``beta_l`` (anomalous dispersion) is allowed.
    """

    alpha_l: float = 0.0
    beta_l: float = 0.0
    sigma: float = 1.0
    phi0: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        for name in ("alpha_l", "beta_l", "sigma", "phi0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def with_phase(self, phi0: float) -> "DispersionParams":
        return DispersionParams(self.alpha_l, self.beta_l, self.sigma, phi0)

    def rescaled(self, t: float) -> "DispersionParams":
        """Apply the map that keeps both dimensionless ratios fixed."""
        return DispersionParams(
            math.sqrt(t) * self.alpha_l, t * self.beta_l, t * self.sigma, self.phi0
        )


@dataclass(frozen=True)
class DispersionShape:
    r1: float
    r2: float
    theta1: float
    theta2: float
    zeta: float
    lambda1: float
    lambda2: float


def phase_shift(params: DispersionParams, detuning):
    """Total phase picked up in the dispersive arm at the given detuning.

    Works elementwise on arrays.
    """
    x = detuning
    return params.phi0 + params.alpha_l * x + params.beta_l * x * x


def dispersion_shape(params: DispersionParams) -> DispersionShape:
    sigma = params.sigma
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    a, b = params.alpha_l, params.beta_l
    t1 = b / sigma
    t2 = b / (2.0 * sigma)
    r1 = math.hypot(1.0, t1)
    r2 = math.hypot(1.0, t2)
    lambda1 = math.inf if b == 0 else sigma / b
    lambda2 = math.inf if a * a == 0 else sigma / (a * a)
    # exp(-alpha_l^2 / (4 r1^2 sigma)); equivalently exp(-1 / (4 lambda2 (1 + lambda1^-2)))
    zeta = math.exp(-(a * a) / (4.0 * r1 * r1 * sigma))
    return DispersionShape(
        r1=r1,
        r2=r2,
        theta1=math.atan(t1),
        theta2=math.atan(t2),
        zeta=zeta,
        lambda1=lambda1,
        lambda2=lambda2,
    )


def gaussian_phase_average(params: DispersionParams, weight_sigma: float) -> complex:
    """Mean of ``exp(i*(phase - phi0))`` under the normalized weight exp(-weight_sigma*x^2).

    Closed-form Gaussian Fourier transform; the building block of every
    analytic probability.
    """
    s = complex(weight_sigma, -params.beta_l)
    a = params.alpha_l
    return complex(np.sqrt(weight_sigma / s) * np.exp(-(a * a) / (4.0 * s)))
