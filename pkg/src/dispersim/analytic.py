"""Closed-form outcome probabilities for cases A through K.

Outcome ``l`` of an N-photon distribution is (N_c, N_d) = (N - l, l), i.e. the
list is ordered by the number of photons reaching detector D.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier import PhaseFourierSeries
from .phase import DispersionParams, dispersion_shape, gaussian_phase_average
from .states import CaseId, get_case


@dataclass(frozen=True)
class OutcomeDistribution:
    photons: int
    probs: tuple
    phi0: float

    def __post_init__(self):
        if len(self.probs) != self.photons + 1:
            raise ValueError("need photons + 1 outcome probabilities")

    @property
    def labels(self) -> list[tuple[int, int]]:
        n = self.photons
        return [(n - l, l) for l in range(n + 1)]

    def __getitem__(self, outcome: tuple[int, int]) -> float:
        nc, nd = outcome
        if nc + nd != self.photons or nc < 0 or nd < 0:
            raise KeyError(outcome)
        return self.probs[nd]

    def clamped(self) -> tuple:
        return tuple(min(1.0, max(0.0, p)) for p in self.probs)


def _require_analytic(case) -> CaseId:
    cid = CaseId.parse(case)
    if cid is CaseId.L:
        raise ValueError("case L has no closed form; use oracle.spdc_distribution")
    return cid


def _closed_form(cid: CaseId, p: DispersionParams) -> tuple:
    sh = dispersion_shape(p)
    a2 = p.alpha_l ** 2
    b = p.beta_l
    s = p.sigma
    r1, r2, th1, th2 = sh.r1, sh.r2, sh.theta1, sh.theta2
    phi = p.phi0

    # single-photon visibility and phase offset
    vis1 = math.exp(-a2 / (4 * r1 * r1 * s)) / math.sqrt(r1)
    arg1 = phi + th1 / 2 - a2 * b / (4 * r1 * r1 * s * s)
    # two uncorrelated photons sharing the dispersive arm
    vis2 = math.exp(-a2 / (2 * r1 * r1 * s)) / r1
    arg2 = 2 * phi + th1 - a2 * b / (2 * r1 * r1 * s * s)
    # anticorrelated pair: the linear term cancels
    vis_pair = 1 / math.sqrt(r1)
    arg_pair = 2 * phi + th1 / 2
    g = math.exp(-a2 / (2 * s))

    if cid is CaseId.A:
        x = vis1 * math.cos(arg1)
        return (0.5 * (1 - x), 0.5 * (1 + x))
    if cid is CaseId.B:
        # printed exponent carries a stray beta*L; the single-photon decay is used
        x = vis1 * math.sin(arg1)
        return (0.5 * (1 - x), 0.5 * (1 + x))
    if cid is CaseId.I:
        x = vis1 * math.sin(arg1)
        return (0.5 * (1 + x), 0.5 * (1 - x))
    if cid is CaseId.C:
        x = vis1 * math.cos(arg1)
        return (0.25 * (1 - x) ** 2, 0.5 * (1 - x * x), 0.25 * (1 + x) ** 2)
    if cid in (CaseId.D, CaseId.J):
        y = vis2 * math.cos(arg2)
        return (0.25 * (1 - y), 0.5 * (1 + y), 0.25 * (1 - y))
    if cid is CaseId.E:
        v = math.exp(-a2 / (2 * r1 * r1 * s)) / r1
        return (0.25 * (1 + v), 0.5 * (1 - v), 0.25 * (1 + v))
    if cid is CaseId.F:
        y = vis_pair * math.cos(arg_pair)
        x = (
            4
            / math.sqrt(r2)
            * math.exp(-a2 / (8 * r2 * r2 * s))
            * math.cos(phi + th2 / 2 - a2 * b / (16 * r2 * r2 * s * s))
        )
        return ((2 + g + y - x) / 8, (2 - g - y) / 4, (2 + g + y + x) / 8)
    if cid is CaseId.G:
        return (0.25 * (1 + g), 0.5 * (1 - g), 0.25 * (1 + g))
    if cid in (CaseId.H, CaseId.K):
        y = vis_pair * math.cos(arg_pair)
        return (0.25 * (1 - y), 0.5 * (1 + y), 0.25 * (1 - y))
    raise AssertionError(cid)


def analytic_distribution(case, params: DispersionParams) -> OutcomeDistribution:
    """Evaluate the closed-form distribution; values are returned unclamped."""
    cid = _require_analytic(case)
    probs = _closed_form(cid, params)
    return OutcomeDistribution(get_case(cid).photons, tuple(probs), params.phi0)


def phase_fourier(case, params: DispersionParams) -> list[PhaseFourierSeries]:
    """Exact phi0 series for each outcome; ``params.phi0`` is ignored.

    Built from the complex Gaussian averages rather than the cosine forms, so
    it is a second, independent transcription of the same physics.
    """
    cid = _require_analytic(case)
    sigma = params.sigma
    z = gaussian_phase_average(params, sigma)  # one photon, spectrum |g|^2
    w = complex(np.sqrt(1.0 / complex(1.0, -params.beta_l / sigma)))  # anticorrelated pair sum
    v = gaussian_phase_average(params, 2.0 * sigma)  # one photon of an anticorrelated pair
    g = math.exp(-params.alpha_l ** 2 / (2 * sigma))
    zz = abs(z) ** 2
    S = PhaseFourierSeries

    if cid is CaseId.A:
        return [S(0.5, -z / 4), S(0.5, z / 4)]
    if cid is CaseId.B:
        return [S(0.5, 1j * z / 4), S(0.5, -1j * z / 4)]
    if cid is CaseId.I:
        return [S(0.5, -1j * z / 4), S(0.5, 1j * z / 4)]
    if cid is CaseId.C:
        return [
            S(0.25 + zz / 8, -z / 4, z * z / 16),
            S(0.5 - zz / 4, 0j, -z * z / 8),
            S(0.25 + zz / 8, z / 4, z * z / 16),
        ]
    if cid in (CaseId.D, CaseId.J):
        return [S(0.25, 0j, -z * z / 8), S(0.5, 0j, z * z / 4), S(0.25, 0j, -z * z / 8)]
    if cid is CaseId.E:
        return [S(0.25 * (1 + zz)), S(0.5 * (1 - zz)), S(0.25 * (1 + zz))]
    if cid is CaseId.F:
        return [
            S((2 + g) / 8, -v / 4, w / 16),
            S((2 - g) / 4, 0j, -w / 8),
            S((2 + g) / 8, v / 4, w / 16),
        ]
    if cid is CaseId.G:
        return [S(0.25 * (1 + g)), S(0.5 * (1 - g)), S(0.25 * (1 + g))]
    if cid in (CaseId.H, CaseId.K):
        return [S(0.25, 0j, -w / 8), S(0.5, 0j, w / 4), S(0.25, 0j, -w / 8)]
    raise AssertionError(cid)
