"""Catalog of the twelve input cases and the source spectra they use."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class CaseId(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    H = "H"
    I = "I"  # noqa: E741
    J = "J"
    K = "K"
    L = "L"

    @classmethod
    def parse(cls, letter) -> "CaseId":
        if isinstance(letter, CaseId):
            return letter
        try:
            return cls(str(letter).strip().upper())
        except ValueError:
            valid = ", ".join(c.value for c in cls)
            raise ValueError(f"unknown case {letter!r}; valid cases are {valid}") from None


class Interferometer(str, enum.Enum):
    MZ = "MZ"
    HOM = "HOM"


class Family(str, enum.Enum):
    FOCK = "Fock"
    DUAL_FOCK = "DualFock"
    N00N = "N00N"
    SPDC_FOCK = "SPDCFock"


class Correlation(str, enum.Enum):
    NONE = "none"
    ANTICORRELATED = "anticorrelated"
    NOT_APPLICABLE = "notApplicable"


@dataclass(frozen=True)
class CaseSpec:
    id: CaseId
    photons: int
    interferometer: Interferometer
    family: Family
    correlation: Correlation

    @property
    def anticorrelated(self) -> bool:
        return self.correlation is Correlation.ANTICORRELATED


_MZ, _HOM = Interferometer.MZ, Interferometer.HOM
_NONE, _ANTI, _NA = Correlation.NONE, Correlation.ANTICORRELATED, Correlation.NOT_APPLICABLE

_CATALOG = (
    CaseSpec(CaseId.A, 1, _MZ, Family.FOCK, _NA),
    CaseSpec(CaseId.B, 1, _MZ, Family.N00N, _NA),
    CaseSpec(CaseId.C, 2, _MZ, Family.FOCK, _NONE),
    CaseSpec(CaseId.D, 2, _MZ, Family.DUAL_FOCK, _NONE),
    CaseSpec(CaseId.E, 2, _MZ, Family.N00N, _NONE),
    CaseSpec(CaseId.F, 2, _MZ, Family.FOCK, _ANTI),
    CaseSpec(CaseId.G, 2, _MZ, Family.N00N, _ANTI),
    CaseSpec(CaseId.H, 2, _MZ, Family.DUAL_FOCK, _ANTI),
    CaseSpec(CaseId.I, 1, _HOM, Family.N00N, _NA),
    CaseSpec(CaseId.J, 2, _HOM, Family.N00N, _NONE),
    CaseSpec(CaseId.K, 2, _HOM, Family.N00N, _ANTI),
    CaseSpec(CaseId.L, 2, _MZ, Family.SPDC_FOCK, _ANTI),
)
_BY_ID = {c.id: c for c in _CATALOG}


def case_catalog() -> list[CaseSpec]:
    """All twelve cases in table order."""
    return list(_CATALOG)


def get_case(case) -> CaseSpec:
    return _BY_ID[CaseId.parse(case)]


def gaussian_envelope(sigma: float, detuning):
    """Unnormalized single-photon spectral amplitude exp(-sigma*x^2/2)."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    return np.exp(-0.5 * sigma * np.square(detuning))


@dataclass(frozen=True)
class CrystalParams:
    """Collinear type-II downconversion crystal.

    ``lambda_p`` and ``lambda_big`` are the phase-mismatch slopes with respect
    to pump detuning and signal/idler half-difference; only the products with
    ``crystal_length`` enter any probability.
    """

    lambda_p: float
    lambda_big: float
    crystal_length: float = 1.0

    def __post_init__(self):
        if not self.crystal_length > 0:
            raise ValueError("crystal_length must be positive")
        if self.lambda_big == 0:
            # without a signal/idler mismatch slope the biphoton is not normalizable
            raise ValueError("lambda_big must be nonzero")

    @classmethod
    def from_ratios(cls, b: float, lambda_ratio: float, crystal_length: float = 1.0) -> "CrystalParams":
        """Build from ``b = lambda_p * L_c`` and ``lambda_ratio = lambda_big / lambda_p``."""
        lambda_p = b / crystal_length
        return cls(lambda_p, lambda_ratio * lambda_p, crystal_length)

    @property
    def b(self) -> float:
        return self.lambda_p * self.crystal_length

    @property
    def lambda_ratio(self) -> float:
        if self.lambda_p == 0:
            raise ValueError("lambda_ratio undefined for lambda_p = 0")
        return self.lambda_big / self.lambda_p

    def mismatch(self, omega_p, omega_minus):
        """Wave-vector mismatch for pump detuning ``omega_p`` and half-difference ``omega_minus``."""
        return self.lambda_p * omega_p + self.lambda_big * omega_minus


def case_letters() -> str:
    return "".join(c.value for c in CaseId)

