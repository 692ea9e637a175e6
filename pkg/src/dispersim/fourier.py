"""Second-order trigonometric series in the nondispersive phase.

Every outcome probability depends on phi0 only through exp(i*k*phi0) with
|k| <= 2, so three complex coefficients describe a whole curve:

    P(phi0) = c0 + 2 Re[c1 exp(i phi0)] + 2 Re[c2 exp(2 i phi0)]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

N_SAMPLES = 5


@dataclass(frozen=True)
class PhaseFourierSeries:
    c0: float
    c1: complex = 0j
    c2: complex = 0j

    @property
    def coeffs(self) -> tuple[complex, complex, complex]:
        return (complex(self.c0), complex(self.c1), complex(self.c2))

    def __call__(self, phi):
        phi = np.asarray(phi, dtype=float)
        e1 = np.exp(1j * phi)
        val = self.c0 + 2.0 * (self.c1 * e1).real + 2.0 * (self.c2 * e1 * e1).real
        return val if val.ndim else float(val)

    def shifted(self, delta: float) -> "PhaseFourierSeries":
        """Series of P(phi0 + delta)."""
        return PhaseFourierSeries(
            self.c0, self.c1 * np.exp(1j * delta), self.c2 * np.exp(2j * delta)
        )

    @property
    def is_constant(self) -> bool:
        return self.c1 == 0 and self.c2 == 0


def sample_phases(n: int = N_SAMPLES) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


def series_from_samples(values: Sequence[float]) -> PhaseFourierSeries:
    """Exact trigonometric interpolation through equally spaced samples on [0, 2pi)."""
    v = np.asarray(values, dtype=float)
    n = v.size
    if n < N_SAMPLES:
        raise ValueError(f"need at least {N_SAMPLES} samples, got {n}")
    c = np.fft.fft(v) / n
    return PhaseFourierSeries(float(c[0].real), complex(c[1]), complex(c[2]))


def fourier_decompose(
    evaluate: Callable[[np.ndarray], np.ndarray], n_samples: int = N_SAMPLES
) -> list[PhaseFourierSeries]:
    """Recover one series per outcome from ``n_samples`` phase evaluations.

    ``evaluate`` maps an array of phases to an array of shape
    ``(len(phases), n_outcomes)``. Five samples determine a band-limited
    curve exactly; extra samples are only useful for checking that higher
    harmonics vanish (see :func:`harmonic_spectrum`).
    """
    phases = sample_phases(n_samples)
    table = np.asarray(evaluate(phases), dtype=float)
    if table.ndim != 2 or table.shape[0] != n_samples:
        raise ValueError("evaluator must return shape (n_phases, n_outcomes)")
    return [series_from_samples(table[:, m]) for m in range(table.shape[1])]


def harmonic_spectrum(evaluate: Callable[[np.ndarray], np.ndarray], n_samples: int = 8) -> np.ndarray:
    """DFT coefficients |c_k| for k = 0..n_samples//2, one row per outcome."""
    table = np.asarray(evaluate(sample_phases(n_samples)), dtype=float)
    c = np.fft.fft(table, axis=0) / n_samples
    return np.abs(c[: n_samples // 2 + 1]).T
