"""Brute-force outcome probabilities from scattering amplitudes.

Nothing here uses the closed forms: input spectra are pushed through the
frequency-dependent beamsplitter coefficients and |amplitude|^2 is integrated
numerically. This is the reference for cases A-K and the only route for
case L (downconversion with a sinc phase-matching function).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .analytic import OutcomeDistribution
from .fourier import PhaseFourierSeries, fourier_decompose, harmonic_spectrum  # noqa: F401
from .phase import DispersionParams, phase_shift
from .quadrature import (
    QuadratureSpec,
    integrate_1d,
    integrate_2d,
    truncation_bounds,
)
from .states import CaseId, CrystalParams, get_case

SQRT1_2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class ScatterCoeffs:
    """Coefficients of c^dagger and d^dagger in one input creation operator."""

    to_c: object
    to_d: object

    def norm2(self):
        return np.abs(self.to_c) ** 2 + np.abs(self.to_d) ** 2


def _port(port) -> str:
    p = str(port).upper()
    if p not in ("A", "B"):
        raise ValueError(f"port must be 'A' or 'B', got {port!r}")
    return p


def mz_port_coeffs(params: DispersionParams, port, detuning) -> ScatterCoeffs:
    """Mach-Zehnder: expand a^dagger or b^dagger at one frequency in output modes."""
    e = np.exp(1j * phase_shift(params, np.asarray(detuning, dtype=float)))
    if _port(port) == "A":
        return ScatterCoeffs(0.5 * (e - 1.0), -0.5j * (e + 1.0))
    return ScatterCoeffs(-0.5j * (e + 1.0), -0.5 * (e - 1.0))


def hom_port_coeffs(params: DispersionParams, port, detuning) -> ScatterCoeffs:
    """Single beamsplitter with the dispersive line on input A."""
    if _port(port) == "A":
        e = np.exp(1j * phase_shift(params, np.asarray(detuning, dtype=float)))
        return ScatterCoeffs(SQRT1_2 * e, 1j * SQRT1_2 * e)
    one = np.ones_like(np.asarray(detuning, dtype=float))
    return ScatterCoeffs(1j * SQRT1_2 * one, SQRT1_2 * one)


def _identity_coeffs(params, port, detuning) -> ScatterCoeffs:
    one = np.ones_like(np.asarray(detuning, dtype=float))
    if _port(port) == "A":
        return ScatterCoeffs(one, 0 * one)
    return ScatterCoeffs(0 * one, one)


# port content of each input state (overall weights need not be normalized;
# every probability is divided by the numerically integrated input norm)
_ONE_PHOTON_TERMS = {
    CaseId.A: (("A", 1.0),),
    CaseId.B: (("A", SQRT1_2), ("B", SQRT1_2)),
    CaseId.I: (("A", SQRT1_2), ("B", SQRT1_2)),
}
_TWO_PHOTON_TERMS = {
    CaseId.C: (("A", "A", 1.0),),
    CaseId.F: (("A", "A", 1.0),),
    CaseId.D: (("A", "B", 1.0),),  # one photon per port
    CaseId.H: (("A", "B", 1.0),),
    CaseId.E: (("A", "A", 1.0), ("B", "B", 1.0)),
    CaseId.G: (("A", "A", 1.0), ("B", "B", 1.0)),
    CaseId.J: (("A", "A", 1.0), ("B", "B", 1.0)),
    CaseId.K: (("A", "A", 1.0), ("B", "B", 1.0)),
}


def default_eps_width(sigma: float) -> float:
    """Width of the narrow Gaussian standing in for the sum-frequency delta."""
    return 1e-3 / math.sqrt(sigma)


def _oracle_spec(spec):
    return spec or QuadratureSpec(rel_tol=1e-11)


def _one_photon(cid, params, spec, coeffs):
    terms = _ONE_PHOTON_TERMS[cid]
    sigma = params.sigma

    def integrand(x):
        env = np.exp(-0.5 * sigma * x * x)
        out = []
        for scatter in (coeffs, _identity_coeffs):
            amp_c = 0j
            amp_d = 0j
            for port, w in terms:
                u = scatter(params, port, x)
                amp_c = amp_c + w * u.to_c
                amp_d = amp_d + w * u.to_d
            out.append(np.abs(env * amp_c) ** 2)
            out.append(np.abs(env * amp_d) ** 2)
        return np.array(out)

    lo, hi = truncation_bounds(sigma, spec)
    res = integrate_1d(integrand, lo, hi, spec).value
    norm = res[2] + res[3]
    return (res[0] / norm, res[1] / norm)


def _pair_amplitudes(terms, scatter, params, x1, x2, spectrum):
    """Symmetrized output amplitudes for (2,0), (1,1), (0,2) at detector frequencies x1, x2."""
    f12 = spectrum(x1, x2)
    f21 = spectrum(x2, x1)
    G12 = {}
    G21 = {}
    for p1, p2, w in terms:
        u1, v2 = scatter(params, p1, x1), scatter(params, p2, x2)
        u2, v1 = scatter(params, p1, x2), scatter(params, p2, x1)
        for m, a1, a2 in (("c", u1.to_c, u2.to_c), ("d", u1.to_d, u2.to_d)):
            for n, b2, b1 in (("c", v2.to_c, v1.to_c), ("d", v2.to_d, v1.to_d)):
                G12[m + n] = G12.get(m + n, 0) + w * f12 * a1 * b2
                G21[m + n] = G21.get(m + n, 0) + w * f21 * a2 * b1
    amp_cc = G12["cc"] + G21["cc"]
    amp_cd = G12["cd"] + G21["dc"]
    amp_dd = G12["dd"] + G21["dd"]
    return (0.5 * np.abs(amp_cc) ** 2, np.abs(amp_cd) ** 2, 0.5 * np.abs(amp_dd) ** 2)


def _two_photon(cid, params, spec, coeffs, eps):
    terms = _TWO_PHOTON_TERMS[cid]
    sigma = params.sigma
    anti = get_case(cid).anticorrelated

    if anti:
        def spectrum(x1, x2):
            s = x1 + x2
            return np.exp(-sigma * x1 * x1 - 0.5 * (s / eps) ** 2)

        def to_pair(u, s):  # integrate over (x1, s = x1 + x2); unit Jacobian
            return u, s - u

        domain = (truncation_bounds(2 * sigma, spec), truncation_bounds(1.0 / eps ** 2, spec))
    else:
        def spectrum(x1, x2):
            return np.exp(-0.5 * sigma * (x1 * x1 + x2 * x2))

        def to_pair(u, v):
            return u, v

        bounds = truncation_bounds(sigma, spec)
        domain = (bounds, bounds)

    def integrand(u, v):
        x1, x2 = to_pair(u, v)
        out = _pair_amplitudes(terms, coeffs, params, x1, x2, spectrum)
        norm = _pair_amplitudes(terms, _identity_coeffs, params, x1, x2, spectrum)
        return np.array(out + (sum(norm),))

    res = integrate_2d(integrand, domain, spec).value
    return tuple(res[:3] / res[3])


def oracle_distribution(
    case,
    params: DispersionParams,
    spec: QuadratureSpec | None = None,
    eps_width: float | None = None,
    refine: bool = True,
) -> OutcomeDistribution:
    """Numerical distribution for cases A-K.

    For anticorrelated inputs the sum-frequency constraint is a Gaussian of
    width ``eps_width``; with ``refine`` the result is Richardson-extrapolated
    from ``eps_width`` and ``eps_width/2`` (the error is even in the width).
    """
    cid = CaseId.parse(case)
    if cid is CaseId.L:
        raise ValueError("case L is evaluated by spdc_distribution")
    spec = _oracle_spec(spec)
    info = get_case(cid)
    coeffs = hom_port_coeffs if info.interferometer.value == "HOM" else mz_port_coeffs
    if info.photons == 1:
        probs = _one_photon(cid, params, spec, coeffs)
    elif not info.anticorrelated:
        probs = _two_photon(cid, params, spec, coeffs, None)
    else:
        eps = eps_width or default_eps_width(params.sigma)
        if eps <= 0:
            raise ValueError("eps_width must be positive")
        coarse = np.array(_two_photon(cid, params, spec, coeffs, eps))
        if refine:
            fine = np.array(_two_photon(cid, params, spec, coeffs, eps / 2))
            probs = tuple((4 * fine - coarse) / 3)
        else:
            probs = tuple(coarse)
    return OutcomeDistribution(info.photons, tuple(float(p) for p in probs), params.phi0)


# ---------------------------------------------------------------------------
# case L: downconversion with sinc phase matching
# ---------------------------------------------------------------------------

def _sinc_phase(u):
    """sinc(u) * exp(-i u), finite at u = 0."""
    return np.sinc(u / np.pi) * np.exp(-1j * u)


def spdc_joint_amplitude(crystal: CrystalParams, sigma: float, omega_p, omega_minus, norm: float = 1.0):
    """Biphoton amplitude over pump detuning and signal/idler half-difference."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    half_phase = 0.5 * crystal.mismatch(omega_p, omega_minus) * crystal.crystal_length
    return norm * np.exp(-2.0 * sigma * np.square(omega_p)) * _sinc_phase(half_phase)


def _symmetric_amplitude(crystal, sigma, op, om):
    """Phi(op, om) + Phi(op, -om): the exchange-symmetrized pair amplitude."""
    return spdc_joint_amplitude(crystal, sigma, op, om) + spdc_joint_amplitude(crystal, sigma, op, -om)


@dataclass(frozen=True)
class _Window:
    op_bounds: tuple
    om_max: float
    g: float  # |lambda_big| * L_c / 2
    hp: float  # lambda_p * L_c / 2


# sinc half-periods covered numerically before the analytic tail takes over,
# in units of the truncation width
_EDGE_PER_WIDTH = 10.0


def _window(crystal: CrystalParams, sigma: float, spec: QuadratureSpec) -> _Window:
    op_lo, op_hi = truncation_bounds(4.0 * sigma, spec)
    g = 0.5 * abs(crystal.lambda_big) * crystal.crystal_length
    hp = 0.5 * crystal.lambda_p * crystal.crystal_length
    u_edge = _EDGE_PER_WIDTH * spec.truncation_width
    return _Window((op_lo, op_hi), (u_edge + abs(hp) * op_hi) / g, g, hp)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _ray(z0, d, p, q: float, power: int):
    """Integral of exp(i(p z + q z^2)) / z^power along z0 + d*s, s >= 0 (vectorized in z0, p)."""
    slope = np.abs(p + 2 * q * z0)
    scale = np.minimum(np.abs(z0), 1.0 / np.maximum(slope, 1e-300))
    if q > 0:
        scale = np.minimum(scale, 1.0 / math.sqrt(q))
    scale = 0.5 * scale
    # geometric panels [0, d, 2d, 4d, ...] out to where exp(-40) is reached
    reach = np.full(scale.shape, 1e12) * np.abs(z0)
    reach = np.minimum(reach, 60.0 / np.maximum(slope, 1e-300))
    if q > 0:
        reach = np.minimum(reach, math.sqrt(50.0 / q))
    n = int(np.ceil(np.log2(np.max(reach / scale)))) + 2
    edges = scale[:, None] * np.concatenate([[0.0], 2.0 ** np.arange(n)])[None, :]
    lo, hi = edges[:, :-1], edges[:, 1:]
    s = 0.5 * (lo + hi)[..., None] + 0.5 * (hi - lo)[..., None] * _GL_NODES
    w = 0.5 * (hi - lo)[..., None] * _GL_WEIGHTS
    c = z0[:, None, None]
    z = c + d * s
    # phase relative to its value at z0 keeps the exponent small
    rel = p[:, None, None] * (z - c) + q * (z * z - c * c)
    vals = np.exp(1j * rel) / z ** power
    return d * np.sum(vals * w, axis=(1, 2)) * np.exp(1j * (p * z0 + q * z0 * z0))


def _tail_integral(p, q: float, om: float, power: int = 2):
    """Integral of exp(i(p w + q w^2)) / w^power over w in [om, inf), vectorized in p.

    The real half-line is deformed onto 45-degree steepest-descent rays, so
    nothing oscillates: one ray from ``om`` when the phase is monotone
    beyond it, otherwise a ray pair through the stationary point plus a
    ray from ``om`` on the other side.
    """
    p = np.atleast_1d(np.asarray(p, dtype=float))
    flip = (q < 0) | ((q == 0) & (p < 0))
    ps = np.where(flip, -p, p)
    qs = abs(q)
    omega = np.exp(0.25j * np.pi)
    start = np.full(ps.shape, float(om))
    res = np.zeros(ps.shape, complex)
    late = (ps + 2 * qs * om < 0) if qs > 0 else np.zeros(ps.shape, bool)
    early = ~late
    if np.any(early):
        res[early] = _ray(start[early], omega, ps[early], qs, power)
    if np.any(late):
        pl = ps[late]
        star = -pl / (2 * qs)
        res[late] = (
            _ray(start[late], -omega, pl, qs, power)
            - _ray(star, -omega, pl, qs, power)
            + _ray(star, omega, pl, qs, power)
        )
    return np.where(flip, np.conj(res), res)


def _tail_moments(params: DispersionParams | None, sigma: float, win: _Window, spec: QuadratureSpec):
    """Contributions from omega_minus > om_max, integrated over pump detuning.

    Same layout as the windowed moments (see ``_moment_integrand``). The
    sinc^2 envelope is expanded in powers of 1/omega_minus: its
    non-oscillating part exactly for the norm and to second order in
    h/(g w) elsewhere, its cos(4 g w) part to leading order.
    """
    g, om, hp = win.g, win.om_max, win.hp
    lead = 0.5 / (g * g)
    a = params.alpha_l if params else 0.0
    beta = params.beta_l if params else 0.0

    def integrand(op):
        h = hp * op
        weight = np.exp(-4.0 * sigma * op * op)
        ratio = h / (g * om)
        small = np.abs(h) <= 1e-12 * g * om
        cross = np.where(small, -1.0 / (g * g * om), -np.arctanh(ratio) / np.where(small, 1.0, h * g))
        zero = np.zeros_like(op)
        k0 = 0.5 * (1 / (g * (g * om + h)) + 1 / (g * (g * om - h)) + cross)
        k0 = k0 - lead * _tail_integral(zero + 4 * g, 0.0, om).real
        if params is None:
            return weight * k0

        def env(pv, qv):
            secular = _tail_integral(pv, qv, om) + 5 * (h / g) ** 2 * _tail_integral(pv, qv, om, 4)
            fast = _tail_integral(pv + 4 * g, qv, om) + _tail_integral(pv - 4 * g, qv, om)
            return lead * (secular - 0.5 * fast)

        p = a + 2 * beta * op
        base = a * op + beta * op * op
        k1 = np.exp(1j * base) * (env(p, beta) + env(-p, beta))
        k2 = np.exp(2j * base) * env(zero, 2 * beta)
        k3 = 0.5 * (env(2 * p, 0.0) + env(-2 * p, 0.0))
        parts = [k0, k1.real, k1.imag, k2.real, k2.imag, k3.real]
        return np.array([weight * v for v in parts])

    tail_spec = QuadratureSpec(rel_tol=1e-10, truncation_width=spec.truncation_width)
    return integrate_1d(integrand, win.op_bounds[0], win.op_bounds[1], tail_spec).value


def _moment_integrand(params: DispersionParams, crystal: CrystalParams, sigma: float):
    """|S|^2 times 1, e^{i p1} + e^{i p2}, e^{i(p1 + p2)}, cos(p1 - p2).

    p1, p2 are the interferometer phases (phi0 removed) of the two photons;
    every outcome weight is a real combination of these four moments.
    """
    base = params.with_phase(0.0)

    def integrand(op, om):
        weight = np.abs(_symmetric_amplitude(crystal, sigma, op, om)) ** 2
        p1 = phase_shift(base, op + om)
        p2 = phase_shift(base, op - om)
        m1 = np.exp(1j * p1) + np.exp(1j * p2)
        m2 = np.exp(1j * (p1 + p2))
        return np.array([weight, weight * m1.real, weight * m1.imag, weight * m2.real, weight * m2.imag, weight * np.cos(p1 - p2)])

    return integrand


def _biphoton_norm_integral(crystal, sigma, spec):
    win = _window(crystal, sigma, spec)

    def integrand(op, om):
        return np.abs(_symmetric_amplitude(crystal, sigma, op, om)) ** 2

    main = integrate_2d(integrand, (win.op_bounds, (0.0, win.om_max)), spec)
    tail = _tail_moments(None, sigma, win, spec)
    # both half-lines of omega_minus
    return 2.0 * (main.value + tail), 2.0 * main.error_estimate


@functools.lru_cache(maxsize=256)
def _cached_norm(crystal, sigma, spec):
    return _biphoton_norm_integral(crystal, sigma, spec)


def normalize_biphoton(crystal: CrystalParams, sigma: float, spec: QuadratureSpec | None = None) -> float:
    """Constant N making the pair state (N/2) * (Phi(op, om) + Phi(op, -om)) unit norm."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    spec = spec or QuadratureSpec.default_2d()
    q, _ = _cached_norm(crystal, sigma, spec)
    return 2.0 / math.sqrt(q)


@dataclass(frozen=True)
class SpdcMoments:
    """Half-line moments (window plus analytic tail) of one case-L configuration."""

    m0: float
    m1: complex
    m2: complex
    m3: float
    error_estimate: float
    cells: int

    def series(self) -> list[PhaseFourierSeries]:
        n = self.m0
        S = PhaseFourierSeries
        side = (self.m0 + 0.5 * self.m3) / (4 * n)
        return [
            S(side, -self.m1 / (8 * n), self.m2 / (16 * n)),
            S((0.5 * self.m0 - 0.25 * self.m3) / n, 0j, -self.m2 / (8 * n)),
            S(side, self.m1 / (8 * n), self.m2 / (16 * n)),
        ]


def spdc_moments(params: DispersionParams, crystal: CrystalParams, spec: QuadratureSpec | None = None) -> SpdcMoments:
    spec = spec or QuadratureSpec.default_2d()
    sigma = params.sigma
    win = _window(crystal, sigma, spec)
    res = integrate_2d(_moment_integrand(params, crystal, sigma), (win.op_bounds, (0.0, win.om_max)), spec)
    v = res.value + _tail_moments(params, sigma, win, spec)
    return SpdcMoments(
        float(v[0]), complex(v[1], v[2]), complex(v[3], v[4]), float(v[5]),
        res.error_estimate / v[0], res.panels_used,
    )


def spdc_fourier(params: DispersionParams, crystal: CrystalParams, spec: QuadratureSpec | None = None) -> list[PhaseFourierSeries]:
    """Case-L phi0 series, normalized by the same integration."""
    return spdc_moments(params, crystal, spec).series()


def spdc_distributions(params: DispersionParams, crystal: CrystalParams, phases, spec: QuadratureSpec | None = None) -> np.ndarray:
    """Case-L probabilities at several phi0 values, shape ``(len(phases), 3)``."""
    series = spdc_fourier(params, crystal, spec)
    phases = np.atleast_1d(np.asarray(phases, dtype=float))
    return np.stack([s(phases) for s in series], axis=1)


def spdc_distribution(params: DispersionParams, crystal: CrystalParams, spec: QuadratureSpec | None = None) -> OutcomeDistribution:
    probs = spdc_distributions(params, crystal, [params.phi0], spec)[0]
    return OutcomeDistribution(2, tuple(float(p) for p in probs), params.phi0)


def spdc_distribution_direct(params: DispersionParams, crystal: CrystalParams, spec: QuadratureSpec | None = None) -> OutcomeDistribution:
    """Case L from the port coefficients at the given phi0, without the moment algebra.

    Slower than :func:`spdc_distribution`; the tail is still taken from the
    analytic moments. Kept as an independent check of the weight expansion.
    """
    spec = spec or QuadratureSpec.default_2d()
    sigma = params.sigma
    win = _window(crystal, sigma, spec)

    def integrand(op, om):
        weight = np.abs(_symmetric_amplitude(crystal, sigma, op, om)) ** 2
        x1, x2 = op + om, op - om
        u1 = mz_port_coeffs(params, "A", x1)
        u2 = mz_port_coeffs(params, "A", x2)
        c1, d1 = np.abs(u1.to_c) ** 2, np.abs(u1.to_d) ** 2
        c2, d2 = np.abs(u2.to_c) ** 2, np.abs(u2.to_d) ** 2
        return np.array([weight, weight * c1 * c2, weight * (c1 * d2 + d1 * c2), weight * d1 * d2])

    main = integrate_2d(integrand, (win.op_bounds, (0.0, win.om_max)), spec).value
    t = _tail_moments(params, sigma, win, spec)
    k1, k2 = complex(t[1], t[2]) * np.exp(1j * params.phi0), complex(t[3], t[4]) * np.exp(2j * params.phi0)
    tails = (
        0.25 * (t[0] - k1.real + 0.5 * k2.real + 0.5 * t[5]),
        0.5 * t[0] - 0.25 * k2.real - 0.25 * t[5],
        0.25 * (t[0] + k1.real + 0.5 * k2.real + 0.5 * t[5]),
    )
    norm = main[0] + t[0]
    probs = tuple(float((main[m + 1] + tails[m]) / norm) for m in range(3))
    return OutcomeDistribution(2, probs, params.phi0)


def oracle_fourier(case, params: DispersionParams, spec: QuadratureSpec | None = None, eps_width=None) -> list[PhaseFourierSeries]:
    cid = CaseId.parse(case)
    if cid is CaseId.L:
        raise ValueError("use spdc_fourier for case L")

    def evaluate(phases):
        return np.array([oracle_distribution(cid, params.with_phase(float(p)), spec, eps_width).probs for p in phases])

    return fourier_decompose(evaluate)
