"""Parameter sweeps of the mutual information and their CSV form."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .analytic import phase_fourier
from .fidelity import InvalidDistribution, PhaseGrid, mutual_information
from .oracle import spdc_moments
from .phase import DispersionParams
from .quadrature import NonConvergence, QuadratureSpec
from .states import CaseId, CrystalParams

SWEEP_PARAMS = ("alphaL", "betaL", "sigma", "lambdaRatio", "b")
CRYSTAL_PARAMS = ("lambdaRatio", "b")
CSV_HEADER = "case,sweep_param,sweep_value,mutual_info_bits,est_error"


class ConfigError(ValueError):
    """Invalid sweep configuration; the message names the offending key."""

    def __init__(self, key: str, problem: str):
        super().__init__(f"{key}: {problem}")
        self.key = key


@dataclass(frozen=True)
class SweepConfig:
    cases: tuple
    sweep_param: str
    start: float
    stop: float
    count: int
    alpha_l: float = 0.0
    beta_l: float = 0.0
    sigma: float = 1.0
    crystal: CrystalParams | None = None
    quad: QuadratureSpec = field(default_factory=QuadratureSpec.default_2d)
    grid: PhaseGrid = field(default_factory=PhaseGrid)

    def __post_init__(self):
        if self.sweep_param not in SWEEP_PARAMS:
            raise ConfigError("sweep", f"must be one of {', '.join(SWEEP_PARAMS)}")
        if self.count < 2:
            raise ConfigError("range", "count must be at least 2")
        if not self.start < self.stop:
            raise ConfigError("range", "start must be below stop")
        if not self.cases:
            raise ConfigError("cases", "at least one case is required")
        has_l = CaseId.L in self.cases
        if self.sweep_param in CRYSTAL_PARAMS and not has_l:
            raise ConfigError("sweep", f"sweeping {self.sweep_param} requires case L")
        if has_l and self.crystal is None:
            raise ConfigError("fixed.crystal", "required when case L is present")
        if self.sweep_param == "sigma" and self.start <= 0:
            raise ConfigError("range", "sigma sweep must stay positive")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def point(self, value: float) -> tuple[DispersionParams, CrystalParams | None]:
        a, b, s = self.alpha_l, self.beta_l, self.sigma
        crystal = self.crystal
        name = self.sweep_param
        if name == "alphaL":
            a = value
        elif name == "betaL":
            b = value
        elif name == "sigma":
            s = value
        elif name == "b":
            crystal = CrystalParams.from_ratios(value, crystal.lambda_ratio, crystal.crystal_length)
        else:
            crystal = CrystalParams.from_ratios(crystal.b, value, crystal.crystal_length)
        return DispersionParams(a, b, s), crystal

    def to_json(self) -> dict:
        fixed = {"alphaL": self.alpha_l, "betaL": self.beta_l, "sigma": self.sigma}
        if self.crystal is not None:
            c = self.crystal
            fixed["crystal"] = {"lambdaP": c.lambda_p, "lambdaBig": c.lambda_big, "crystalLength": c.crystal_length}
        return {
            "cases": [c.value for c in self.cases],
            "sweep": self.sweep_param,
            "range": [self.start, self.stop, self.count],
            "fixed": fixed,
            "quadrature": {
                "relTol": self.quad.rel_tol,
                "maxPanels": self.quad.max_panels,
                "truncationWidth": self.quad.truncation_width,
            },
            "phaseGrid": {"points": self.grid.points},
        }


@dataclass(frozen=True)
class SweepRow:
    case: CaseId
    value: float
    bits: float
    error: float
    failure: str | None = None


@dataclass(frozen=True)
class SweepTable:
    config: SweepConfig
    rows: tuple
    version: str = __version__


# --- config parsing ----------------------------------------------------------

def _number(obj, key, path, default=None, positive=False):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}{key}", "missing")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{path}{key}", "must be a finite number")
    if positive and v <= 0:
        raise ConfigError(f"{path}{key}", "must be positive")
    return float(v)


def _crystal(block) -> CrystalParams:
    path = "fixed.crystal."
    if not isinstance(block, dict):
        raise ConfigError("fixed.crystal", "must be an object")
    length = _number(block, "crystalLength", path, default=1.0, positive=True)
    try:
        if "b" in block or "lambdaRatio" in block:
            return CrystalParams.from_ratios(_number(block, "b", path), _number(block, "lambdaRatio", path), length)
        return CrystalParams(_number(block, "lambdaP", path), _number(block, "lambdaBig", path), length)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("fixed.crystal", str(exc)) from None


def parse_config(text: str) -> SweepConfig:
    """Validate a JSON sweep description; see README for the schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<document>", f"not valid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise ConfigError("<document>", "must be a JSON object")
    known = {"cases", "sweep", "range", "fixed", "quadrature", "phaseGrid"}
    for key in doc:
        if key not in known:
            raise ConfigError(key, "unknown key")

    raw_cases = doc.get("cases")
    if not isinstance(raw_cases, list) or not raw_cases:
        raise ConfigError("cases", "must be a non-empty list of case letters")
    try:
        cases = tuple(sorted({CaseId.parse(c) for c in raw_cases}, key=lambda c: c.value))
    except ValueError as exc:
        raise ConfigError("cases", str(exc)) from None

    sweep = doc.get("sweep")
    if sweep not in SWEEP_PARAMS:
        raise ConfigError("sweep", f"must be one of {', '.join(SWEEP_PARAMS)}")

    rng = doc.get("range")
    if not isinstance(rng, list) or len(rng) != 3:
        raise ConfigError("range", "must be [start, stop, count]")
    start = _number({"0": rng[0]}, "0", "range.")
    stop = _number({"1": rng[1]}, "1", "range.")
    if isinstance(rng[2], bool) or not isinstance(rng[2], int):
        raise ConfigError("range.2", "count must be an integer")

    fixed = doc.get("fixed")
    if not isinstance(fixed, dict):
        raise ConfigError("fixed", "must be an object")
    swept = {sweep}
    a = 0.0 if "alphaL" in swept else _number(fixed, "alphaL", "fixed.")
    b = 0.0 if "betaL" in swept else _number(fixed, "betaL", "fixed.")
    s = 1.0 if "sigma" in swept else _number(fixed, "sigma", "fixed.", positive=True)
    crystal = None
    if "crystal" in fixed:
        crystal = _crystal(fixed["crystal"])
    elif CaseId.L in cases:
        raise ConfigError("fixed.crystal", "required when case L is present")
    if sweep in CRYSTAL_PARAMS and crystal is not None and crystal.lambda_p == 0:
        raise ConfigError("fixed.crystal", f"sweeping {sweep} needs lambdaP != 0")

    quad = QuadratureSpec.default_2d()
    if "quadrature" in doc:
        q = doc["quadrature"]
        if not isinstance(q, dict):
            raise ConfigError("quadrature", "must be an object")
        try:
            quad = QuadratureSpec(
                rel_tol=_number(q, "relTol", "quadrature.", default=quad.rel_tol, positive=True),
                max_panels=int(_number(q, "maxPanels", "quadrature.", default=quad.max_panels, positive=True)),
                truncation_width=_number(q, "truncationWidth", "quadrature.", default=quad.truncation_width),
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError("quadrature", str(exc)) from None

    grid = PhaseGrid()
    if "phaseGrid" in doc:
        g = doc["phaseGrid"]
        points = g.get("points") if isinstance(g, dict) else g
        if isinstance(points, bool) or not isinstance(points, int):
            raise ConfigError("phaseGrid.points", "must be an integer")
        try:
            grid = PhaseGrid(points)
        except ValueError as exc:
            raise ConfigError("phaseGrid.points", str(exc)) from None

    return SweepConfig(cases, sweep, start, stop, rng[2], a, b, s, crystal, quad, grid)


# --- evaluation --------------------------------------------------------------

def default_threads() -> int:
    env = os.environ.get("DISPERSIM_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError("DISPERSIM_THREADS", "must be a positive integer") from None
        if n < 1:
            raise ConfigError("DISPERSIM_THREADS", "must be a positive integer")
        return n
    return os.cpu_count() or 1


def evaluate_point(case: CaseId, params: DispersionParams, crystal, quad: QuadratureSpec, grid: PhaseGrid):
    """(bits, error) for one case at one parameter point."""
    if case is CaseId.L:
        moments = spdc_moments(params, crystal, quad)
        mi = mutual_information(moments.series(), grid)
        # cubature error enters H at roughly the same relative size
        return mi.bits, mi.estimated_error + float(moments.error_estimate) * max(mi.bits, 1.0)
    mi = mutual_information(phase_fourier(case, params), grid)
    return mi.bits, mi.estimated_error


def _run_one(config: SweepConfig, case: CaseId, value: float) -> SweepRow:
    try:
        params, crystal = config.point(value)
        bits, err = evaluate_point(case, params, crystal, config.quad, config.grid)
        return SweepRow(case, value, bits, err)
    except (NonConvergence, InvalidDistribution, ValueError) as exc:
        return SweepRow(case, value, math.nan, math.nan, f"{type(exc).__name__}: {exc}")


def run_sweep(config: SweepConfig, threads: int | None = None) -> SweepTable:
    jobs = [(c, float(v)) for c in config.cases for v in config.values()]
    threads = threads or default_threads()
    if threads <= 1:
        rows = [_run_one(config, c, v) for c, v in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda job: _run_one(config, *job), jobs))
    return SweepTable(config, tuple(rows))


# --- CSV ---------------------------------------------------------------------

def fmt(x: float) -> str:
    """12 significant digits, trailing zeros kept."""
    if math.isnan(x):
        return "nan"
    return "%#.12g" % x


def emit_csv(table: SweepTable) -> str:
    cfg = table.config
    lines = [
        f"# dispersim {table.version}",
        "# config " + json.dumps(cfg.to_json(), sort_keys=True, separators=(",", ":")),
    ]
    for row in table.rows:
        if row.failure:
            lines.append(f"# failed {row.case.value} {cfg.sweep_param}={fmt(row.value)}: {row.failure}")
    lines.append(CSV_HEADER)
    for row in table.rows:
        lines.append(",".join([row.case.value, cfg.sweep_param, fmt(row.value), fmt(row.bits), fmt(row.error)]))
    return "\n".join(lines) + "\n"


# --- figure presets ----------------------------------------------------------

_SINGLE = ("A", "B", "I")
_PAIRS = ("C", "D", "E", "F", "G", "H", "J", "K")
# default crystal for the case-L presets (artifact choice)
_CRYSTAL = {"b": 10.0, "lambdaRatio": 5.0}

_PRESETS = {
    "fig-a1": (_SINGLE, "alphaL", (0.0, 3.0, 61), {"betaL": 0.0, "sigma": 1.0}),
    "fig-b1": (_SINGLE, "betaL", (0.0, 2.0, 61), {"alphaL": 0.5, "sigma": 1.0}),
    "fig-s1": (_SINGLE, "sigma", (0.1, 5.0, 50), {"alphaL": 1.0, "betaL": 0.1}),
    "fig-a2": (_PAIRS, "alphaL", (0.0, 3.0, 61), {"betaL": 0.0, "sigma": 1.0}),
    "fig-b2": (("C", "D", "F", "H", "J", "K"), "betaL", (0.0, 2.0, 61), {"alphaL": 0.5, "sigma": 1.0}),
    "fig-s2": (_PAIRS, "sigma", (0.1, 5.0, 50), {"alphaL": 1.0, "betaL": 0.1}),
    "fig-L-sigma": (("L",), "sigma", (0.2, 5.0, 17), {"alphaL": 0.5, "betaL": 0.1, "crystal": _CRYSTAL}),
    "fig-L-alpha": (("L",), "alphaL", (0.0, 3.0, 16), {"betaL": 0.1, "sigma": 1.0, "crystal": _CRYSTAL}),
    "fig-L-beta": (("L",), "betaL", (0.0, 2.0, 16), {"alphaL": 0.3, "sigma": 1.0, "crystal": _CRYSTAL}),
    "fig-L-lambda": (("L",), "lambdaRatio", (0.5, 10.0, 20), {"alphaL": 0.5, "betaL": 0.1, "sigma": 1.0, "crystal": _CRYSTAL}),
    "fig-L-b": (("L",), "b", (2.0, 50.0, 17), {"alphaL": 0.5, "betaL": 0.1, "sigma": 1.0, "crystal": _CRYSTAL}),
}


def preset_names() -> list[str]:
    return list(_PRESETS)


def preset_document(name: str) -> dict:
    if name not in _PRESETS:
        raise ConfigError("figure", f"unknown preset {name!r}; available: {', '.join(_PRESETS)}")
    cases, sweep, rng, fixed = _PRESETS[name]
    return {"cases": list(cases), "sweep": sweep, "range": list(rng), "fixed": dict(fixed)}


def figure_preset(name: str) -> SweepConfig:
    return parse_config(json.dumps(preset_document(name)))
