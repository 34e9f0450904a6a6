"""Parameter sweeps and the command-line front end.

Presets reproduce the package's reference curves and maps; custom sweeps are
assembled from --grid/--set flags or a key-value config file. Output is a
deterministic table (CSV with '#' metadata lines, or JSON) so identical
configs give byte-identical files regardless of parallelism.
"""

import argparse
import itertools
import json
import math
import os
import sys
import tempfile
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .bogoliubov_frame import (
    amplified_noise,
    bogoliubov_channel_metrics,
    build_frame,
    elimination_params,
    rwa_validity,
    squeezed_bath_noise,
)
from .channel_metrics import (
    eta_closed_form,
    metrics_from_channel,
    thermal_occupancy_log10,
    transmissivity,
)
from .errors import (
    ConfigError,
    NearSingularWarning,
    OutOfRegimeError,
    PhysicalityError,
    PreconditionError,
    RegimeWarning,
    SingularityError,
    StabilityError,
    TransductionError,
)
from .matching_analysis import (
    composed_channel,
    detect_half_matched,
    perfect_transduction_plan,
    signal_scattering,
)
from .symplectic_core import bloch_messiah, is_symplectic
from .transducer_model import (
    BathSpec,
    ChannelDirection,
    SystemParams,
    extract_channel,
    is_dynamically_stable,
    random_stable_params,
    scattering_quadrature,
)

THREADS_ENV = "TRANSDUCTION_LAB_THREADS"

_DIRECTIONS = {d.value: d for d in ChannelDirection}

_NUMERICAL_ERRORS = (StabilityError, SingularityError, PhysicalityError, OutOfRegimeError)


def _tool_version():
    from . import __version__

    return __version__


# ---------------------------------------------------------------- axes/config


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter: a name and the ordered grid values."""

    name: str
    values: Tuple[float, ...]
    label: Optional[str] = None  # compact metadata form for range axes

    def __post_init__(self):
        if not self.values:
            raise ConfigError(f"axis {self.name!r} has no values")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_range(cls, name, lo, hi, count, log=False):
        count = int(count)
        if count < 2:
            raise ConfigError(f"axis {name!r} needs at least 2 points, got {count}")
        if log:
            if lo <= 0.0 or hi <= 0.0:
                raise ConfigError(f"log axis {name!r} needs positive bounds")
            values = np.geomspace(lo, hi, count)
        else:
            values = np.linspace(lo, hi, count)
        label = (f"{name}:{format(float(lo), '.17g')}:{format(float(hi), '.17g')}"
                 f":{count}:{'log' if log else 'lin'}")
        return cls(name, tuple(float(v) for v in values), label)

    @classmethod
    def from_spec(cls, spec):
        """Parse 'name:min:max:count[:log]'."""
        parts = str(spec).split(":")
        if len(parts) not in (4, 5):
            raise ConfigError(f"bad grid spec {spec!r}; want name:min:max:count[:log]")
        name = parts[0].strip()
        try:
            lo, hi, count = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise ConfigError(f"bad grid spec {spec!r}: {exc}") from None
        log = False
        if len(parts) == 5:
            scale = parts[4].strip().lower()
            if scale not in ("log", "lin"):
                raise ConfigError(f"bad grid scale {parts[4]!r}; want log or lin")
            log = scale == "log"
        return cls.from_range(name, lo, hi, count, log)

    def spec_string(self):
        if self.label is not None:
            return self.label
        return f"{self.name}:values:" + ",".join(format(v, ".17g") for v in self.values)


@dataclass(frozen=True)
class SweepConfig:
    """Everything run_sweep needs; CLI flags and config files both build this."""

    preset: Optional[str] = None
    axes: Tuple[SweepAxis, ...] = ()
    overrides: dict = field(default_factory=dict)
    out: Optional[str] = None
    fmt: str = "csv"
    direction: str = "o2e"
    eliminate_noise: bool = False
    kind: Optional[str] = None
    threads: Optional[int] = None


@dataclass(frozen=True)
class ResultTable:
    """Rectangular sweep output: column names, rows, and a metadata dict."""

    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]
    metadata: dict

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise PreconditionError("ragged row in result table")

    def column(self, name):
        try:
            k = self.columns.index(name)
        except ValueError:
            raise KeyError(name) from None
        return [row[k] for row in self.rows]


# ---------------------------------------------------------------- evaluators

_SCATTERING_KEYS = frozenset(
    ("c_g", "c_nu", "zeta_o", "zeta_e", "omega", "chi", "chi_o", "chi_e",
     "n_th", "kappa_o", "kappa_e", "theta")
)
_BOGOLIUBOV_KEYS = frozenset(
    ("c_g", "beta", "zeta_o", "zeta_e", "n_th", "kappa_o", "kappa_e", "delta_e", "theta")
)
_FRAME_KEYS = frozenset(("beta",))

_METRIC_COLUMNS = {
    "scattering": ("eta", "n_e", "sigma2", "q_lb", "stable"),
    "bogoliubov": ("eta", "n_e", "sigma2", "q_lb", "q_lb_eliminated", "n_nu",
                   "rwa_coupling", "rwa_detuning", "stable"),
    "frame": ("squeeze", "coupling_gain", "cooperativity_gain", "induced_noise", "stable"),
}


def _scattering_params(values):
    kappa_o = values.get("kappa_o", 1.0)
    kappa_e = values.get("kappa_e", 1.0)
    chi = values.get("chi", 0.0)
    chi_o = values.get("chi_o", chi)
    chi_e = values.get("chi_e", chi)
    kwargs = dict(
        kappa_o=kappa_o,
        kappa_e=kappa_e,
        zeta_o=values.get("zeta_o", 1.0),
        zeta_e=values.get("zeta_e", 1.0),
        delta_o=chi_o * kappa_o,
        delta_e=chi_e * kappa_e,
        n_th=values.get("n_th", 0.0),
    )
    if "theta" in values:
        kwargs["theta"] = values["theta"]
    return SystemParams.from_cooperativities(
        values.get("c_g", 1.0), values.get("c_nu", 0.0), **kwargs
    )


def _eval_scattering(values, direction, _eliminate):
    empty = (None, None, None, None, 0.0)
    try:
        params = _scattering_params(values)
        if not is_dynamically_stable(params):
            return empty
        baths = BathSpec.thermal(params.n_th) if params.n_th > 0.0 else BathSpec.vacuum()
        channel = extract_channel(
            params, values.get("omega", 0.0), _DIRECTIONS[direction], baths
        )
        m = metrics_from_channel(channel)
    except _NUMERICAL_ERRORS:
        return empty
    return (m.eta, m.n_e, m.sigma2, m.q_lb, 1.0)


def _bogoliubov_params(values):
    kappa_o = values.get("kappa_o", 1.0)
    kappa_e = values.get("kappa_e", 1.0)
    # detuning defaults deep in the frame regime; optical drive tracks the
    # rotated mode frequency so the conversion is resonant in that frame
    delta_e = values.get("delta_e", 20.0 * kappa_e)
    beta = values.get("beta", 0.0)
    if not 0.0 <= beta < 1.0:
        raise OutOfRegimeError(f"pump ratio {beta} outside [0, 1)")
    nu = 0.5 * beta * delta_e
    omega_s = delta_e * math.sqrt(1.0 - beta**2)
    g = 0.5 * math.sqrt(values.get("c_g", 1.0) * kappa_o * kappa_e)
    kwargs = dict(
        g=g,
        nu=nu,
        kappa_o=kappa_o,
        kappa_e=kappa_e,
        zeta_o=values.get("zeta_o", 1.0),
        zeta_e=values.get("zeta_e", 1.0),
        delta_o=-omega_s,
        delta_e=delta_e,
        n_th=values.get("n_th", 0.0),
    )
    if "theta" in values:
        kwargs["theta"] = values["theta"]
    return SystemParams(**kwargs)


def _eval_bogoliubov(values, _direction, eliminate):
    empty = (None,) * 8 + (0.0,)
    try:
        params = _bogoliubov_params(values)
        if not is_dynamically_stable(params):
            return empty
        frame = build_frame(params)
        plain = bogoliubov_channel_metrics(params, eliminate_noise=False)
        eliminated = bogoliubov_channel_metrics(params, eliminate_noise=True)
        report = rwa_validity(params, frame)
    except _NUMERICAL_ERRORS:
        return empty
    main = eliminated if eliminate else plain
    return (
        main.eta,
        main.n_e,
        main.sigma2,
        main.q_lb,
        eliminated.q_lb,
        amplified_noise(frame.r, params.n_th),
        report.coupling_ratio,
        report.detuning_ratio,
        1.0,
    )


def _eval_frame(values, _direction, _eliminate):
    beta = values.get("beta", 0.0)
    if not 0.0 <= beta < 1.0:
        return (None, None, None, None, 0.0)
    r = 0.5 * math.atanh(beta)
    return (r, math.cosh(r), math.cosh(r) ** 2, math.sinh(r) ** 2, 1.0)


_EVALUATORS = {
    "scattering": (_eval_scattering, _SCATTERING_KEYS),
    "bogoliubov": (_eval_bogoliubov, _BOGOLIUBOV_KEYS),
    "frame": (_eval_frame, _FRAME_KEYS),
}


# ------------------------------------------------------------------- presets


@dataclass(frozen=True)
class Preset:
    kind: str
    axes: Tuple[SweepAxis, ...]
    overrides: dict
    description: str
    eliminate_noise: bool = False


def _rng_axis(name, lo, hi, count, log=False):
    return SweepAxis.from_range(name, lo, hi, count, log)


def _val_axis(name, *values):
    return SweepAxis(name, tuple(values))


PRESETS = {
    "fig2a": Preset(
        kind="scattering",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("c_nu", 0.0, 0.1, 0.2)),
        overrides={},
        description="conversion efficiency vs C_g at three pump strengths, unit extraction",
    ),
    "fig2b": Preset(
        kind="scattering",
        axes=(_rng_axis("c_g", 0.01, 3.0, 200), _rng_axis("c_nu", 0.0, 1.0, 200)),
        overrides={},
        description="capacity-bound map over (C_g, C_nu), unit extraction",
    ),
    "fig2c": Preset(
        kind="scattering",
        axes=(_rng_axis("zeta_o", 0.5, 1.0, 200), _rng_axis("zeta_e", 0.5, 1.0, 200)),
        overrides={"c_g": 0.14, "c_nu": 0.16},
        description="capacity-bound map over the extraction ratios at C_g=0.14, C_nu=0.16",
    ),
    "fig2d": Preset(
        kind="scattering",
        axes=(_rng_axis("c_g", 0.01, 3.0, 200), _rng_axis("c_nu", 0.0, 1.0, 200)),
        overrides={"zeta_o": 0.95, "zeta_e": 0.99},
        description="capacity-bound map over (C_g, C_nu) with zeta_o=0.95, zeta_e=0.99",
    ),
    "fig2e": Preset(
        kind="scattering",
        axes=(_rng_axis("chi", -2.0, 2.0, 201),),
        overrides={"c_g": 0.4, "c_nu": 0.15, "zeta_o": 0.95, "zeta_e": 0.99},
        description="efficiency vs common normalized detuning chi = delta/kappa",
    ),
    "fig3a": Preset(
        kind="frame",
        axes=(_rng_axis("beta", 0.0, 0.99, 200),),
        overrides={},
        description="frame squeeze, coupling gain and induced noise vs pump ratio "
                    "(beta = 2 nu / delta_e)",
    ),
    "fig3b": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("beta", 0.0, 0.8, 0.95)),
        overrides={},
        description="frame-enhanced efficiency vs C_g for pump ratios "
                    "(beta = 2 nu / delta_e) 0, 0.8, 0.95, unit extraction",
    ),
    "fig3c": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("beta", 0.0, 0.8, 0.95)),
        overrides={},
        description="capacity bound vs C_g for pump ratios (beta = 2 nu / delta_e) "
                    "0, 0.8, 0.95, unit extraction",
    ),
    "fig3d": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("beta", 0.0, 0.95)),
        overrides={"zeta_e": 0.97, "zeta_o": 0.9},
        description="capacity bound vs C_g (beta = 2 nu / delta_e in {0, 0.95}) with "
                    "zeta_e=0.97, zeta_o=0.9, with and without noise elimination",
    ),
    "appfig1": Preset(
        kind="scattering",
        axes=(_rng_axis("omega", -0.3, 0.3, 301), _val_axis("c_nu", 0.0, 0.1, 0.2)),
        overrides={"c_g": 0.1, "kappa_o": 100.0, "kappa_e": 0.2},
        description="conversion band vs sideband frequency; bandwidth narrows with C_nu",
    ),
    "fig5a": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 60, log=True), _rng_axis("beta", 0.0, 0.95, 60)),
        overrides={},
        description="capacity-bound map over (C_g, beta), unit extraction",
    ),
    "fig5b": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("beta", 0.8, 0.95)),
        overrides={},
        description="capacity-bound traces vs C_g at beta = 0.8 and 0.95, unit extraction",
    ),
    "fig5c": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 60, log=True), _rng_axis("beta", 0.0, 0.95, 60)),
        overrides={},
        eliminate_noise=True,
        description="capacity-bound map over (C_g, beta) with noise elimination, "
                    "unit extraction",
    ),
    "fig5d": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 60, log=True), _rng_axis("beta", 0.0, 0.95, 60)),
        overrides={"zeta_e": 0.97, "zeta_o": 0.9},
        description="capacity-bound map over (C_g, beta) with zeta_e=0.97, zeta_o=0.9",
    ),
    "fig5e": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 200, log=True), _val_axis("beta", 0.8, 0.95)),
        overrides={"zeta_e": 0.97, "zeta_o": 0.9},
        description="capacity-bound traces vs C_g at beta = 0.8 and 0.95 with "
                    "zeta_e=0.97, zeta_o=0.9",
    ),
    "fig5f": Preset(
        kind="bogoliubov",
        axes=(_rng_axis("c_g", 1e-3, 10.0, 60, log=True), _rng_axis("beta", 0.0, 0.95, 60)),
        overrides={"zeta_e": 0.97, "zeta_o": 0.9},
        eliminate_noise=True,
        description="capacity-bound map over (C_g, beta) with noise elimination and "
                    "zeta_e=0.97, zeta_o=0.9",
    ),
}


def list_presets():
    """Preset names with one-line descriptions, in a stable order."""
    return {name: PRESETS[name].description for name in sorted(PRESETS)}


# ----------------------------------------------------------------- run_sweep


def _resolve_threads(config_threads):
    if config_threads is not None:
        threads = config_threads
    else:
        raw = os.environ.get(THREADS_ENV)
        if raw is None:
            return 1
        try:
            threads = int(raw)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 1:
        raise ConfigError(f"thread count must be >= 1, got {threads}")
    return threads


def _resolve_config(cfg):
    """Merge the preset (if any) into an explicit (kind, axes, overrides, flags)."""
    overrides = dict(cfg.overrides)
    axes = tuple(cfg.axes)
    kind = cfg.kind
    eliminate = cfg.eliminate_noise
    if cfg.preset is not None:
        try:
            preset = PRESETS[cfg.preset]
        except KeyError:
            raise ConfigError(f"unknown preset {cfg.preset!r}") from None
        if not axes:
            axes = preset.axes
        overrides = {**preset.overrides, **overrides}
        kind = kind or preset.kind
        eliminate = eliminate or preset.eliminate_noise
    if not axes:
        raise ConfigError("no sweep axes: give --preset or --grid")
    axis_names = [a.name for a in axes]
    if len(set(axis_names)) != len(axis_names):
        raise ConfigError(f"duplicate sweep axes in {axis_names}")
    if kind is None:
        if set(axis_names) <= _FRAME_KEYS:
            kind = "frame"
        elif "beta" in axis_names:
            kind = "bogoliubov"
        else:
            kind = "scattering"
    if kind not in _EVALUATORS:
        raise ConfigError(f"unknown sweep kind {kind!r}")
    _, allowed = _EVALUATORS[kind]
    for name in axis_names:
        if name not in allowed:
            raise ConfigError(f"invalid axis name {name!r} for {kind} sweep")
    for key in overrides:
        if key not in allowed:
            raise ConfigError(f"invalid parameter {key!r} for {kind} sweep")
        if key in axis_names:
            raise ConfigError(f"parameter {key!r} is both fixed and swept")
    if cfg.direction not in _DIRECTIONS:
        raise ConfigError(f"unknown direction {cfg.direction!r}")
    return kind, axes, overrides, eliminate


def run_sweep(cfg):
    """Evaluate the configured grid; returns a ResultTable.

    Grid points are row-major over the axes in order. Unstable or
    out-of-regime points keep their row with stable=0 and empty metrics.
    """
    kind, axes, overrides, eliminate = _resolve_config(cfg)
    evaluate, _ = _EVALUATORS[kind]
    axis_names = tuple(a.name for a in axes)
    columns = axis_names + _METRIC_COLUMNS[kind]
    grid = list(itertools.product(*(a.values for a in axes)))
    threads = _resolve_threads(cfg.threads)

    def job(point):
        values = {**overrides, **dict(zip(axis_names, point))}
        return tuple(point) + evaluate(values, cfg.direction, eliminate)

    with warnings.catch_warnings():
        # boundary rows are flagged, not reported point-by-point
        warnings.simplefilter("ignore", NearSingularWarning)
        warnings.simplefilter("ignore", RegimeWarning)
        if threads == 1:
            rows = [job(point) for point in grid]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(job, grid))

    metadata = {
        "tool_version": _tool_version(),
        "kind": kind,
        "direction": cfg.direction,
        "eliminate_noise": str(bool(eliminate)).lower(),
    }
    if cfg.preset is not None:
        metadata["preset"] = cfg.preset
    for k, axis in enumerate(axes):
        metadata[f"axis.{k}"] = axis.spec_string()
    for key in sorted(overrides):
        metadata[f"param.{key}"] = format(float(overrides[key]), ".17g")
    return ResultTable(columns=columns, rows=tuple(rows), metadata=metadata)


# --------------------------------------------------------------------- I/O


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return format(float(value), ".17g")


def _parse_cell(text):
    text = text.strip()
    if not text:
        return None
    if text == "inf":
        return math.inf
    return float(text)


def write_table(table, path=None, fmt="csv"):
    """Write a ResultTable as CSV ('#' metadata lines) or JSON.

    path None writes to stdout. Output bytes are a pure function of the
    table: sorted metadata keys, fixed column order, 17-significant-digit
    floats, LF newlines, infinities as the token "inf".
    """
    if fmt == "csv":
        lines = [f"# {key} = {table.metadata[key]}" for key in sorted(table.metadata)]
        lines.append(",".join(table.columns))
        lines.extend(",".join(_format_cell(v) for v in row) for row in table.rows)
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        # cells: finite floats stay numbers; None -> null, inf -> "inf"
        payload = {
            "metadata": {k: str(v) for k, v in table.metadata.items()},
            "columns": list(table.columns),
            "rows": [
                [None if v is None
                 else ("inf" if isinstance(v, float) and math.isinf(v) else float(v))
                 for v in row]
                for row in table.rows
            ],
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1) + "\n"
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def read_table(path):
    """Read a table written by write_table (CSV or JSON, sniffed)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        payload = json.loads(text)
        rows = tuple(
            tuple(math.inf if v == "inf" else (None if v is None else float(v)) for v in row)
            for row in payload["rows"]
        )
        return ResultTable(
            columns=tuple(payload["columns"]),
            rows=rows,
            metadata=dict(payload["metadata"]),
        )
    metadata = {}
    columns = None
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            metadata[key.strip()] = value.strip()
            continue
        if columns is None:
            columns = tuple(line.split(","))
            continue
        rows.append(tuple(_parse_cell(cell) for cell in line.split(",")))
    if columns is None:
        raise ConfigError(f"{path}: no header line found")
    return ResultTable(columns=columns, rows=tuple(rows), metadata=metadata)


# ---------------------------------------------------------------------- CLI


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); config errors are exit 1
        raise ConfigError(message)


def _parse_set(items):
    overrides = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"bad --set {item!r}; want key=value")
        try:
            overrides[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"bad --set value {value!r} for {key.strip()!r}") from None
    return overrides


def load_config_file(path):
    """Key-value config: 'key = value' lines, '#' comments.

    Keys mirror the sweep flags: preset, out, format, direction, kind,
    eliminate_noise, threads; 'grid' and 'set' may repeat.
    """
    known = {"preset", "out", "format", "direction", "kind",
             "eliminate_noise", "threads", "grid", "set"}
    out = {"grid": [], "set": []}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key not in known:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        if key in ("grid", "set"):
            out[key].append(value)
        else:
            out[key] = value
    return out


def _bool_from_text(value, what):
    lowered = str(value).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"bad boolean {value!r} for {what}")


def _sweep_config_from_args(args):
    file_cfg = load_config_file(args.config) if args.config else {}

    def pick(cli_value, key, default):
        if cli_value is not None:
            return cli_value
        if key in file_cfg:
            return file_cfg[key]
        return default

    grids = list(file_cfg.get("grid", [])) + list(args.grid or [])
    sets = list(file_cfg.get("set", [])) + list(args.set or [])
    eliminate = pick(args.eliminate_noise, "eliminate_noise", False)
    if not isinstance(eliminate, bool):
        eliminate = _bool_from_text(eliminate, "eliminate_noise")
    threads = pick(None, "threads", None)
    if threads is not None:
        try:
            threads = int(threads)
        except ValueError:
            raise ConfigError(f"bad threads value {threads!r}") from None
    return SweepConfig(
        preset=pick(args.preset, "preset", None),
        axes=tuple(SweepAxis.from_spec(g) for g in grids),
        overrides=_parse_set(sets),
        out=pick(args.out, "out", None),
        fmt=pick(args.format, "format", "csv"),
        direction=pick(args.direction, "direction", "o2e"),
        eliminate_noise=eliminate,
        kind=file_cfg.get("kind"),
        threads=threads,
    )


def _cmd_sweep(args):
    cfg = _sweep_config_from_args(args)
    table = run_sweep(cfg)
    write_table(table, cfg.out, cfg.fmt)
    return 0


def _cmd_presets(_args):
    for name, description in list_presets().items():
        print(f"{name:10s} {description}")
    return 0


def _point_lines(values, direction, eliminate):
    lines = []

    def put(key, value):
        if value is None:
            lines.append(f"{key} = none")
        elif isinstance(value, bool):
            lines.append(f"{key} = {int(value)}")
        elif isinstance(value, float) and math.isinf(value):
            lines.append(f"{key} = inf")
        else:
            lines.append(f"{key} = {format(float(value), '.12g')}")

    if "beta" in values:
        params = _bogoliubov_params(values)
        frame = build_frame(params)
        report = rwa_validity(params, frame)
        plain = bogoliubov_channel_metrics(params, eliminate_noise=False)
        eliminated = bogoliubov_channel_metrics(params, eliminate_noise=True)
        main = eliminated if eliminate else plain
        put("beta", frame.beta)
        put("squeeze", frame.r)
        put("c_g", params.c_g)
        put("c_s", frame.c_s)
        put("eta", main.eta)
        put("n_nu", amplified_noise(frame.r, params.n_th))
        put("n_e", main.n_e)
        put("sigma2", main.sigma2)
        put("q_lb", plain.q_lb)
        put("q_lb_eliminated", eliminated.q_lb)
        put("rwa_coupling", report.coupling_ratio)
        put("rwa_detuning", report.detuning_ratio)
        put("rwa_ok", report.ok)
        put("stable", is_dynamically_stable(params))
        return lines
    params = _scattering_params(values)
    put("c_g", params.c_g)
    put("c_nu", params.c_nu)
    stable = is_dynamically_stable(params)
    put("stable", stable)
    if not stable:
        return lines
    baths = BathSpec.thermal(params.n_th) if params.n_th > 0.0 else BathSpec.vacuum()
    channel = extract_channel(params, values.get("omega", 0.0),
                              _DIRECTIONS[direction], baths)
    m = metrics_from_channel(channel)
    put("eta", m.eta)
    if params.delta_o == 0.0 and params.delta_e == 0.0 and values.get("omega", 0.0) == 0.0:
        put("eta_closed_form",
            eta_closed_form(params.c_g, params.c_nu, params.zeta_o, params.zeta_e))
    put("n_e", m.n_e)
    put("sigma2", m.sigma2)
    put("q_lb", m.q_lb)
    return lines


def _cmd_point(args):
    values = _parse_set(args.set)
    allowed = _BOGOLIUBOV_KEYS if "beta" in values else _SCATTERING_KEYS
    for key in values:
        if key not in allowed:
            raise ConfigError(f"invalid parameter {key!r}")
    eliminate = bool(args.eliminate_noise)
    for line in _point_lines(values, args.direction or "o2e", eliminate):
        print(line)
    return 0


def _check_suite():
    """Fast invariant bundle for the `check` subcommand; yields (ok, text)."""
    rng = np.random.default_rng(20240817)

    def closed_form_agreement():
        worst = 0.0
        for c_g in np.linspace(0.05, 3.0, 5):
            for frac in np.linspace(0.0, 0.9, 5):
                c_nu = frac * 0.25 * (1.0 + c_g) ** 2
                p = SystemParams.from_cooperativities(c_g, c_nu)
                eta = transmissivity(extract_channel(p))
                ref = eta_closed_form(c_g, c_nu)
                worst = max(worst, abs(eta - ref) / ref)
        return worst < 1e-10, f"closed-form vs scattering transmissivity (worst {worst:.2e})"

    def symplecticity():
        worst = 0.0
        for _ in range(25):
            p = random_stable_params(rng)
            s = scattering_quadrature(p).entries
            worst = max(worst, 0.0 if is_symplectic(s, 1e-10) else 1.0)
        return worst == 0.0, "scattering symplectic at unit extraction (25 random points)"

    def reciprocity():
        worst = 0.0
        for _ in range(10):
            p = random_stable_params(rng)
            fwd = transmissivity(extract_channel(p))
            bwd = transmissivity(
                extract_channel(p, direction=ChannelDirection.MICROWAVE_TO_OPTICAL)
            )
            worst = max(worst, abs(fwd - bwd))
        return worst < 1e-10, f"direction reciprocity of the transmissivity (worst {worst:.2e})"

    def half_matching():
        p = SystemParams.from_cooperativities(0.25, 0.140625)
        form = detect_half_matched(signal_scattering(p))
        if form is None:
            return False, "half-matching detection at C_g = 0.25"
        plan = perfect_transduction_plan(form)
        ch = composed_channel(signal_scattering(p), plan)
        det_t = float(np.linalg.det(ch.transform))
        det_n = float(np.linalg.det(ch.noise))
        ok = abs(det_t - 1.0) < 1e-12 and abs(det_n) < 1e-12
        return ok, f"squeezer plan gives det T = 1, det N = 0 (got {det_t:.3e}, {det_n:.3e})"

    def bloch_messiah_reconstruction():
        worst = 0.0
        for _ in range(10):
            p = random_stable_params(rng)
            s = signal_scattering(p)
            f = bloch_messiah(s)
            worst = max(worst, float(np.max(np.abs(f.reconstruct() - s))))
        return worst < 1e-9, f"Bloch-Messiah reconstruction (worst {worst:.2e})"

    def frame_identities():
        worst = 0.0
        for beta in np.linspace(0.05, 0.95, 10):
            r = 0.5 * math.atanh(beta)
            worst = max(worst, abs(math.cosh(2 * r) * math.sqrt(1 - beta**2) - 1.0))
        return worst < 1e-12, f"frame identity cosh(2r) sqrt(1-beta^2) = 1 (worst {worst:.2e})"

    def elimination():
        r = 0.5 * math.atanh(0.8)
        lam, phi = elimination_params(r, 0.3)
        residual = abs(squeezed_bath_noise(r, lam, 0.3, phi))
        return residual < 1e-14, f"squeezed-bath noise elimination (residual {residual:.2e})"

    def occupancy():
        value = thermal_occupancy_log10(10e9, 1e-3)
        return -215.0 <= value <= -195.0, f"thermal occupancy log10 at 10 GHz, 1 mK ({value:.1f})"

    def table_determinism():
        cfg = SweepConfig(preset="fig2a", axes=(SweepAxis.from_range("c_g", 0.05, 1.0, 5),),
                          overrides={"c_nu": 0.05})
        blobs = []
        for _ in range(2):
            table = run_sweep(cfg)
            with tempfile.NamedTemporaryFile(mode="w", suffix=".csv", delete=False) as fh:
                path = fh.name
            try:
                write_table(table, path)
                with open(path, "rb") as fh:
                    blobs.append(fh.read())
                round_trip = read_table(path)
            finally:
                os.unlink(path)
            if round_trip.rows != table.rows:
                return False, "table round-trip"
        return blobs[0] == blobs[1], "table output deterministic and round-trips"

    for check in (closed_form_agreement, symplecticity, reciprocity, half_matching,
                  bloch_messiah_reconstruction, frame_identities, elimination,
                  occupancy, table_determinism):
        yield check()


def _cmd_check(_args):
    failures = 0
    for ok, text in _check_suite():
        print(f"{'ok' if ok else 'FAIL'}: {text}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} check(s) failed")
        return 2
    return 0


def build_parser():
    parser = _Parser(prog="transduction-lab",
                     description="Gaussian-channel analysis of a cavity electro-optic "
                                 "converter: sweeps, presets, and invariant checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sweep = sub.add_parser("sweep", help="run a parameter sweep and write a table")
    sweep.add_argument("--preset", help="start from a named preset (see `presets`)")
    sweep.add_argument("--grid", action="append", metavar="NAME:MIN:MAX:COUNT[:log]",
                       help="sweep axis; repeatable, overrides the preset grid")
    sweep.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="fix a parameter; repeatable")
    sweep.add_argument("--config", help="key-value config file; flags override it")
    sweep.add_argument("--out", help="output path (default stdout)")
    sweep.add_argument("--format", choices=("csv", "json"))
    sweep.add_argument("--direction", choices=sorted(_DIRECTIONS))
    sweep.add_argument("--eliminate-noise", action="store_true", default=None,
                       dest="eliminate_noise",
                       help="report the squeezed-bath (noise-eliminated) capacity")
    sweep.set_defaults(func=_cmd_sweep)

    presets = sub.add_parser("presets", help="list sweep presets")
    presets.set_defaults(func=_cmd_presets)

    point = sub.add_parser("point", help="evaluate one operating point")
    point.add_argument("--set", action="append", metavar="KEY=VALUE")
    point.add_argument("--direction", choices=sorted(_DIRECTIONS))
    point.add_argument("--eliminate-noise", action="store_true", default=None,
                       dest="eliminate_noise")
    point.set_defaults(func=_cmd_point)

    check = sub.add_parser("check", help="run the fast invariant suite")
    check.set_defaults(func=_cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except (TransductionError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
