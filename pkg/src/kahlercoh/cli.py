"""Batch command line: ``run`` executes configured scenarios, ``table`` emits plot data."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import harness, multipoint
from .bundles import INF, BundleModel, is_inf
from .coherent import build_onb, coherent_kernel
from .errors import ConfigError, DegenerateTriangleError, KahlerCohError
from .projective import QuadratureSpec

SCHEMA_VERSION = 1
FORMATS = ("json", "csv")
EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    tolerance: float
    seed: int = 0
    params: dict = field(default_factory=dict)

    def block(self) -> dict:
        return {**self.params, "name": self.name, "tolerance": self.tolerance, "seed": self.seed}


@dataclass(frozen=True)
class RunConfig:
    scenarios: tuple
    model: str | None = None
    quadrature: QuadratureSpec | None = None
    output_dir: str = "reports"
    output_format: str = "json"

    @classmethod
    def from_dict(cls, data) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        if data.get("schema") != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema {data.get('schema')!r}; expected {SCHEMA_VERSION}")
        model = data.get("model")
        if model is not None:
            model = _validate_model(model)
        quad = data.get("quadrature")
        quad = _quadrature(quad) if quad is not None else None
        output = data.get("output", {})
        if not isinstance(output, dict):
            raise ConfigError("output must be an object")
        fmt = output.get("format", "json")
        if fmt not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}")
        raw = data.get("scenarios")
        if not isinstance(raw, list) or not raw:
            raise ConfigError("config needs a non-empty scenario list")
        scenarios = tuple(_scenario(b, i) for i, b in enumerate(raw))
        labels = [s.params.get("label", s.name) for s in scenarios]
        if len(set(labels)) != len(labels):
            raise ConfigError("scenario labels must be unique; add a 'label' to repeated scenarios")
        return cls(scenarios, model, quad, str(output.get("dir", "reports")), fmt)


def _validate_model(spec):
    try:
        m = BundleModel.parse(spec) if isinstance(spec, str) else BundleModel.from_dict(spec)
    except (KahlerCohError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad model descriptor {spec!r}: {exc}") from exc
    return f"{m.family}:n={m.n},m={m.power}"


def _quadrature(spec) -> QuadratureSpec:
    try:
        return QuadratureSpec.from_dict(spec)
    except (KahlerCohError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad quadrature spec: {exc}") from exc


def _scenario(block, index) -> ScenarioConfig:
    where = f"scenario #{index}"
    if not isinstance(block, dict):
        raise ConfigError(f"{where} must be an object")
    name = block.get("name")
    if name not in harness.SCENARIOS:
        raise ConfigError(f"{where}: unknown scenario {name!r}")
    tol = block.get("tolerance")
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not math.isfinite(tol) or tol <= 0:
        raise ConfigError(f"{where}: tolerance must be a positive number, got {tol!r}")
    seed = block.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"{where}: seed must be a non-negative integer")
    for key in ("count", "symmetry_probes"):
        if key in block and (isinstance(block[key], bool) or not isinstance(block[key], int) or block[key] < 1):
            raise ConfigError(f"{where}: {key} must be a positive integer")
    if "powers" in block:
        p = block["powers"]
        if not isinstance(p, list) or not p or not all(isinstance(k, int) and k >= 1 for k in p):
            raise ConfigError(f"{where}: powers must be a non-empty list of positive integers")
    params = {k: v for k, v in block.items() if k not in ("name", "tolerance", "seed")}
    if "model" in params:
        params["model"] = _validate_model(params["model"])
    if "quadrature" in params:
        _quadrature(params["quadrature"])
    return ScenarioConfig(name, float(tol), seed, params)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return RunConfig.from_dict(data)


# ---------------------------------------------------------------- output


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def report_json(report: harness.ScenarioReport) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **_jsonable(report.to_dict())}, indent=2)


def read_report_json(path) -> harness.ScenarioReport:
    data = json.loads(Path(path).read_text())
    data.pop("schema", None)
    return harness.ScenarioReport.from_dict(data)


def rows_csv(rows: list[dict]) -> str:
    """One CSV row per record; every cell holds the JSON encoding of its value."""
    columns: list[str] = []
    for r in rows:
        columns += [k for k in r if k not in columns]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([json.dumps(_jsonable(r[c])) if c in r else "" for c in columns])
    return buf.getvalue()


def read_rows_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return [{c: json.loads(v) for c, v in zip(header, row) if v != ""} for row in reader]


def _write_report(report, out_dir: Path, fmt: str) -> Path:
    path = out_dir / f"{report.scenario}.{fmt}"
    write_atomic(path, report_json(report) if fmt == "json" else rows_csv(report.details))
    return path


def _summary_record(report: harness.ScenarioReport) -> dict:
    rec = report.to_dict()
    rec.pop("details")
    return _jsonable(rec)


def run(config: RunConfig, out_dir=None, fmt=None, stream=sys.stdout) -> int:
    out = Path(out_dir or config.output_dir)
    fmt = fmt or config.output_format
    summaries, failed = [], []
    for sc in config.scenarios:
        try:
            report = harness.run_scenario(sc.block(), config.model, config.quadrature)
        except ConfigError:
            raise
        except KahlerCohError as exc:
            # a numerical failure inside a scenario fails that scenario, not the run
            report = harness.ScenarioReport(sc.params.get("label", sc.name), 0, 0.0, 0.0, sc.tolerance, False,
                                            seed=sc.seed, notes={"error": f"{type(exc).__name__}: {exc}"})
        path = _write_report(report, out, fmt)
        summaries.append({**_summary_record(report), "file": path.name})
        print(report.summary_line(), file=stream)
        if not report.passed:
            failed.append(report)
    summary = {"schema": SCHEMA_VERSION, "passed": not failed, "scenarios": summaries}
    write_atomic(out / "summary.json", json.dumps(summary, indent=2))
    for report in failed:
        if "error" in report.notes:
            print(f"{report.scenario} raised {report.notes['error']}", file=sys.stderr)
        worst = sorted((d for d in report.details if not d.get("skipped")),
                       key=lambda d: d.get("rel_err" if report.metric == "rel" else "abs_err", 0.0), reverse=True)
        print(f"failing cases for {report.scenario}:", file=sys.stderr)
        for d in worst[:5]:
            print("  " + json.dumps(_jsonable(d)), file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- tables


def parse_grid(text: str):
    """``xmin:xmax:nx,ymin:ymax:ny`` -> flat arrays of chart points."""
    try:
        xs, ys = text.split(",")
        (x0, x1, nx), (y0, y1, ny) = (part.split(":") for part in (xs, ys))
        gx = np.linspace(float(x0), float(x1), int(nx))
        gy = np.linspace(float(y0), float(y1), int(ny))
    except ValueError as exc:
        raise ConfigError(f"bad grid spec {text!r}; expected xmin:xmax:nx,ymin:ymax:ny") from exc
    if int(nx) < 1 or int(ny) < 1:
        raise ConfigError("grid needs at least one node per axis")
    X, Y = np.meshgrid(gx, gy, indexing="ij")
    return (X + 1j * Y).ravel()


def parse_complex(text: str):
    text = text.strip()
    try:
        if "," in text:
            re_, im = text.split(",")
            return complex(float(re_), float(im))
        if text.lower() == "inf":
            return INF
        return complex(text.replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"bad complex number {text!r}") from exc


def _rotation(k: int, total: int):
    """SU(2) Mobius map turning the sphere by 2 pi k / total about a tilted axis."""
    theta = 2 * math.pi * k / total
    axis = np.array([1.0, 2.0, 3.0]) / math.sqrt(14)
    a = math.cos(theta / 2) - 1j * axis[2] * math.sin(theta / 2)
    b = (-1j * axis[0] - axis[1]) * math.sin(theta / 2)

    def apply(z):
        if is_inf(z):
            return INF if b == 0 else a / -np.conj(b)
        num, den = a * z + b, -np.conj(b) * z + np.conj(a)
        return INF if abs(den) < 1e-12 * abs(num) else complex(num / den)

    return apply


def table_rows(quantity: str, model: BundleModel, grid=None, x0=1.0, points=None, rotations=1) -> list[dict]:
    basis = build_onb(model)
    rows = []
    if quantity in ("psi", "kernel"):
        if grid is None:
            raise ConfigError(f"--grid is required for {quantity}")
        for y in grid:
            row = {"y_re": float(y.real), "y_im": float(y.imag)}
            if quantity == "psi":
                row["psi"] = multipoint.two_point_modulus_sq(basis, x0, complex(y))
            else:
                k = coherent_kernel(basis, complex(y), x0)
                row["kernel_re"], row["kernel_im"] = float(k.real), float(k.imag)
            rows.append(row)
        return rows
    if not points:
        raise ConfigError(f"--points is required for {quantity}")
    for k in range(rotations):
        g = _rotation(k, rotations)
        pts = [g(p) for p in points]
        row = {"rotation": k}
        for i, p in enumerate(pts):
            row[f"x{i}_re"], row[f"x{i}_im"] = (math.inf, math.inf) if is_inf(p) else (p.real, p.imag)
        res = multipoint.cyclic_m_point(basis, pts)
        row.update(value_re=res.value.real, value_im=res.value.imag, modulus=res.modulus, phase=res.phase)
        if quantity == "decomp":
            if len(pts) != 3:
                raise ConfigError("decomp needs exactly three points")
            try:
                row.update(multipoint.three_point_decompose(basis, *pts).to_dict())
            except DegenerateTriangleError:
                row.update(a=None, b=None, c=None, phi=None, rho=None)
        rows.append(row)
    return rows


def write_table(rows: list[dict], path) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows({k: ("" if v is None else repr(float(v)) if isinstance(v, float) else v) for k, v in r.items()}
                     for r in rows)
    write_atomic(Path(path), buf.getvalue())


def read_table(path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: (None if v == "" else float(v)) for k, v in r.items()} for r in csv.DictReader(fh)]


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kahlercoh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the scenarios of a JSON config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", help="report directory (overrides the config)")
    p_run.add_argument("--format", choices=FORMATS)

    p_tab = sub.add_parser("table", help="write a CSV table of a quantity")
    p_tab.add_argument("--quantity", required=True, choices=("psi", "kernel", "mpoint", "decomp"))
    p_tab.add_argument("--model", default="P1:m=1")
    p_tab.add_argument("--grid", help="xmin:xmax:nx,ymin:ymax:ny")
    p_tab.add_argument("--x0", default="1", help="base point for psi and kernel tables")
    p_tab.add_argument("--points", help="semicolon separated chart points, e.g. '0;1;1j'")
    p_tab.add_argument("--rotations", type=int, default=1)
    p_tab.add_argument("--out", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            config = load_config(args.config)
            return run(config, args.out, args.format)
        model = BundleModel.parse(args.model)
        if model.family != "P1":
            raise ConfigError("tables are available for P1 models")
        if args.rotations < 1:
            raise ConfigError("--rotations must be positive")
        grid = parse_grid(args.grid) if args.grid else None
        points = [parse_complex(p) for p in args.points.split(";")] if args.points else None
        rows = table_rows(args.quantity, model, grid, parse_complex(args.x0), points, args.rotations)
        write_table(rows, args.out)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except KahlerCohError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
