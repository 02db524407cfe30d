"""Command-line interface: scan, verify and plot subcommands.

Configuration comes from an optional JSON file (--config) overridden
by flags; every override is recorded in the output manifest. The scan
command writes the delimited eigenvalue table and renders the scatter
figure alongside it; verify runs the named check suites and writes a
JSON report; plot re-renders a figure from an existing table.

Exit codes: 0 success, 1 unrecoverable or failed checks, 2 config
errors or partial scan failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .errors import BtescanError, ConfigError
from .plotting import plot_report
from .report import parse_table, write_table
from .types import ContourBox, QuadratureConfig
from .verify import SUITE_NAMES, run_suites
from .zerofind import scan_box

__all__ = ["RunConfig", "load_config", "cmd_scan", "cmd_verify", "cmd_plot",
           "main"]

_DEFAULTS = {
    "dim": 2,
    "re": "0:40",
    "im": "-8:8",
    "n": "auto",
    "tol": 1e-11,
    "out": "btescan-out",
    "suites": list(SUITE_NAMES),
}


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    d: int
    box: ContourBox
    n_policy: tuple[int, int] | None  # None means auto
    tol: float
    out: Path
    suites: tuple[str, ...]
    overrides: tuple[str, ...]  # flag-overridden field names, for provenance
    table: Path | None = None  # plot input


def _parse_range(text: str, field: str) -> tuple[float, float]:
    parts = str(text).split(":")
    if len(parts) != 2:
        raise ConfigError(f"{field}: expected lo:hi, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ConfigError(f"{field}: {exc}") from exc
    if lo > hi:
        raise ConfigError(f"{field}: lo must not exceed hi, got {text!r}")
    return lo, hi


def load_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, the optional config file, and flags (flags win)."""
    merged = dict(_DEFAULTS)
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            loaded = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"config: cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config: top level must be an object")
        unknown = set(loaded) - set(_DEFAULTS)
        if unknown:
            raise ConfigError(f"config: unknown keys {sorted(unknown)}")
        merged.update(loaded)

    overrides = []
    for field, flag in (("dim", "dim"), ("re", "re"), ("im", "im"),
                        ("n", "n"), ("tol", "tol"), ("out", "out"),
                        ("suites", "suites")):
        value = getattr(args, flag, None)
        if value is not None:
            merged[field] = value
            overrides.append(field)

    d = int(merged["dim"])
    if d not in (2, 3):
        raise ConfigError(f"dim: must be 2 or 3, got {merged['dim']}")
    re_lo, re_hi = _parse_range(merged["re"], "re")
    im_lo, im_hi = _parse_range(merged["im"], "im")
    n_raw = merged["n"]
    if isinstance(n_raw, str) and n_raw.strip().lower() == "auto":
        n_policy = None
    else:
        if isinstance(n_raw, (list, tuple)) and len(n_raw) == 2:
            lo, hi = n_raw
        else:
            lo, hi = _parse_range(n_raw, "n")
        if lo != int(lo) or hi != int(hi) or lo < 0:
            raise ConfigError(f"n: expected nonnegative integers, got {n_raw!r}")
        n_policy = (int(lo), int(hi))
    tol = float(merged["tol"])
    if tol <= 0:
        raise ConfigError(f"tol: must be positive, got {tol}")
    suites = merged["suites"]
    if isinstance(suites, str):
        suites = [s.strip() for s in suites.split(",") if s.strip()]
    bad = [s for s in suites if s not in SUITE_NAMES]
    if bad:
        raise ConfigError(f"suites: unknown {bad}; choose from {SUITE_NAMES}")

    return RunConfig(
        command=args.command, d=d,
        box=ContourBox(re_lo, re_hi, im_lo, im_hi),
        n_policy=n_policy, tol=tol, out=Path(merged["out"]),
        suites=tuple(suites), overrides=tuple(overrides),
        table=Path(args.table) if getattr(args, "table", None) else None)


def cmd_scan(cfg: RunConfig) -> int:
    report = scan_box(cfg.box, cfg.d, n_range=cfg.n_policy,
                      cfg=QuadratureConfig(), tol=cfg.tol)
    table_path = cfg.out if cfg.out.suffix else cfg.out.with_suffix(".tsv")
    table_path.parent.mkdir(parents=True, exist_ok=True)
    manifest = {f"override_{name}": "flag" for name in cfg.overrides}
    write_table(report, table_path, tol=cfg.tol, extra_manifest=manifest)
    figure_path = table_path.with_suffix(".svg")
    plot_report(report, figure_path)
    print(f"wrote {table_path} ({len(report.records)} records) "
          f"and {figure_path}")
    if report.failures:
        for note in report.failures:
            print(f"partial failure: {note}", file=sys.stderr)
        return 2
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    reports = run_suites(cfg.suites, box=cfg.box, d=cfg.d)
    payload = []
    for rep in reports:
        payload.append({
            "suite": rep.suite,
            "passed": rep.passed,
            "warnings": rep.warnings,
            "checks": [dataclasses.asdict(c) for c in rep.checks],
        })
    out_path = cfg.out if cfg.out.suffix else cfg.out.with_suffix(".json")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(payload, indent=2) + "\n")
    all_pass = all(rep.passed for rep in reports)
    for rep in reports:
        status = "pass" if rep.passed else "FAIL"
        print(f"{rep.suite}: {status} ({len(rep.checks)} checks)")
        for warning in rep.warnings:
            print(f"  warning: {warning}")
        for check in rep.checks:
            if not check.passed:
                print(f"  FAIL {check.name}: measured {check.measured:.6g}, "
                      f"tolerance {check.tolerance:.6g} ({check.detail})",
                      file=sys.stderr)
    print(f"wrote {out_path}")
    return 0 if all_pass else 1


def cmd_plot(cfg: RunConfig) -> int:
    if cfg.table is None:
        raise ConfigError("plot: a table path is required")
    try:
        report = parse_table(cfg.table)
    except ConfigError as exc:
        # a malformed table is a data error, not a configuration error
        print(f"error: malformed table: {exc}", file=sys.stderr)
        return 1
    out_path = cfg.out if cfg.out.suffix else cfg.out.with_suffix(".svg")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    plot_report(report, out_path)
    print(f"wrote {out_path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="btescan",
        description="scan for Born transmission eigenvalues, verify the "
                    "structural identities, and plot eigenvalue tables")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, choices=(2, 3), default=None,
                        help="spatial dimension")
    common.add_argument("--re", default=None, metavar="LO:HI",
                        help="real part range of the scan box")
    common.add_argument("--im", default=None, metavar="LO:HI",
                        help="imaginary part range of the scan box")
    common.add_argument("--n", default=None, metavar="auto|LO:HI",
                        help="mode index policy")
    common.add_argument("--tol", type=float, default=None,
                        help="Newton refinement tolerance")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--config", default=None, help="JSON config file")

    sub.add_parser("scan", parents=[common],
                   help="find eigenvalues in a box, write table and figure")
    p_verify = sub.add_parser("verify", parents=[common],
                              help="run verification suites")
    p_verify.add_argument("--suites", default=None,
                          help="comma-separated subset of "
                               + ",".join(SUITE_NAMES))
    p_plot = sub.add_parser("plot", parents=[common],
                            help="render a figure from an existing table")
    p_plot.add_argument("table", help="eigenvalue table to plot")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "scan":
            return cmd_scan(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        return cmd_plot(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except BtescanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
