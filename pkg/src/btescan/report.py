"""Serialization of scan results: delimited table plus '#' manifest.

The table is plain tab-separated text. Lines starting with '#' form a
key=value manifest (box, mode cutoff, tolerances, strip margin, tool
version, provenance notes); the first non-comment line is the header
and every following line is one eigenvalue record. Floats are written
with repr so parsing reproduces the exact binary values and reruns of
the same scan are byte-identical.
"""

from __future__ import annotations

import io
from pathlib import Path

from .errors import ConfigError
from .types import ContourBox, EigenvalueRecord, ModeSpec, ScanReport

__all__ = ["TABLE_COLUMNS", "format_table", "write_table", "parse_table"]

TABLE_COLUMNS = ("d", "n", "re_k", "im_k", "residual", "multiplicity",
                 "newton_iters")


def format_table(report: ScanReport, tol: float | None = None,
                 extra_manifest: dict | None = None) -> str:
    """Render a ScanReport as the canonical table text."""
    buf = io.StringIO()
    man = {
        "format_version": "1",
        "tool": "btescan",
        "tool_version": _tool_version(),
        "d": report.d,
        "re_min": repr(report.box.re_min),
        "re_max": repr(report.box.re_max),
        "im_min": repr(report.box.im_min),
        "im_max": repr(report.box.im_max),
        "n_max_used": report.n_max_used,
        "strip_margin": repr(report.strip_margin),
        "strip_margin_vacuous": report.strip_margin_vacuous,
        "record_count": len(report.records),
        "failure_count": len(report.failures),
    }
    if tol is not None:
        man["newton_tol"] = repr(tol)
    for key, value in (extra_manifest or {}).items():
        man[str(key)] = value
    for key, value in man.items():
        buf.write(f"# {key}={value}\n")
    for note in report.failures:
        buf.write(f"# failure={note}\n")
    buf.write("\t".join(TABLE_COLUMNS) + "\n")
    for rec in report.records:
        buf.write("\t".join((
            str(rec.mode.d), str(rec.mode.n),
            repr(rec.k.real), repr(rec.k.imag),
            repr(rec.residual), str(rec.multiplicity),
            str(rec.newton_iters))) + "\n")
    return buf.getvalue()


def write_table(report: ScanReport, path, tol: float | None = None,
                extra_manifest: dict | None = None) -> None:
    Path(path).write_text(format_table(report, tol, extra_manifest))


def parse_table(path) -> ScanReport:
    """Parse a table file back into a ScanReport (exact round trip)."""
    text = Path(path).read_text()
    manifest: dict[str, str] = {}
    failures: list[str] = []
    header: list[str] | None = None
    records: list[EigenvalueRecord] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" not in body:
                raise ConfigError(f"line {lineno}: manifest line without '='")
            key, _, value = body.partition("=")
            if key.strip() == "failure":
                failures.append(value)
            else:
                manifest[key.strip()] = value
            continue
        fields = line.split("\t")
        if header is None:
            if tuple(fields) != TABLE_COLUMNS:
                raise ConfigError(
                    f"line {lineno}: expected header {TABLE_COLUMNS}, got {fields}")
            header = fields
            continue
        if len(fields) != len(TABLE_COLUMNS):
            raise ConfigError(f"line {lineno}: expected "
                              f"{len(TABLE_COLUMNS)} fields, got {len(fields)}")
        try:
            d, n = int(fields[0]), int(fields[1])
            k = complex(float(fields[2]), float(fields[3]))
            records.append(EigenvalueRecord(
                mode=ModeSpec(d, n), k=k, residual=float(fields[4]),
                multiplicity=int(fields[5]), newton_iters=int(fields[6])))
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    if header is None:
        raise ConfigError("no header row found")
    try:
        box = ContourBox(float(manifest["re_min"]), float(manifest["re_max"]),
                         float(manifest["im_min"]), float(manifest["im_max"]))
        report = ScanReport(
            box=box, d=int(manifest["d"]),
            n_max_used=int(manifest["n_max_used"]),
            records=records,
            strip_margin=float(manifest["strip_margin"]),
            strip_margin_vacuous=manifest["strip_margin_vacuous"] == "True",
            failures=failures)
    except KeyError as exc:
        raise ConfigError(f"manifest missing key {exc}") from exc
    report.total_winding_per_mode = _counts_per_mode(records)
    return report


def _counts_per_mode(records: list[EigenvalueRecord]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for rec in records:
        counts[rec.mode.n] = counts.get(rec.mode.n, 0) + rec.multiplicity
    return counts


def _tool_version() -> str:
    from . import __version__
    return __version__
