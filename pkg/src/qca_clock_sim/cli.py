"""``qca-clock-sim`` command-line entry point.

Tables go to ``--out`` as CSV with a ``#`` metadata header, and a JSON
report with every verdict is written next to them.  Without ``--out`` the
CSV goes to standard output and the summary to standard error.

Exit status: 0 when every enforced verdict passes, 2 when one fails and 1
on usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import scenarios
from .circuit import CircuitError
from .config import ConfigError, load_config, shipped_config
from .scenarios import ScenarioResult, Table

EXIT_OK, EXIT_USAGE, EXIT_VERDICT = 0, 1, 2
COMMANDS = ("spectrum", "evolve", "table1", "oracle", "split", "gates")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _positive(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qca-clock-sim", description="Adiabatically clocked QCA circuit simulator.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", type=Path, help="circuit document (default: bundled wire4.json)")
    p.add_argument("--out", type=Path, help="CSV output path; the JSON report goes next to it")
    p.add_argument("--dt", type=_positive, help="integration step in hbar/E_k")
    p.add_argument("--gamma-max", type=_floats, help="clock amplitude(s), comma separated")
    p.add_argument("--levels", type=int, default=4, help="eigenvalues per spectrum sample")
    p.add_argument("--samples", type=int, help="number of time samples")
    p.add_argument("--initial", help="initial basis state, cell 1 first; comma separated for split")
    p.add_argument("--threshold", type=float, default=scenarios.DEFAULT_THRESHOLD,
                   help="smallest probability listed in transition reports")
    p.add_argument("--observables", help="evolve probes: P<cell> or Pauli strings, comma separated")
    return p


def _fmt(v) -> str:
    if hasattr(v, "item"):
        v = v.item()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(table: Table, scenario: str) -> str:
    buf = io.StringIO()
    buf.write(f"# qca-clock-sim {scenario}\n")
    for key, value in table.meta.items():
        buf.write(f"# {key}: {_fmt(value) if value is not None else 'n/a'}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_default(o):
    if hasattr(o, "item"):
        return o.item()
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def render_report(result: ScenarioResult) -> str:
    return json.dumps(result.to_dict(), indent=2, sort_keys=True, default=_json_default) + "\n"


def table_paths(out: Path, names: list[str]) -> dict[str, Path]:
    """One path per table: ``out`` itself, or ``<stem>_<name><suffix>`` for several."""
    if len(names) == 1:
        return {names[0]: out}
    suffix = out.suffix or ".csv"
    return {name: out.with_name(f"{out.stem}_{name}{suffix}") for name in names}


def write_result(result: ScenarioResult, out: Path | None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    lines = list(result.summary)
    for v in result.verdicts:
        flag = "PASS" if v.passed else "FAIL"
        if not v.enforced:
            flag += " (reported only)"
        lines.append(f"{flag}  {v.name}: {v.measured:.6g} vs {v.target:.6g} +/- {v.tolerance:g} [{v.source}]")
    if out is None:
        for table in result.tables.values():
            stdout.write(render_csv(table, result.scenario))
        summary_stream = stderr
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        for name, path in table_paths(out, list(result.tables)).items():
            path.write_text(render_csv(result.tables[name], result.scenario))
        out.with_suffix(".json").write_text(render_report(result))
        summary_stream = stdout
    for line in lines:
        summary_stream.write(line + "\n")


def run(args: argparse.Namespace) -> ScenarioResult:
    cmd = args.command
    if cmd == "table1":
        return scenarios.table1(args.dt, args.gamma_max)
    if cmd == "gates":
        g = args.gamma_max[0] if args.gamma_max else 0.5
        return scenarios.gates(args.dt, gamma_max=g)
    cfg = load_config(args.config or shipped_config("wire4.json"))
    if cmd == "spectrum":
        return scenarios.spectrum(cfg, args.gamma_max, args.levels, args.samples or 201)
    if cmd == "evolve":
        return scenarios.evolve(cfg, args.initial, args.dt, args.threshold, args.observables, args.samples)
    if cmd == "oracle":
        return scenarios.oracle(cfg, args.initial, args.dt, args.samples)
    initials = args.initial.split(",") if args.initial else None
    return scenarios.split(cfg, initials, args.dt, args.samples)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        result = run(args)
    except (ConfigError, CircuitError, ValueError, OSError) as e:
        print(f"qca-clock-sim: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    write_result(result, args.out)
    return EXIT_OK if result.passed else EXIT_VERDICT


if __name__ == "__main__":
    sys.exit(main())
