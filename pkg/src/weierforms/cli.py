"""Command-line front end: evaluation, verification suites, cusp tables.

Output is deterministic for a fixed (argv, config, seed): rows keep their
generation order, floats are printed with round-trip precision, and no
timestamps or environment state enter the reports.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys

from .arith import as_rational
from .config import RunConfig, load_config
from .cusp import cusp_report
from .errors import WeierError
from .evaluate import describe_route, wp_lattice, wzeta_lattice
from .forms import FormSpec, RationalPair
from .lattice import Lattice
from .verify import SUITES, run_suite

__all__ = ["main"]

_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_ONLY = re.compile(rf"^{_NUM}$")
_IMAG_ONLY = re.compile(rf"^(?P<body>[+-]|{_NUM})?[ij]$")
_BOTH = re.compile(rf"^(?P<re>{_NUM})(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?|[+-])[ij]$")


def _imag_body(body: str | None) -> float:
    if body is None or body == "+":
        return 1.0
    if body == "-":
        return -1.0
    return float(body)


def parse_complex(text: str) -> complex:
    """Parse 'x+yi' (also bare 'x', 'yi', 'i', '-i'; j accepted for i)."""
    s = text.strip()
    m = _IMAG_ONLY.match(s)
    if m:
        return complex(0.0, _imag_body(m.group("body")))
    if _REAL_ONLY.match(s):
        return complex(float(s), 0.0)
    m = _BOTH.match(s)
    if m:
        return complex(float(m.group("re")), _imag_body(m.group("im")))
    raise WeierError(f"cannot parse complex number {text!r}")


def format_complex(z: complex) -> str:
    """Round-trip text form re+imi with shortest repr digits."""
    sign = "+" if z.imag >= 0 or z.imag != z.imag else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _value_payload(z: complex | None) -> dict | None:
    if z is None:
        return None
    return {"re": z.real, "im": z.imag}


def _row_payload(row: dict) -> dict:
    return {
        "id": row["id"],
        "inputs": row["inputs"],
        "value": _value_payload(row.get("value")),
        "error": row.get("error"),
        "bound": row.get("bound"),
        "status": row["status"],
    }


def _emit(command: str, config: RunConfig, rows: list[dict], notes: tuple[str, ...] = (), stream=None) -> None:
    out = stream or sys.stdout
    fmt = config.output_format
    if fmt == "json":
        doc = {
            "command": command,
            "config": config.as_dict(),
            "rows": [_row_payload(r) for r in rows],
        }
        if notes:
            doc["notes"] = list(notes)
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["id", "inputs", "value_re", "value_im", "error", "bound", "status"])
        for r in rows:
            v = r.get("value")
            writer.writerow(
                [
                    r["id"],
                    ";".join(f"{k}={v2}" for k, v2 in r["inputs"].items()),
                    "" if v is None else repr(v.real),
                    "" if v is None else repr(v.imag),
                    "" if r.get("error") is None else repr(r["error"]),
                    "" if r.get("bound") is None else repr(r["bound"]),
                    r["status"],
                ]
            )
    else:
        for r in rows:
            v = r.get("value")
            val = format_complex(v) if v is not None else "-"
            err = "-" if r.get("error") is None else f"{r['error']:.3e}"
            detail = f"  {r['detail']}" if r.get("detail") else ""
            out.write(f"{r['id']:<24} {r['status']:<6} value={val} err={err}{detail}\n")
        for note in notes:
            out.write(f"# {note}\n")


def _error_record(command: str, config: RunConfig | None, exc: Exception, stream=None) -> None:
    out = stream or sys.stdout
    record = {
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }
    if config is not None and config.output_format == "text":
        print(f"error: {record['error']['type']}: {record['error']['message']}", file=sys.stderr)
    else:
        json.dump(record, out)
        out.write("\n")


# ---------------------------------------------------------------------------
# eval command


def _form_from_args(args) -> tuple[str, FormSpec | None]:
    kind = args.what
    if kind == "f":
        return "f", FormSpec.wp_form(as_rational(args.s), as_rational(args.t))
    if kind == "g":
        return "g", FormSpec.zeta_form(as_rational(args.s), as_rational(args.t))
    if kind == "h":
        if args.r is None:
            raise WeierError("eval h requires --r")
        return "h", FormSpec.h_form(args.r, as_rational(args.s), as_rational(args.t))
    if kind == "hU":
        if not args.u:
            raise WeierError("eval hU requires at least one --u s,t")
        labels = []
        for item in args.u:
            parts = item.split(",")
            if len(parts) != 2:
                raise WeierError(f"--u expects 's,t', got {item!r}")
            labels.append(RationalPair.of(as_rational(parts[0]), as_rational(parts[1])))
        return "hU", FormSpec.hU_form(labels)
    return kind, None


def cmd_eval(args, config: RunConfig) -> int:
    kind, form = _form_from_args(args)
    opts = {"route": config.route, "shell_cap": config.shell_cap}
    if form is not None:
        if args.tau is None:
            raise WeierError(f"eval {kind} requires --tau")
        tau = parse_complex(args.tau)
        cv = form.evaluate(tau, config.tolerance, **opts)
        z_point = form.p.point(tau) if form.p is not None else None
        lat = Lattice(tau, 1.0)
        plan = describe_route(
            lat,
            z_point if z_point is not None else 0.25,
            config.tolerance,
            route=config.route,
            kind="wp" if kind == "f" else "wzeta",
            shell_cap=config.shell_cap,
        )
        inputs = {"form": form.describe(), "tau": format_complex(tau)}
    else:
        if args.z is None:
            raise WeierError(f"eval {kind} requires --z")
        z = parse_complex(args.z)
        if args.tau is not None:
            lat = Lattice(parse_complex(args.tau), 1.0)
        elif args.omega1 is not None and args.omega2 is not None:
            lat = Lattice(parse_complex(args.omega1), parse_complex(args.omega2))
        else:
            raise WeierError(f"eval {kind} requires --tau or both --omega1/--omega2")
        fn = wp_lattice if kind == "wp" else wzeta_lattice
        cv = fn(lat, z, config.tolerance, route=config.route, shell_cap=config.shell_cap)
        plan = describe_route(
            lat, z, config.tolerance, route=config.route, kind=kind, shell_cap=config.shell_cap
        )
        inputs = {
            "omega1": format_complex(lat.omega1),
            "omega2": format_complex(lat.omega2),
            "z": format_complex(z),
        }
    inputs.update({f"plan_{k}": v for k, v in plan.items()})
    row = {
        "id": f"eval-{kind}",
        "inputs": inputs,
        "value": cv.value,
        "error": cv.error,
        "bound": plan.get("tail_bound"),
        "status": "ok",
    }
    _emit("eval", config, [row])
    return 0


# ---------------------------------------------------------------------------
# verify command


def cmd_verify(args, config: RunConfig) -> int:
    report = run_suite(args.suite, config)
    rows = []
    for r in report.rows:
        rows.append(
            {
                "id": r.id,
                "inputs": r.inputs,
                "value": r.value,
                "error": r.error,
                "bound": r.bound,
                "status": r.status,
                "detail": r.detail,
            }
        )
    summary = f"{report.suite}: {report.passed}/{len(report.rows)} checks passed (seed {report.seed})"
    _emit(f"verify {args.suite}", config, rows, notes=report.notes + (summary,))
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# table command


def _parse_grid_line(line: str, lineno: int) -> FormSpec:
    parts = line.split()
    if parts[0] == "f" and len(parts) == 3:
        return FormSpec.wp_form(as_rational(parts[1]), as_rational(parts[2]))
    if parts[0] == "h" and len(parts) == 4:
        return FormSpec.h_form(int(parts[3]), as_rational(parts[1]), as_rational(parts[2]))
    raise WeierError(f"grid line {lineno}: expected 'f s t' or 'h s t r', got {line!r}")


def cmd_table(args, config: RunConfig) -> int:
    try:
        with open(args.grid, "r", encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise WeierError(f"cannot read grid file {args.grid}: {exc}") from exc
    heights = [float(y) for y in args.Y.split(",") if y.strip()]
    if not heights:
        raise WeierError("--Y must list at least one height")
    heights.sort()
    rows = []
    any_error = False
    idx = 0
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            form = _parse_grid_line(line, lineno)
        except (WeierError, ValueError) as exc:
            any_error = True
            rows.append(
                {
                    "id": f"row-{idx:03d}",
                    "inputs": {"line": line},
                    "value": None,
                    "error": None,
                    "bound": None,
                    "status": "error",
                    "detail": str(exc),
                }
            )
            idx += 1
            continue
        for y in heights:
            try:
                rep = cusp_report(form, y, config.tolerance, slack=config.slack)
            except WeierError as exc:
                any_error = True
                rows.append(
                    {
                        "id": f"row-{idx:03d}",
                        "inputs": {"form": form.describe(), "Y": y},
                        "value": None,
                        "error": None,
                        "bound": None,
                        "status": "error",
                        "detail": str(exc),
                    }
                )
                idx += 1
                continue
            rows.append(
                {
                    "id": f"row-{idx:03d}",
                    "inputs": {
                        "form": rep.label,
                        "Y": y,
                        "closed": format_complex(rep.closed_form),
                        "residual": rep.residual,
                    },
                    "value": rep.numeric.value,
                    "error": rep.numeric.error,
                    "bound": rep.numeric.error + rep.slack,
                    "status": "pass" if rep.valid else "fail",
                }
            )
            idx += 1
    _emit("table", config, rows)
    failed = any(r["status"] != "pass" for r in rows)
    return 1 if (any_error or failed) else 0


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=None, help="seed for the property harness")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None, dest="output_format")
    common.add_argument("--convention", choices=("paper-b", "standard-c"), default=None)
    common.add_argument("--route", choices=("auto", "shell", "series"), default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker pool size for suites")
    common.add_argument("--shell-cap", type=int, default=None, dest="shell_cap")
    common.add_argument("--slack", type=float, default=None, help="cusp-limit slack for tables")
    common.add_argument("--config", default=None, help="key=value config file")

    parser = argparse.ArgumentParser(
        prog="weierforms",
        description="Certified lattice-function evaluation and modular-form verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate one value")
    p_eval.add_argument("what", choices=("f", "g", "h", "hU", "wp", "wzeta"))
    p_eval.add_argument("--s", default=None, help="rational label part, e.g. 1/2")
    p_eval.add_argument("--t", default=None, help="rational label part, e.g. 1/3")
    p_eval.add_argument("--r", type=int, default=None, help="integer multiplier for h")
    p_eval.add_argument("--u", action="append", default=None, help="hU label 's,t' (repeatable)")
    p_eval.add_argument("--tau", default=None, help="period ratio, e.g. 10i or 0.5+2i")
    p_eval.add_argument("--omega1", default=None)
    p_eval.add_argument("--omega2", default=None)
    p_eval.add_argument("--z", default=None, help="evaluation point for wp/wzeta")
    p_eval.set_defaults(handler=cmd_eval)

    p_verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    p_verify.set_defaults(handler=cmd_verify)

    p_table = sub.add_parser("table", parents=[common], help="cusp-value table for a label grid")
    p_table.add_argument("--grid", required=True, help="file with lines 'f s t' or 'h s t r'")
    p_table.add_argument("--Y", default="20", help="comma-separated heights, e.g. 5,10,20")
    p_table.set_defaults(handler=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = None
    try:
        overrides = {
            "tolerance": args.tol,
            "seed": args.seed,
            "output_format": args.output_format,
            "convention": args.convention,
            "route": args.route,
            "jobs": args.jobs,
            "shell_cap": args.shell_cap,
            "slack": args.slack,
        }
        config = load_config(args.config, overrides)
        return args.handler(args, config)
    except WeierError as exc:
        _error_record(args.command, config, exc)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
