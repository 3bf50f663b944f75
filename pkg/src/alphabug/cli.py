"""Command-line front end.

Subcommands: ``spectrum`` (one bug, one alpha), ``sweep`` (alpha grid),
``scan`` (spectral radius across path splits), ``verify`` (oracle grid),
and ``batch`` (newline-delimited results for a JSON array of jobs).

Output is deterministic: fixed field order, floats rendered at 12
significant digits, LF line endings.  Timings are opt-in (``--timings``)
precisely so that the default output of a given job is byte-identical
across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .eigensolve import (
    DEFAULT_CONFIG,
    ConvergenceError,
    SolveConfig,
    jacobi_eigenvalues,
    tridiag_eigenvalues,
)
from .graphs import BugSpec, assemble_dense_alpha, check_alpha
from .spectrum import DENSE, Spectrum
from .structured import bug_spectrum, bug_tridiagonal, halved_tridiagonal
from .verify import DEFAULT_ALPHAS, compare_spectra, extremal_scan, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

ENV_TOL = "ALPHA_BUG_SOLVE_TOL"
COMPARE_TOL = 1e-8

_METHODS = ("structured", "dense", "halved", "all")
_FORMATS = ("json", "csv")
_COMMANDS = ("spectrum", "sweep", "scan", "verify")


@dataclass(frozen=True)
class JobConfig:
    """One fully validated unit of work, shared by the CLI and batch mode."""

    command: str
    bug: BugSpec | None = None
    input_form: str | None = None
    n: int | None = None
    d: int | None = None
    alpha: float | None = None
    alphas: tuple[float, ...] | None = None
    method: str = "structured"
    fmt: str = "json"
    output: str | None = None
    timings: bool = False
    max_n: int = 12
    tol: float = COMPARE_TOL


def _resolve_bug(n, d, i, p, q, r) -> tuple[BugSpec, str]:
    ndi = (n, d, i)
    pqr = (p, q, r)
    if all(v is not None for v in ndi) and not any(v is not None for v in pqr):
        return BugSpec.from_ndi(n, d, i), "ndi"
    if all(v is not None for v in pqr) and not any(v is not None for v in ndi):
        return BugSpec.from_pqr(p, q, r), "pqr"
    raise ValueError(
        "provide exactly one complete parameter triple: --n/--d/--i or --p/--q/--r"
    )


def _parse_alpha_list(text: str) -> tuple[float, ...]:
    parts = [s for s in (piece.strip() for piece in text.split(",")) if s]
    alphas = tuple(check_alpha(float(s)) for s in parts)
    if not alphas:
        raise ValueError("alpha list is empty")
    return alphas


def config_from_env(environ=None) -> SolveConfig:
    """Default solver tolerances, overridden by ALPHA_BUG_SOLVE_TOL if set."""
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_TOL)
    if raw is None:
        return DEFAULT_CONFIG
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_TOL} must be a number, got {raw!r}") from None
    return replace(
        DEFAULT_CONFIG, bisection_tol=tol, jacobi_off_tol=tol, power_tol=tol
    )


# ---------------------------------------------------------------------------
# payload builders (plain dicts with a fixed key order)


def _bug_echo(bug: BugSpec, input_form: str) -> dict:
    return {
        "input_form": input_form,
        "n": bug.n,
        "d": bug.d,
        "i": bug.q,
        "p": bug.p,
        "q": bug.q,
        "r": bug.r,
    }


def _closed_form(bug: BugSpec, alpha: float) -> dict | None:
    mult = bug.n - bug.d - 1
    if mult < 1:
        return None
    return {"value": (bug.n - bug.d + 2) * alpha - 1.0, "multiplicity": mult}


def _cmd_spectrum(cfg: JobConfig, solve: SolveConfig) -> dict:
    bug, alpha, method = cfg.bug, cfg.alpha, cfg.method
    started = time.perf_counter()
    closed = _closed_form(bug, alpha)
    quotient = None
    dense_entries = None
    verification = None
    if method in ("structured", "all"):
        quotient = tridiag_eigenvalues(bug_tridiagonal(bug, alpha), solve).tolist()
        rho = quotient[-1]
    if method == "halved":
        if bug.d % 2 != 0 or bug.d < 4 or bug.i != bug.d // 2:
            raise ValueError(
                "method=halved needs a balanced bug of even diameter >= 4 "
                f"(got d={bug.d}, i={bug.i})"
            )
        quotient = tridiag_eigenvalues(
            halved_tridiagonal(bug.n, bug.d, alpha), solve
        ).tolist()
        rho = quotient[-1]
    if method in ("dense", "all"):
        w = assemble_dense_alpha(bug.to_hjoin(), alpha)
        dense_values = jacobi_eigenvalues(w, solve)
        if method == "dense":
            radius = 1e-7 * max(1.0, float(dense_values[-1]))
            clustered = Spectrum.from_values(dense_values, DENSE, radius)
            dense_entries = [
                {"value": e.value, "multiplicity": e.multiplicity}
                for e in clustered.entries
            ]
            rho = float(dense_values[-1])
            closed = None
        else:
            report = compare_spectra(bug_spectrum(bug, alpha, solve), dense_values, cfg.tol)
            verification = {
                "matched": report.matched,
                "max_abs_deviation": report.max_abs_deviation,
                "tolerance": cfg.tol,
            }
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    echo = _bug_echo(bug, cfg.input_form)
    echo["alpha"] = alpha
    return {
        "input": echo,
        "method": method,
        "closed_form": closed,
        "quotient_eigenvalues": quotient,
        "rho": rho,
        "dense_spectrum": dense_entries,
        "timings_ms": elapsed_ms if cfg.timings else None,
        "verification": verification,
    }


def _cmd_sweep(cfg: JobConfig, solve: SolveConfig) -> dict:
    bug = cfg.bug
    rows = []
    for alpha in cfg.alphas:
        quotient = tridiag_eigenvalues(bug_tridiagonal(bug, alpha), solve)
        closed = _closed_form(bug, alpha)
        rows.append(
            {
                "alpha": alpha,
                "rho": float(quotient[-1]),
                "closed_form": None if closed is None else closed["value"],
                "closed_mult": 0 if closed is None else closed["multiplicity"],
                "min_quotient": float(quotient[0]),
            }
        )
    echo = _bug_echo(bug, cfg.input_form)
    echo["alphas"] = list(cfg.alphas)
    return {"input": echo, "method": "structured", "rows": rows}


def _cmd_scan(cfg: JobConfig, solve: SolveConfig) -> dict:
    rows = extremal_scan(cfg.n, cfg.d, cfg.alpha, solve)
    return {
        "input": {"n": cfg.n, "d": cfg.d, "alpha": cfg.alpha},
        "rows": [
            {"i": row.i, "rho": row.rho, "is_argmax": row.is_argmax} for row in rows
        ],
        "argmax_i": next(row.i for row in rows if row.is_argmax),
    }


def _cmd_verify(cfg: JobConfig, solve: SolveConfig) -> dict:
    alphas = cfg.alphas if cfg.alphas is not None else DEFAULT_ALPHAS
    summary = run_verification(cfg.max_n, alphas, cfg.tol, solve)
    return {
        "input": {"max_n": cfg.max_n, "alphas": list(alphas), "tolerance": cfg.tol},
        "summary": {
            "instances": summary.instances,
            "checks_run": summary.checks_run,
            "checks_passed": summary.checks_passed,
            "checks_failed": summary.checks_failed,
            "worst_deviation": summary.worst_deviation,
            "ok": summary.ok,
        },
        "failures": list(summary.failures),
    }


def run_job(cfg: JobConfig, solve: SolveConfig) -> tuple[dict, int]:
    """Execute one job; returns (payload, exit code)."""
    if cfg.command == "spectrum":
        return _cmd_spectrum(cfg, solve), EXIT_OK
    if cfg.command == "sweep":
        return _cmd_sweep(cfg, solve), EXIT_OK
    if cfg.command == "scan":
        return _cmd_scan(cfg, solve), EXIT_OK
    if cfg.command == "verify":
        payload = _cmd_verify(cfg, solve)
        return payload, EXIT_OK if payload["summary"]["ok"] else EXIT_VERIFY_FAILED
    raise ValueError(f"unknown command {cfg.command!r}")


# ---------------------------------------------------------------------------
# rendering


def _round12(x: float) -> float:
    if x == 0.0:
        return 0.0
    return float(f"{x:.12g}")


def _jsonable(obj):
    """Deep-copy a payload into plain JSON types with 12-digit floats."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round12(float(obj))
    return obj


def render_json(payload: dict) -> str:
    return json.dumps(_jsonable(payload), indent=2) + "\n"


def _fmt_num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt_num(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_csv(command: str, payload: dict) -> str:
    if command == "spectrum":
        rows = []
        for v in payload["quotient_eigenvalues"] or []:
            rows.append([v, 1, "quotient"])
        closed = payload["closed_form"]
        if closed is not None:
            rows.append([closed["value"], closed["multiplicity"], "closed-form"])
        for entry in payload["dense_spectrum"] or []:
            rows.append([entry["value"], entry["multiplicity"], "dense"])
        rows.sort(key=lambda row: float(row[0]))
        return _csv(["value", "multiplicity", "source"], rows)
    if command == "sweep":
        rows = [
            [r["alpha"], r["rho"], r["closed_form"], r["closed_mult"]]
            for r in payload["rows"]
        ]
        return _csv(["alpha", "rho", "closed_form", "closed_mult"], rows)
    if command == "scan":
        rows = [[r["i"], r["rho"], r["is_argmax"]] for r in payload["rows"]]
        return _csv(["i", "rho", "is_argmax"], rows)
    if command == "verify":
        s = payload["summary"]
        row = [
            s["instances"],
            s["checks_run"],
            s["checks_passed"],
            s["checks_failed"],
            s["worst_deviation"],
            s["ok"],
        ]
        header = [
            "instances",
            "checks_run",
            "checks_passed",
            "checks_failed",
            "worst_deviation",
            "ok",
        ]
        return _csv(header, [row])
    raise ValueError(f"no CSV renderer for command {command!r}")


def render(cfg: JobConfig, payload: dict) -> str:
    if cfg.fmt == "json":
        return render_json(payload)
    return render_csv(cfg.command, payload)


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _add_bug_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, help="order of the bug")
    sub.add_argument("--d", type=int, help="diameter of the bug")
    sub.add_argument("--i", type=int, help="path split (first path length)")
    sub.add_argument("--p", type=int, help="clique order before edge removal")
    sub.add_argument("--q", type=int, help="first attached path length")
    sub.add_argument("--r", type=int, help="second attached path length")


def _add_output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=_FORMATS, default="json", dest="fmt")
    sub.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphabug",
        description="Spectra of A_alpha matrices of bug graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="full spectrum of one bug at one alpha")
    _add_bug_args(sp)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--method", choices=_METHODS, default="structured")
    sp.add_argument(
        "--timings",
        action="store_true",
        help="include wall-clock milliseconds (makes output non-reproducible)",
    )
    _add_output_args(sp)

    sw = sub.add_parser("sweep", help="spectral radius over an alpha grid")
    _add_bug_args(sw)
    sw.add_argument("--alphas", required=True, help="comma-separated alphas in [0,1)")
    _add_output_args(sw)

    sc = sub.add_parser("scan", help="spectral radius across all path splits")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--d", type=int, required=True)
    sc.add_argument("--alpha", type=float, required=True)
    _add_output_args(sc)

    ve = sub.add_parser("verify", help="run the structured-vs-dense check grid")
    ve.add_argument("--max-n", type=int, default=12, dest="max_n")
    ve.add_argument("--alphas", default=None, help="comma-separated alphas in [0,1)")
    ve.add_argument("--tol", type=float, default=COMPARE_TOL)
    _add_output_args(ve)

    ba = sub.add_parser("batch", help="run a JSON array of jobs, one result per line")
    ba.add_argument("source", nargs="?", default="-", help="jobs file (default: stdin)")
    ba.add_argument("--output", default=None)
    return parser


def _config_from_namespace(ns: argparse.Namespace) -> JobConfig:
    command = ns.command
    if command == "spectrum":
        bug, form = _resolve_bug(ns.n, ns.d, ns.i, ns.p, ns.q, ns.r)
        return JobConfig(
            command,
            bug=bug,
            input_form=form,
            alpha=check_alpha(ns.alpha),
            method=ns.method,
            fmt=ns.fmt,
            output=ns.output,
            timings=ns.timings,
        )
    if command == "sweep":
        bug, form = _resolve_bug(ns.n, ns.d, ns.i, ns.p, ns.q, ns.r)
        return JobConfig(
            command,
            bug=bug,
            input_form=form,
            alphas=_parse_alpha_list(ns.alphas),
            fmt=ns.fmt,
            output=ns.output,
        )
    if command == "scan":
        return JobConfig(
            command,
            n=ns.n,
            d=ns.d,
            alpha=check_alpha(ns.alpha),
            fmt=ns.fmt,
            output=ns.output,
        )
    if command == "verify":
        alphas = None if ns.alphas is None else _parse_alpha_list(ns.alphas)
        if ns.tol <= 0.0:
            raise ValueError("tolerance must be positive")
        return JobConfig(
            command,
            alphas=alphas,
            max_n=ns.max_n,
            tol=ns.tol,
            fmt=ns.fmt,
            output=ns.output,
        )
    raise ValueError(f"unknown command {command!r}")


_BATCH_KEYS = {
    "command", "n", "d", "i", "p", "q", "r",
    "alpha", "alphas", "method", "timings", "max_n", "tol",
}


def job_from_dict(raw: dict) -> JobConfig:
    """Validate one batch entry.  Per-job format/output are rejected: batch
    results always go to the single newline-delimited JSON stream."""
    if not isinstance(raw, dict):
        raise ValueError("each batch entry must be a JSON object")
    unknown = set(raw) - _BATCH_KEYS
    if unknown:
        if unknown & {"format", "output"}:
            raise ValueError("per-job 'format'/'output' are not allowed in batch mode")
        raise ValueError(f"unknown batch keys: {sorted(unknown)}")
    command = raw.get("command")
    if command not in _COMMANDS:
        raise ValueError(f"batch command must be one of {_COMMANDS}, got {command!r}")
    get = raw.get
    if command in ("spectrum", "sweep"):
        bug, form = _resolve_bug(
            get("n"), get("d"), get("i"), get("p"), get("q"), get("r")
        )
    if command == "spectrum":
        method = get("method", "structured")
        if method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {method!r}")
        return JobConfig(
            command,
            bug=bug,
            input_form=form,
            alpha=check_alpha(get("alpha")),
            method=method,
            timings=bool(get("timings", False)),
        )
    if command == "sweep":
        alphas = get("alphas")
        if not isinstance(alphas, (list, tuple)) or not alphas:
            raise ValueError("sweep needs a non-empty 'alphas' list")
        return JobConfig(
            command,
            bug=bug,
            input_form=form,
            alphas=tuple(check_alpha(a) for a in alphas),
        )
    if command == "scan":
        n, d = get("n"), get("d")
        if n is None or d is None:
            raise ValueError("scan needs 'n' and 'd'")
        return JobConfig(command, n=int(n), d=int(d), alpha=check_alpha(get("alpha")))
    alphas = get("alphas")
    if alphas is not None:
        if not isinstance(alphas, (list, tuple)) or not alphas:
            raise ValueError("verify 'alphas' must be a non-empty list")
        alphas = tuple(check_alpha(a) for a in alphas)
    tol = float(get("tol", COMPARE_TOL))
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    return JobConfig(command, alphas=alphas, max_n=int(get("max_n", 12)), tol=tol)


def _run_batch(ns: argparse.Namespace, solve: SolveConfig) -> int:
    if ns.source == "-":
        text = sys.stdin.read()
    else:
        with open(ns.source, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        jobs = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"batch input is not valid JSON: {exc}") from None
    if not isinstance(jobs, list):
        raise ValueError("batch input must be a JSON array of job objects")
    lines = []
    worst = EXIT_OK
    for job_id, raw in enumerate(jobs):
        result = None
        error = None
        try:
            cfg = job_from_dict(raw)
            result, code = run_job(cfg, solve)
            if code == EXIT_VERIFY_FAILED:
                error = "verification reported failing checks"
        except ValueError as exc:
            code, error = EXIT_USAGE, str(exc)
        except ConvergenceError as exc:
            code, error = EXIT_SOLVER, str(exc)
        if worst == EXIT_OK and code != EXIT_OK:
            worst = code
        line = {
            "job_id": job_id,
            "status": "ok" if code == EXIT_OK else "error",
            "exit_code": code,
            "result": result,
            "error": error,
        }
        lines.append(json.dumps(_jsonable(line), separators=(",", ":")))
    _write_output(ns.output, "".join(line + "\n" for line in lines))
    return worst


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        solve = config_from_env()
        if ns.command == "batch":
            return _run_batch(ns, solve)
        cfg = _config_from_namespace(ns)
        payload, code = run_job(cfg, solve)
        _write_output(cfg.output, render(cfg, payload))
        return code
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
