"""Batch front door: parse flags/config, dispatch, emit CSV or JSON tables.

Grammar:

    subbergman <subcommand> --symbol S [--N int] [--M int] [--n list]
               [--g spec] [--g-degree int] [--r real] [--k int]
               [--out path] [--format csv|json] [--seed int]
               [--config path] [--threads int]

Subcommands: verify, norms, density, moments, kernel.  A TOML config file
may supply any of the keyed values; explicit flags win.  Identical configs
(seed included) produce byte-identical output.  Exit codes: 0 success,
1 check/numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import moments, operators, spaces, symbols, verify
from .errors import NotContractive, ParseError, SubBergmanError, UsageError
from .symbols import BlaschkeSymbol, PolynomialVector, parse_complex, parse_symbol

SUBCOMMANDS = ("verify", "norms", "density", "moments", "kernel")

_DEFAULTS = dict(N=48, M=64, n_values=(2, 4, 8, 16), g=None, g_degree=40,
                 r=0.5, k=12, output_path=None, format="csv",
                 seed=verify.DEFAULT_SEED, threads=1)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    symbol: str
    N: int = 48
    M: int = 64
    n_values: tuple = (2, 4, 8, 16)
    g: str = None
    g_degree: int = 40
    r: float = 0.5
    k: int = 12
    output_path: str = None
    format: str = "csv"
    seed: int = verify.DEFAULT_SEED
    threads: int = 1

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if not self.symbol:
            raise UsageError("--symbol is required")
        if self.N < 1 or self.M < 1:
            raise UsageError("sizes N and M must be positive")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        object.__setattr__(self, "n_values",
                           tuple(sorted(int(n) for n in self.n_values)))
        if any(n < 0 for n in self.n_values):
            raise UsageError("every n must be nonnegative")


def load_config(path: str, subcommand: str = None) -> RunConfig:
    """Build a RunConfig from a TOML file; an explicit subcommand wins over
    the file's, and missing subcommand anywhere is a usage error."""
    values = _read_config_file(path)
    sub = subcommand or values.pop("subcommand", None)
    values.pop("subcommand", None)
    if not sub:
        raise UsageError(f"config {path!r} does not name a subcommand")
    merged = dict(_DEFAULTS, symbol=None)
    merged.update(values)
    try:
        return RunConfig(subcommand=sub, **merged)
    except TypeError as exc:
        raise UsageError(f"bad config key: {exc}") from exc


def _read_config_file(path):
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    rename = {"n": "n_values", "out": "output_path"}
    out = {}
    for key, value in raw.items():
        out[rename.get(key, key)] = value
    if isinstance(out.get("n_values"), str):
        out["n_values"] = _parse_n_list(out["n_values"])
    return out


def _parse_n_list(text):
    try:
        return tuple(int(part) for part in str(text).split(",") if part.strip())
    except ValueError as exc:
        raise UsageError(f"bad --n list {text!r}") from exc


def parse_generator(spec: str, degree: int) -> PolynomialVector:
    """Build a test polynomial from ``geom:q`` (truncated 1/(1-qz)) or
    ``poly:c0,c1,...`` text."""
    head, sep, body = spec.strip().partition(":")
    if not sep:
        raise UsageError(f"generator {spec!r} lacks a 'kind:' prefix")
    if head == "geom":
        q = parse_complex(body)
        return PolynomialVector(q ** np.arange(degree + 1))
    if head == "poly":
        return PolynomialVector([parse_complex(p) for p in body.split(",")])
    raise UsageError(f"unknown generator kind {head!r}")


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="subbergman",
        description="finite-section computations in sub-Bergman spaces")
    subs = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = subs.add_parser(name)
        sp.add_argument("--symbol", help="symbol text, e.g. poly:0,1")
        sp.add_argument("--N", type=int, help="operator section size")
        sp.add_argument("--M", type=int, help="weighted Gram size")
        sp.add_argument("--n", help="comma separated list of cutoffs")
        sp.add_argument("--g", help="target generator, geom:q or poly:...")
        sp.add_argument("--g-degree", type=int, dest="g_degree",
                        help="truncation degree for the generator")
        sp.add_argument("--r", type=float, help="radius parameter")
        sp.add_argument("--k", type=int, help="max monomial degree / sample degree")
        sp.add_argument("--out", dest="output_path", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"))
        sp.add_argument("--seed", type=int)
        sp.add_argument("--config", help="TOML file with the same keys")
        sp.add_argument("--threads", type=int,
                        help="reserved for data-parallel assembly; outputs unaffected")
    return parser


def config_from_args(args) -> RunConfig:
    file_values = _read_config_file(args.config) if args.config else {}
    merged = dict(_DEFAULTS, symbol=None)
    merged.update({k: v for k, v in file_values.items() if k != "subcommand"})
    for key in ("symbol", "N", "M", "g", "g_degree", "r", "k",
                "output_path", "format", "seed", "threads"):
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    if getattr(args, "n", None) is not None:
        merged["n_values"] = _parse_n_list(args.n)
    if getattr(args, "threads", None) is None and "SUBBERGMAN_THREADS" in os.environ:
        try:
            merged["threads"] = int(os.environ["SUBBERGMAN_THREADS"])
        except ValueError as exc:
            raise UsageError("SUBBERGMAN_THREADS must be an integer") from exc
    try:
        return RunConfig(subcommand=args.subcommand, **merged)
    except TypeError as exc:
        raise UsageError(f"bad config key: {exc}") from exc


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, complex):
        return symbols.format_complex(value)
    return str(value)


def _fmt_params(params: dict) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in params.items())


def _write_table(config: RunConfig, header, rows, json_records):
    """Emit the same records as CSV (string cells, 17 significant digits)
    or JSON, to the output path or stdout."""
    if config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(cell) for cell in row])
        text = buf.getvalue()
    else:
        text = json.dumps(json_records, indent=2, default=_fmt) + "\n"
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _run_verify(config: RunConfig) -> int:
    b = parse_symbol(config.symbol)
    tolerances = verify.ToleranceConfig(section_size=config.N, gram_size=config.M,
                                        seed=config.seed)
    reports = verify.run_all(tolerances, [b])
    header = ["check", "symbol", "parameters", "measured", "bound_or_target", "passed"]
    rows = [[rep.check_name, rep.symbol, _fmt_params(rep.parameters),
             rep.measured, rep.bound_or_target, rep.passed] for rep in reports]
    records = [{"check": rep.check_name, "symbol": rep.symbol,
                "parameters": {k: _fmt(v) for k, v in rep.parameters.items()},
                "measured": rep.measured,
                "bound_or_target": rep.bound_or_target,
                "passed": rep.passed} for rep in reports]
    _write_table(config, header, rows, records)
    return 0 if all(rep.passed for rep in reports) else 1


def _run_norms(config: RunConfig) -> int:
    b = parse_symbol(config.symbol)
    header = ["symbol", "space", "degree", "norm", "residual", "N"]
    rows = []
    if isinstance(b, BlaschkeSymbol):
        gram = spaces.gram_Ab2(b, config.M)
        rows_out = config.M + 32
        for k in range(config.k + 1):
            f = PolynomialVector.monomial(k)
            g = spaces.sb_preimage(b, f, config.M)
            norm = spaces.norm_Ab2(g, gram)
            back = spaces.apply_sb(b, g, out_degree=rows_out - 1)
            residual = float(np.max(np.abs(back.padded(rows_out) - f.padded(rows_out))))
            rows.append([config.symbol, "A(bbar)", k, norm, residual, config.M])
    else:
        for tag, section in (("A(b)", operators.defect_b(b, config.N)),
                             ("A(bbar)", operators.defect_bbar(b, config.N))):
            fac = operators.psd_sqrt(section)
            for k in range(config.k + 1):
                res = operators.range_norm(fac, PolynomialVector.monomial(k))
                rows.append([config.symbol, tag, k, res.norm, res.residual, config.N])
    records = [dict(zip(header, row)) for row in rows]
    _write_table(config, header, rows, records)
    return 0


def _run_density(config: RunConfig) -> int:
    b = parse_symbol(config.symbol)
    g = parse_generator(config.g or "geom:0.5", config.g_degree)
    report = spaces.density_approximate(b, g, config.n_values, size=config.M)
    header = ["n", "error", "tail_max", "degree_of_p"]
    rows = [[step.n, step.error, step.tail_max, step.p.degree] for step in report.steps]
    records = [{"n": step.n, "error": step.error, "tail_max": step.tail_max,
                "degree_of_p": step.p.degree,
                "h": [[c.real, c.imag] for c in step.h.coeffs],
                "p": [[c.real, c.imag] for c in step.p.coeffs]} for step in report.steps]
    _write_table(config, header, rows, records)
    return 0


def _run_moments(config: RunConfig) -> int:
    b = parse_symbol(config.symbol)
    matrix = moments.weighted_moments(b, config.N)
    if config.format == "json":
        _write_table(config, [], [], matrix.to_jsonable())
        return 0
    header = ["j", "k", "re", "im"]
    rows = [[j, k, matrix.entries[j, k].real, matrix.entries[j, k].imag]
            for j in range(config.N) for k in range(config.N)]
    _write_table(config, header, rows, None)
    return 0


def _run_kernel(config: RunConfig) -> int:
    b = parse_symbol(config.symbol)
    rng = np.random.default_rng(config.seed)
    qdeg = min(config.k, config.M - 1)
    q = PolynomialVector(rng.uniform(size=qdeg + 1) + 1j * rng.uniform(size=qdeg + 1))
    header = ["symbol", "w_re", "w_im", "q_degree", "gap"]
    rows = []
    for _ in range(12):
        radius = min(config.r, 0.9) * np.sqrt(rng.uniform())
        w = radius * np.exp(2j * np.pi * rng.uniform())
        gap = spaces.pointwise_identity_check(b, q, w, config.M)
        rows.append([config.symbol, float(w.real), float(w.imag), qdeg, gap])
    records = [dict(zip(header, row)) for row in rows]
    _write_table(config, header, rows, records)
    return 0


_RUNNERS = {"verify": _run_verify, "norms": _run_norms, "density": _run_density,
            "moments": _run_moments, "kernel": _run_kernel}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        config = config_from_args(args)
        return _RUNNERS[config.subcommand](config)
    except (UsageError, ParseError, NotContractive) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except SubBergmanError as exc:
        print(f"subbergman.{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
