"""
FracPolya command line.

    fracpolya interval --alpha 1 --length 2 --basis 256 --nmax 10 --format csv
    fracpolya disk --grid 0.01:2.0:0.01
    fracpolya square --thresholds-only
    fracpolya verify --suite all --output report.json
    fracpolya report --output-dir out/
    fracpolya cache inspect | clear

Exit codes: 0 success / pass, 1 numeric failure or failed suite, 2 usage error.
Every flag is validated before any computation starts.
"""

from __future__ import annotations

import argparse
import io
import logging
import math
import os
import sys
import traceback
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

from .__version__ import __version__
from .core.bounds import bk_upper_2d, check_alpha, dkk_upper_2d, dyda_upper_2d
from .core.defaultsConfig import (CLI_DEFAULTS, DEBUG_MODULES, VERDICT_DEFAULTS, debug_module,
                                  set_debug)
from .core.errors import DomainError, FracPolyaError, InputError
from .core.interval_solver import QuadratureSpec, ritz_upper_bounds
from .core.report_store import ReportStore, format_number, json_text, write_csv_stream
from .core.settings import get_settings_manager
from .core.stiffness_cache import StiffnessCacheManager, default_cache_dir, get_stiffness_cache
from .core.verdicts import (SUITES, SuiteRunner, VerdictReport, check_suite_settings,
                            disk_thresholds, polya_check_interval, square_thresholds,
                            two_sided_check_alpha1)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

GRID_TOL = 1e-12
FORMATS = ('plain', 'csv', 'json')


# ============================================================
# RUN CONFIG
# ============================================================

@dataclass
class RunConfig:
    command: str
    alpha: Optional[float] = None
    grid: List[float] = field(default_factory=list)
    L: float = 2.0
    N: int = 256
    nmax: int = 0
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    workers: int = 1
    margin: float = VERDICT_DEFAULTS['margin']
    tol: float = VERDICT_DEFAULTS['threshold_tol']
    fmt: str = 'plain'
    output: Optional[Path] = None
    output_dir: Optional[Path] = None
    cache_dir: Optional[Path] = None
    suite: str = 'all'
    thresholds_only: bool = False
    cache_action: str = 'inspect'

    def cache(self) -> Optional[StiffnessCacheManager]:
        return get_stiffness_cache(self.cache_dir) if self.cache_dir else None


def parse_grid(text: str) -> List[float]:
    """'lo:hi:step', both ends included within 1e-12."""
    parts = text.split(':')
    if len(parts) != 3:
        raise InputError(f"grid must look like lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as e:
        raise InputError(f"grid {text!r}: {e}") from e
    if not all(math.isfinite(v) for v in (lo, hi, step)) or step <= 0.0:
        raise InputError(f"grid {text!r}: step must be positive")
    if hi < lo - GRID_TOL:
        raise InputError(f"grid {text!r} is empty")
    count = int(math.floor((hi - lo + GRID_TOL) / step)) + 1
    grid = [lo + i * step for i in range(count)]
    return [round(a, 12) for a in grid]


def _cache_dir(args, settings) -> Optional[Path]:
    if getattr(args, 'no_cache', False):
        return None
    chosen = getattr(args, 'cache_dir', None) or settings['cache_dir'] or \
        os.environ.get(CLI_DEFAULTS['cache_env_var'])
    return Path(chosen).expanduser() if chosen else None


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge settings and flags; raises DomainError / InputError on bad values."""
    mgr = get_settings_manager()
    settings = mgr.load_settings(args.config)
    settings = mgr.apply_overrides(settings, {
        'basis': getattr(args, 'basis', None),
        'length': getattr(args, 'length', None),
        'abs_tol': getattr(args, 'abs_tol', None),
        'panel_nodes': getattr(args, 'panel_nodes', None),
        'workers': getattr(args, 'workers', None),
        'margin': getattr(args, 'margin', None),
        'threshold_tol': getattr(args, 'tol', None),
        'format': None if args.command == 'report' else getattr(args, 'format', None),
        'report_dir': getattr(args, 'output_dir', None),
    })
    if settings['format'] not in FORMATS:
        raise InputError(f"unknown format {settings['format']!r}")
    if settings['basis'] < 1:
        raise DomainError(f"basis must be positive, got {settings['basis']}")
    if not (settings['length'] > 0.0 and math.isfinite(settings['length'])):
        raise DomainError(f"length must be positive, got {settings['length']}")
    if settings['workers'] < 1:
        raise DomainError(f"workers must be positive, got {settings['workers']}")
    if not settings['margin'] > 0.0:
        raise DomainError(f"margin must be positive, got {settings['margin']}")
    quad = QuadratureSpec(panel_nodes=settings['panel_nodes'], abs_tol=settings['abs_tol'],
                          truncation_policy=settings['truncation_policy'],
                          max_doublings=settings['max_doublings'])
    config = RunConfig(
        command=args.command, L=float(settings['length']), N=int(settings['basis']),
        quad=quad, workers=int(settings['workers']), margin=float(settings['margin']),
        tol=float(settings['threshold_tol']), fmt=settings['format'],
        cache_dir=_cache_dir(args, settings),
    )
    if getattr(args, 'output', None):
        config.output = Path(args.output)

    if args.command == 'interval':
        config.alpha = check_alpha(args.alpha)
        trusted = config.N // 4
        config.nmax = trusted if args.nmax is None else args.nmax
        if not 1 <= config.nmax <= trusted:
            raise DomainError(f"nmax must lie in 1..N/4 = {trusted}, got {config.nmax}")
    elif args.command in ('disk', 'square'):
        config.grid = [check_alpha(a) for a in parse_grid(args.grid)]
        config.thresholds_only = args.thresholds_only
        if not 0.0 < config.tol <= 1e-3:
            raise DomainError(f"threshold tolerance must lie in (0, 1e-3], got {config.tol}")
    elif args.command == 'verify':
        config.suite = args.suite
        check_suite_settings(config.suite, config.N, config.L)
        if args.alpha is not None:
            config.alpha = check_alpha(args.alpha)
        if args.format is None:
            config.fmt = 'json'
    elif args.command == 'report':
        config.output_dir = Path(settings['report_dir'])
        config.fmt = 'json' if args.format == 'json' else 'plain'
    elif args.command == 'cache':
        config.cache_action = args.action
        chosen = args.cache_dir or settings['cache_dir']
        config.cache_dir = Path(chosen).expanduser() if chosen \
            else default_cache_dir()
    return config


# ============================================================
# OUTPUT
# ============================================================

def _plain_table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(header)] + [[format_number(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"


def _emit(config: RunConfig, text: str, stream: TextIO) -> None:
    if config.output is None:
        stream.write(text)
        return
    ReportStore(config.output.parent).write_text(config.output.name, text)


INTERVAL_HEADER = ("n", "lambda_hat", "polya_term", "deficit", "verdict")
THRESHOLD_HEADER = ("bound", "target", "alpha_star", "bracket_lo", "bracket_hi", "residual",
                    "iterations", "expected", "min_gap")


def _threshold_rows(results, never=None) -> List[Tuple]:
    rows = [(r.bound_name, r.target_name, r.alpha_star, r.bracket[0], r.bracket[1], r.residual,
             r.iterations, r.expected, None) for r in results]
    if never is not None:
        rows.append((never.bound_name, never.target_name, None, never.grid[0], never.grid[1],
                     None, None, None, never.min_gap))
    return rows


def _render(config: RunConfig, header, rows, extra: Optional[Tuple] = None,
            document: Optional[dict] = None) -> str:
    """Rows block, then (blank line) an optional second block."""
    if config.fmt == 'json':
        return json_text(document)
    buf = io.StringIO()
    blocks = [b for b in ((header, rows), extra) if b is not None and b[0] is not None]
    for i, (head, body) in enumerate(blocks):
        if i:
            buf.write("\n")
        if config.fmt == 'csv':
            write_csv_stream(buf, head, body)
        else:
            buf.write(_plain_table(head, body))
    return buf.getvalue()


# ============================================================
# COMMANDS
# ============================================================

def interval_rows(config: RunConfig):
    spectrum = ritz_upper_bounds(config.N, config.alpha, config.L, config.quad, config.cache(),
                                 config.workers)
    records = polya_check_interval(spectrum, config.margin)[:config.nmax]
    rows = [(r.n, r.estimate.value, r.polya, r.deficit, r.verdict.value) for r in records]
    return spectrum, records, rows


def cmd_interval(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    _, records, rows = interval_rows(config)
    report = VerdictReport("interval", {"alpha": config.alpha, "L": config.L, "N": config.N,
                                        "nmax": config.nmax, "margin": config.margin,
                                        "abs_tol": config.quad.abs_tol}, list(records))
    _emit(config, _render(config, INTERVAL_HEADER, rows, document=report.to_dict()), stream)
    return EXIT_OK


def _curve_rows(grid: Sequence[float], target: Callable[[float], float]) -> List[Tuple]:
    return [(a, bk_upper_2d(a), dkk_upper_2d(a), dyda_upper_2d(a), target(a)) for a in grid]


DISK_HEADER = ("alpha", "bk", "dkk", "dyda", "two_pow_alpha")
SQUARE_HEADER = ("alpha", "bk", "dkk", "dyda", "pi_pow_half_alpha")


def _curves_document(name: str, header, rows, thresholds, never=None) -> dict:
    return {
        "schema_version": CLI_DEFAULTS['schema_version'],
        "domain": name,
        "rows": [dict(zip(header, row)) for row in rows],
        "thresholds": [r.to_dict() for r in thresholds] + ([never.to_dict()] if never else []),
    }


def cmd_disk(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    thresholds = disk_thresholds(config.tol)
    rows = [] if config.thresholds_only else _curve_rows(config.grid, lambda a: 2.0 ** a)
    extra = (THRESHOLD_HEADER, _threshold_rows(thresholds))
    main = (None, None) if config.thresholds_only else (DISK_HEADER, rows)
    text = _render(config, *main, extra=extra,
                   document=_curves_document("unit_disk", DISK_HEADER, rows, thresholds))
    _emit(config, text, stream)
    return EXIT_OK


def cmd_square(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    thresholds, never = square_thresholds(config.tol)
    rows = [] if config.thresholds_only else \
        _curve_rows(config.grid, lambda a: math.pi ** (0.5 * a))
    extra = (THRESHOLD_HEADER, _threshold_rows(thresholds, never))
    main = (None, None) if config.thresholds_only else (SQUARE_HEADER, rows)
    text = _render(config, *main, extra=extra,
                   document=_curves_document("square", SQUARE_HEADER, rows, thresholds, never))
    _emit(config, text, stream)
    return EXIT_OK


def _summary_lines(report: VerdictReport, indent: str = "") -> List[str]:
    lines = [f"{indent}{report.suite}: {report.overall} ({len(report.records)} records)"]
    for record in report.records:
        if isinstance(record, VerdictReport):
            lines.extend(_summary_lines(record, indent + "  "))
    for record in report.failures():
        if not isinstance(record, VerdictReport):
            lines.append(f"{indent}  FAILED {record.to_dict()}")
    return lines


def cmd_verify(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    alphas = [config.alpha] if config.alpha is not None else VERDICT_DEFAULTS['suite_alphas']
    runner = SuiteRunner(config.N, config.L, config.quad, config.cache(), config.workers,
                         config.margin, alphas, config.tol)
    report = runner.run(config.suite)
    if config.fmt == 'json':
        text = json_text(report.to_dict())
    else:
        text = "\n".join(_summary_lines(report)) + "\n"
    _emit(config, text, stream)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _alpha_tag(alpha: float) -> str:
    return format(alpha, 'g')


def build_report(config: RunConfig) -> Tuple[Dict[str, Tuple], dict, str]:
    """(csv tables by file name, json document, markdown summary)."""
    grid = [check_alpha(a) for a in parse_grid(CLI_DEFAULTS['disk_grid'])]
    disk = disk_thresholds(config.tol)
    square, never = square_thresholds(config.tol)
    tables: Dict[str, Tuple] = {
        "disk_curves.csv": (DISK_HEADER, _curve_rows(grid, lambda a: 2.0 ** a)),
        "square_curves.csv": (SQUARE_HEADER, _curve_rows(grid, lambda a: math.pi ** (0.5 * a))),
        "thresholds.csv": (THRESHOLD_HEADER, _threshold_rows(disk + square, never)),
    }
    document = {
        "schema_version": CLI_DEFAULTS['schema_version'],
        "parameters": {"N": config.N, "L": config.L, "abs_tol": config.quad.abs_tol,
                       "margin": config.margin, "tol": config.tol},
        "thresholds": [r.to_dict() for r in disk + square] + [never.to_dict()],
        "interval": {},
    }
    lines = [
        "# FracPolya report",
        "",
        f"Version {__version__}; N = {config.N}, L = {format_number(config.L)}, "
        f"abs_tol = {format_number(config.quad.abs_tol)}.",
        "",
        "## Thresholds",
        "",
        "| Bound | Target | alpha* | Published |",
        "|-------|--------|--------|-----------|",
    ]
    for r in disk + square:
        lines.append(f"| {r.bound_name} | {r.target_name} | {r.alpha_star:.6f} | "
                     f"{r.expected if r.expected is not None else '-'} |")
    lines.append(f"| {never.bound_name} | {never.target_name} | none "
                 f"(min gap {never.min_gap:.3e}) | none |")
    lines += ["", "## Interval deficits", "",
              "| alpha | n | lambda_hat | polya_term | deficit | verdict |",
              "|-------|---|------------|------------|---------|---------|"]

    for alpha in CLI_DEFAULTS['report_alphas']:
        sub = RunConfig('interval', alpha=alpha, L=config.L, N=config.N, nmax=config.N // 4,
                        quad=config.quad, workers=config.workers, margin=config.margin,
                        cache_dir=config.cache_dir)
        spectrum, records, rows = interval_rows(sub)
        tables[f"interval_alpha{_alpha_tag(alpha)}.csv"] = (INTERVAL_HEADER, rows)
        document["interval"][_alpha_tag(alpha)] = [r.to_dict() for r in records]
        for r in records[:3]:
            lines.append(f"| {_alpha_tag(alpha)} | {r.n} | {r.estimate.value:.6f} | "
                         f"{r.polya:.6f} | {r.deficit:.3e} | {r.verdict.value} |")
        if alpha == 1.0:
            two_sided = two_sided_check_alpha1(spectrum)
            document["two_sided"] = two_sided.to_dict()
            lines += ["", f"Two-sided sum bound at alpha = 1: {two_sided.overall} "
                          f"({len(two_sided.records)} checks, upper side heuristic)", ""]
    lines.append("")
    return tables, document, "\n".join(lines)


def cmd_report(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    tables, document, markdown = build_report(config)
    store = ReportStore(config.output_dir)
    if config.fmt == 'json':
        written = [store.write_json("report.json", document)]
    else:
        written = [store.write_text("report.md", markdown)]
        written += [store.write_csv(name, header, rows) for name, (header, rows) in tables.items()]
    for path in written:
        stream.write(f"{path}\n")
    return EXIT_OK


def cmd_cache(config: RunConfig, stream: TextIO = sys.stdout) -> int:
    cache = StiffnessCacheManager(config.cache_dir)
    if config.cache_action == 'clear':
        stream.write(f"removed {cache.clear()} file(s) from {cache.cache_dir}\n")
        return EXIT_OK
    for header in cache.inspect():
        stream.write(f"alpha={header.alpha!r} L={header.L!r} N={header.N} "
                     f"abs_tol={header.abs_tol!r} panel_nodes={header.panel_nodes} "
                     f"sha256={header.checksum}\n")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig, TextIO], int]] = {
    'interval': cmd_interval,
    'disk': cmd_disk,
    'square': cmd_square,
    'verify': cmd_verify,
    'report': cmd_report,
    'cache': cmd_cache,
}


# ============================================================
# PARSER / ENTRY POINT
# ============================================================

def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument('--length', type=float, help="interval length L (default 2)")
    p.add_argument('--basis', type=int, help="trial space dimension N (default 256)")
    p.add_argument('--abs-tol', type=float, help="quadrature tolerance per matrix entry")
    p.add_argument('--panel-nodes', type=int, help="Gauss-Legendre nodes per panel")
    p.add_argument('--workers', type=int, help="assembly threads")
    p.add_argument('--margin', type=float, help="deficit margin for verdicts")
    p.add_argument('--cache-dir', help=f"stiffness cache directory "
                                       f"(or ${CLI_DEFAULTS['cache_env_var']})")
    p.add_argument('--no-cache', action='store_true', help="ignore the stiffness cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='fracpolya',
        description="Eigenvalue bounds for the fractional Laplacian and the Polya question.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('--config', help="key = value settings file")
    parser.add_argument('--debug', action='store_true', help="debug logging to stderr")
    parser.add_argument('--debug-modules',
                        help=f"comma list from {','.join(DEBUG_MODULES)} (implies --debug)")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('interval', help="Ritz upper bounds and Polya deficits on (0, L)")
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--nmax', type=int, help="rows to emit (default N/4)")
    p.add_argument('--format', choices=FORMATS)
    p.add_argument('--output', help="write to a file instead of stdout")
    _add_solver_flags(p)

    for name, text in (('disk', "closed-form lambda_1 bounds on the unit disk vs 2^alpha"),
                       ('square', "closed-form lambda_1 bounds on the square vs pi^(alpha/2)")):
        p = sub.add_parser(name, help=text)
        p.add_argument('--grid', default=CLI_DEFAULTS['disk_grid'], help="lo:hi:step")
        p.add_argument('--thresholds-only', action='store_true')
        p.add_argument('--tol', type=float, help="bisection tolerance")
        p.add_argument('--format', choices=FORMATS)
        p.add_argument('--output')

    p = sub.add_parser('verify', help="run verification suites")
    p.add_argument('--suite', choices=SUITES + ('all',), default='all')
    p.add_argument('--alpha', type=float, help="run the interval suites at this order only")
    p.add_argument('--tol', type=float)
    p.add_argument('--format', choices=('json', 'plain'))
    p.add_argument('--output')
    _add_solver_flags(p)

    p = sub.add_parser('report', help="write CSV curves, tables and a markdown summary")
    p.add_argument('--output-dir')
    p.add_argument('--format', choices=('md', 'json'))
    p.add_argument('--tol', type=float)
    _add_solver_flags(p)

    p = sub.add_parser('cache', help="inspect or clear the stiffness cache")
    p.add_argument('action', choices=('inspect', 'clear'))
    p.add_argument('--cache-dir')
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    modules = args.debug_modules.split(',') if args.debug_modules else None
    if args.debug or modules:
        logging.basicConfig(stream=sys.stderr, format="[fracpolya %(name)s] %(message)s")
        set_debug(True, [m.strip() for m in modules] if modules else None)


def main(argv: Optional[Sequence[str]] = None, stream: Optional[TextIO] = None) -> int:
    """Entry point; returns the exit code."""
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    _configure_logging(args)

    try:
        config = build_config(args)
    except (DomainError, InputError) as e:
        sys.stderr.write(f"fracpolya: error: {e}\n")
        return EXIT_USAGE

    debug_module('cli', f"{config.command}: N={config.N} L={config.L} fmt={config.fmt}")
    try:
        return COMMANDS[config.command](config, stream)
    except FracPolyaError as e:
        if args.debug:
            traceback.print_exc(file=sys.stderr)
        sys.stderr.write(f"fracpolya: {type(e).__name__}: {e}\n")
        return EXIT_FAILURE


__all__ = ["main", "build_parser", "build_config", "parse_grid", "RunConfig",
           "cmd_interval", "cmd_disk", "cmd_square", "cmd_verify", "cmd_report", "cmd_cache"]
