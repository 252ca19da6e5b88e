"""Command-line front end: spectrum/screening tables as CSV or JSON, nodal
counts, critical zeros, the bifurcation angle, verdicts and SVG plots.

Exit codes: 0 success, 2 validation error, 3 unstable nodal count.
"""

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .alcove_geometry import DomainKind
from .lattice_spectrum import Mode, enumerate_spectrum
from .nodal_analysis import (bifurcation_angle, count_nodal_domains,
                             courant_sharp_verdict, edge_critical_zeros,
                             median_fixed_points)
from .pleijel_screening import (_ratio_applies, faber_krahn_threshold,
                                index_cutoff, screening_summary,
                                screening_table)
from .eigenfunction_eval import EigenfunctionHandle

CSV_HEADER = "normalized,min_index,max_index,multiplicity,ratio"


@dataclass
class RunConfig:
    command: str
    domain: Optional[DomainKind] = None
    mode: Optional[Mode] = None
    theta: float = 0.0
    count: int = 85
    resolution: int = 512
    output_path: Optional[str] = None
    format: str = "csv"
    stamp: bool = False


def format_ratio(x: float) -> str:
    """Fixed-point representation with 10 significant digits."""
    if x == 0.0:
        return "0.000000000"
    decimals = max(0, 9 - int(math.floor(math.log10(abs(x)))))
    return f"{x:.{decimals}f}"


def parse_theta(text: str) -> float:
    text = text.strip()
    if text == "theta_c":
        return bifurcation_angle()[1]
    if text.startswith("pi/"):
        return math.pi / int(text[3:])
    return float(text)


def parse_pair(text: str) -> Mode:
    m, n = (int(v) for v in text.split(","))
    return Mode(m, n)


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w") as fh:
            fh.write(text)
        if config.stamp:
            stamp = {"written_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                     "command": config.command}
            with open(config.output_path + ".stamp.json", "w") as fh:
                json.dump(stamp, fh, indent=2)
                fh.write("\n")
    else:
        sys.stdout.write(text)


def _spectrum_rows(config: RunConfig):
    for e in enumerate_spectrum(config.domain, config.count):
        ratio = (format_ratio(e.normalized / e.min_index)
                 if _ratio_applies(config.domain, e.min_index) else "")
        yield e, ratio


def run_spectrum(config: RunConfig) -> int:
    if config.format == "json":
        rows = [{"normalized": e.normalized, "min_index": e.min_index,
                 "max_index": e.max_index, "multiplicity": e.multiplicity,
                 "ratio": ratio or None} for e, ratio in _spectrum_rows(config)]
        _emit(config, json.dumps(rows, indent=2) + "\n")
    else:
        lines = [CSV_HEADER]
        for e, ratio in _spectrum_rows(config):
            lines.append(f"{e.normalized},{e.min_index},{e.max_index},"
                         f"{e.multiplicity},{ratio}")
        _emit(config, "\n".join(lines) + "\n")
    return 0


def run_screen(config: RunConfig) -> int:
    if config.format == "json":
        s = screening_summary(config.domain)
        out = {"domain": config.domain.value, "index_cutoff": s.index_cutoff,
               "threshold": s.threshold, "candidates": s.candidates}
        _emit(config, json.dumps(out, indent=2) + "\n")
    else:
        lines = [CSV_HEADER]
        for r in screening_table(config.domain):
            ratio = format_ratio(r.ratio) if r.ratio_applies else ""
            lines.append(f"{r.normalized},{r.min_index},{r.max_index},"
                         f"{r.multiplicity},{ratio}")
        _emit(config, "\n".join(lines) + "\n")
    return 0


def run_verdict(config: RunConfig) -> int:
    verdict = courant_sharp_verdict(config.domain)
    out = {"domain": config.domain.value,
           "verdict": [[n, sharp] for n, sharp in verdict],
           "sharp": [n for n, sharp in verdict if sharp]}
    _emit(config, json.dumps(out, indent=2) + "\n")
    return 0


def run_nodal(config: RunConfig) -> int:
    h = EigenfunctionHandle(config.domain, config.mode, config.theta)
    report = count_nodal_domains(h, config.resolution)
    out = {"domain": config.domain.value, "m": config.mode.m, "n": config.mode.n,
           "theta": config.theta, "resolution": report.resolution,
           "domain_count": report.domain_count,
           "positive_components": report.positive_components,
           "negative_components": report.negative_components,
           "stable": report.stable}
    _emit(config, json.dumps(out, indent=2) + "\n")
    return 0 if report.stable else 3


def run_critical_zeros(config: RunConfig) -> int:
    zeros = edge_critical_zeros(config.mode, config.theta)
    out = [{"edge": z.edge_or_median, "u": z.parameter_u, "order": z.order,
            "s": z.location.s, "t": z.location.t} for z in zeros]
    _emit(config, json.dumps(out, indent=2) + "\n")
    return 0


def run_fixed_points(config: RunConfig) -> int:
    out = [{"label": f.label, "s": f.location.s, "t": f.location.t}
           for f in median_fixed_points(config.mode)]
    _emit(config, json.dumps(out, indent=2) + "\n")
    return 0


def run_bifurcation(config: RunConfig) -> int:
    u_b, theta_c = bifurcation_angle()
    _emit(config, json.dumps({"u_b": u_b, "theta_c": theta_c}, indent=2) + "\n")
    return 0


def run_plot(config: RunConfig) -> int:
    from .svg_export import render_nodal_svg
    h = EigenfunctionHandle(config.domain, config.mode, config.theta)
    _emit(config, render_nodal_svg(h, config.resolution))
    return 0


_COMMANDS = {
    "spectrum": run_spectrum,
    "screen": run_screen,
    "verdict": run_verdict,
    "nodal": run_nodal,
    "critical-zeros": run_critical_zeros,
    "fixed-points": run_fixed_points,
    "bifurcation": run_bifurcation,
    "plot": run_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="courant-lab",
        description="Spectral screening and nodal-domain analysis for the "
                    "equilateral torus and the alcove triangles.")
    sub = parser.add_subparsers(dest="command", required=True)
    domains = [d.value for d in DomainKind]

    def add(name, *, domain=False, pair=False, theta=False, fmt=False,
            count=False, resolution=False):
        p = sub.add_parser(name)
        if domain:
            p.add_argument("--domain", required=True, choices=domains)
        if pair:
            p.add_argument("--pair", required=True,
                           help="mode pair, e.g. 2,3")
        if theta:
            p.add_argument("--theta", default="0",
                           help="radians, or pi/<k>, or theta_c")
        if fmt:
            p.add_argument("--format", default="csv", choices=["csv", "json"])
        if count:
            p.add_argument("--count", type=int, default=85)
        if resolution:
            p.add_argument("--resolution", type=int, default=512)
        p.add_argument("--out", default=None)
        p.add_argument("--stamp", action="store_true")
        return p

    add("spectrum", domain=True, fmt=True, count=True)
    add("screen", domain=True, fmt=True)
    add("verdict", domain=True)
    add("nodal", domain=True, pair=True, theta=True, resolution=True)
    add("critical-zeros", pair=True, theta=True)
    add("fixed-points", pair=True)
    add("bifurcation")
    add("plot", domain=True, pair=True, theta=True, resolution=True)
    return parser


def config_from_args(args) -> RunConfig:
    config = RunConfig(command=args.command)
    if getattr(args, "domain", None):
        config.domain = DomainKind(args.domain)
    if getattr(args, "pair", None):
        config.mode = parse_pair(args.pair)
    if getattr(args, "theta", None) is not None:
        config.theta = parse_theta(args.theta)
    if getattr(args, "count", None) is not None:
        config.count = args.count
    if getattr(args, "resolution", None) is not None:
        config.resolution = args.resolution
        if config.resolution < 64:
            raise ValueError("resolution must be >= 64")
    if getattr(args, "format", None):
        config.format = args.format
    config.output_path = getattr(args, "out", None)
    config.stamp = getattr(args, "stamp", False)
    return config


def run(config: RunConfig) -> int:
    try:
        return _COMMANDS[config.command](config)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    threads = os.environ.get("COURANT_LAB_THREADS")
    if threads:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, threads)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
