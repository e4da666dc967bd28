"""Command-line front end: build, validate, compare-gs, preset.

Exit codes:
    0  success
    1  validation or alignment check failed
    2  config error (bad YAML, unknown key, bad expression, unknown preset)
    3  build failure or dependent Gram-Schmidt input
    4  I/O error
"""

import argparse
import csv
import functools
import logging
import math
import os
import sys
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from src.analysis import inner, norm
from src.cli.presets import PRESETS
from src.errors import BuildError, ConfigError, DependentInput, ExpressionError, WronskiError
from src.models import ComparisonRow, ConfigFile, Manifest
from src.orthogonalize import OrthoSystem, build_system, gram_schmidt
from src.parsers import ConfigParser
from src.validate import default_grid, perturb_system, validate_system

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_BUILD = 3
EXIT_IO = 4

ALIGNMENT_TOL = 1e-8


def _fail(code: int, message: str) -> int:
    logger.error(message)
    print(f"error: {message}", file=sys.stderr)
    return code


def guarded(command: Callable[..., int]) -> Callable[..., int]:
    """Map toolkit exceptions onto exit codes"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except (ConfigError, ExpressionError, ValidationError) as e:
            return _fail(EXIT_CONFIG, f"config error: {e}")
        except BuildError as e:
            return _fail(EXIT_BUILD, f"build failed at {e}")
        except DependentInput as e:
            return _fail(EXIT_BUILD, f"Gram-Schmidt input is dependent at stage {e.stage}: {e}")
        except OSError as e:
            return _fail(EXIT_IO, f"I/O error: {e}")
        except WronskiError as e:
            return _fail(EXIT_BUILD, f"{type(e).__name__}: {e}")

    return wrapper


def _build(config: ConfigFile) -> OrthoSystem:
    return build_system(ConfigParser.to_build_config(config))


def manifest_for(system: OrthoSystem, config: ConfigFile) -> Manifest:
    return Manifest(
        config=config.model_dump(mode="json"),
        coefficients=[list(c) for c in system.coefficients],
        norms=list(system.norms),
        gram=np.asarray(system.gram).tolist(),
        scales=list(system.scales),
    )


def write_manifest(path: Path, manifest: Manifest):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(manifest.model_dump_json(indent=2))
        f.write("\n")


def write_samples(path: Path, system: OrthoSystem, sample_points: int):
    """CSV with header x,f1..fN and sample_points rows over [a, b]"""
    xs = np.linspace(system.ip.a, system.ip.b, sample_points)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["x"] + [f"f{k}" for k in range(1, system.N + 1)])
        for x in xs:
            x = float(x)
            writer.writerow([repr(x)] + [repr(float(fn.value(x))) for fn in system.functions])


@guarded
def cmd_build(config_path: str, out_dir: str = ".") -> int:
    """Build the system and write manifest.json and samples.csv"""
    config = ConfigParser.load(config_path)
    system = _build(config)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if "json" in config.output.formats:
        write_manifest(out / "manifest.json", manifest_for(system, config))
    if "csv" in config.output.formats:
        write_samples(out / "samples.csv", system, config.output.sample_points)
    logger.info(f"Wrote artifacts for {system.N} functions to {out}")
    return EXIT_OK


@guarded
def cmd_validate(config_path: str, grid_points: Optional[int] = None,
                 inject_perturbation: Optional[float] = None) -> int:
    """Build, run every check and print the report as JSON"""
    if grid_points is not None and grid_points < 1:
        return _fail(EXIT_CONFIG, f"--grid-points must be at least 1, got {grid_points}")
    config = ConfigParser.load(config_path)
    system = _build(config)
    if inject_perturbation is not None:
        if system.N < 2:
            return _fail(EXIT_CONFIG, "--inject-perturbation needs N >= 2")
        system = perturb_system(system, inject_perturbation)
    report = validate_system(system, default_grid(system, grid_points))
    print(report.model_dump_json(indent=2))
    if not report.passed:
        failed = [name for name in ("orthogonality", "wronskian_identity", "ode", "independence", "base_point")
                  if not getattr(report, name).passed]
        logger.error(f"Validation failed: {', '.join(failed)}")
        print(f"validation failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def alignments(system: OrthoSystem, basis: Sequence) -> List[ComparisonRow]:
    """|<f_k, g_k>| / (||f_k|| ||g_k||) against Gram-Schmidt of the basis"""
    ip = system.ip
    reference = gram_schmidt(basis, ip)
    rows = []
    for k, (f, g) in enumerate(zip(system.functions, reference), start=1):
        value = abs(inner(f, g, ip)) / (norm(f, ip) * norm(g, ip))
        rows.append(ComparisonRow(k=k, alignment=value))
    return rows


@guarded
def cmd_compare_gs(config_path: str, out_dir: str = ".") -> int:
    """Compare the Wronski system with Gram-Schmidt of the comparison basis"""
    config = ConfigParser.load(config_path)
    basis = ConfigParser.comparison_basis(config)
    if len(basis) < config.build.N:
        raise ConfigError(f"compare.basis lists {len(basis)} functions but N = {config.build.N}")
    system = _build(config)
    rows = alignments(system, basis)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "comparison.csv", "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["k", "alignment"])
        for row in rows:
            writer.writerow([row.k, repr(row.alignment)])
    print(f"{'k':>3}  alignment")
    for row in rows:
        print(f"{row.k:>3}  {row.alignment:.15f}")
    worst = min((row.alignment for row in rows), default=1.0)
    if worst < 1.0 - ALIGNMENT_TOL or not math.isfinite(worst):
        return _fail(EXIT_CHECK_FAILED, f"alignment {worst!r} below 1 - {ALIGNMENT_TOL}")
    return EXIT_OK


def cmd_preset(name: str) -> int:
    text = PRESETS.get(name)
    if text is None:
        return _fail(EXIT_CONFIG, f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    sys.stdout.write(text)
    return EXIT_OK


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=os.getenv("WRONSKI_OUT_DIR", "."),
                        help="Directory for artifacts (default: $WRONSKI_OUT_DIR or .)")

    parser = argparse.ArgumentParser(prog="wronski", description="Wronski orthogonalization toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", parents=[common], help="Build a system and export artifacts")
    build.add_argument("config", help="Path to YAML config")

    validate = commands.add_parser("validate", help="Build and validate a system")
    validate.add_argument("config", help="Path to YAML config")
    validate.add_argument("--grid-points", type=positive_int, default=None, help="Validation grid size override")
    validate.add_argument("--inject-perturbation", type=float, default=None, help=argparse.SUPPRESS)

    compare = commands.add_parser("compare-gs", parents=[common], help="Compare against Gram-Schmidt")
    compare.add_argument("config", help="Path to YAML config")

    preset = commands.add_parser("preset", help="Print a built-in config")
    preset.add_argument("name", help=f"One of: {', '.join(sorted(PRESETS))}")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "build":
        return cmd_build(args.config, args.out_dir)
    if args.command == "validate":
        return cmd_validate(args.config, args.grid_points, args.inject_perturbation)
    if args.command == "compare-gs":
        return cmd_compare_gs(args.config, args.out_dir)
    return cmd_preset(args.name)
