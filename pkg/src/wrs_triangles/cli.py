"""Command-line entry point: ``wrs-triangles`` / ``python -m wrs_triangles``.

Exit status is 0 on success, 2 on a configuration error and 1 on a runtime
failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .base import ConfigError
from .harness import (
    ALGORITHMS,
    SCHEMA_VERSION,
    ExperimentConfig,
    emit_report,
    run_alpha_sweep,
    run_experiment,
)
from .synthetic import generate_synthetic_stream

log = logging.getLogger("wrs_triangles")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wrs-triangles", description="Streaming triangle-count experiments.")
    p.add_argument("--input", help="edge-list file (one 'u v [ts]' per line)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="wrs")
    budget = p.add_mutually_exclusive_group()
    budget.add_argument("--k", type=int, help="memory budget in edges")
    budget.add_argument("--k-frac", type=float, help="memory budget as a fraction of the stream length")
    p.add_argument("--alpha", type=float, default=0.1, help="waiting-room fraction of the budget (wrs)")
    p.add_argument("--alpha-sweep", help="comma-separated alphas; runs wrs once per value")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="base seed; trial i uses seed + i")
    p.add_argument("--snapshot-every", type=int, help="snapshot interval in edges (0: end only)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="report path (json file or csv directory); stdout if omitted for json")
    p.add_argument("--locality", action="store_true", help="add closing/total interval analysis")
    p.add_argument("--shuffle-seed", type=int, default=0)
    p.add_argument("--gen-synthetic", metavar="N,LOCALITY,SEED", help="write a synthetic stream to --out and exit")
    p.add_argument("--no-dedupe", action="store_true", help="keep repeated edges")
    p.add_argument("--string-ids", action="store_true", help="remap arbitrary node tokens to dense ids")
    p.add_argument("--workers", type=int, default=1, help="parallel trial processes")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _parse_synthetic(spec: str) -> tuple[int, float, int]:
    try:
        n, loc, seed = spec.split(",")
        return int(n), float(loc), int(seed)
    except ValueError:
        raise ConfigError(f"--gen-synthetic expects N,LOCALITY,SEED, got {spec!r}") from None


def _dump(payload: dict, out) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

        if args.gen_synthetic:
            n, loc, seed = _parse_synthetic(args.gen_synthetic)
            if not args.out:
                raise ConfigError("--gen-synthetic needs --out")
            try:
                generate_synthetic_stream(n, loc, seed, args.out)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            log.info("wrote %d edges to %s", n, args.out)
            return 0

        if not args.input:
            raise ConfigError("--input is required")
        if args.format == "csv" and not args.out:
            raise ConfigError("--format csv needs --out DIR")
        if args.algorithm != "exact" and args.k is None and args.k_frac is None:
            args.k_frac = 0.1
        config = ExperimentConfig(
            input_path=args.input,
            algorithm=args.algorithm,
            k=args.k,
            k_frac=args.k_frac,
            alpha=args.alpha,
            trials=args.trials,
            base_seed=args.seed,
            snapshot_every=args.snapshot_every,
            output_format=args.format,
            locality_analysis=args.locality,
            shuffle_seed=args.shuffle_seed,
            dedupe=not args.no_dedupe,
            raw_id_mode="str" if args.string_ids else "int",
            workers=args.workers,
        )
        config.validate()
        if not Path(args.input).is_file():
            raise ConfigError(f"input file not found: {args.input}")

        if args.alpha_sweep:
            try:
                alphas = [float(a) for a in args.alpha_sweep.split(",")]
            except ValueError:
                raise ConfigError(f"bad --alpha-sweep list {args.alpha_sweep!r}") from None
            for a in alphas:
                ExperimentConfig(**{**config.__dict__, "alpha": a, "algorithm": "wrs"}).validate()
            reports = run_alpha_sweep(config, alphas)
            _dump({"schema_version": SCHEMA_VERSION, "sweep": [r.to_dict() for r in reports]}, args.out)
            return 0

        report = run_experiment(config)
        if args.format == "csv":
            emit_report(report, "csv", args.out)
        elif args.out:
            emit_report(report, "json", args.out)
        else:
            _dump(report.to_dict(), None)
        return 0
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
