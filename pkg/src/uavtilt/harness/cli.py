"""Command line entry point: ``uavtilt simulate`` and ``uavtilt inspect-scenario``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .config import PRESETS, ConfigError, load_config
from .experiment import aggregate, generate_scenario, run_experiment
from .reports import emit_reports

log = logging.getLogger("uavtilt")


def parse_weights(text: str) -> list[list[float]]:
    out = []
    for item in text.split(","):
        try:
            rate, rsrp = (float(v) for v in item.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad weight vector {item!r}; use w_rate:w_rsrp") from None
        out.append([rate, rsrp])
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="uavtilt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", parents=[common], help="run the Monte-Carlo experiment and write reports")
    sim.add_argument("--config", help="JSON config file (layered over the preset)")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--realizations", type=int)
    sim.add_argument("--iterations", type=int)
    sim.add_argument("--weights", type=parse_weights, help="e.g. 0:1,0.1:0.9,1:0")
    sim.add_argument("--preset", choices=PRESETS)
    sim.add_argument("--workers", type=int, default=1, help="parallel processes (output is unaffected)")

    insp = sub.add_parser("inspect-scenario", parents=[common], help="dump one generated scenario as JSON")
    insp.add_argument("--config")
    insp.add_argument("--preset", choices=PRESETS)
    insp.add_argument("--seed", type=int)
    insp.add_argument("--index", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "simulate":
            config = load_config(args.config, args.preset, seed=args.seed, realizations=args.realizations,
                                 iterations=args.iterations, weights=args.weights)
            log.info("running %d realizations with %d worker(s)", config.realizations, args.workers)
            results = run_experiment(config, workers=args.workers)
            for path in emit_reports(aggregate(results, config), config, args.out):
                log.info("wrote %s", path)
        else:
            config = load_config(args.config, args.preset, seed=args.seed)
            scenario = generate_scenario(config, args.index)
            dump = {
                "seed": config.seed,
                "index": args.index,
                "area": list(scenario.area),
                "tx_power_dbm": scenario.tx_power,
                "gbs_positions": scenario.gbs_positions.tolist(),
                "sector_orientations": scenario.sector_orientations.tolist(),
                "gue_positions": scenario.gue_positions.tolist(),
            }
            json.dump(dump, sys.stdout, indent=2)
            sys.stdout.write("\n")
    except ConfigError as exc:
        print(f"uavtilt: config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"uavtilt: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
