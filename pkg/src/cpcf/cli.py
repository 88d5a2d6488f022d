"""Command-line interface.

Subcommands: counts, pcf, simulate, bench, validate.  Inputs are grid
text ('.', '#', 'A') or the JSON configuration format, auto-detected.
Exit codes: 0 success, 2 usage, 3 parse error, 4 mode error,
5 validation failure, 1 other package error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import bench_compare
from .ensembles import random_occupancy_ensemble, simulation_ensemble
from .errors import CpcfError, ModeError, ParseError, ValidationFailure
from .lattice import parse_grid, parse_json_config, render_grid
from .layouts import random_admissible_config
from .analytic import corrected_counts
from .oracle import oracle_pair_counts
from .pcf import Mode, corrected_pcf
from .sim import SimulationParams, run_simulation, seed_occupancy

_EXIT_CODES = {ParseError: 3, ModeError: 4, ValidationFailure: 5}

_COUNT_MODES = {"exact": Mode.CORRECTED_EXACT, "approx": Mode.CORRECTED_APPROX, "oracle": Mode.CORRECTED_ORACLE}
_PCF_MODES = {"standard": Mode.STANDARD, **_COUNT_MODES}


def _read_input(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json_config(text)
    return parse_grid(text)


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_counts(args) -> int:
    _, config, _ = _read_input(args.input)
    from .pcf import normalization_counts

    hist = normalization_counts(config, _COUNT_MODES[args.mode])
    _write(args.output, hist.to_csv())
    return 0


def _cmd_pcf(args) -> int:
    _, config, occ = _read_input(args.input)
    mode = _PCF_MODES[args.mode]
    if args.ensemble > 1 or args.density is not None:
        if args.density is None:
            raise ParseError("--ensemble requires --density to regenerate occupancies")
        result = random_occupancy_ensemble(
            config, args.density, args.ensemble, args.seed, mode,
            standard_accessible_denominator=args.accessible_denominator,
        )
    else:
        if occ.z == 0:
            raise ParseError("input contains no agents; place 'A' sites or pass --density")
        result = corrected_pcf(
            config, occ, mode, standard_accessible_denominator=args.accessible_denominator
        )
    _write(args.output, result.to_csv())
    if args.output and args.output != "-":
        Path(args.output).with_suffix(".meta.json").write_text(result.metadata() + "\n")
    if args.plot:
        rows = "".join(
            f"{m + 1},{result.p[m]!r}\n" for m in range(result.m_max) if not np.isnan(result.p[m])
        )
        _write(args.plot, "m,P\n" + rows)
    return 0


def _cmd_simulate(args) -> int:
    _, config, _ = _read_input(args.input)
    params = SimulationParams(
        p_b=args.pb,
        p_m=args.pm,
        t_end=args.tend,
        initial_density=args.density,
        seed=args.seed,
        scale_time=args.scale_time,
    )
    if args.pcf:
        mode = _PCF_MODES[args.pcf]
        if args.ensemble > 1:
            result = simulation_ensemble(config, params, args.ensemble, mode)
        else:
            final, _ = run_simulation(config, params)
            result = corrected_pcf(config, final, mode)
        _write(args.output, result.to_csv())
        if args.output and args.output != "-":
            Path(args.output).with_suffix(".meta.json").write_text(result.metadata() + "\n")
        return 0
    final, snapshots = run_simulation(config, params, snapshot_every=args.snapshot_every)
    pieces = []
    for t, snap in snapshots:
        pieces.append(f"# t={t}\n{render_grid(config, snap)}")
    pieces.append(f"# t={params.effective_t_end(config)} (final)\n{render_grid(config, final)}")
    _write(args.output, "".join(pieces))
    meta = {
        "pb": params.p_b, "pm": params.p_m, "tend": params.t_end,
        "effective_tend": params.effective_t_end(config),
        "density": params.initial_density, "seed": params.seed,
        "scale_time": params.scale_time, "final_agents": final.z,
    }
    if args.output and args.output != "-":
        Path(args.output).with_suffix(".meta.json").write_text(json.dumps(meta) + "\n")
    return 0


def _cmd_bench(args) -> int:
    report = bench_compare(
        sizes=args.sizes,
        cluster_counts=args.clusters,
        repeats=args.repeats,
        seed=args.seed,
    )
    print(report.to_table())
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    return 0


def _cmd_validate(args) -> int:
    rng = np.random.default_rng(args.seed)
    for i in range(args.domains):
        lx = int(rng.integers(10, args.max_size + 1))
        ly = int(rng.integers(10, args.max_size + 1))
        max_extent = int(rng.integers(1, 5))
        g = max_extent + 2
        capacity = (lx // g) * (ly // g)
        n_clusters = int(rng.integers(1, min(20, capacity) + 1))
        config = random_admissible_config(lx, ly, n_clusters, rng, max_extent)
        analytic = corrected_counts(config)
        numeric = oracle_pair_counts(config).histogram
        if analytic != numeric:
            n = max(analytic.m_max, numeric.m_max)
            sys.stderr.write(
                f"mismatch on domain {i} ({lx}x{ly}, {n_clusters} clusters)\n"
                f"reproducer grid:\n{render_grid(config)}"
                f"analytic: {analytic.padded(n).tolist()}\n"
                f"oracle:   {numeric.padded(n).tolist()}\n"
            )
            raise ValidationFailure(f"analytic != oracle on domain {i}")
    print(f"validate: {args.domains} random admissible domains, analytic == oracle")
    return 0


def _int_list(text: str):
    return [int(t) for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpcf",
        description="Corrected pair correlation functions for lattices with obstacles.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("counts", help="emit the normalization histogram D(m) as CSV")
    p.add_argument("-i", "--input", default="-", help="grid or JSON file ('-' for stdin)")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--mode", choices=sorted(_COUNT_MODES), default="exact")
    p.set_defaults(func=_cmd_counts)

    p = sub.add_parser("pcf", help="emit the pair correlation CSV")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--mode", choices=sorted(_PCF_MODES), default="exact")
    p.add_argument("--ensemble", type=int, default=1, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--density", type=float, default=None,
                   help="random occupancy density (required for ensembles)")
    p.add_argument("--accessible-denominator", action="store_true",
                   help="standard mode: use n_a instead of N in the prefactor")
    p.add_argument("--plot", default=None, help="two-column m,P output file")
    p.set_defaults(func=_cmd_pcf)

    p = sub.add_parser("simulate", help="run the birth-movement random walk")
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--pb", type=float, default=0.1)
    p.add_argument("--pm", type=float, default=0.1)
    p.add_argument("--tend", type=int, default=70)
    p.add_argument("--density", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale-time", action="store_true")
    p.add_argument("--snapshot-every", type=int, default=None, metavar="K")
    p.add_argument("--pcf", choices=sorted(_PCF_MODES), default=None,
                   help="emit PCF of the final state instead of snapshots")
    p.add_argument("--ensemble", type=int, default=1, metavar="N",
                   help="realizations when --pcf is given")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bench", help="time analytic vs oracle cPCF evaluation")
    p.add_argument("--sizes", type=_int_list, default=[50], metavar="L1,L2,...")
    p.add_argument("--clusters", type=_int_list, default=[25], metavar="N1,N2,...")
    p.add_argument("--repeats", type=int, default=3, metavar="R")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="also write per-case CSV")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("validate", help="check analytic == oracle on random domains")
    p.add_argument("--domains", type=int, default=100, metavar="R")
    p.add_argument("--max-size", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CpcfError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return _EXIT_CODES.get(type(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
