"""
Command-line front end.

    infoconv logic-gates --out DIR [--format csv|json]
    infoconv expansion --seed S --n-systems N [--kind gaussian|deterministic|both]
                       [--levels 1|2] [--split-element I] [--jobs J] --out DIR
    infoconv ei-scan --tpm FILE --partition FILE --out DIR
    infoconv pid (--tpm FILE | --network FILE) [--input stationary|uniform] --out DIR

Exit codes: 0 success, 2 validation error, 3 numerical-consistency error.
"""

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boolnet import build_gate_pair, induced_past_distribution, load_network, network_to_tpm
from .causal import StatePartition, coarse_grain_tpm, effective_information
from .discrete import StateDistribution, load_tpm, stationary_distribution
from .errors import (
    ConvergenceError,
    InfoConvError,
    NumericalConsistencyError,
    UndefinedBiasError,
    ValidationError,
)
from .expansion import EnsembleSpec, run_expansion_experiment
from .pid import spectrum_and_bias, temporal_pid
from .schemas import CSV_HEADERS, validate_document
from .stats import pearson_or_none

log = logging.getLogger("infoconv")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

GATE_KINDS = ("AND", "OR", "XOR")


@dataclass
class RunConfig:
    command: str
    output_dir: Path
    seed: int = None
    n_systems: int = 0
    format: str = "csv"
    kind: str = "both"
    levels: int = 2
    split_element: int = 0
    jobs: int = 1
    skeleton: str = "map"
    svg: bool = False

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        if self.command == "expansion" and self.seed is None:
            raise ValidationError("stochastic commands require an explicit --seed")


class AllSkippedError(InfoConvError):
    pass


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(["" if v is None else (repr(float(v)) if isinstance(v, float) else v)
                             for v in row])


def _write_json(path, data, schema=None):
    if schema is not None:
        validate_document(data, schema)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def logic_gate_results():
    """Temporal MI, synergy bias and PI spectrum at both scales of each gate."""
    results = []
    for kind in GATE_KINDS:
        pair = build_gate_pair(kind)
        scales = {}
        for scale, net in (("micro", pair.micro), ("macro", pair.macro)):
            pid = temporal_pid(network_to_tpm(net), induced_past_distribution(net))
            spec = spectrum_and_bias(pid)
            scales[scale] = {
                "elements": net.names,
                "mi_bits": pid.total_mi,
                "b_syn": spec.b_syn,
                "spectrum": [[i, float(m)] for i, m in enumerate(spec.layer_mass)],
            }
        results.append({"gate": kind, **scales})
    return results


def cmd_logic_gates(cfg):
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    results = logic_gate_results()
    table = [
        {
            "gate": r["gate"],
            "micro_mi": r["micro"]["mi_bits"],
            "macro_mi": r["macro"]["mi_bits"],
            "micro_bsyn": r["micro"]["b_syn"],
            "macro_bsyn": r["macro"]["b_syn"],
        }
        for r in results
    ]
    header = CSV_HEADERS["logic_gates"]
    if cfg.format == "json":
        _write_json(cfg.output_dir / "logic_gates.json", table, "logic_gates")
    else:
        _write_csv(cfg.output_dir / "logic_gates.csv", header,
                   [[row[h] for h in header] for row in table])
    for r in results:
        _write_json(cfg.output_dir / f"spectrum_{r['gate']}.json", r, "gate_spectra")
    for row in table:
        log.info("%s micro %.4f bit / macro %.4f bit, B_syn %.3f -> %.3f", row["gate"],
                 row["micro_mi"], row["macro_mi"], row["micro_bsyn"], row["macro_bsyn"])
    return table


def _summary(kind, cfg, rows, skipped, n_systems):
    macro = np.array([r.macro_bsyn for r in rows])
    gain = np.array([r.gain for r in rows])
    drift = [abs(r.mi_bits - r.micro_mi_bits) for r in rows]
    rho, p = pearson_or_none(macro, gain) if rows else (None, None)
    return {
        "kind": kind,
        "seed": int(cfg.seed),
        "n_systems": n_systems,
        "n_analysed": len(rows),
        "n_skipped": len(skipped),
        "levels": cfg.levels,
        "split_element": cfg.split_element,
        "skeleton": cfg.skeleton if kind != "gaussian" else None,
        "gain_convention": "macro_bsyn - micro_bsyn",
        "rho": rho,
        "p_value": p,
        "positive_gain_fraction": float(np.mean(gain > 0)) if rows else None,
        "mean_macro_bsyn": float(macro.mean()) if rows else None,
        "max_mi_drift": float(max(drift)) if rows else None,
        "skipped": [{"system_id": i, "reason": reason} for i, reason in skipped],
    }


def _scatter_rows(rows):
    return [[r.system_id, r.kind, r.macro_bsyn, r.gain, -r.gain] for r in rows]


def cmd_expansion(cfg):
    if cfg.n_systems < 2:
        raise ValidationError("--n-systems must be at least 2")
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    kinds = ("gaussian", "deterministic") if cfg.kind == "both" else (cfg.kind,)
    summaries, all_rows, all_skipped = {}, [], []
    for kind in kinds:
        spec = EnsembleSpec(kind, cfg.n_systems, cfg.seed, skeleton=cfg.skeleton)
        result = run_expansion_experiment(spec, cfg.levels, cfg.split_element, cfg.jobs)
        rows = [
            [r.system_id, r.kind, r.macro_bsyn, r.meso_bsyn, r.micro_bsyn, r.mi_bits, r.gain]
            for r in result.rows
        ]
        if cfg.format == "json":
            _write_json(cfg.output_dir / f"expansion_{kind}.json",
                        [dict(zip(CSV_HEADERS["expansion"], row)) for row in rows],
                        "expansion_rows")
        else:
            _write_csv(cfg.output_dir / f"expansion_{kind}.csv", CSV_HEADERS["expansion"], rows)
        _write_csv(cfg.output_dir / f"scatter_{kind}.csv", CSV_HEADERS["scatter"],
                   _scatter_rows(result.rows))
        summary = _summary(kind, cfg, result.rows, result.skipped, cfg.n_systems)
        _write_json(cfg.output_dir / f"summary_{kind}.json", summary, "expansion_summary")
        summaries[kind] = summary
        all_rows += result.rows
        all_skipped += [(i, f"{kind}: {reason}") for i, reason in result.skipped]
        log.info("%s: %d analysed, %d skipped, rho=%s", kind, len(result.rows),
                 len(result.skipped), summary["rho"])
    if not all_rows:
        raise AllSkippedError("every system was skipped; see summary files for reasons")
    if len(kinds) > 1:
        summary = _summary("combined", cfg, all_rows, all_skipped, cfg.n_systems * len(kinds))
        _write_json(cfg.output_dir / "summary_combined.json", summary, "expansion_summary")
        _write_csv(cfg.output_dir / "scatter_combined.csv", CSV_HEADERS["scatter"],
                   _scatter_rows(all_rows))
        summaries["combined"] = summary
    if cfg.svg:
        from .plotting import scatter_svg

        scatter_svg(all_rows, cfg.output_dir / "scatter.svg")
    return summaries


def _load_json(path, schema):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    validate_document(data, schema)
    return data


def cmd_ei_scan(cfg, tpm_file, partition_file):
    tpm = load_tpm(tpm_file)
    partition = StatePartition(tuple(_load_json(partition_file, "partition")))
    macro = coarse_grain_tpm(tpm, partition)
    micro_report = effective_information(tpm).to_dict()
    macro_report = effective_information(macro).to_dict()
    report = {
        "partition": list(partition.mapping),
        "micro": micro_report,
        "macro": macro_report,
        "delta": {k: macro_report[k] - micro_report[k] for k in micro_report},
    }
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    _write_json(cfg.output_dir / "ei_scan.json", report, "ei_scan")
    return report


def cmd_pid(cfg, tpm_file=None, network_file=None, input_kind="stationary"):
    if (tpm_file is None) == (network_file is None):
        raise ValidationError("give exactly one of --tpm or --network")
    if tpm_file is not None:
        tpm = load_tpm(tpm_file)
    else:
        net = load_network(network_file)
        tpm = network_to_tpm(net)
    if input_kind == "induced" and network_file is None:
        raise ValidationError("--input induced needs a --network file")
    if input_kind == "uniform":
        dist = StateDistribution.uniform(tpm.n_elements)
    elif input_kind == "induced":
        dist = induced_past_distribution(net)
    else:
        dist = stationary_distribution(tpm)
    result = temporal_pid(tpm, dist)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    doc = result.to_json_dict()
    _write_json(cfg.output_dir / "pid.json", doc, "pid_result")
    return doc


def build_parser():
    parser = argparse.ArgumentParser(
        prog="infoconv",
        description="Partial information decomposition of Boolean network dynamics across scales.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("logic-gates", help="AND/OR/XOR micro vs macro table and spectra")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("expansion", help="node-expansion ensembles")
    p.add_argument("--seed", type=int)
    p.add_argument("--n-systems", type=int, default=200)
    p.add_argument("--kind", choices=("gaussian", "deterministic", "both"), default="both")
    p.add_argument("--levels", type=int, choices=(1, 2), default=2)
    p.add_argument("--split-element", type=int, default=0)
    p.add_argument("--skeleton", choices=("map", "derangement"), default="map",
                   help="successor structure of deterministic systems")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--svg", action="store_true", help="also render scatter.svg (matplotlib)")

    p = sub.add_parser("ei-scan", help="effective information before/after coarse-graining")
    p.add_argument("--tpm", required=True, type=Path)
    p.add_argument("--partition", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("pid", help="temporal PID of a TPM or network file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tpm", type=Path)
    src.add_argument("--network", type=Path)
    p.add_argument("--input", choices=("stationary", "uniform", "induced"), default="stationary")
    p.add_argument("--out", required=True, type=Path)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = RunConfig(
            command=args.command,
            output_dir=args.out,
            seed=getattr(args, "seed", None),
            n_systems=getattr(args, "n_systems", 0),
            format=getattr(args, "format", "csv"),
            kind=getattr(args, "kind", "both"),
            levels=getattr(args, "levels", 2),
            split_element=getattr(args, "split_element", 0),
            jobs=getattr(args, "jobs", 1),
            skeleton=getattr(args, "skeleton", "map"),
            svg=getattr(args, "svg", False),
        )
        if args.command == "logic-gates":
            cmd_logic_gates(cfg)
        elif args.command == "expansion":
            cmd_expansion(cfg)
        elif args.command == "ei-scan":
            cmd_ei_scan(cfg, args.tpm, args.partition)
        else:
            cmd_pid(cfg, args.tpm, args.network, args.input)
    except (NumericalConsistencyError, ConvergenceError, UndefinedBiasError,
            AllSkippedError) as exc:
        print(f"infoconv: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InfoConvError, OSError) as exc:
        print(f"infoconv: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
