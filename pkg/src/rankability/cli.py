"""Command line interface: ``rankability <command> ...``."""

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import errors
from .edge import SearchOptions, compute_kp, rankability_from_kp
from .evaluation import run_experiment, table_config
from .features import FEATURE_NAMES, feature_matrix, feature_vector
from .forest import TrainConfig, fit, load_model, rf_rankability, save_model
from .generators import DatasetConfig, GeneratorId, gen_dataset
from .graph import read_graph, write_graph
from .ingest import IngestOptions, parse_matches, season_report, write_report
from .spectral import spectral_report

log = logging.getLogger("rankability")

EXIT_IO = 1
EXIT_INPUT = 3
EXIT_MODEL = 4
EXIT_LIMIT = 5

_INPUT_ERRORS = (
    errors.GraphError,
    errors.MalformedRowError,
    errors.MissingHeaderError,
    errors.ConfigError,
    errors.BadProbabilityError,
    errors.TooFewTeamsError,
    errors.UnknownSeasonError,
    errors.LengthMismatchError,
    errors.DegenerateInputError,
    errors.EmptyTrainingSetError,
)
_MODEL_ERRORS = (
    errors.ModelMissingError,
    errors.SchemaVersionMismatchError,
    errors.CorruptModelError,
    errors.VertexCountMismatchError,
)
_LIMIT_ERRORS = (errors.TooLargeError, errors.SearchTimeoutError, errors.NoConvergenceError)


def _fmt_complex(z):
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def cmd_rank_edge(args):
    g = read_graph(args.graph_file)
    opts = SearchOptions(
        max_n=args.max_n, time_budget=args.time_budget, list_minimizers=args.list_minimizers
    )
    result = compute_kp(g, opts)
    print(f"k={result.k}")
    print(f"p={result.p}")
    print(f"R_e={rankability_from_kp(result.k, result.p, g.n)!r}")
    if result.minimizers is not None:
        for order in result.minimizers:
            print("ordering " + " ".join(str(v) for v in order))


def cmd_rank_spectral(args):
    g = read_graph(args.graph_file)
    rep = spectral_report(g)
    print(f"R_s={rep.value!r}")
    if args.report_spectra:
        for name, values in (("D", rep.spectrum_D), ("L", rep.spectrum_L), ("S", rep.spectrum_S)):
            print(f"sigma({name})=" + " ".join(_fmt_complex(z) for z in values))
        print(f"hd(D,S)={rep.hd_degree!r}")
        print(f"hd(L,S)={rep.hd_laplacian!r}")
        if rep.raw != rep.value:
            print(f"unclamped={rep.raw!r}")


def cmd_gen(args):
    cfg = DatasetConfig(
        n=args.n,
        count=args.count,
        generator=GeneratorId(args.model),
        p_range=(args.p_min, args.p_max),
        passes=args.passes,
        seed=args.seed,
    )
    samples = gen_dataset(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "labels.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id", "label", "p", "c", "generator"])
        for i, s in enumerate(samples):
            gid = f"g{i:06d}"
            write_graph(s.graph, out / f"{gid}.txt")
            p = "" if s.p is None else repr(float(s.p))
            w.writerow([gid, repr(float(s.label)), p, repr(float(s.c)), s.generator.value])
    print(f"wrote {len(samples)} graphs to {out}")


def read_dataset(data_dir):
    data = Path(data_dir)
    graphs, labels = [], []
    with open(data / "labels.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            graphs.append(read_graph(data / f"{row['id']}.txt"))
            labels.append(float(row["label"]))
    return graphs, labels


def cmd_features(args):
    if args.graph_file:
        fv = feature_vector(read_graph(args.graph_file))
        for name in FEATURE_NAMES:
            print(f"{name}={getattr(fv, name)!r}")
        return
    if not (args.dir and args.out):
        raise errors.ConfigError("features needs --graph-file, or --dir with --out")
    data = Path(args.dir)
    paths = sorted(data.glob("*.txt"))
    X = feature_matrix([read_graph(p) for p in paths])
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["id"] + list(FEATURE_NAMES))
        for p, row in zip(paths, X):
            w.writerow([p.stem] + [repr(float(v)) for v in row])
    print(f"wrote features for {len(paths)} graphs to {args.out}")


def cmd_train(args):
    graphs, labels = read_dataset(args.data)
    sizes = {g.n for g in graphs}
    if len(sizes) > 1:
        raise errors.ConfigError(f"training graphs have mixed vertex counts {sorted(sizes)}")
    model = fit(
        feature_matrix(graphs),
        labels,
        TrainConfig(n_trees=args.trees, seed=args.seed),
        trained_n=sizes.pop() if sizes else None,
    )
    save_model(model, args.out)
    print(f"trained {model.n_trees} trees on {len(labels)} graphs (n={model.trained_n})")


def cmd_predict(args):
    model = load_model(args.model)
    g = read_graph(args.graph_file)
    print(f"R_f={rf_rankability(model, g, allow_mismatch=args.allow_size_mismatch)!r}")


def cmd_experiment(args):
    from .plotting import scatter_svg

    table = None
    cache = {}
    for n in args.n:
        cfg = table_config(
            args.table,
            n,
            sparse=args.sparse,
            seed=args.seed,
            train_count=args.train_count,
            test_count=args.test_count,
            forest=TrainConfig(n_trees=args.trees),
        )
        col = run_experiment(cfg, cache)
        table = col if table is None else table.merge(col)
    print(table.render())
    out = Path(args.out)
    table.write_csv(out)
    scatter_path = out.with_name(out.stem + "_scatter.csv")
    table.write_scatter(scatter_path)
    for key, msg in sorted(table.errors.items()):
        print(f"note: {key}: {msg}", file=sys.stderr)
    if args.plot:
        for (n, setting), data in sorted(table.scatter.items()):
            series = {m: data.get(m) for m in ("R_e", "R_s", "R_f")}
            scatter_svg(data["label"], series, out.with_name(f"{out.stem}_n{n}_{setting}.svg"))
    print(f"wrote {out} and {scatter_path}")


def cmd_plot(args):
    from .plotting import scatter_svg

    rows = list(csv.DictReader(open(args.inp, newline="")))
    if not rows:
        raise errors.ConfigError(f"{args.inp} has no rows")
    label = np.array([float(r["label"]) for r in rows])
    series = {}
    for m in ("R_e", "R_s", "R_f"):
        if m in rows[0] and all(r[m] != "" for r in rows):
            series[m] = np.array([float(r[m]) for r in rows])
    scatter_svg(label, series, args.out)
    print(f"wrote {args.out}")


def cmd_ingest(args):
    order = None
    if args.order:
        order = tuple(line.strip() for line in open(args.order) if line.strip())
    opts = IngestOptions(
        re_max_n=args.re_max_n,
        auto_train=args.auto_train,
        train_count=args.train_count,
        forest=TrainConfig(n_trees=args.trees),
        order=order,
    )
    records = parse_matches(args.matches)
    reports, names, matrix = season_report(records, opts=opts, models_dir=args.models)
    write_report(reports, names, matrix, args.out)
    for r in reports:
        vals = " ".join(f"{k}={v:.4f}" for k, v in r.measures.items())
        print(f"{r.season} n={r.n_teams} {vals}")
    print(f"wrote report to {args.out}")


def build_parser():
    parser = argparse.ArgumentParser(prog="rankability", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    rank = sub.add_parser("rank", help="edge or spectral rankability of one graph")
    rank_sub = rank.add_subparsers(dest="measure", required=True)
    p = rank_sub.add_parser("edge")
    p.add_argument("--graph-file", required=True)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    p.add_argument("--list-minimizers", action="store_true")
    p.set_defaults(func=cmd_rank_edge)
    p = rank_sub.add_parser("spectral")
    p.add_argument("--graph-file", required=True)
    p.add_argument("--report-spectra", action="store_true")
    p.set_defaults(func=cmd_rank_spectral)

    p = sub.add_parser("gen", help="write a labelled synthetic dataset")
    p.add_argument("--model", choices=[g.value for g in GeneratorId], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--passes", type=int, choices=(1, 2), default=2)
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("features", help="the five predictor features")
    p.add_argument("--graph-file")
    p.add_argument("--dir")
    p.add_argument("--out")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("train", help="fit a forest on a generated dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="learned rankability of one graph")
    p.add_argument("--model", required=True)
    p.add_argument("--graph-file", required=True)
    p.add_argument("--allow-size-mismatch", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("experiment", help="regenerate a correlation table column")
    p.add_argument("--table", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sparse", action="store_true")
    p.add_argument("--train-count", type=int, default=1000)
    p.add_argument("--test-count", type=int, default=1000)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--plot", action="store_true", help="also write scatter SVGs")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("plot", help="scatter SVG from an experiment scatter CSV")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("ingest", help="per-season rankability of match results")
    p.add_argument("--matches", required=True)
    p.add_argument("--models", default=None, help="directory of n<teams>.rf forests")
    p.add_argument("--auto-train", dest="auto_train", action="store_true", default=True)
    p.add_argument("--no-auto-train", dest="auto_train", action="store_false")
    p.add_argument("--re-max-n", type=int, default=8)
    p.add_argument("--train-count", type=int, default=1000, help="graphs per auto-trained forest")
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--order", default=None, help="file listing seasons in chronological order")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s"
    )
    try:
        args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error[input]: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _MODEL_ERRORS as exc:
        print(f"error[model]: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except _LIMIT_ERRORS as exc:
        print(f"error[limit]: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
