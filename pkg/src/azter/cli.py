"""Command-line interface: ``azter analyze | train | predict | evaluate | intersect | catalog``.

Exit status is 0 on success, 1 for usage errors and 2 for data errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .conllu import ConlluError, Document, read_conllu, validate_document
from .features import CATALOG, GROUPS, compute_all, normalize_group
from .features.catalog import ABSOLUTE
from .features.families import FAMILIES
from .learn import (DatasetError, ModelFormatError, TrainingError, cross_validate, evaluate_holdout,
                    feature_intersection, info_gain_rank, load_dataset, load_model, save_model,
                    select_top, train_smo)
from .resources import ResourceError, default_manifest, load_profile

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

DEFAULTS = {
    "lang": None, "manifest": None, "mode": "all", "groups": None, "parser_source": "unknown",
    "seed": 1, "k": 10, "top_k": None, "jobs": 1, "out": ".", "select": "all",
    "holdout": None,
}


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- config


def read_config(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; ``#`` comments, optional quotes, dashes or underscores in keys."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{line_no}: expected key = value")
        key = key.strip().replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{line_no}: unknown setting {key!r}")
        out[key] = value.strip().strip("\"'")
    return out


def _settle(args) -> argparse.Namespace:
    """Fill unset flags from the config file, then from the defaults."""
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    for key, default in DEFAULTS.items():
        if not hasattr(args, key):
            continue
        if getattr(args, key) is None:
            value = cfg.get(key, default)
            if value is not None and key in ("seed", "k", "top_k", "jobs"):
                try:
                    value = int(value)
                except ValueError:
                    raise UsageError(f"setting {key} must be an integer, not {value!r}") from None
            if value is not None and key == "holdout":
                value = float(value)
            setattr(args, key, value)
    if getattr(args, "mode", None) not in (None, "all", "ratios"):
        raise UsageError(f"mode must be 'all' or 'ratios', not {args.mode!r}")
    if getattr(args, "groups", None):
        try:
            args.groups = [normalize_group(g) for g in _split_list(args.groups)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return args


def _split_list(value) -> list[str]:
    if isinstance(value, str):
        value = [value]
    return [part.strip() for item in value for part in item.split(",") if part.strip()]


# ---------------------------------------------------------------- output helpers


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def render_table(header: Sequence[str], rows) -> str:
    cells = [list(header)] + [[_fmt(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def write_meta(path: Path, items: dict) -> None:
    path.write_text("".join(f"{k}={v}\n" for k, v in items.items()), encoding="utf-8")


def read_meta(path: Path) -> dict[str, str]:
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        k, sep, v = line.partition("=")
        if sep:
            out[k.strip()] = v.strip()
    return out


def _meta_path(features_csv: Path) -> Path:
    return features_csv.with_suffix(".meta")


# ---------------------------------------------------------------- documents


def collect_inputs(paths: Sequence[str]) -> list[Path]:
    """Files in argument order; directories expand to their sorted ``*.conllu`` files."""
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.rglob("*.conllu")))
        elif p.exists():
            out.append(p)
        else:
            raise UsageError(f"no such file or directory: {p}")
    return out


def doc_ids(files: Sequence[Path]) -> list[str]:
    stems = [f.stem for f in files]
    clash = {s for s in stems if stems.count(s) > 1}
    return [f"{f.parent.name}/{f.stem}" if f.stem in clash else f.stem for f in files]


def load_document(path: Path, doc_id: str) -> Document:
    d = read_conllu(path, doc_id)
    problems = validate_document(d)
    if problems:
        first = problems[0]
        where = first.sent_id or f"sentence {first.sentence + 1}"
        more = f" (+{len(problems) - 1} more)" if len(problems) > 1 else ""
        raise DataError(f"{path}: {where}: {first.rule}: {first.message}{more}")
    return d


_worker_profile = None


def _init_worker(manifest: str, lang: str):
    global _worker_profile
    _worker_profile = load_profile(manifest, lang)


def _analyze_one(job):
    path, doc_id, mode, groups = job
    try:
        d = load_document(Path(path), doc_id)
    except DataError as exc:
        return doc_id, None, str(exc)
    except (ConlluError, OSError, UnicodeDecodeError) as exc:
        return doc_id, None, f"{path}: {exc}"
    return doc_id, compute_all(d, _worker_profile, mode, groups), None


def _profile(args):
    if not args.lang and not args.manifest:
        raise UsageError("--lang or --manifest is required")
    manifest = args.manifest or default_manifest(args.lang)
    try:
        return load_profile(manifest, args.lang), str(manifest)
    except ResourceError as exc:
        raise DataError(str(exc)) from None


def analyze_files(files, ids, profile, manifest, mode, groups, jobs):
    jobs_list = [(str(f), i, mode, groups) for f, i in zip(files, ids)]
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker,
                                 initargs=(manifest, profile.lang_code)) as pool:
            return list(pool.map(_analyze_one, jobs_list))
    global _worker_profile
    _worker_profile = profile
    return [_analyze_one(j) for j in jobs_list]


def _feature_rows(results, skip_bad: bool, log):
    rows = []
    for doc_id, vec, err in results:
        if err is not None:
            if not skip_bad:
                raise DataError(err)
            print(f"warning: skipped {err}", file=log)
            continue
        rows.append((doc_id, vec))
    return rows


# ---------------------------------------------------------------- commands


def cmd_analyze(args, out=sys.stdout, log=sys.stderr) -> int:
    profile, manifest = _profile(args)
    files = collect_inputs(args.inputs)
    ids = CATALOG.select(profile.available_features, args.mode, args.groups)
    results = analyze_files(files, doc_ids(files), profile, manifest, args.mode, args.groups, args.jobs)
    rows = _feature_rows(results, args.skip_bad, log)

    out_dir = Path(args.out)
    features_csv = out_dir / "features.csv"
    write_csv(features_csv, ["doc_id"] + ids, ([d] + [vec[i] for i in ids] for d, vec in rows))
    write_csv(out_dir / "descriptions.csv", ["id", "group", "kind", "description"],
              ([i, CATALOG[i].group, CATALOG[i].score_kind, CATALOG[i].description] for i in ids))
    write_meta(_meta_path(features_csv), {
        "lang": profile.lang_code, "mode": args.mode,
        "groups": ",".join(args.groups) if args.groups else "all",
        "parser_source": args.parser_source, "manifest": manifest, "version": __version__,
    })
    print(f"{len(rows)} documents x {len(ids)} features -> {features_csv}", file=out)
    return EXIT_OK


def _dataset(args):
    path = Path(args.features)
    try:
        ds = load_dataset(path, args.labels)
    except (DatasetError, OSError) as exc:
        raise DataError(str(exc)) from None
    return ds, read_meta(_meta_path(path))


def _restrict(ds, mode, groups):
    ids = [f for f in ds.feature_ids
           if not (mode == "ratios" and f in CATALOG and CATALOG[f].score_kind == ABSOLUTE)
           and (groups is None or (f in CATALOG and CATALOG[f].group in groups))]
    if not ids:
        raise DataError("no features left after mode/group filtering")
    return ds.project(ids)


def cmd_train(args, out=sys.stdout, log=sys.stderr) -> int:
    ds, meta = _dataset(args)
    ds = _restrict(ds, args.mode, args.groups)
    if len(ds.classes) < 2:
        raise DataError(f"training needs at least two classes, found {ds.classes}")
    if args.top_k is not None:
        ds = ds.project(select_top(info_gain_rank(ds), args.top_k))
    lang = args.lang or meta.get("lang", "")
    source = args.parser_source
    if source == DEFAULTS["parser_source"]:
        source = meta.get("parser_source", source)
    model_meta = {"lang": lang, "mode": args.mode, "parser_source": source}
    try:
        model = train_smo(ds, meta=model_meta)
    except TrainingError as exc:
        raise DataError(str(exc)) from None
    model_path = Path(args.model)
    model_path.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, model_path)

    predicted = model.predict_matrix(ds.X)
    correct = sum(p == t for p, t in zip(predicted, ds.labels))
    counts = ds.class_counts()
    header = ["class", "rows", "train_correct"]
    rows = [[c, counts[c], sum(p == t == c for p, t in zip(predicted, ds.labels))] for c in ds.classes]
    rows.append(["all", len(ds), correct])
    print(f"model {model_path}: {len(model.feature_ids)} features, classes {', '.join(ds.classes)}", file=out)
    print(render_table(header, rows), file=out)
    print(f"training accuracy {100.0 * correct / len(ds):.2f}%", file=out)
    write_csv(Path(args.out) / "training_report.csv", header, rows)
    return EXIT_OK


def cmd_predict(args, out=sys.stdout, log=sys.stderr) -> int:
    try:
        model = load_model(args.model)
    except ModelFormatError as exc:
        raise DataError(str(exc)) from None
    model_lang = model.meta.get("lang") or None
    if args.lang and model_lang and args.lang != model_lang:
        raise DataError(f"model was trained for {model_lang!r}, not {args.lang!r}")
    args.lang = args.lang or model_lang
    profile, manifest = _profile(args)
    unknown = [f for f in model.feature_ids if f not in profile.available_features]
    if unknown:
        raise DataError(f"model expects features unavailable for {profile.lang_code!r}: {', '.join(unknown[:5])}")
    files = collect_inputs(args.inputs)
    mode = model.meta.get("mode", "all")
    groups = sorted({CATALOG[f].group for f in model.feature_ids if f in CATALOG}) or None
    results = analyze_files(files, doc_ids(files), profile, manifest, mode, groups, args.jobs)
    rows = []
    for doc_id, vec in _feature_rows(results, args.skip_bad, log):
        rows.append([doc_id, model.predict_matrix(model.matrix([vec]))[0]])
    header = ["doc_id", "predicted"]
    print(render_table(header, rows), file=out)
    write_csv(Path(args.out) / "predictions.csv", header, rows)
    return EXIT_OK


def _parse_select(value: str) -> list[int | None]:
    out = []
    for item in _split_list(value):
        if item.lower() == "all":
            out.append(None)
        else:
            try:
                k = int(item)
            except ValueError:
                raise UsageError(f"--select takes 'all' or positive integers, not {item!r}") from None
            if k < 1:
                raise UsageError("--select sizes must be positive")
            out.append(k)
    return out


def _evaluate_rows(ds, selections, args):
    rows = []
    for top_k in selections:
        label = "all" if top_k is None else f"top-{top_k}"
        try:
            cv = cross_validate(ds, args.k, args.seed, top_k=top_k, select_on_full=args.select_on_full)
            row = [label, len(ds.feature_ids) if top_k is None else min(top_k, len(ds.feature_ids)),
                   round(cv.accuracy, 2)]
            if args.holdout is not None:
                row.append(round(evaluate_holdout(ds, args.holdout, args.seed, top_k=top_k).accuracy, 2))
        except (DatasetError, TrainingError) as exc:
            raise DataError(str(exc)) from None
        rows.append(row)
    return rows


def cmd_evaluate(args, out=sys.stdout, log=sys.stderr) -> int:
    ds, _ = _dataset(args)
    selections = _parse_select(args.select)
    header = ["features", "n_features", "cv_accuracy"]
    if args.holdout is not None:
        header.append("holdout_accuracy")
    header += ["k", "seed"]
    rows = []
    if args.per_group:
        for g in args.groups or GROUPS:
            try:
                sub = _restrict(ds, args.mode, [g])
            except DataError:
                continue
            for r in _evaluate_rows(sub, selections, args):
                rows.append([f"{g}:{r[0]}"] + r[1:] + [args.k, args.seed])
    else:
        sub = _restrict(ds, args.mode, args.groups)
        rows = [r + [args.k, args.seed] for r in _evaluate_rows(sub, selections, args)]
    title = f"{args.k}-fold stratified CV, seed {args.seed}, mode {args.mode}"
    if args.holdout is not None:
        title += f", hold-out train fraction {args.holdout}"
    print(title, file=out)
    print(render_table(header, rows), file=out)
    write_csv(Path(args.out) / "evaluation.csv", header, rows)
    return EXIT_OK


def cmd_intersect(args, out=sys.stdout, log=sys.stderr) -> int:
    sources = [(None, m) for m in args.manifest or []]
    sources += [(lang, None) for lang in _split_list(args.lang or [])]
    if len(sources) < 2:
        raise UsageError("intersect needs at least two languages or manifests")
    datasets = args.evaluate or []
    labels = args.labels or []
    if len(datasets) != len(labels):
        raise UsageError("every --evaluate needs a matching --labels")
    catalogs = []
    for lang, manifest in sources:
        try:
            catalogs.append(load_profile(manifest or default_manifest(lang), lang).available_features)
        except ResourceError as exc:
            raise DataError(str(exc)) from None
    ids = feature_intersection(catalogs, args.mode)
    print(f"{len(ids)} shared features (mode {args.mode})", file=out)
    for i in ids:
        print(i, file=out)
    write_csv(Path(args.out) / "intersection.csv", ["id", "group", "kind"],
              ([i, CATALOG[i].group, CATALOG[i].score_kind] for i in ids))

    if datasets:
        header = ["mode"] + [Path(d).stem if len(datasets) == 1 else f"{Path(d).parent.name}/{Path(d).stem}"
                             for d in datasets] + ["k", "seed"]
        rows = []
        for mode in ("all", "ratios"):
            shared = feature_intersection(catalogs, mode)
            row = [mode]
            for features, lab in zip(datasets, labels):
                try:
                    ds = load_dataset(features, lab)
                    keep = [f for f in shared if f in ds.feature_ids]
                    if not keep:
                        raise DataError(f"{features} has none of the shared features")
                    row.append(round(cross_validate(ds.project(keep), args.k, args.seed).accuracy, 2))
                except (DatasetError, TrainingError, OSError) as exc:
                    raise DataError(str(exc)) from None
            rows.append(row + [args.k, args.seed])
        print(f"\n{args.k}-fold stratified CV on shared features, seed {args.seed}", file=out)
        print(render_table(header, rows), file=out)
        write_csv(Path(args.out) / "intersection_evaluation.csv", header, rows)
    return EXIT_OK


def _markdown_cell(column: str, value) -> str:
    if column == "id":
        return f"`{value}`"
    if column == "ids":
        return ", ".join(f"`{i}`" for i in str(value).split()) or "(unavailable)"
    return str(value)


def cmd_catalog(args, out=sys.stdout, log=sys.stderr) -> int:
    available = None
    if args.lang or args.manifest:
        available = _profile(args)[0].available_features
    ids = CATALOG.select(available, args.mode, args.groups)
    if args.families:
        keep = set(ids)
        header = ["group", "family", "ids"]
        rows = [[g, name, " ".join(i for i in members if i in keep)]
                for g, name, members in FAMILIES if args.groups is None or g in args.groups]
        name = "families.csv"
    else:
        header = ["id", "group", "kind", "resources", "languages", "description"]
        rows = [[i, CATALOG[i].group, CATALOG[i].score_kind, " ".join(sorted(CATALOG[i].resource_deps)),
                 " ".join(sorted(CATALOG[i].languages or [])) or "any", CATALOG[i].description] for i in ids]
        name = "catalog.csv"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    elif args.format == "markdown":
        out.write("| " + " | ".join(header) + " |\n|" + "---|" * len(header) + "\n")
        for r in rows:
            out.write("| " + " | ".join(_markdown_cell(header[j], r[j]) for j in range(len(r))) + " |\n")
    else:
        print(render_table(header, rows), file=out)
        print(f"{len(rows)} {'families' if args.families else 'features'}", file=out)
    if args.out_given:
        write_csv(Path(args.out) / name, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="azter", description="Text-complexity indicators and classifiers over CoNLL-U parses.")
    ap.add_argument("--version", action="version", version=f"azter {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, lang=True, out=True):
        p.add_argument("--config", help="key = value settings file; command-line flags take precedence")
        if lang:
            p.add_argument("--lang", help="language code (en, es, eu)")
            p.add_argument("--manifest", help="resource manifest (default: $AZTER_RESOURCES/<lang> or the shipped bundle)")
        p.add_argument("--mode", choices=("all", "ratios"), default=None)
        p.add_argument("--groups", help="comma-separated feature groups")
        if out:
            p.add_argument("--out", help="output directory (default: current directory)")

    p = sub.add_parser("analyze", help="compute features for CoNLL-U documents")
    p.add_argument("inputs", nargs="+", help="CoNLL-U files or directories")
    common(p)
    p.add_argument("--parser-source", help="free-text tag naming the parser that produced the input")
    p.add_argument("--jobs", type=int, help="parallel worker processes")
    p.add_argument("--skip-bad", action="store_true", help="warn and continue on unreadable documents")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("train", help="train a classifier from a feature CSV")
    p.add_argument("features", help="feature CSV written by analyze")
    p.add_argument("--labels", required=True, help="doc_id<TAB>label file or class-per-directory tree")
    p.add_argument("--model", required=True, help="where to write the model")
    common(p)
    p.add_argument("--top-k", type=int, help="keep the k features with the highest information gain")
    p.add_argument("--parser-source")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="predict complexity levels for CoNLL-U documents")
    p.add_argument("model")
    p.add_argument("inputs", nargs="*")
    p.add_argument("--config")
    p.add_argument("--lang")
    p.add_argument("--manifest")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int)
    p.add_argument("--skip-bad", action="store_true")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="cross-validate a classifier on a feature CSV")
    p.add_argument("features")
    p.add_argument("--labels", required=True)
    common(p, lang=False)
    p.add_argument("--select", help="feature-set sizes, e.g. all,75,50,25")
    p.add_argument("--k", type=int, help="number of folds")
    p.add_argument("--seed", type=int)
    p.add_argument("--holdout", type=float, nargs="?", const=0.8, default=None,
                   help="also report a stratified hold-out split (train fraction, default 0.8)")
    p.add_argument("--per-group", action="store_true", help="one row per feature group")
    p.add_argument("--select-on-full", action="store_true",
                   help="rank features on the whole dataset instead of each training fold")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("intersect", help="features shared by several languages")
    p.add_argument("--config")
    p.add_argument("--lang", action="append", help="language codes, comma separated or repeated")
    p.add_argument("--manifest", action="append", help="manifest path, repeatable")
    p.add_argument("--mode", choices=("all", "ratios"), default=None)
    p.add_argument("--out")
    p.add_argument("--evaluate", action="append", help="feature CSV to cross-validate on the shared features")
    p.add_argument("--labels", action="append", help="labels for the matching --evaluate")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("catalog", help="list the feature catalog")
    common(p)
    p.add_argument("--format", choices=("table", "csv", "markdown"), default="table")
    p.add_argument("--families", action="store_true", help="list named feature families and their ids")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Sequence[str] | None = None, out=None, log=None) -> int:
    out = out or sys.stdout
    log = log or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.out_given = getattr(args, "out", None) is not None
    try:
        _settle(args)
        if getattr(args, "k", None) is not None and args.k < 2:
            raise UsageError("--k must be at least 2")
        if getattr(args, "top_k", None) is not None and args.top_k < 1:
            raise UsageError("--top-k must be positive")
        if getattr(args, "jobs", None) is not None and args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return args.func(args, out, log)
    except UsageError as exc:
        print(f"azter: error: {exc}", file=log)
        return EXIT_USAGE
    except (DataError, ResourceError, DatasetError) as exc:
        print(f"azter: error: {exc}", file=log)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
