"""Regenerate docs/catalog.md from the feature catalog and family table."""

from __future__ import annotations

import argparse
import io
from pathlib import Path

from azter.cli import main
from azter.features import CATALOG
from azter.resources import load_profile, shipped_manifest

DOC = Path(__file__).resolve().parent.parent / "docs" / "catalog.md"


def _run(*argv: str) -> str:
    buf = io.StringIO()
    if main(list(argv), out=buf) != 0:
        raise SystemExit(f"azter {' '.join(argv)} failed")
    return buf.getvalue()


def render() -> str:
    counts = []
    for lang in ("en", "es", "eu"):
        profile = load_profile(shipped_manifest(lang), lang)
        counts.append(f"| {lang} | {len(profile.available_features)} |")
    parts = [
        "# Feature catalog",
        "",
        "Generated by `python3 tools/write_catalog_doc.py`; do not edit by hand.",
        "Columns of `features.csv` follow the order of the first table.",
        "",
        "## Features available with the shipped bundles",
        "",
        "| language | features |",
        "|---|---|",
        *counts,
        f"| catalog | {len(CATALOG.ids)} |",
        "",
        "## Feature families",
        "",
        "Each named measure and the ids that compute it.",
        "",
        _run("catalog", "--families", "--format", "markdown").rstrip("\n"),
        "",
        "## All features",
        "",
        "Kinds: `absolute` counts are dropped in `ratios` mode; the other kinds are kept.",
        "",
        _run("catalog", "--format", "markdown").rstrip("\n"),
        "",
    ]
    return "\n".join(parts)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="exit 1 if the checked-in file is stale")
    args = ap.parse_args()
    text = render()
    if args.check:
        raise SystemExit(0 if DOC.exists() and DOC.read_text(encoding="utf-8") == text else 1)
    DOC.parent.mkdir(exist_ok=True)
    DOC.write_text(text, encoding="utf-8")
    print(f"wrote {DOC}")
