#!/usr/bin/env python3
"""
Command-line surface for homog235.

Reads settings from homog235.toml by default (override with --config):

    homog235 validate model.json
    homog235 classify model.json --json
    homog235 catalog list
    homog235 catalog emit D.6_lambda --param lambda=4 --out d6.json
    homog235 verify-tables --only D6_STAR
    homog235 monge verify n6-minus --points 50
    homog235 monge check my-system.monge

Exit codes: 0 success, 1 mathematical failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
import tomllib
from pathlib import Path

from homog235.errors import Homog235Error, ParseError

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homog235",
        description="Multiply transitive (2,3,5) distributions: models, classification, verification",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="Path to TOML config file (default: auto-detect homog235.toml)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="Check the model axioms of a model document")
    p.add_argument("path", help="Model document (JSON)")

    p = sub.add_parser("classify", help="Identify a model document in the catalog")
    p.add_argument("path", help="Model document (JSON)")
    p.add_argument("--json", action="store_true", help="Machine-readable output")

    p = sub.add_parser("catalog", help="List catalog labels or emit a model document")
    catalog_sub = p.add_subparsers(dest="catalog_command", required=True)
    catalog_sub.add_parser("list", help="Every label with its real/complex type and parameters")
    emit = catalog_sub.add_parser("emit", help="Write the model document of one label")
    emit.add_argument("label", help="Catalog key, e.g. 'D.6_lambda^2+' or 'N.7'")
    emit.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="Parameter value (repeatable), e.g. --param lambda=4",
    )
    emit.add_argument("--out", metavar="FILE", help="Output file (default: stdout)")

    p = sub.add_parser("verify-tables", help="Run the full catalog verification battery")
    p.add_argument(
        "--only",
        action="append",
        metavar="FAMILY",
        help="Restrict to a family, e.g. D6_STAR (repeatable)",
    )
    p.add_argument("--basis-changes", type=int, help="Random basis changes per label (overrides config)")

    p = sub.add_parser("monge", help="Verify Monge normal forms and coordinate frames")
    monge_sub = p.add_subparsers(dest="monge_command", required=True)
    monge_sub.add_parser("list", help="Corpus names in the configured directory")
    verify = monge_sub.add_parser("verify", help="Verify named corpora (default: all)")
    verify.add_argument("names", nargs="*", help="Corpus names, e.g. flat n6-minus")
    check = monge_sub.add_parser("check", help="Verify a corpus file")
    check.add_argument("path", help="Corpus file (.monge)")
    for q in (verify, check):
        q.add_argument("--points", type=int, help="Sample points (overrides config)")
        q.add_argument("--seed", type=int, help="Sampling seed (overrides config)")
        q.add_argument("--tol", type=float, help="Relative tolerance (overrides config)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    handlers = {
        "validate": _cmd_validate,
        "classify": _cmd_classify,
        "catalog": _cmd_catalog,
        "verify-tables": _cmd_verify_tables,
        "monge": _cmd_monge,
    }
    try:
        from homog235.config import Settings

        settings = Settings.from_config(args.config)
        return handlers[args.command](args, settings)
    except (ParseError, OSError, tomllib.TOMLDecodeError) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Homog235Error as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return EXIT_FAILURE


# ── Validate / classify ─────────────────────────────────────────────────


def _load_model(path: str):
    from homog235.document import ModelDocument

    return ModelDocument.from_file(Path(path)).to_model()


def _cmd_validate(args, settings) -> int:
    from homog235.models import validate_model

    report = validate_model(_load_model(args.path))
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAILURE


def _cmd_classify(args, settings) -> int:
    from homog235.classify import classify

    result = classify(_load_model(args.path))
    print(result.to_json() if args.json else result.line())
    return EXIT_OK


# ── Catalog ─────────────────────────────────────────────────────────────


def _parse_params(items: list[str]) -> dict[str, str]:
    params = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise ParseError(f"--param expects NAME=VALUE, got {item!r}")
        params[name.strip()] = value.strip()
    return params


def _cmd_catalog(args, settings) -> int:
    from homog235.catalog import COMPASS, load_catalog, n7_complex_key

    catalog = load_catalog(str(settings.catalog_dir))

    if args.catalog_command == "list":
        print(catalog.summary())
        print()
        print("N.7 arrows (sign r, sign s):")
        for (r, s), code in COMPASS.items():
            print(f"  {code:<3} r {'+0-'[1 - r]}  s {'+0-'[1 - s]}")
        return EXIT_OK

    from homog235.document import ModelDocument

    key, params = args.label, _parse_params(args.param)
    if key == "N.7":
        key, params = n7_complex_key(params.get("a", "1"), params.get("b", "2"))
    model = catalog.build(key, params)
    label = catalog.expected_label(key, params)
    doc = ModelDocument.from_model(model, meta={"label": str(label), "key": key})
    if args.out:
        doc.write(args.out)
        print(f"{label} written to {args.out}")
    else:
        sys.stdout.write(doc.to_json())
    return EXIT_OK


# ── Verification ────────────────────────────────────────────────────────


def _cmd_verify_tables(args, settings) -> int:
    from homog235.catalog import load_catalog
    from homog235.harness import parse_family, verify_tables

    settings = settings.override(basis_changes=args.basis_changes)
    only = [parse_family(f) for f in args.only] if args.only else None
    report = verify_tables(load_catalog(str(settings.catalog_dir)), settings, only, echo=print)
    print()
    print(report.summary())
    return EXIT_OK if report.ok else EXIT_FAILURE


def _cmd_monge(args, settings) -> int:
    from homog235.monge import MongeCorpus, list_corpora, load_corpus

    if args.monge_command == "list":
        for name in list_corpora(settings):
            print(name)
        return EXIT_OK

    settings = settings.override(points=args.points, seed=args.seed, tolerance=args.tol)
    if args.monge_command == "check":
        corpora = [MongeCorpus.from_file(args.path)]
    else:
        names = args.names or list_corpora(settings)
        corpora = [load_corpus(name, settings) for name in names]

    ok = True
    for corpus in corpora:
        plan = corpus.plan(settings.points, settings.seed, settings.tolerance)
        report = corpus.verify(plan)
        print(report.summary())
        print()
        ok = ok and report.ok
    return EXIT_OK if ok else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
