"""
generate: synthetic survey CSV with planted informative attributes
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from cli.common import UsageError, add_runtime_arguments, informative_list, positive_int
from config import SURVEY_CLASS_RATIO, SURVEY_N_ROWS, TSI_ATTRIBUTES
from core.data.tabular import write_csv
from core.errors import ReportError, SchemaError
from core.synth.generator import DEFAULT_N_CATEGORIES, SURVEY_INFORMATIVE, SynthSpec, generate

logger = logging.getLogger(__name__)

DEFAULT_ROWS = 10_000


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("generate", help="Write a synthetic survey table")
    parser.add_argument("--out", required=True, help="Output CSV path")
    parser.add_argument("--rows", type=positive_int, default=None,
                        help=f"Number of rows (default {DEFAULT_ROWS}, {SURVEY_N_ROWS} with --survey-layout)")
    parser.add_argument("--attributes", type=positive_int, default=None,
                        help=f"Number of attributes (default {len(TSI_ATTRIBUTES)})")
    parser.add_argument("--categories", type=positive_int, default=DEFAULT_N_CATEGORIES,
                        help=f"Answer categories per attribute (default {DEFAULT_N_CATEGORIES})")
    parser.add_argument("--informative", type=informative_list, default=None,
                        help="Planted attributes as number:strength pairs, e.g. 3:0.6,18:0.5,7:0.4")
    parser.add_argument("--class-ratio", type=float, default=None,
                        help=f"Share of the second class (default {SURVEY_CLASS_RATIO:.4f})")
    parser.add_argument("--missing-rate", type=float, default=0.0,
                        help="Share of empty attribute cells, in [0, 1)")
    parser.add_argument("--survey-layout", action="store_true",
                        help="Survey shape: 196203 rows, 21 named attributes, attributes 3/18/7 planted "
                             "(not combinable with --attributes or --class-ratio)")
    add_runtime_arguments(parser)
    parser.set_defaults(handler=run)
    return parser


def build_spec(args: argparse.Namespace) -> SynthSpec:
    if args.informative is not None:
        informative = tuple((number - 1, strength) for number, strength in args.informative)
    else:
        informative = SURVEY_INFORMATIVE if args.survey_layout else ()

    if args.survey_layout:
        fixed = [flag for flag, value in (("--attributes", args.attributes), ("--class-ratio", args.class_ratio))
                 if value is not None]
        if fixed:
            raise UsageError(f"--survey-layout fixes the table shape; drop {', '.join(fixed)}")
        n_rows = args.rows or SURVEY_N_ROWS
        n_attributes = len(TSI_ATTRIBUTES)
        class_ratio = SURVEY_CLASS_RATIO
    else:
        n_rows = args.rows or DEFAULT_ROWS
        n_attributes = len(TSI_ATTRIBUTES) if args.attributes is None else args.attributes
        class_ratio = SURVEY_CLASS_RATIO if args.class_ratio is None else args.class_ratio

    try:
        return SynthSpec(
            n_rows=n_rows,
            n_attributes=n_attributes,
            n_categories=args.categories,
            informative=informative,
            class_ratio=class_ratio,
            missing_rate=args.missing_rate,
            seed=args.seed,
        )
    except SchemaError as e:
        raise UsageError(str(e)) from None


def run(args: argparse.Namespace) -> int:
    spec = build_spec(args)
    table = generate(spec)

    out = Path(args.out)
    manifest_path = out.with_name(out.name + ".manifest.json")
    try:
        write_csv(table, out)
        with open(manifest_path, "w", encoding="utf-8") as f:
            json.dump(spec.manifest(), f, indent=2)
            f.write("\n")
    except OSError as e:
        raise ReportError(e.filename or out, e.strerror or str(e)) from e

    logger.info(f" Manifest written to {manifest_path}")
    json.dump(spec.manifest(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0
