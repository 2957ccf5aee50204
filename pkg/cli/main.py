"""nsakit command-line driver."""
import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from cli.commands import STUDIES, ExitCode, cmd_case_study, cmd_model_check, cmd_normalize, logger
from data.models import Caps, RunConfig
from exceptions.nsakit_exceptions import (
    CapExceededError, NsaKitError, NsaSyntaxError, NsaTypeError, RulePreconditionError,
    UnsupportedFragmentError,
)
from utils.logging import set_toolkit_level


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsakit", description="Normal forms, witnesses and case studies for nonstandard analysis")
    parser.add_argument("--verbose", action="store_true", help="Log rule applications")
    commands = parser.add_subparsers(dest="command", required=True)

    normalize = commands.add_parser("normalize", help="Rewrite a formula file into normal form")
    normalize.add_argument("file", type=Path)
    normalize.add_argument("--annotations", type=Path, default=None, help="JSON list of monotonicity annotations")
    normalize.add_argument("--json", action="store_true", help="Emit the versioned JSON report")

    case_study = commands.add_parser("case-study", help="Run a numeric verification sweep")
    case_study.add_argument("name", type=str.upper, choices=sorted(STUDIES))
    case_study.add_argument("--seed", type=int, default=None)
    case_study.add_argument("--caps", default=None, help="search=N,depth=N,max-depth=N,universe=N")
    case_study.add_argument("--json", action="store_true")

    model_check = commands.add_parser("model-check", help="Check a recorded trace in finite two-level models")
    model_check.add_argument("trace", type=Path, nargs="?", default=None)
    model_check.add_argument("--models", type=Path, default=None, help="Directory of model JSON files")
    model_check.add_argument("--random", type=int, default=0, metavar="N", help="Check N seeded random rule instances instead")
    model_check.add_argument("--seed", type=int, default=None)
    model_check.add_argument("--caps", default=None)
    model_check.add_argument("--json", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    inputs: List[Path] = []
    if args.command == "normalize":
        inputs = [args.file]
    elif args.command == "model-check" and args.trace is not None:
        inputs = [args.trace]
    return RunConfig(
        command=args.command,
        inputs=inputs,
        seed=RunConfig.resolve_seed(getattr(args, "seed", None)),
        caps=Caps.parse(getattr(args, "caps", None)),
        output_format="json" if args.json else "text",
        annotations=getattr(args, "annotations", None),
        models_dir=getattr(args, "models", None),
        case_study=getattr(args, "name", None),
    )


async def dispatch(args: argparse.Namespace, config: RunConfig, out: TextIO) -> int:
    if config.command == "normalize":
        return await cmd_normalize(config, out)
    if config.command == "case-study":
        return await cmd_case_study(config, out)
    if not config.inputs and not args.random:
        raise NsaKitError("model-check needs a trace file or --random N")
    return await cmd_model_check(config, out, args.random)


def main(argv: Optional[List[str]] = None, out: TextIO = sys.stdout) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        set_toolkit_level(logging.DEBUG)
    try:
        config = config_from_args(args)
        return asyncio.run(dispatch(args, config, out))
    except (NsaSyntaxError, NsaTypeError) as e:
        logger.error(f"input error: {e}")
        return ExitCode.INPUT_ERROR
    except RulePreconditionError as e:
        logger.error(f"rule precondition: {e}")
        return ExitCode.INPUT_ERROR
    except UnsupportedFragmentError as e:
        logger.error(f"unsupported fragment: {e}")
        return ExitCode.INPUT_ERROR
    except CapExceededError as e:
        logger.error(f"cap exceeded in {e.cell or 'run'}: {e}")
        return ExitCode.CAP_EXCEEDED
    except (NsaKitError, OSError, ValueError, KeyError) as e:
        logger.error(str(e))
        return ExitCode.INPUT_ERROR
