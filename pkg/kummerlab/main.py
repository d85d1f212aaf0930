"""Command-line entry point."""
import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

import pydantic

from kummerlab import __version__
from kummerlab.commands.base import CommandResult, RunConfig
from kummerlab.commands.registry import CommandRegistry, command_registry
from kummerlab.commands.reports import render_csv, render_json
from kummerlab.config import settings
from kummerlab.utils.exceptions import KummerLabError, ValidationError
from kummerlab.utils.logger import get_logger

logger = get_logger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises ValidationError instead of printing usage and exiting."""

    def error(self, message: str):
        raise ValidationError(f"{self.prog}: {message}")


def build_parser(registry: CommandRegistry = command_registry) -> ArgumentParser:
    parser = ArgumentParser(prog=settings.TOOL_NAME, description="Kummer-carry computations for f(n)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in registry.get_all_commands():
        sub = subparsers.add_parser(command.name, help=command.description, description=command.description)
        sub.add_argument("--config", dest="config_file", default=None, help="JSON file of default parameters")
        command.add_arguments(sub)
    return parser


def load_config_file(path: Optional[str]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"cannot read config file {path}: {e}")
    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must hold a JSON object")
    return data


def render(result: CommandResult, config: RunConfig) -> str:
    if result.text is not None:
        return result.text + "\n"
    if config.format == "csv" and result.table is not None:
        return render_csv(result.table)
    return render_json(result.data)


def _error_object(error: Exception) -> Dict[str, Any]:
    if isinstance(error, KummerLabError):
        return error.to_dict()
    if isinstance(error, pydantic.ValidationError):
        return {
            "error": "ValidationError",
            "message": f"{error.error_count()} invalid parameter(s)",
            "details": {"errors": error.errors(include_url=False, include_context=False)},
        }
    return {"error": type(error).__name__, "message": str(error), "details": {}}


def run(argv: Optional[List[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """Parse, validate, dispatch and emit; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    name = settings.TOOL_NAME
    start_time = time.time()
    try:
        args = vars(build_parser().parse_args(argv))
        name = args.pop("command")
        command = command_registry.get_command(name)
        merged = {**load_config_file(args.pop("config_file", None)), **args}
        config = command.config_model.model_validate(merged)
        logger.info(f"→ {name} {config.model_dump(exclude_defaults=True)}")
        result = command.execute(config)
    except (KummerLabError, pydantic.ValidationError) as e:
        code = e.exit_code if isinstance(e, KummerLabError) else 1
        logger.error(f"✗ {name} | {e} | Time: {time.time() - start_time:.3f}s")
        stderr.write(render_json(_error_object(e)))
        return code

    output = render(result, config)
    if config.out:
        Path(config.out).write_text(output, encoding="utf-8")
    else:
        stdout.write(output)
    if not result.success:
        stderr.write(render_json({"error": "VerificationFailed", "message": result.message, "details": {}}))
    logger.info(f"← {name} | {result.message} | exit {result.exit_code} | Time: {time.time() - start_time:.3f}s")
    return result.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
