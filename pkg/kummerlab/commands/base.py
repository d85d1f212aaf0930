"""Base command interface."""
import argparse
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from kummerlab.construct.params import ConstructionParams, parse_rational


class RunConfig(BaseModel):
    """Parameters shared by every command."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True, arbitrary_types_allowed=True)

    workers: Optional[int] = Field(default=None, ge=1)
    out: Optional[str] = None
    format: str = Field(default="csv", pattern="^(csv|json)$")

    @model_validator(mode="before")
    @classmethod
    def _out_as_format(cls, data: Any) -> Any:
        # "--out csv" names a format, not a file
        if isinstance(data, dict) and data.get("out") in ("csv", "json"):
            data = {**data, "format": data["out"], "out": None}
        return data


class ConstructionConfig(RunConfig):
    """Commands parameterised by (M, C, theta)."""

    M: int
    C: Fraction
    theta: Fraction

    @field_validator("C", "theta", mode="before")
    @classmethod
    def _rational(cls, value: Any, info) -> Fraction:
        return parse_rational(value, info.field_name)

    def params(self, t_max: int = 10_000_000) -> ConstructionParams:
        return ConstructionParams(M=self.M, C=self.C, theta=self.theta, t_max=t_max)


def int_list(value: Any) -> Any:
    """Accept "11,13" as well as a JSON list."""
    if isinstance(value, str):
        return [int(v) for v in value.replace(" ", ",").split(",") if v]
    return value


class Table:
    """A header and rows for CSV emission.

    ``comments`` are written as ``# key=value`` lines above the header.
    """

    def __init__(
        self,
        header: Sequence[str],
        rows: Optional[List[Sequence[Any]]] = None,
        comments: Optional[Dict[str, Any]] = None,
    ):
        self.header = list(header)
        self.rows = rows or []
        self.comments = dict(comments or {})

    def append(self, row: Sequence[Any]):
        self.rows.append(list(row))


class CommandResult:
    """Result of a command execution."""

    def __init__(
        self,
        success: bool,
        message: str,
        data: Optional[Dict[str, Any]] = None,
        table: Optional[Table] = None,
        text: Optional[str] = None,
        exit_code: Optional[int] = None,
    ):
        self.success = success
        self.message = message
        self.data = data or {}
        self.table = table
        self.text = text
        # a failed check without an explicit code is a verification failure
        self.exit_code = exit_code if exit_code is not None else (0 if success else 3)


class Command(ABC):
    """Base class for CLI commands.

    Options are derived from the fields of ``config_model``: ``--name`` with
    underscores dropped, or the field alias when one is declared. Fields named
    in ``positional`` become positional arguments.
    """

    config_model: Type[RunConfig] = RunConfig
    positional: Tuple[str, ...] = ()

    def __init__(self, name: str, description: str):
        """
        Initialize command.

        Args:
            name: Subcommand name
            description: One-line help text
        """
        self.name = name
        self.description = description

    @abstractmethod
    def execute(self, config: RunConfig) -> CommandResult:
        """
        Execute the command.

        Args:
            config: Validated run configuration

        Returns:
            CommandResult with the report
        """

    def add_arguments(self, parser: argparse.ArgumentParser):
        for name, info in self.config_model.model_fields.items():
            if name in self.positional:
                parser.add_argument(name, nargs="?", default=argparse.SUPPRESS)
                continue
            flag = "--" + (info.alias or name.replace("_", ""))
            if info.annotation is bool:
                parser.add_argument(flag, dest=name, action="store_true", default=argparse.SUPPRESS)
            else:
                parser.add_argument(flag, dest=name, default=argparse.SUPPRESS, help=info.description)
