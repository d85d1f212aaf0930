"""CSV and JSON emission with stable formatting."""
import csv
import io
import json
from fractions import Fraction
from typing import Any

import numpy as np

from kummerlab.commands.base import Table


def format_value(value: Any) -> str:
    """Floats to 12 significant digits, exact integers and rationals unabbreviated."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".12g")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (tuple, list)):
        return " ".join(format_value(v) for v in value)
    return str(value)


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    for key, value in table.comments.items():
        buffer.write(f"# {key}={format_value(value)}\n")
    writer = csv.writer(buffer, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def _json_default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return str(value)


def render_json(data: Any) -> str:
    """UTF-8 JSON with sorted keys."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, default=_json_default) + "\n"
