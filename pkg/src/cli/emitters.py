"""
JSON and CSV writers for command records.
"""

import csv
import io
from pathlib import Path
from typing import Iterable, List, Optional, TextIO

import jsonschema
import orjson

from ..utils.logger import get_logger
from ..utils.validators import validate_output_format, validate_output_path
from .schemas import SCHEMA_VERSION, csv_columns, record_schema

logger = get_logger("cli")


def stamp(command: str, record: dict) -> dict:
    """Prefix a record with its schema version and command name."""
    return {"schema_version": SCHEMA_VERSION, "command": command, **record}


def validate_record(command: str, record: dict) -> None:
    """
    Raises:
        jsonschema.ValidationError: If the record breaks its documented schema
    """
    jsonschema.validate(instance=record, schema=record_schema(command))


def _csv_cell(value):
    if isinstance(value, (list, tuple, dict)):
        return orjson.dumps(value).decode()
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def render(command: str, records: List[dict], format_name: str, lines: bool = False) -> str:
    """
    Render stamped, validated records.

    Args:
        command: Subcommand name (selects schema and CSV columns)
        records: Unstamped records
        format_name: json or csv
        lines: Emit JSON lines even for a single record

    Returns:
        Text ending in a newline
    """
    format_name = validate_output_format(format_name)
    stamped = [stamp(command, r) for r in records]
    for record in stamped:
        validate_record(command, record)

    if format_name == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=csv_columns(command), lineterminator="\n")
        writer.writeheader()
        for record in stamped:
            writer.writerow({k: _csv_cell(v) for k, v in record.items()})
        return buffer.getvalue()

    if lines or len(stamped) != 1:
        return "".join(orjson.dumps(r).decode() + "\n" for r in stamped)
    return orjson.dumps(stamped[0], option=orjson.OPT_INDENT_2).decode() + "\n"


def emit(text: str, out: Optional[Path], stream: TextIO) -> None:
    """Write to ``out`` when given, otherwise to ``stream``."""
    if out is None:
        stream.write(text)
        stream.flush()
        return
    out = validate_output_path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"wrote {out}")


def parse_json_lines(text: str) -> Iterable[dict]:
    """Inverse of the JSON-lines rendering."""
    return [orjson.loads(line) for line in text.splitlines() if line.strip()]
