import datetime as dt
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from jsonschema import Draft202012Validator, validate
from jsonschema.exceptions import ValidationError

from graphs.errors import MalformedInputError

from .schemas import COMMANDS, REPORT_SCHEMA_VERSION, report_schema

logger = logging.getLogger(__name__)

TOOL_VERSION = "1.0.0"


def validate_json(payload: Any, schema: dict) -> Tuple[bool, Any, Optional[str]]:
    try:
        validate(instance=payload, schema=schema, cls=Draft202012Validator)
        return True, payload, None
    except ValidationError as e:
        return False, payload, e.message


def envelope(
    command: str,
    result: Dict[str, Any],
    config: Optional[Dict[str, Any]] = None,
    meta: bool = True,
    exit_status: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Wrap a result payload in the versioned report envelope

    Args:
        command: Subcommand name
        result: ``to_dict()`` output of the result object
        config: Run configuration echoed into the report
        meta: Add {generated_at, tool_version}; off for byte-identical output
        exit_status: Strict-mode status, when one applies

    Returns:
        The report dict, ready for validation
    """
    report = {"schema": REPORT_SCHEMA_VERSION, "command": command, "result": result}
    if config is not None:
        report["config"] = config
    if exit_status is not None:
        report["exit_status"] = exit_status
    if meta:
        report["meta"] = {
            "generated_at": dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds"),
            "tool_version": TOOL_VERSION,
        }
    return report


def dumps_report(report: Dict[str, Any]) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def check_report(report: Any) -> Dict[str, Any]:
    """
    Validate a report against the schema of its command

    Raises:
        MalformedInputError: unknown command or schema mismatch
    """
    command = report.get("command") if isinstance(report, dict) else None
    if command not in COMMANDS:
        raise MalformedInputError(f"unknown report command {command!r}")
    ok, _, err = validate_json(report, report_schema(command))
    if not ok:
        raise MalformedInputError(f"{command} report failed schema validation: {err}")
    return report


def dump_report(report: Dict[str, Any], path: Optional[Union[str, Path]] = None) -> str:
    """Validate, serialize, and optionally write a report; returns the JSON text."""
    text = dumps_report(check_report(report))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("wrote %s report to %s", report["command"], path)
    return text


def load_report(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        report = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"{path}: not JSON ({e.msg} at line {e.lineno})")
    return check_report(report)
