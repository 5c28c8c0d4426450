"""
Report output: versioned JSON envelopes, CSV tables, charts and DOT exports
"""
from .charts import growth_chart, jurisdiction_chart
from .dot import PALETTE, component_color, render_dot, write_dot
from .json_guard import TOOL_VERSION, check_report, dump_report, dumps_report, envelope, load_report, validate_json
from .schemas import COMMANDS, REPORT_SCHEMA_VERSION, RESULT_SCHEMAS, report_schema
from .tables import growth_csv, jurisdiction_csv, read_growth_csv, read_jurisdiction_csv

__all__ = [
    "COMMANDS",
    "PALETTE",
    "REPORT_SCHEMA_VERSION",
    "RESULT_SCHEMAS",
    "TOOL_VERSION",
    "check_report",
    "component_color",
    "dump_report",
    "dumps_report",
    "envelope",
    "growth_chart",
    "growth_csv",
    "jurisdiction_chart",
    "jurisdiction_csv",
    "load_report",
    "read_growth_csv",
    "read_jurisdiction_csv",
    "render_dot",
    "report_schema",
    "validate_json",
    "write_dot",
]
