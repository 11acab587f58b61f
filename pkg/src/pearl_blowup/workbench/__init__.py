"""Input documents, built-in fixtures, reports and the command line."""

from pearl_blowup.workbench.document import (
    Workspace,
    dump_spec,
    parse_spec,
    read_spec,
    workspace_to_document,
)
from pearl_blowup.workbench.fixtures import EXAMPLES, builtin_example
from pearl_blowup.workbench.report import COMMANDS, Report, run_report

__all__ = [
    "COMMANDS",
    "EXAMPLES",
    "Report",
    "Workspace",
    "builtin_example",
    "dump_spec",
    "parse_spec",
    "read_spec",
    "run_report",
    "workspace_to_document",
]
