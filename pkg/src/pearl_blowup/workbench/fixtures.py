"""Built-in example documents shipped with the package."""

from __future__ import annotations

from importlib import resources

from pearl_blowup.errors import UnknownExample
from pearl_blowup.workbench.document import Workspace, parse_spec

EXAMPLES = ("clifford-cp2", "rp2-cp2", "acyclic-pair", "point-lagrangian")


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return resources.files("pearl_blowup.workbench").joinpath("examples", f"{name}.json").read_text("utf-8")


def builtin_example(name: str) -> Workspace:
    return parse_spec(example_text(name))


__all__ = ["EXAMPLES", "builtin_example", "example_text"]
