"""Run a pipeline on a workspace and render the outcome.

A :class:`Report` holds plain JSON-compatible data only, so the text and JSON
renderings carry the same content and repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from pearl_blowup.algebra import format_scalar
from pearl_blowup.blowup import AdmissibilityVerdict, check_admissible
from pearl_blowup.errors import InputError, NoClasses, PearlBlowupError
from pearl_blowup.floer import (
    FloerComplex,
    assemble_floer_complex,
    blowup_floer_complex,
    floer_homology,
    lifted_strip_terms,
)
from pearl_blowup.model import HomologyResult, LagrangianData, minimal_maslov, morse_homology
from pearl_blowup.pearl import (
    ChainComplex,
    assemble_pearl_complex,
    blowup_pearl_complex,
    quantum_homology,
)
from pearl_blowup.workbench.document import Workspace

COMMANDS = ("check", "qh", "blowup", "hf", "hf-blowup")


def _rat(x: Fraction) -> str:
    return str(x)


@dataclass
class Report:
    command: str
    source: str
    sections: dict[str, Any] = field(default_factory=dict)
    refused: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {"command": self.command, "source": self.source, "refused": self.refused,
                **self.sections}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        out: list[str] = [f"command: {self.command}", f"source:  {self.source}"]
        _render(self.sections, out, 0)
        if self.refused:
            out.append("")
            out.append("REFUSED: blow-up homology not computed (input is not admissible)")
        return "\n".join(out) + "\n"


# text rendering

_TABLES = {"homology": ("degree", "free_rank"), "differential": ("from", "to", "entry")}


def _render(data: dict[str, Any], out: list[str], depth: int) -> None:
    pad = "  " * depth
    for key, value in data.items():
        if key in _TABLES and isinstance(value, list) and value:
            out.append(f"{pad}{key}:")
            _table(value, _TABLES[key], out, pad + "  ")
        elif isinstance(value, dict):
            out.append(f"{pad}{key}:")
            _render(value, out, depth + 1)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            out.append(f"{pad}{key}:")
            for item in value:
                lines: list[str] = []
                _render(item, lines, depth + 2)
                inner = "  " * (depth + 2)
                lines[0] = f"{pad}  - {lines[0][len(inner):]}"
                out.extend(lines)
        else:
            out.append(f"{pad}{key}: {_scalar(value)}")


def _scalar(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]" if v else "none"
    return str(v)


def _table(rows: list[dict], cols: tuple[str, ...], out: list[str], pad: str) -> None:
    if not rows:
        out.append(f"{pad}none")
        return
    cells = [[_scalar(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out.append(pad + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
    for row in cells:
        out.append(pad + "  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())


# report sections

def _verdict_section(v: AdmissibilityVerdict) -> dict[str, Any]:
    return {
        "admissible": v.admissible,
        "monotone": v.monotone_ok,
        "same_lambda": v.same_lambda_ok,
        "width_asserted": v.width_asserted,
        "min_maslov_blowup": v.min_maslov_blowup,
        "diagnostics": list(v.diagnostics),
    }


def _entries(C: ChainComplex | FloerComplex, var: str) -> list[dict[str, str]]:
    names = C.names if isinstance(C, ChainComplex) else C.generators
    rows = []
    for (i, j), x in sorted(C.differential.nonzero_entries()):
        rows.append({"from": names[j], "to": names[i], "entry": format_scalar(x, var)})
    rows.sort(key=lambda r: (names.index(r["from"]), names.index(r["to"])))
    return rows


def _homology_section(H: HomologyResult) -> dict[str, Any]:
    return {
        "period": H.period,
        "homology": [{"degree": d.degree, "free_rank": d.free_rank} for d in H.degrees],
        "total_rank": H.total_rank,
        "torsion": [format_scalar(x) for x in H.torsion],
        "reference_betti": list(H.reference_betti) if H.reference_betti is not None else None,
        "verdict": H.verdict,
    }


def _ring_min_maslov(L: LagrangianData) -> int:
    try:
        return minimal_maslov(L.classes)
    except NoClasses:
        return 0


def _qh(W: Workspace) -> dict[str, Any]:
    items = []
    for L in W.lagrangians:
        C = assemble_pearl_complex(W.manifold, L)
        H = quantum_homology(C, morse_homology(L).ranks)
        items.append({"name": L.name, "min_maslov": _ring_min_maslov(L),
                      "differential_zero": C.is_zero(), "differential": _entries(C, "t"),
                      **_homology_section(H)})
    return {"lagrangians": items}


def _blowup(W: Workspace, report: Report) -> dict[str, Any]:
    P = W.blowup()
    verdict = check_admissible(W.manifold, W.lagrangians)
    sections: dict[str, Any] = {
        "rho_sq": _rat(P.rho_sq),
        "lambda_pi": _rat(W.manifold.lambda_pi),
        "admissibility": _verdict_section(verdict),
    }
    if not verdict.admissible:
        report.refused = True
        return sections
    items = []
    for L in W.lagrangians:
        C, corrections = blowup_pearl_complex(W.manifold, L, P)
        H = quantum_homology(C, morse_homology(L).ranks)
        items.append({
            "name": L.name,
            "min_maslov": C.ring_min_maslov,
            "differential_zero": C.is_zero(),
            "differential": _entries(C, "t"),
            **_homology_section(H),
            "corrections": [
                {"from": c.source, "to": c.target, "classes": list(c.classes),
                 "transformed": list(c.transformed), "k": c.k, "parity": c.parity}
                for c in corrections
            ],
        })
    sections["lagrangians"] = items
    return sections


def _pairs(W: Workspace):
    if not W.floer_pairs:
        raise InputError("document has no floer_pairs section")
    return W.floer_pairs


def _hf(W: Workspace) -> dict[str, Any]:
    items = []
    for pair in _pairs(W):
        C = assemble_floer_complex(pair)
        items.append({"name": pair.name, "generators": list(C.generators),
                      "differential": _entries(C, "T"), "rank": floer_homology(C)})
    return {"floer_pairs": items}


def _hf_blowup(W: Workspace, report: Report) -> dict[str, Any]:
    P = W.blowup()
    items = []
    for pair in _pairs(W):
        verdict = check_admissible(W.manifold, W.lagrangians_for(pair))
        item: dict[str, Any] = {"name": pair.name, "admissibility": _verdict_section(verdict)}
        if not verdict.admissible:
            report.refused = True
            items.append(item)
            continue
        base = assemble_floer_complex(pair)
        lifted = blowup_floer_complex(pair, P, verdict)
        item.update({
            "generators": list(base.generators),
            "lifted_strips": [{"from": s, "to": t, "class": c.name, "area_over_pi": _rat(c.area_over_pi),
                               "parity": p} for s, t, c, p in lifted_strip_terms(pair, P)],
            "differential": _entries(lifted, "T"),
            "base_rank": floer_homology(base),
            "rank": floer_homology(lifted),
        })
        items.append(item)
    return {"rho_sq": _rat(P.rho_sq), "floer_pairs": items}


def run_report(W: Workspace, command: str, source: str = "<workspace>") -> Report:
    """Execute ``command`` on ``W``.

    Errors keep their type; the message gains the command as a prefix and the
    command name is stored on the exception as ``command``.
    """
    if command not in COMMANDS:
        raise ValueError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    report = Report(command, source)
    try:
        if command == "check":
            report.sections = {"rho_sq": _rat(W.blowup().rho_sq),
                               "admissibility": _verdict_section(check_admissible(W.manifold, W.lagrangians))}
        elif command == "qh":
            report.sections = _qh(W)
        elif command == "blowup":
            report.sections = _blowup(W, report)
        elif command == "hf":
            report.sections = _hf(W)
        else:
            report.sections = _hf_blowup(W, report)
    except PearlBlowupError as exc:
        exc.command = command
        exc.args = (f"{command}: {exc}",)
        raise
    return report


__all__ = ["COMMANDS", "Report", "run_report"]
