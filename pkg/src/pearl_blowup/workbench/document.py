"""JSON input documents <-> validated :class:`Workspace`.

Rationals are written as ``"p/q"`` strings (integers may be bare); floats are
refused so no rounding can enter.  Areas are always in units of π.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from pearl_blowup.blowup import BlowupParams, blowup_params
from pearl_blowup.errors import ParseError, ValidationError
from pearl_blowup.model import (
    CriticalPoint,
    DiskClass,
    FloerPairData,
    LagrangianData,
    ManifoldData,
    TrajectoryCount,
    floer_pair_issues,
    lagrangian_issues,
)


@dataclass(frozen=True)
class Workspace:
    manifold: ManifoldData
    lagrangians: tuple[LagrangianData, ...] = ()
    floer_pairs: tuple[FloerPairData, ...] = ()
    metadata: dict = field(default_factory=dict, hash=False)

    def blowup(self) -> BlowupParams:
        return blowup_params(self.manifold)

    def lagrangian(self, name: str) -> LagrangianData:
        for L in self.lagrangians:
            if L.name == name:
                return L
        raise KeyError(name)

    def lagrangians_for(self, pair: FloerPairData) -> tuple[LagrangianData, ...]:
        if pair.lagrangians:
            return tuple(self.lagrangian(n) for n in pair.lagrangians)
        return self.lagrangians


# reading

class _Reader:
    def fail(self, path: str, msg: str):
        raise ParseError(f"{path}: {msg}")

    def obj(self, value, path) -> dict:
        if not isinstance(value, dict):
            self.fail(path, "expected an object")
        return value

    def arr(self, value, path) -> list:
        if not isinstance(value, list):
            self.fail(path, "expected an array")
        return value

    def key(self, d: dict, k: str, path: str):
        if k not in d:
            self.fail(path, f"missing key {k!r}")
        return d[k]

    def integer(self, value, path) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, f"expected an integer, got {value!r}")
        return value

    def boolean(self, value, path) -> bool:
        if not isinstance(value, bool):
            self.fail(path, f"expected true/false, got {value!r}")
        return value

    def string(self, value, path) -> str:
        if not isinstance(value, str) or not value:
            self.fail(path, f"expected a non-empty string, got {value!r}")
        return value

    def rational(self, value, path) -> Fraction:
        if isinstance(value, bool) or isinstance(value, float):
            self.fail(path, f"rationals must be integers or 'p/q' strings, got {value!r}")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                pass
        self.fail(path, f"not a rational literal: {value!r}")

    def disk_class(self, d, path) -> DiskClass:
        d = self.obj(d, path)
        return DiskClass(
            self.string(self.key(d, "name", path), f"{path}.name"),
            self.integer(self.key(d, "maslov", path), f"{path}.maslov"),
            self.rational(self.key(d, "area_over_pi", path), f"{path}.area_over_pi"),
            exc_mult=self.integer(d.get("exc_mult", 0), f"{path}.exc_mult"),
            through_point=self.boolean(d.get("through_point", False), f"{path}.through_point"),
        )

    def count(self, d, path, needs_class: bool) -> TrajectoryCount:
        d = self.obj(d, path)
        cls = d.get("class")
        if cls is not None:
            cls = self.string(cls, f"{path}.class")
        elif needs_class:
            self.fail(path, "missing key 'class'")
        return TrajectoryCount(
            self.string(self.key(d, "from", path), f"{path}.from"),
            self.string(self.key(d, "to", path), f"{path}.to"),
            cls,
            self.integer(self.key(d, "count", path), f"{path}.count"),
        )

    def lagrangian(self, d, path) -> LagrangianData:
        d = self.obj(d, path)
        pts = self.arr(self.key(d, "critical_points", path), f"{path}.critical_points")
        betti = d.get("betti_mod2")
        if betti is not None:
            betti = tuple(self.integer(b, f"{path}.betti_mod2[{i}]")
                          for i, b in enumerate(self.arr(betti, f"{path}.betti_mod2")))
        return LagrangianData(
            self.string(self.key(d, "name", path), f"{path}.name"),
            self.integer(self.key(d, "dim", path), f"{path}.dim"),
            tuple(CriticalPoint(
                self.string(self.key(self.obj(p, f"{path}.critical_points[{i}]"), "name",
                                     f"{path}.critical_points[{i}]"), f"{path}.critical_points[{i}].name"),
                self.integer(self.key(p, "index", f"{path}.critical_points[{i}]"),
                             f"{path}.critical_points[{i}].index"))
                for i, p in enumerate(pts)),
            tuple(self.disk_class(c, f"{path}.classes[{i}]")
                  for i, c in enumerate(self.arr(d.get("classes", []), f"{path}.classes"))),
            tuple(self.count(c, f"{path}.morse_counts[{i}]", False)
                  for i, c in enumerate(self.arr(d.get("morse_counts", []), f"{path}.morse_counts"))),
            tuple(self.count(c, f"{path}.quantum_counts[{i}]", True)
                  for i, c in enumerate(self.arr(d.get("quantum_counts", []), f"{path}.quantum_counts"))),
            betti,
        )

    def floer_pair(self, d, path, i) -> FloerPairData:
        d = self.obj(d, path)
        assertion = d.get("min_maslov_assertion")
        if assertion is not None:
            assertion = self.string(assertion, f"{path}.min_maslov_assertion")
        return FloerPairData(
            self.string(d.get("name", f"pair{i}"), f"{path}.name"),
            tuple(self.string(p, f"{path}.points[{j}]")
                  for j, p in enumerate(self.arr(self.key(d, "points", path), f"{path}.points"))),
            tuple(self.disk_class(c, f"{path}.strip_classes[{j}]")
                  for j, c in enumerate(self.arr(d.get("strip_classes", []), f"{path}.strip_classes"))),
            tuple(self.count(c, f"{path}.strip_counts[{j}]", True)
                  for j, c in enumerate(self.arr(d.get("strip_counts", []), f"{path}.strip_counts"))),
            assertion,
            tuple(self.string(n, f"{path}.lagrangians[{j}]")
                  for j, n in enumerate(self.arr(d.get("lagrangians", []), f"{path}.lagrangians"))),
        )


def _load(document: str) -> Any:
    if not document.strip():
        raise ParseError("empty document", 1, 1)
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def workspace_issues(W: Workspace) -> list[str]:
    issues: list[str] = []
    names = [L.name for L in W.lagrangians]
    for n in sorted({n for n in names if names.count(n) > 1}):
        issues.append(f"duplicate lagrangian name {n}")
    for L in W.lagrangians:
        issues.extend(lagrangian_issues(W.manifold, L))
    for pair in W.floer_pairs:
        issues.extend(floer_pair_issues(W.manifold, pair))
        for n in pair.lagrangians:
            if n not in names:
                issues.append(f"floer pair {pair.name}: references undeclared lagrangian {n}")
    return issues


def parse_spec(document: str) -> Workspace:
    """Parse and validate an input document.

    Raises :class:`ParseError` for malformed JSON or structure and
    :class:`ValidationError` listing every semantic problem found.
    """
    raw = _load(document)
    r = _Reader()
    top = r.obj(raw, "$")
    m = r.obj(r.key(top, "manifold", "$"), "$.manifold")
    n = r.integer(r.key(m, "n", "$.manifold"), "$.manifold.n")
    lam = r.rational(r.key(m, "lambda_pi", "$.manifold"), "$.manifold.lambda_pi")
    width = r.boolean(m.get("width_asserted", False), "$.manifold.width_asserted")
    try:
        manifold = ManifoldData(n, lam, width)
    except ValueError as exc:
        raise ValidationError([f"manifold: {exc}"]) from None
    lags = tuple(r.lagrangian(L, f"$.lagrangians[{i}]")
                 for i, L in enumerate(r.arr(top.get("lagrangians", []), "$.lagrangians")))
    pairs = tuple(r.floer_pair(p, f"$.floer_pairs[{i}]", i)
                  for i, p in enumerate(r.arr(top.get("floer_pairs", []), "$.floer_pairs")))
    meta = top.get("metadata", {})
    W = Workspace(manifold, lags, pairs, r.obj(meta, "$.metadata"))
    issues = workspace_issues(W)
    if issues:
        raise ValidationError(issues)
    return W


# writing

def _rat(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _class_doc(c: DiskClass) -> dict:
    d = {"name": c.name, "maslov": c.maslov, "area_over_pi": _rat(c.area_over_pi),
         "through_point": c.through_point}
    if c.exc_mult:
        d["exc_mult"] = c.exc_mult
    return d


def _count_doc(tc: TrajectoryCount) -> dict:
    d: dict[str, Any] = {"from": tc.source, "to": tc.target}
    if tc.class_name is not None:
        d["class"] = tc.class_name
    d["count"] = tc.count
    return d


def workspace_to_document(W: Workspace) -> dict:
    doc: dict[str, Any] = {
        "manifold": {"n": W.manifold.n, "lambda_pi": _rat(W.manifold.lambda_pi),
                     "width_asserted": W.manifold.width_asserted},
        "lagrangians": [],
    }
    for L in W.lagrangians:
        d: dict[str, Any] = {
            "name": L.name,
            "dim": L.dim,
            "critical_points": [{"name": p.name, "index": p.index} for p in L.critical_points],
            "classes": [_class_doc(c) for c in L.classes],
            "morse_counts": [_count_doc(c) for c in L.morse_counts],
            "quantum_counts": [_count_doc(c) for c in L.quantum_counts],
        }
        if L.betti_mod2 is not None:
            d["betti_mod2"] = list(L.betti_mod2)
        doc["lagrangians"].append(d)
    if W.floer_pairs:
        doc["floer_pairs"] = []
        for p in W.floer_pairs:
            d = {"name": p.name}
            if p.lagrangians:
                d["lagrangians"] = list(p.lagrangians)
            d["points"] = list(p.points)
            d["strip_classes"] = [_class_doc(c) for c in p.strip_classes]
            d["strip_counts"] = [_count_doc(c) for c in p.strip_counts]
            if p.min_maslov_assertion is not None:
                d["min_maslov_assertion"] = p.min_maslov_assertion
            doc["floer_pairs"].append(d)
    if W.metadata:
        doc["metadata"] = W.metadata
    return doc


def dump_spec(W: Workspace) -> str:
    return json.dumps(workspace_to_document(W), indent=2, ensure_ascii=False) + "\n"


def read_spec(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


__all__ = ["Workspace", "dump_spec", "parse_spec", "read_spec", "workspace_issues",
           "workspace_to_document"]
