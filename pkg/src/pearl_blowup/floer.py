"""Floer complex of a transverse pair and its transfer to the blow-up.

Entries are Novikov sums ``count * T^{ω(u)/π}`` over index-1 strip classes.
After blowing up a point, a strip class of index 2n-1 whose strips pass
through the point contributes its proper transform, of index 1 and area
reduced by ρ².  The complex is ungraded; homology is reported as a rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from pearl_blowup.algebra import NovikovScalar, ScalarMatrix, rank_over_fraction_field
from pearl_blowup.algebra.matrix import ZERO
from pearl_blowup.blowup import AdmissibilityVerdict, BlowupParams, proper_transform_class
from pearl_blowup.errors import BadIndex, InputError, NotAComplex, NotAdmissible
from pearl_blowup.model import DiskClass, FloerPairData


@dataclass(frozen=True)
class FloerComplex:
    generators: tuple[str, ...]
    differential: ScalarMatrix

    def __post_init__(self):
        n = len(self.generators)
        if self.differential.shape != (n, n):
            raise ValueError(f"differential shape {self.differential.shape} for {n} generators")
        if not (self.differential @ self.differential).is_zero():
            raise NotAComplex("Floer differential does not square to zero")

    def entry(self, source: str, target: str) -> NovikovScalar:
        return self.differential[self.generators.index(target), self.generators.index(source)]


def _assemble(pair: FloerPairData, terms: Iterable[tuple[str, str, DiskClass, int]]) -> FloerComplex:
    pts = list(pair.points)
    entries: dict[tuple[int, int], NovikovScalar] = {}
    for src, dst, cls, parity in terms:
        if parity:
            key = (pts.index(dst), pts.index(src))
            entries[key] = entries.get(key, ZERO) + NovikovScalar.monomial(cls.area_over_pi)
    return FloerComplex(tuple(pts), ScalarMatrix.from_entries(len(pts), len(pts), entries))


def _base_terms(pair: FloerPairData):
    for tc in pair.strip_counts:
        cls = pair.strip_class(tc.class_name)
        if cls.maslov == 1:
            yield tc.source, tc.target, cls, tc.parity
        elif not cls.through_point:
            raise BadIndex(f"strip count {tc.source}->{tc.target} in {cls.name} has index {cls.maslov}")


def _require_assertion(pair: FloerPairData) -> None:
    if pair.min_maslov_assertion is None:
        raise InputError(
            f"floer pair {pair.name}: d∘d = 0 needs minimal Maslov >= 3 or Hamiltonian isotopy; "
            "set min_maslov_assertion")


def assemble_floer_complex(pair: FloerPairData) -> FloerComplex:
    _require_assertion(pair)
    return _assemble(pair, _base_terms(pair))


def floer_homology(C: FloerComplex) -> int:
    """Rank of HF over the Novikov field: #generators - 2 rank(d)."""
    return len(C.generators) - 2 * rank_over_fraction_field(C.differential)


def lifted_strip_terms(pair: FloerPairData, P: BlowupParams):
    """(source, target, transformed class, parity) for strips through the blown-up point."""
    lifted_index = 2 * P.n - 1
    for tc in pair.strip_counts:
        cls = pair.strip_class(tc.class_name)
        if cls.maslov == 1 or not cls.through_point:
            continue
        if cls.maslov != lifted_index:
            raise BadIndex(f"marked strip class {cls.name} has index {cls.maslov}, "
                           f"expected {lifted_index}")
        new = proper_transform_class(cls, 1, P)
        if new.area_over_pi <= 0:
            raise InputError(f"transformed strip {new.name} has area {new.area_over_pi} <= 0")
        yield tc.source, tc.target, new, tc.parity


def blowup_floer_complex(pair: FloerPairData, P: BlowupParams,
                         verdict: Optional[AdmissibilityVerdict] = None) -> FloerComplex:
    if verdict is not None and not verdict.admissible:
        raise NotAdmissible("; ".join(verdict.diagnostics))
    _require_assertion(pair)
    terms = list(_base_terms(pair)) + list(lifted_strip_terms(pair, P))
    return _assemble(pair, terms)


__all__ = [
    "FloerComplex",
    "assemble_floer_complex",
    "blowup_floer_complex",
    "floer_homology",
    "lifted_strip_terms",
]
