"""Pearl complex, Lagrangian quantum homology and its blow-up transform.

The differential sends a critical point x to the sum of count * t^{μ(A)/N} y
over rigid configurations (pearl dimension 0); Morse flow lines are the A = 0
terms.  Generators keep their Morse index as degree and t has degree -N, so
each matrix entry is a single monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from pearl_blowup.algebra import NovikovScalar, ScalarMatrix, homology_decompose
from pearl_blowup.algebra.matrix import ZERO
from pearl_blowup.blowup import (
    BlowupParams,
    blowup_min_maslov,
    check_admissible,
    proper_transform_class,
)
from pearl_blowup.errors import (
    BadExponent,
    NoClasses,
    NotAComplex,
    NotAdmissible,
    NotDimensionFour,
    ValidationError,
)
from pearl_blowup.model import (
    LIFT,
    PEARL,
    DegreeRank,
    HomologyResult,
    LagrangianData,
    ManifoldData,
    lagrangian_issues,
    minimal_maslov,
    morse_homology,
    quantum_count_role,
)

WIDE = "wide"
NARROW = "narrow"
OTHER = "other"


@dataclass(frozen=True)
class ChainComplex:
    generators: tuple[tuple[str, int], ...]
    ring_min_maslov: int
    differential: ScalarMatrix

    def __post_init__(self):
        n = len(self.generators)
        if self.differential.shape != (n, n):
            raise ValueError(f"differential shape {self.differential.shape} for {n} generators")
        N = self.ring_min_maslov
        for (i, j), x in self.differential.nonzero_entries():
            for e in x.exponents:
                if Fraction(self.generators[i][1]) - e * N != self.generators[j][1] - 1:
                    raise BadExponent(
                        f"entry ({self.generators[i][0]}, {self.generators[j][0]}) term t^{e} "
                        f"breaks degree -1 with deg t = -{N}")
        if not (self.differential @ self.differential).is_zero():
            raise NotAComplex("pearl differential does not square to zero")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(g[0] for g in self.generators)

    def entry(self, source: str, target: str) -> NovikovScalar:
        """Coefficient of ``target`` in d(``source``)."""
        names = self.names
        return self.differential[names.index(target), names.index(source)]

    def is_zero(self) -> bool:
        return self.differential.is_zero()


@dataclass(frozen=True)
class BlowupCorrection:
    source: str
    target: str
    classes: tuple[str, ...]
    transformed: tuple[str, ...]

    @property
    def k(self) -> int:
        """Number of contributing classes; the differential changes by k mod 2."""
        return len(self.classes)

    @property
    def parity(self) -> int:
        return self.k % 2


def _build(L: LagrangianData, N: int,
           terms: Iterable[tuple[str, str, int, int]]) -> ChainComplex:
    """Assemble from (source, target, maslov, parity) contributions."""
    names = [p.name for p in L.critical_points]
    entries: dict[tuple[int, int], NovikovScalar] = {}
    for src, dst, mu, parity in terms:
        if not parity:
            continue
        if mu and (N == 0 or mu % N):
            raise BadExponent(f"Maslov index {mu} not divisible by N = {N}")
        key = (names.index(dst), names.index(src))
        entries[key] = entries.get(key, ZERO) + NovikovScalar.monomial(mu // N if mu else 0)
    d = ScalarMatrix.from_entries(len(names), len(names), entries)
    return ChainComplex(tuple((p.name, p.index) for p in L.critical_points), N, d)


def _ring_min_maslov(L: LagrangianData) -> int:
    try:
        return minimal_maslov(L.classes)
    except NoClasses:
        return 0


def _check(M: ManifoldData, L: LagrangianData) -> None:
    issues = lagrangian_issues(M, L)
    if issues:
        raise ValidationError(issues)


def _base_terms(L: LagrangianData):
    for tc in L.morse_counts:
        yield tc.source, tc.target, 0, tc.parity
    for tc in L.quantum_counts:
        if quantum_count_role(L, tc) == PEARL:
            yield tc.source, tc.target, L.disk_class(tc.class_name).maslov, tc.parity


def assemble_pearl_complex(M: ManifoldData, L: LagrangianData) -> ChainComplex:
    _check(M, L)
    return _build(L, _ring_min_maslov(L), _base_terms(L))


def blowup_corrections(L: LagrangianData, P: BlowupParams) -> list[BlowupCorrection]:
    """Group the nonempty lift-candidate classes by (source, target)."""
    grouped: dict[tuple[str, str], list[str]] = {}
    for tc in L.quantum_counts:
        if tc.count > 0 and quantum_count_role(L, tc) == LIFT:
            names = grouped.setdefault((tc.source, tc.target), [])
            if tc.class_name not in names:
                names.append(tc.class_name)
    out = []
    for (src, dst), classes in grouped.items():
        lifted = tuple(proper_transform_class(L.disk_class(c), 1, P).name for c in classes)
        out.append(BlowupCorrection(src, dst, tuple(classes), lifted))
    return out


def blowup_pearl_complex(M: ManifoldData, L: LagrangianData,
                         P: BlowupParams) -> tuple[ChainComplex, list[BlowupCorrection]]:
    """Pearl complex of the proper transform, built from base data only.

    Base Maslov-2 trajectories persist (their disks avoid the blown-up point);
    each pair of index gap -2 gains k mod 2 trajectories in the classes
    A - L_E, one per Maslov-4 class through the point.
    """
    if M.n != 2:
        raise NotDimensionFour(f"the blow-up transform is implemented for dim M = 4, got {2 * M.n}")
    verdict = check_admissible(M, [L])
    if not verdict.admissible:
        raise NotAdmissible("; ".join(verdict.diagnostics))
    assemble_pearl_complex(M, L)
    try:
        N_tilde = blowup_min_maslov(L, P)
    except NoClasses:
        N_tilde = P.maslov_shift
    corrections = blowup_corrections(L, P)

    def terms():
        yield from _base_terms(L)
        for c in corrections:
            mu = proper_transform_class(L.disk_class(c.classes[0]), 1, P).maslov
            yield c.source, c.target, mu, c.parity

    return _build(L, N_tilde, terms()), corrections


def graded_reduction(C: ChainComplex) -> list[tuple[str, int]]:
    """Cancel unit entries pairwise; the survivors form a homogeneous basis of homology."""
    d = C.differential.to_lists()
    active = list(range(len(C.generators)))
    while True:
        pivot = next(((i, j) for j in active for i in active
                      if i != j and d[i][j] and d[i][j].is_unit()), None)
        if pivot is None:
            break
        i, j = pivot
        inv = d[i][j].inverse()
        rest = [a for a in active if a not in (i, j)]
        for r in rest:
            if not d[r][j]:
                continue
            f = d[r][j] * inv
            for c in rest:
                if d[i][c]:
                    d[r][c] = d[r][c] + f * d[i][c]
        active = rest
    if any(d[i][j] for i in active for j in active):
        raise ArithmeticError("non-unit entries survive graded cancellation")
    return [C.generators[a] for a in active]


def _fold(pairs: Iterable[tuple[int, int]], period: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for deg, r in pairs:
        key = deg % period if period else deg
        out[key] = out.get(key, 0) + r
    return {k: v for k, v in out.items() if v}


def classify_wideness(H: HomologyResult) -> str:
    if H.reference_betti is None:
        raise ValueError("wideness needs reference Betti numbers")
    if H.total_rank == 0 and not H.torsion:
        return NARROW
    ours = _fold(((d.degree, d.free_rank) for d in H.degrees), H.period)
    ref = _fold(enumerate(H.reference_betti), H.period)
    if not H.torsion and ours == ref:
        return WIDE
    return OTHER


def quantum_homology(C: ChainComplex,
                     reference_betti: Optional[Sequence[int]] = None) -> HomologyResult:
    """Homology of a pearl complex.

    Free rank and torsion come from the Smith normal form over the Laurent
    ring; the per-degree split comes from graded cancellation and the two
    totals are cross-checked.  Degrees of free generators are meaningful
    modulo N only, so the verdict compares degree classes mod N.
    """
    frag = homology_decompose(C.differential, C.differential)
    survivors = graded_reduction(C)
    if len(survivors) != frag.free_rank:
        raise ArithmeticError(f"graded cancellation left {len(survivors)} generators, "
                              f"Smith form gives free rank {frag.free_rank}")
    degs = [g[1] for g in C.generators] or [0]
    degrees = tuple(DegreeRank(k, sum(1 for s in survivors if s[1] == k))
                    for k in range(min(degs), max(degs) + 1))
    ref = tuple(reference_betti) if reference_betti is not None else None
    H = HomologyResult(degrees, frag.torsion, C.ring_min_maslov, ref, None)
    if ref is None:
        return H
    return HomologyResult(degrees, frag.torsion, C.ring_min_maslov, ref, classify_wideness(H))


def lagrangian_quantum_homology(M: ManifoldData, L: LagrangianData,
                                reference_betti: Optional[Sequence[int]] = None) -> HomologyResult:
    """Convenience pipeline: assemble, then compute against Morse homology by default."""
    C = assemble_pearl_complex(M, L)
    if reference_betti is None:
        reference_betti = morse_homology(L).ranks
    return quantum_homology(C, reference_betti)


__all__ = [
    "BlowupCorrection",
    "ChainComplex",
    "NARROW",
    "OTHER",
    "WIDE",
    "assemble_pearl_complex",
    "blowup_corrections",
    "blowup_pearl_complex",
    "classify_wideness",
    "graded_reduction",
    "lagrangian_quantum_homology",
    "quantum_homology",
]
