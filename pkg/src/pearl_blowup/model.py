"""Data model: manifolds, Lagrangians, disk classes and trajectory counts.

The metric, Morse function and almost complex structure never appear here;
only the counts they produce do.  Counts are kept as the geometric numbers
the user recorded and reduced mod 2 where they are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from pearl_blowup.algebra import ScalarMatrix, rank_over_fraction_field
from pearl_blowup.algebra.matrix import ONE, ZERO
from pearl_blowup.algebra.scalar import NovikovScalar
from pearl_blowup.errors import DimensionMismatch, NoClasses, NotAComplex, ValidationError


@dataclass(frozen=True)
class ManifoldData:
    n: int
    lambda_pi: Fraction
    width_asserted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lambda_pi", Fraction(self.lambda_pi))
        if self.n < 2:
            raise ValueError(f"half-dimension must be at least 2, got {self.n}")
        if self.lambda_pi <= 0:
            raise ValueError("monotonicity constant must be positive")


@dataclass(frozen=True)
class DiskClass:
    name: str
    maslov: int
    area_over_pi: Fraction
    exc_mult: int = 0
    through_point: bool = False

    def __post_init__(self):
        object.__setattr__(self, "area_over_pi", Fraction(self.area_over_pi))


@dataclass(frozen=True)
class CriticalPoint:
    name: str
    index: int


@dataclass(frozen=True)
class TrajectoryCount:
    source: str
    target: str
    class_name: Optional[str]
    count: int

    @property
    def parity(self) -> int:
        return self.count % 2


@dataclass(frozen=True)
class LagrangianData:
    name: str
    dim: int
    critical_points: tuple[CriticalPoint, ...]
    classes: tuple[DiskClass, ...] = ()
    morse_counts: tuple[TrajectoryCount, ...] = ()
    quantum_counts: tuple[TrajectoryCount, ...] = ()
    betti_mod2: Optional[tuple[int, ...]] = None

    def point(self, name: str) -> CriticalPoint:
        for p in self.critical_points:
            if p.name == name:
                return p
        raise KeyError(name)

    def disk_class(self, name: str) -> DiskClass:
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)

    def position(self, name: str) -> int:
        for i, p in enumerate(self.critical_points):
            if p.name == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class FloerPairData:
    name: str
    points: tuple[str, ...]
    strip_classes: tuple[DiskClass, ...] = ()
    strip_counts: tuple[TrajectoryCount, ...] = ()
    min_maslov_assertion: Optional[str] = None
    lagrangians: tuple[str, ...] = ()

    def strip_class(self, name: str) -> DiskClass:
        for c in self.strip_classes:
            if c.name == name:
                return c
        raise KeyError(name)


MIN_MASLOV_ASSERTIONS = ("at-least-3", "hamiltonian-isotopic")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class DegreeRank:
    degree: int
    free_rank: int


@dataclass(frozen=True)
class HomologyResult:
    """Graded homology: free ranks per degree, torsion, and a verdict.

    ``period`` is the degree of ``1/t`` (the minimal Maslov number) or 0 for
    plain Morse homology, where no Novikov variable is present.
    """

    degrees: tuple[DegreeRank, ...]
    torsion: tuple[NovikovScalar, ...] = ()
    period: int = 0
    reference_betti: Optional[tuple[int, ...]] = None
    verdict: Optional[str] = None

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(d.free_rank for d in self.degrees)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def rank_in(self, degree: int) -> int:
        return sum(d.free_rank for d in self.degrees if d.degree == degree)


# monotonicity and Maslov data

def validate_monotone(M: ManifoldData, L: LagrangianData) -> ValidationReport:
    bad = []
    for c in L.classes:
        if Fraction(c.maslov) != M.lambda_pi * c.area_over_pi:
            bad.append(f"class {c.name}: maslov {c.maslov} != {M.lambda_pi} * {c.area_over_pi}")
    return ValidationReport(tuple(bad))


def monotonicity_constant(classes: Iterable[DiskClass]) -> Optional[Fraction]:
    """The common ratio maslov/area, or None if the classes are not proportional."""
    ratio = None
    for c in classes:
        if c.area_over_pi == 0:
            if c.maslov != 0:
                return None
            continue
        r = Fraction(c.maslov) / c.area_over_pi
        if r <= 0 or (ratio is not None and r != ratio):
            return None
        ratio = r
    return ratio


def minimal_maslov(classes: Iterable[DiskClass]) -> int:
    g = 0
    for c in classes:
        g = gcd(g, abs(c.maslov))
    if g == 0:
        raise NoClasses("no class with nonzero Maslov index")
    return g


def pearl_dimension(x: CriticalPoint, y: CriticalPoint, A: Optional[DiskClass]) -> int:
    mu = A.maslov if A is not None else 0
    return x.index - y.index - 1 + mu


# roles of quantum counts

PEARL = "pearl"
LIFT = "lift"


def quantum_count_role(L: LagrangianData, tc: TrajectoryCount) -> str:
    """Whether a nonzero-class count enters the base differential or only the blow-up.

    A count of a through-point class whose configuration space has dimension
    2(n-1) is a lift candidate: passing through the blown-up point cuts that
    many dimensions and the proper transform (multiplicity 1) is rigid.
    """
    A = L.disk_class(tc.class_name)
    delta = pearl_dimension(L.point(tc.source), L.point(tc.target), A)
    if delta == 0:
        return PEARL
    shift = 2 * (L.dim - 1)
    if A.through_point and shift > 0 and delta > 0 and delta % shift == 0:
        ell = delta // shift
        if ell >= 2:
            raise DimensionMismatch(
                f"{tc.source}->{tc.target} in {A.name}: lifting needs exceptional multiplicity "
                f"{ell}; only multiplicities 0 and 1 are supported")
        if A.maslov == 2 * L.dim:
            return LIFT
    raise DimensionMismatch(
        f"{tc.source}->{tc.target} in {A.name}: pearl dimension {delta} != 0")


# Morse homology

def morse_matrix(L: LagrangianData) -> ScalarMatrix:
    n = len(L.critical_points)
    entries: dict[tuple[int, int], NovikovScalar] = {}
    for tc in L.morse_counts:
        x, y = L.point(tc.source), L.point(tc.target)
        if pearl_dimension(x, y, None) != 0:
            raise DimensionMismatch(
                f"Morse count {tc.source}->{tc.target} joins indices {x.index} and {y.index}")
        if tc.parity:
            key = (L.position(tc.target), L.position(tc.source))
            entries[key] = entries.get(key, ZERO) + ONE
    return ScalarMatrix.from_entries(n, n, entries)


def morse_homology(L: LagrangianData) -> HomologyResult:
    d = morse_matrix(L)
    if not (d @ d).is_zero():
        raise NotAComplex(f"Morse differential of {L.name} does not square to zero")
    by_degree: dict[int, list[int]] = {}
    for i, p in enumerate(L.critical_points):
        by_degree.setdefault(p.index, []).append(i)
    ranks = []
    for k in range(L.dim + 1):
        here = by_degree.get(k, [])
        below = by_degree.get(k - 1, [])
        above = by_degree.get(k + 1, [])
        r_out = rank_over_fraction_field(d.submatrix(below, here)) if here and below else 0
        r_in = rank_over_fraction_field(d.submatrix(here, above)) if here and above else 0
        ranks.append(DegreeRank(k, len(here) - r_out - r_in))
    return HomologyResult(tuple(ranks), (), 0, None, None)


# whole-object validation

def _dupes(names: Sequence[str]) -> list[str]:
    seen, out = set(), []
    for n in names:
        if n in seen and n not in out:
            out.append(n)
        seen.add(n)
    return out


def lagrangian_issues(M: ManifoldData, L: LagrangianData) -> list[str]:
    """Every problem with ``L`` as a base-manifold Lagrangian of ``M``."""
    where = f"lagrangian {L.name}"
    issues: list[str] = []
    if L.dim != M.n:
        issues.append(f"{where}: dim {L.dim} != half-dimension {M.n}")
    for d in _dupes([p.name for p in L.critical_points]):
        issues.append(f"{where}: duplicate critical point {d}")
    for d in _dupes([c.name for c in L.classes]):
        issues.append(f"{where}: duplicate class {d}")
    for p in L.critical_points:
        if not 0 <= p.index <= L.dim:
            issues.append(f"{where}: critical point {p.name} has index {p.index} outside 0..{L.dim}")
    for c in L.classes:
        if c.exc_mult != 0:
            issues.append(f"{where}: class {c.name} has exceptional multiplicity {c.exc_mult} on the base")
    issues.extend(f"{where}: {v}" for v in validate_monotone(M, L).violations)

    points = {p.name for p in L.critical_points}
    classes = {c.name for c in L.classes}
    refs_ok = True
    for kind, counts in (("morse", L.morse_counts), ("quantum", L.quantum_counts)):
        for tc in counts:
            for end in (tc.source, tc.target):
                if end not in points:
                    issues.append(f"{where}: {kind} count references undeclared point {end}")
                    refs_ok = False
            if tc.count < 0:
                issues.append(f"{where}: negative count {tc.source}->{tc.target}")
            if kind == "morse" and tc.class_name is not None:
                issues.append(f"{where}: Morse count {tc.source}->{tc.target} carries class {tc.class_name}")
            if kind == "quantum":
                if tc.class_name is None:
                    issues.append(f"{where}: quantum count {tc.source}->{tc.target} has no class")
                    refs_ok = False
                elif tc.class_name not in classes:
                    issues.append(f"{where}: count references undeclared class {tc.class_name}")
                    refs_ok = False
    if not refs_ok or issues:
        return issues

    for tc in L.quantum_counts:
        try:
            quantum_count_role(L, tc)
        except DimensionMismatch as exc:
            issues.append(f"{where}: {exc}")
    try:
        computed = morse_homology(L).ranks
    except (DimensionMismatch, NotAComplex) as exc:
        issues.append(f"{where}: {exc}")
    else:
        if L.betti_mod2 is not None and tuple(L.betti_mod2) != computed:
            issues.append(f"{where}: betti_mod2 {list(L.betti_mod2)} disagrees with "
                          f"Morse homology {list(computed)}")
    return issues


def floer_pair_issues(M: ManifoldData, pair: FloerPairData) -> list[str]:
    where = f"floer pair {pair.name}"
    issues = []
    for d in _dupes(list(pair.points)):
        issues.append(f"{where}: duplicate intersection point {d}")
    for d in _dupes([c.name for c in pair.strip_classes]):
        issues.append(f"{where}: duplicate strip class {d}")
    if pair.min_maslov_assertion is not None and pair.min_maslov_assertion not in MIN_MASLOV_ASSERTIONS:
        issues.append(f"{where}: min_maslov_assertion must be one of {MIN_MASLOV_ASSERTIONS}")
    lifted = 2 * M.n - 1
    for c in pair.strip_classes:
        if c.area_over_pi <= 0:
            issues.append(f"{where}: strip class {c.name} has non-positive area")
        if c.through_point and c.maslov not in (1, lifted):
            issues.append(f"{where}: marked strip class {c.name} has index {c.maslov}, "
                          f"expected {lifted}")
    classes = {c.name: c for c in pair.strip_classes}
    for tc in pair.strip_counts:
        for end in (tc.source, tc.target):
            if end not in pair.points:
                issues.append(f"{where}: strip count references undeclared point {end}")
        if tc.count < 0:
            issues.append(f"{where}: negative count {tc.source}->{tc.target}")
        c = classes.get(tc.class_name)
        if c is None:
            issues.append(f"{where}: strip count references undeclared class {tc.class_name}")
        elif c.maslov != 1 and not c.through_point:
            issues.append(f"{where}: strip count in {c.name} has index {c.maslov} != 1")
    return issues


def validate_lagrangian(M: ManifoldData, L: LagrangianData) -> LagrangianData:
    issues = lagrangian_issues(M, L)
    if issues:
        raise ValidationError(issues)
    return L


__all__ = [
    "CriticalPoint",
    "DegreeRank",
    "DiskClass",
    "FloerPairData",
    "HomologyResult",
    "LagrangianData",
    "ManifoldData",
    "TrajectoryCount",
    "ValidationReport",
    "floer_pair_issues",
    "lagrangian_issues",
    "minimal_maslov",
    "monotonicity_constant",
    "morse_homology",
    "morse_matrix",
    "pearl_dimension",
    "quantum_count_role",
    "validate_lagrangian",
    "validate_monotone",
]
