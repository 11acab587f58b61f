"""Monotone one-point blow-up: weight, proper transforms and admissibility.

Areas are stored as ω/π and the monotonicity constant as λπ, so every
relation below is an identity between exact rationals.  A class that meets
the exceptional divisor with multiplicity ℓ ≥ 0 loses 2(n-1)ℓ from its
Maslov index and ℓρ² from its area.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from pearl_blowup.errors import NegativeMultiplicity, NoClasses
from pearl_blowup.model import (
    DiskClass,
    LagrangianData,
    ManifoldData,
    minimal_maslov,
    validate_monotone,
)

EXCEPTIONAL_LINE = "L_E"


@dataclass(frozen=True)
class BlowupParams:
    n: int
    rho_sq: Fraction
    exceptional_line: DiskClass

    def __post_init__(self):
        if Fraction(2 * (self.n - 1)) != self.exceptional_line.area_over_pi * self.lambda_pi:
            raise ValueError("exceptional line is not monotone for this weight")

    @property
    def lambda_pi(self) -> Fraction:
        return Fraction(2 * (self.n - 1)) / self.rho_sq

    @property
    def maslov_shift(self) -> int:
        return 2 * (self.n - 1)


def monotone_weight(M: ManifoldData) -> Fraction:
    """ρ² making the blow-up monotone with the same constant: 2(n-1)/λπ."""
    return Fraction(2 * (M.n - 1)) / M.lambda_pi


def blowup_params(M: ManifoldData) -> BlowupParams:
    rho_sq = monotone_weight(M)
    line = DiskClass(EXCEPTIONAL_LINE, 2 * (M.n - 1), rho_sq, exc_mult=-1)
    return BlowupParams(M.n, rho_sq, line)


def transformed_name(name: str, ell: int) -> str:
    if ell == 0:
        return name
    if ell == 1:
        return f"~{name}-{EXCEPTIONAL_LINE}"
    return f"~{name}-{ell}{EXCEPTIONAL_LINE}"


def proper_transform_class(A: DiskClass, ell: int, P: BlowupParams) -> DiskClass:
    """The lift of ``A`` meeting the exceptional divisor ``ell`` times."""
    if ell < 0:
        raise NegativeMultiplicity(f"multiplicity {ell} < 0")
    if A.exc_mult != 0:
        raise ValueError(f"class {A.name} is not a base class (exc_mult={A.exc_mult})")
    if ell == 0:
        return A
    return DiskClass(
        transformed_name(A.name, ell),
        A.maslov - P.maslov_shift * ell,
        A.area_over_pi - P.rho_sq * ell,
        exc_mult=ell,
        through_point=False,
    )


def blowup_min_maslov(L: LagrangianData, P: BlowupParams) -> int:
    """Every blow-up class is a base class plus a multiple of L_E, hence the gcd."""
    return gcd(minimal_maslov(L.classes), P.maslov_shift)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    monotone_ok: bool
    same_lambda_ok: bool
    width_asserted: bool
    min_maslov_blowup: int
    admissible: bool
    diagnostics: tuple[str, ...] = ()


def _ratios(L: LagrangianData) -> set[Fraction]:
    return {Fraction(c.maslov) / c.area_over_pi for c in L.classes if c.area_over_pi != 0}


def check_admissible(M: ManifoldData, Ls: Sequence[LagrangianData]) -> AdmissibilityVerdict:
    diags: list[str] = []
    P = blowup_params(M)
    monotone_ok = True
    ratios: set[Fraction] = set()
    for L in Ls:
        r = _ratios(L)
        degenerate = [c.name for c in L.classes if c.area_over_pi == 0 and c.maslov != 0]
        if len(r) > 1 or any(x <= 0 for x in r) or degenerate:
            monotone_ok = False
            diags.append(f"{L.name}: Maslov index and area are not positively proportional")
        ratios |= r
        for v in validate_monotone(M, L).violations:
            diags.append(f"{L.name}: {v}")
    same_lambda_ok = monotone_ok and ratios <= {M.lambda_pi}
    if monotone_ok and not same_lambda_ok:
        diags.append(f"monotonicity constants {sorted(map(str, ratios))} differ from "
                     f"lambda_pi = {M.lambda_pi}")
    if not M.width_asserted:
        diags.append(f"Gromov width of the complement > {P.rho_sq} (units of pi) not asserted")

    min_blowup = 0
    values = []
    for L in Ls:
        try:
            v = blowup_min_maslov(L, P)
        except NoClasses:
            # the index image is generated by L_E alone
            v = P.maslov_shift
        values.append(v)
        if v < 2:
            diags.append(f"{L.name}: minimal Maslov in blow-up = {v} < 2")
    if values:
        min_blowup = min(values)
    else:
        diags.append("no Lagrangians given")

    admissible = monotone_ok and same_lambda_ok and M.width_asserted and min_blowup >= 2
    return AdmissibilityVerdict(monotone_ok, same_lambda_ok, M.width_asserted,
                                min_blowup, admissible, tuple(diags))


__all__ = [
    "AdmissibilityVerdict",
    "BlowupParams",
    "EXCEPTIONAL_LINE",
    "blowup_min_maslov",
    "blowup_params",
    "check_admissible",
    "monotone_weight",
    "proper_transform_class",
    "transformed_name",
]
