"""Coefficient arithmetic and exact homological linear algebra."""

from pearl_blowup.algebra.homology import HomologyFragment, homology_decompose
from pearl_blowup.algebra.linalg import (
    SNFResult,
    determinant,
    divides,
    exact_quotient,
    is_unimodular,
    laurent_divmod,
    rank_over_fraction_field,
    rescale_to_integral,
    smith_normal_form,
)
from pearl_blowup.algebra.matrix import ScalarMatrix
from pearl_blowup.algebra.scalar import NovikovScalar, format_scalar, parse_scalar


def scalar_add(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    return a + b


def scalar_mul(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    return a * b


__all__ = [
    "HomologyFragment",
    "NovikovScalar",
    "SNFResult",
    "ScalarMatrix",
    "determinant",
    "divides",
    "exact_quotient",
    "format_scalar",
    "homology_decompose",
    "is_unimodular",
    "laurent_divmod",
    "parse_scalar",
    "rank_over_fraction_field",
    "rescale_to_integral",
    "scalar_add",
    "scalar_mul",
    "smith_normal_form",
]
