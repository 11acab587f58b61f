"""Homology of a free module between two composable differentials."""

from __future__ import annotations

from dataclasses import dataclass

from pearl_blowup.algebra.linalg import rank_over_fraction_field, rescale_to_integral, smith_normal_form
from pearl_blowup.algebra.matrix import ScalarMatrix
from pearl_blowup.algebra.scalar import NovikovScalar
from pearl_blowup.errors import NotAComplex


@dataclass(frozen=True)
class HomologyFragment:
    free_rank: int
    torsion: tuple[NovikovScalar, ...]
    rank_in: int
    rank_out: int
    ambient_rank: int


def homology_decompose(d_in: ScalarMatrix, d_out: ScalarMatrix) -> HomologyFragment:
    """Free rank and torsion of ``ker(d_out) / im(d_in)``.

    ``d_in`` maps into the module (its rows index the ambient basis) and
    ``d_out`` maps out of it (its columns index the same basis).  Torsion
    summands are ``Λ/(f)`` for each non-unit invariant factor ``f`` of
    ``d_in``; rational exponents are rescaled to integers first.
    """
    ambient = d_in.nrows
    if d_out.ncols != ambient:
        raise ValueError(f"d_out has {d_out.ncols} columns, expected {ambient}")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out @ d_in is nonzero")
    snf = smith_normal_form(rescale_to_integral(d_in)[0])
    rank_in = snf.rank
    rank_out = rank_over_fraction_field(d_out)
    free = ambient - rank_in - rank_out
    assert free >= 0 and free + rank_in + rank_out == ambient
    return HomologyFragment(free, snf.torsion, rank_in, rank_out, ambient)
