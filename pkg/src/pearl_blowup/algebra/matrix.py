"""Immutable dense matrices of :class:`NovikovScalar` entries."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from pearl_blowup.algebra.scalar import NovikovScalar, format_scalar

ZERO = NovikovScalar.zero()
ONE = NovikovScalar.one()


class ScalarMatrix:
    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Sequence[Sequence[NovikovScalar]], ncols: int | None = None):
        data = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("an empty matrix needs an explicit column count")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self._rows = data
        self._nrows = len(data)
        self._ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ScalarMatrix":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "ScalarMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int,
                     entries: Mapping[tuple[int, int], NovikovScalar]) -> "ScalarMatrix":
        rows = [[ZERO] * ncols for _ in range(nrows)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return cls(rows, ncols)

    @classmethod
    def from_exponent_lists(cls, rows: Iterable[Iterable[Iterable]], ncols: int | None = None):
        """Build from nested lists where each entry is a list of exponents."""
        return cls([[NovikovScalar.from_exponents(e) for e in r] for r in rows], ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    def rows(self) -> tuple[tuple[NovikovScalar, ...], ...]:
        return self._rows

    def to_lists(self) -> list[list[NovikovScalar]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, ij: tuple[int, int]) -> NovikovScalar:
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> tuple[NovikovScalar, ...]:
        return tuple(r[j] for r in self._rows)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix([[self._rows[i][j] for i in range(self._nrows)]
                             for j in range(self._ncols)], self._nrows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ScalarMatrix":
        return ScalarMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._rows for x in r)

    def nonzero_entries(self):
        for i, r in enumerate(self._rows):
            for j, x in enumerate(r):
                if x:
                    yield (i, j), x

    def is_integral(self) -> bool:
        return all(x.is_integral() for r in self._rows for x in r)

    def exponent_denominator(self) -> int:
        """Least common denominator of all exponents (1 for Laurent matrices)."""
        return lcm(1, *(x.denominator for r in self._rows for x in r))

    def scaled_exponents(self, factor) -> "ScalarMatrix":
        f = Fraction(factor)
        return ScalarMatrix([[x.scaled(f) if x else x for x in r] for r in self._rows], self._ncols)

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return ScalarMatrix([[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self._rows, other._rows)], self._ncols)

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self._ncols != other._nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows)) if other._nrows else [() for _ in range(other._ncols)]
        out = []
        for r in self._rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ScalarMatrix(out, other._ncols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(format_scalar(x) for x in r) for r in self._rows)
        return f"ScalarMatrix[{self._nrows}x{self._ncols}]({body})"
