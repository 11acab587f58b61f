"""Exact linear algebra over GF(2)[t, 1/t].

The Laurent ring is a Euclidean domain under the t-degree span, which is what
the Smith normal form below uses.  Ranks are taken over the fraction field by
fraction-free elimination, so no scalar is ever inverted.
"""

from __future__ import annotations

from dataclasses import dataclass

from pearl_blowup.algebra.matrix import ONE, ZERO, ScalarMatrix
from pearl_blowup.algebra.scalar import NovikovScalar, clmul, poly_divmod, poly_gcd
from pearl_blowup.errors import NonIntegerExponent


def _require_integral(x: NovikovScalar) -> None:
    if not x.is_integral():
        raise NonIntegerExponent(
            f"entry {x} has non-integer exponents; rescale exponents first")


def laurent_divmod(a: NovikovScalar, b: NovikovScalar) -> tuple[NovikovScalar, NovikovScalar]:
    """Euclidean division: ``a = q*b + r`` with ``r == 0`` or ``span(r) < span(b)``."""
    _require_integral(a)
    _require_integral(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero")
    if a.is_zero():
        return ZERO, ZERO
    q, r = poly_divmod(a.mask, b.mask)
    return (NovikovScalar.from_mask(q, a.shift - b.shift),
            NovikovScalar.from_mask(r, a.shift))


def divides(b: NovikovScalar, a: NovikovScalar) -> bool:
    """True if ``b | a`` in the Laurent ring."""
    if b.is_zero():
        return a.is_zero()
    return laurent_divmod(a, b)[1].is_zero()


def exact_quotient(a: NovikovScalar, b: NovikovScalar) -> NovikovScalar:
    q, r = laurent_divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def rescale_to_integral(m: ScalarMatrix) -> tuple[ScalarMatrix, int]:
    """Substitute T -> t^den so every exponent becomes an integer."""
    den = m.exponent_denominator()
    if den == 1:
        return m, 1
    return m.scaled_exponents(den), den


@dataclass(frozen=True)
class SNFResult:
    D: ScalarMatrix
    U: ScalarMatrix
    V: ScalarMatrix
    divisors: tuple[NovikovScalar, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def torsion(self) -> tuple[NovikovScalar, ...]:
        return tuple(d for d in self.divisors if not d.is_unit())


def _check_all_integral(m: ScalarMatrix) -> None:
    for _, x in m.nonzero_entries():
        _require_integral(x)


def smith_normal_form(m: ScalarMatrix) -> SNFResult:
    """Smith normal form ``U @ m @ V == D`` over GF(2)[t, 1/t].

    The pivot is the entry of smallest t-degree span in the active block,
    ties broken row-major.  Diagonal entries are reported with lowest
    exponent 0 and satisfy ``D[i,i] | D[i+1,i+1]``.
    """
    _check_all_integral(m)
    nr, nc = m.shape
    a = m.to_lists()
    u = ScalarMatrix.identity(nr).to_lists()
    v = ScalarMatrix.identity(nc).to_lists()

    def add_row(src, dst, q):
        # row_dst += q * row_src  (characteristic 2: no signs)
        for mat in (a, u):
            rs, rd = mat[src], mat[dst]
            for j, x in enumerate(rs):
                if x:
                    rd[j] = rd[j] + q * x

    def add_col(src, dst, q):
        for mat in (a, v):
            for row in mat:
                x = row[src]
                if x:
                    row[dst] = row[dst] + x * q

    def swap_rows(i, k):
        for mat in (a, u):
            mat[i], mat[k] = mat[k], mat[i]

    def swap_cols(j, k):
        for mat in (a, v):
            for row in mat:
                row[j], row[k] = row[k], row[j]

    k = 0
    while k < min(nr, nc):
        while True:
            best = None
            for i in range(k, nr):
                for j in range(k, nc):
                    x = a[i][j]
                    if x and (best is None or x.span() < best[0]):
                        best = (x.span(), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != k:
                swap_rows(pi, k)
            if pj != k:
                swap_cols(pj, k)
            piv = a[k][k]
            clean = True
            for i in range(k + 1, nr):
                if a[i][k]:
                    q, r = laurent_divmod(a[i][k], piv)
                    add_row(k, i, q)
                    clean = clean and r.is_zero()
            for j in range(k + 1, nc):
                if a[k][j]:
                    q, r = laurent_divmod(a[k][j], piv)
                    add_col(k, j, q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(((i, j) for i in range(k + 1, nr) for j in range(k + 1, nc)
                        if a[i][j] and not divides(piv, a[i][j])), None)
            if bad is None:
                break
            add_row(bad[0], k, ONE)
        if best is None:
            break
        k += 1

    divisors = []
    for i in range(min(nr, nc)):
        d = a[i][i]
        if not d:
            break
        unit = NovikovScalar.from_mask(1, -d.shift)
        a[i] = [x * unit for x in a[i]]
        u[i] = [x * unit for x in u[i]]
        divisors.append(a[i][i])
    return SNFResult(ScalarMatrix(a, nc), ScalarMatrix(u, nr), ScalarMatrix(v, nc), tuple(divisors))


def _poly_rows(m: ScalarMatrix) -> tuple[list[list[int]], list[int]]:
    """Rows multiplied by a power of t so every entry is a polynomial (bitmask)."""
    rows, shifts = [], []
    for r in m.rows():
        low = min((x.shift for x in r if x), default=0)
        rows.append([x.mask << (x.shift - low) if x else 0 for x in r])
        shifts.append(low)
    return rows, shifts


def rank_over_fraction_field(m: ScalarMatrix) -> int:
    """Rank over the fraction field, by fraction-free cross-multiplication."""
    m, _ = rescale_to_integral(m)
    rows, _ = _poly_rows(m)
    nr, nc = m.shape
    rank = 0
    for col in range(nc):
        piv = next((i for i in range(rank, nr) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, nr):
            c = rows[i][col]
            if not c:
                continue
            r = [clmul(p[col], rows[i][j]) ^ clmul(c, p[j]) for j in range(nc)]
            g = 0
            for x in r:
                if x:
                    g = poly_gcd(g, x) if g else x
                    if g == 1:
                        break
            if g > 1:
                r = [poly_divmod(x, g)[0] for x in r]
            rows[i] = r
        rank += 1
    return rank


def determinant(m: ScalarMatrix) -> NovikovScalar:
    """Determinant by Bareiss fraction-free elimination (exact divisions only)."""
    n, nc = m.shape
    if n != nc:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    _check_all_integral(m)
    rows, shifts = _poly_rows(m)
    prev = 1
    for k in range(n - 1):
        if not rows[k][k]:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return ZERO
            rows[k], rows[swap] = rows[swap], rows[k]
        pk = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = clmul(rows[i][j], pk) ^ clmul(rows[i][k], rows[k][j])
                q, r = poly_divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                rows[i][j] = q
            rows[i][k] = 0
        prev = pk
    return NovikovScalar.from_mask(rows[n - 1][n - 1], sum(shifts))


def is_unimodular(m: ScalarMatrix) -> bool:
    return determinant(m).is_unit()


__all__ = [
    "SNFResult",
    "determinant",
    "divides",
    "exact_quotient",
    "is_unimodular",
    "laurent_divmod",
    "rank_over_fraction_field",
    "rescale_to_integral",
    "smith_normal_form",
]
