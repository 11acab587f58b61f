"""Shared strategies and independent oracles.

The oracles go through sympy (rank over GF(2)(t), gcd of minors over GF(2)[t])
and never call into the package's own elimination code.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st
from sympy import GF, Poly, symbols
from sympy.polys.matrices import DomainMatrix

from pearl_blowup.algebra import NovikovScalar, ScalarMatrix

T = symbols("t")
FIELD = GF(2).frac_field(T)
T_FIELD = FIELD.from_sympy(T)


# oracles

def _lcm_den(m: ScalarMatrix) -> int:
    den = 1
    for _, x in m.nonzero_entries():
        for e in x.exponents:
            den = den * e.denominator // _gcd(den, e.denominator)
    return den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def to_field_matrix(m: ScalarMatrix) -> DomainMatrix:
    """Substitute T^(1/den) -> t; rank is unchanged by this ring isomorphism."""
    den = _lcm_den(m)
    rows = []
    for row in m.rows():
        out = []
        for x in row:
            v = FIELD.zero
            for e in x.exponents:
                v += T_FIELD ** int(e * den)
            out.append(v)
        rows.append(out)
    return DomainMatrix(rows, m.shape, FIELD)


def oracle_rank(m: ScalarMatrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return to_field_matrix(m).rank()


def oracle_homology_rank(d_in: ScalarMatrix, d_out: ScalarMatrix) -> int:
    """dim ker(d_out) - rank(d_in) over the fraction field."""
    return d_out.ncols - oracle_rank(d_out) - oracle_rank(d_in)


def _poly(x: NovikovScalar) -> Poly:
    """An integral scalar with nonnegative exponents as a GF(2)[t] polynomial."""
    if x.is_zero():
        return Poly(0, T, modulus=2)
    return Poly(sum(T ** int(e) for e in x.exponents), T, modulus=2)


def _det(rows: list[list[Poly]]) -> Poly:
    if len(rows) == 1:
        return rows[0][0]
    total = Poly(0, T, modulus=2)
    for j, a in enumerate(rows[0]):
        if not a.is_zero:
            total += a * _det([r[:j] + r[j + 1:] for r in rows[1:]])
    return total


def _strip_t(p: Poly) -> Poly:
    while not p.is_zero and p.eval(0) == 0:
        p = Poly(p.as_expr() / T, T, modulus=2)
    return p


def determinantal_divisors(m: ScalarMatrix) -> list[Poly]:
    """gcd of all k x k minors, k = 1..rank, normalized to t-free polynomials.

    Rows are first multiplied by monomials so every entry is a polynomial;
    this changes the minors only by units.
    """
    shifted = []
    for row in m.rows():
        lo = min((x.min_exponent() for x in row if x), default=Fraction(0))
        shifted.append([_poly(x * NovikovScalar.monomial(-lo)) if x else Poly(0, T, modulus=2)
                        for x in row])
    out = []
    for k in range(1, min(m.shape) + 1):
        g = Poly(0, T, modulus=2)
        for rs in itertools.combinations(range(m.nrows), k):
            for cs in itertools.combinations(range(m.ncols), k):
                d = _det([[shifted[i][j] for j in cs] for i in rs])
                if not d.is_zero:
                    g = d if g.is_zero else g.gcd(d)
        if g.is_zero:
            break
        out.append(_strip_t(g))
    return out


def normalized_poly(x: NovikovScalar) -> Poly:
    return _strip_t(_poly(x * NovikovScalar.monomial(-x.min_exponent())))


# strategies

def scalars(max_terms: int = 4, lo: int = -3, hi: int = 3, dens=(1,)):
    exps = st.builds(Fraction, st.integers(lo, hi), st.sampled_from(dens))
    return st.lists(exps, max_size=max_terms).map(NovikovScalar.from_exponents)


def matrices(max_rows: int = 4, max_cols: int = 4, **kw):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(scalars(**kw), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: ScalarMatrix(rows, c))))


def random_scalar(rng: random.Random, max_terms: int = 3, lo: int = -2, hi: int = 3,
                  density: float = 0.6) -> NovikovScalar:
    if rng.random() > density:
        return NovikovScalar.zero()
    return NovikovScalar.from_exponents(rng.randint(lo, hi) for _ in range(rng.randint(1, max_terms)))


def random_matrix(rng: random.Random, nrows: int, ncols: int, **kw) -> ScalarMatrix:
    return ScalarMatrix([[random_scalar(rng, **kw) for _ in range(ncols)] for _ in range(nrows)], ncols)


def elementary_invertible(rng: random.Random, n: int, steps: int = 6) -> tuple[ScalarMatrix, ScalarMatrix]:
    """A random product of elementary row operations and its inverse."""
    P = ScalarMatrix.identity(n)
    Pinv = ScalarMatrix.identity(n)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = random_scalar(rng, density=1.0, lo=-1, hi=2)
        E = ScalarMatrix.from_entries(n, n, {**{(k, k): NovikovScalar.one() for k in range(n)}, (i, j): q})
        P = E @ P
        Pinv = Pinv @ E  # E is its own inverse in characteristic 2
    return P, Pinv


def random_complex(rng: random.Random, n: int) -> ScalarMatrix:
    """d = P D0 P^-1 with D0 strictly block upper so D0^2 = 0."""
    half = rng.randint(0, n // 2)
    entries = {}
    for k in range(half):
        if rng.random() < 0.8:
            x = random_scalar(rng, density=1.0, lo=0, hi=2)
            entries[(k, half + k)] = x
    D0 = ScalarMatrix.from_entries(n, n, entries)
    P, Pinv = elementary_invertible(rng, n)
    d = P @ D0 @ Pinv
    assert (d @ d).is_zero()
    return d


@pytest.fixture
def rng():
    return random.Random(20261016)


# random pearl and Floer fixtures (dimension 4, lambda_pi = 6)

from pearl_blowup.errors import InputError  # noqa: E402
from pearl_blowup.floer import assemble_floer_complex  # noqa: E402
from pearl_blowup.model import (  # noqa: E402
    CriticalPoint,
    DiskClass,
    FloerPairData,
    LagrangianData,
    ManifoldData,
    TrajectoryCount,
)
from pearl_blowup.pearl import assemble_pearl_complex, blowup_pearl_complex  # noqa: E402
from pearl_blowup.blowup import blowup_params  # noqa: E402

CP2 = ManifoldData(2, Fraction(6), True)
BASE_CLASSES = tuple(DiskClass(f"A{j}", 2, Fraction(1, 3)) for j in range(3))
MARKED_CLASSES = tuple(DiskClass(f"D{j}", 4, Fraction(2, 3), through_point=True) for j in range(3))


def _draw_lagrangian(rng: random.Random, marked: bool) -> LagrangianData:
    npts = rng.randint(1, 6)
    pts = tuple(CriticalPoint(f"x{i}", rng.randint(0, 2)) for i in range(npts))
    morse, quantum = [], []
    for x in pts:
        for y in pts:
            if x.index - y.index == 1 and rng.random() < 0.5:
                morse.append(TrajectoryCount(x.name, y.name, None, rng.randint(0, 3)))
            if y.index - x.index == 1:
                for A in BASE_CLASSES:
                    if rng.random() < 0.3:
                        quantum.append(TrajectoryCount(x.name, y.name, A.name, rng.randint(0, 3)))
                if marked:
                    for D in MARKED_CLASSES:
                        if rng.random() < 0.3:
                            quantum.append(TrajectoryCount(x.name, y.name, D.name, rng.randint(0, 2)))
    classes = BASE_CLASSES + (MARKED_CLASSES if marked else ())
    if not marked and rng.random() < 0.2:
        # a declared class with no counts changes N without adding entries
        classes = (DiskClass("B", 4, Fraction(2, 3)),) if not quantum else classes
    return LagrangianData("L", 2, pts, classes, tuple(morse), tuple(quantum))


def random_pearl_fixture(rng: random.Random, marked: bool = False) -> LagrangianData:
    """A Lagrangian whose base and blow-up pearl complexes both assemble."""
    P = blowup_params(CP2)
    while True:
        L = _draw_lagrangian(rng, marked)
        try:
            assemble_pearl_complex(CP2, L)
            blowup_pearl_complex(CP2, L, P)
        except InputError:
            continue
        return L


def random_floer_pair(rng: random.Random, marked: bool = False) -> FloerPairData:
    while True:
        npts = rng.randint(0, 6)
        pts = tuple(f"q{i}" for i in range(npts))
        classes = [DiskClass(f"u{j}", 1, Fraction(rng.randint(1, 9), rng.randint(1, 6)))
                   for j in range(3)]
        if marked:
            classes += [DiskClass(f"v{j}", 3, Fraction(1, 3) + Fraction(rng.randint(1, 9), rng.randint(1, 6)),
                                  through_point=True) for j in range(2)]
        counts = []
        for a in pts:
            for b in pts:
                if a != b:
                    for c in classes:
                        if rng.random() < 0.15:
                            counts.append(TrajectoryCount(a, b, c.name, rng.randint(0, 2)))
        pair = FloerPairData("pair", pts, tuple(classes), tuple(counts), "hamiltonian-isotopic")
        try:
            assemble_floer_complex(pair)
        except InputError:
            continue
        return pair


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
