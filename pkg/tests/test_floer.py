from fractions import Fraction

import pytest

from pearl_blowup.algebra import NovikovScalar, ScalarMatrix
from pearl_blowup.blowup import blowup_params, check_admissible
from pearl_blowup.errors import BadIndex, InputError, NotAComplex, NotAdmissible
from pearl_blowup.floer import (
    FloerComplex,
    assemble_floer_complex,
    blowup_floer_complex,
    floer_homology,
    lifted_strip_terms,
)
from pearl_blowup.model import DiskClass, FloerPairData, ManifoldData, TrajectoryCount
from pearl_blowup.workbench import builtin_example

from conftest import CP2, oracle_homology_rank, random_complex, random_floer_pair

P = blowup_params(CP2)
T = NovikovScalar.monomial
A = Fraction(1, 6)


def _pair(counts, classes=(DiskClass("u", 1, A),), points=("p", "q")):
    return FloerPairData("pair", points, tuple(classes), tuple(counts), "at-least-3")


def test_empty_pair():
    C = assemble_floer_complex(_pair((), points=()))
    assert C.generators == () and floer_homology(C) == 0


def test_one_strip_kills_both_generators():
    C = assemble_floer_complex(_pair([TrajectoryCount("p", "q", "u", 1)]))
    assert C.entry("p", "q") == T(A)
    assert floer_homology(C) == 0


def test_strips_both_ways_do_not_compose_to_zero():
    counts = [TrajectoryCount("p", "q", "u", 1), TrajectoryCount("q", "p", "u", 1)]
    with pytest.raises(NotAComplex):
        assemble_floer_complex(_pair(counts))


def test_even_count_cancels():
    C = assemble_floer_complex(_pair([TrajectoryCount("p", "q", "u", 2)]))
    assert C.differential.is_zero() and floer_homology(C) == 2


def test_assertion_required():
    pair = FloerPairData("pair", ("p",), (), ())
    with pytest.raises(InputError, match="min_maslov_assertion"):
        assemble_floer_complex(pair)


def test_unmarked_index_three_rejected():
    pair = _pair([TrajectoryCount("p", "q", "w", 1)], classes=(DiskClass("w", 3, A),))
    with pytest.raises(BadIndex):
        assemble_floer_complex(pair)


def test_rank_examples():
    assert floer_homology(FloerComplex(tuple("abcd"), ScalarMatrix.zeros(4, 4))) == 4
    k = 3
    entries = {(2 * i + 1, 2 * i): T(i) for i in range(k)}
    d = ScalarMatrix.from_entries(2 * k, 2 * k, entries)
    assert floer_homology(FloerComplex(tuple(f"g{i}" for i in range(2 * k)), d)) == 0


def test_rank_matches_oracle(rng):
    for n in range(1, 9):
        for _ in range(5):
            d = random_complex(rng, n)
            C = FloerComplex(tuple(f"g{i}" for i in range(n)), d)
            assert floer_homology(C) == oracle_homology_rank(d, d)


# blow-up

def test_no_marked_strips_is_identity(rng):
    for _ in range(60):
        pair = random_floer_pair(rng)
        base = assemble_floer_complex(pair)
        lifted = blowup_floer_complex(pair, P)
        assert lifted.differential == base.differential
        assert floer_homology(lifted) == floer_homology(base)


def test_displaceable_pair_stays_acyclic():
    C = blowup_floer_complex(_pair([TrajectoryCount("p", "q", "u", 1)]), P)
    assert floer_homology(C) == 0


def test_marked_strip_adds_transformed_monomial():
    classes = (DiskClass("u", 1, A), DiskClass("v", 3, Fraction(5, 6), through_point=True))
    pair = _pair([TrajectoryCount("p", "q", "v", 1)], classes)
    assert assemble_floer_complex(pair).differential.is_zero()
    C = blowup_floer_complex(pair, P)
    assert C.entry("p", "q") == T(Fraction(5, 6) - Fraction(1, 3))
    # brute force from the transformed class list
    [(s, d, new, parity)] = list(lifted_strip_terms(pair, P))
    assert (s, d, new.maslov, parity) == ("p", "q", 1, 1)
    assert new.area_over_pi == Fraction(5, 6) - P.rho_sq


def test_acyclic_fixture_blowup_cancels_strip():
    W = builtin_example("acyclic-pair")
    pair = W.floer_pairs[0]
    verdict = check_admissible(W.manifold, W.lagrangians_for(pair))
    assert floer_homology(assemble_floer_complex(pair)) == 0
    assert floer_homology(blowup_floer_complex(pair, W.blowup(), verdict)) == 2


def test_transformed_strip_needs_positive_area():
    classes = (DiskClass("v", 3, Fraction(1, 3), through_point=True),)
    with pytest.raises(InputError, match="area"):
        blowup_floer_complex(_pair([TrajectoryCount("p", "q", "v", 1)], classes), P)


def test_inadmissible_verdict_refused():
    W = builtin_example("rp2-cp2")
    verdict = check_admissible(W.manifold, W.lagrangians)
    with pytest.raises(NotAdmissible):
        blowup_floer_complex(_pair([]), P, verdict)


def test_inconsistent_marking_surfaces():
    classes = (DiskClass("u", 1, A), DiskClass("v", 3, Fraction(1, 2), through_point=True))
    counts = [TrajectoryCount("p", "q", "u", 1), TrajectoryCount("q", "p", "v", 1)]
    pair = _pair(counts, classes)
    assemble_floer_complex(pair)
    with pytest.raises(NotAComplex):
        blowup_floer_complex(pair, P)


def test_transformed_areas(rng):
    for _ in range(60):
        pair = random_floer_pair(rng, marked=True)
        for _, _, cls, _ in lifted_strip_terms(pair, P):
            base = pair.strip_class(cls.name[1:-len("-L_E")])
            assert cls.area_over_pi == base.area_over_pi - P.rho_sq > 0


def test_general_dimension_lift():
    M = ManifoldData(3, 4, True)
    Pm = blowup_params(M)
    classes = (DiskClass("v", 5, Fraction(2), through_point=True),)
    C = blowup_floer_complex(_pair([TrajectoryCount("p", "q", "v", 1)], classes), Pm)
    assert C.entry("p", "q") == T(Fraction(2) - Pm.rho_sq)
