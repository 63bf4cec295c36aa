"""Tests for canonical reduction, the per-range classifiers, c3 counting."""

import pytest

import genutil
from spectramono.charpoly import char_poly
from spectramono.classify import (
    CRepTransitive,
    IRepDRTHat,
    IRepDominatedNonTransitive,
    NotMonomorphic,
    RealConstant,
    c3_via_determinants,
    classify_k3,
    classify_k4,
    classify_mid_k,
    classify_n_minus_3,
    reduce_to_canonical_labels,
)
from spectramono.constructions import hat, paley_tournament, pair_cycle_counts
from spectramono.core import (
    HermitianStructure,
    Selector,
    Tournament,
    apply_selector,
    c_representation,
    constant_structure,
    i_representation,
    substructure,
    transitive_tournament,
)
from spectramono.errors import InputError, ReductionError, TheoremRangeError
from spectramono.monomorphy import is_k_spectrally_monomorphic
from spectramono.scalars import GaussianScalar, rational

UNIT_C = GaussianScalar.exact("3/5", "4/5")
I = GaussianScalar.i_unit()


def flip_arc(t, a, b):
    """Reverse the arc between a and b."""
    rows = list(t.rows)
    if t.dominates(a, b):
        rows[a] &= ~(1 << b)
        rows[b] |= 1 << a
    else:
        rows[b] &= ~(1 << a)
        rows[a] |= 1 << b
    return Tournament(t.n, rows)


def relabel(g, corrupt_pair, value):
    """Copy g with one off-diagonal pair replaced (Hermitian-consistently)."""
    rows = [list(row) for row in g.labels]
    x, y = corrupt_pair
    rows[x][y] = value
    rows[y][x] = value.conj()
    return HermitianStructure(rows)


class TestCanonicalReduction:
    def test_round_trip(self):
        r = genutil.rng(31)
        for _ in range(10):
            g = genutil.random_unit_hermitian(r, 5)
            try:
                red = reduce_to_canonical_labels(g)
            except ReductionError:
                continue
            assert apply_selector(red.canonical, red.selector) == g
            assert red.gamma.is_real() or red.gamma.im > 0

    def test_vertex_zero_dominates(self):
        red = reduce_to_canonical_labels(i_representation(hat(paley_tournament(7))))
        assert red.tournament.out_degree(0) == 7

    def test_orbit_invariance(self):
        """A selector twist changes gamma only by the positive scale |d|^2
        and never changes the extracted tournament."""
        r = genutil.rng(32)
        base = i_representation(hat(paley_tournament(7)))
        red = reduce_to_canonical_labels(base)
        for _ in range(5):
            d = genutil.random_selector(r, 8)
            twisted = reduce_to_canonical_labels(apply_selector(base, d))
            assert twisted.tournament == red.tournament
            assert twisted.gamma == red.gamma.scale(d.modulus_squared())

    def test_real_constant(self):
        g = constant_structure(5, GaussianScalar.exact(-2))
        red = reduce_to_canonical_labels(g)
        assert red.real
        assert red.gamma == GaussianScalar.exact(-2)
        assert red.canonical == g
        assert red.tournament == transitive_tournament(5)

    def test_phase_failure_cites_pair(self):
        r = genutil.rng(33)
        g = i_representation(genutil.random_tournament(r, 5))
        bad = relabel(g, (2, 3), UNIT_C)
        with pytest.raises(ReductionError) as info:
            reduce_to_canonical_labels(bad)
        assert info.value.reason == "phase_outside_pair"
        assert info.value.pair == (2, 3)

    def test_zero_label_reason(self):
        g = relabel(constant_structure(5, GaussianScalar.one()), (1, 4), GaussianScalar.zero())
        with pytest.raises(ReductionError) as info:
            reduce_to_canonical_labels(g)
        assert info.value.reason == "not_two_monomorphic"

    def test_needs_five_vertices(self):
        with pytest.raises(InputError):
            reduce_to_canonical_labels(constant_structure(4, GaussianScalar.one()))


class TestClassifyK3:
    def test_transitive_c_representation(self):
        g = c_representation(transitive_tournament(6), UNIT_C)
        result = classify_k3(g)
        assert result.monomorphic
        assert isinstance(result.variant, CRepTransitive)
        assert result.variant.label == UNIT_C
        assert result.variant.order == (0, 1, 2, 3, 4, 5)
        assert apply_selector(result.canonical, result.witness_selector) == g

    def test_reversed_transitive_order(self):
        g = c_representation(transitive_tournament(6).reverse(), UNIT_C)
        result = classify_k3(g)
        assert isinstance(result.variant, CRepTransitive)
        assert result.variant.order == (0, 5, 4, 3, 2, 1)

    def test_conjugate_label_canonicalized(self):
        """Labels c and conj(c) describe the same class; the positive
        imaginary part is reported."""
        g = c_representation(transitive_tournament(6), UNIT_C.conj())
        result = classify_k3(g)
        assert result.variant.label == UNIT_C

    def test_real_constant(self):
        g = constant_structure(7, GaussianScalar.exact(-2))
        result = classify_k3(g)
        assert result.monomorphic
        assert result.variant == RealConstant(value=GaussianScalar.exact(-2))

    def test_i_representation_without_dominating_vertex(self):
        """Every i-representation is 3-monomorphic; no dominating vertex in
        the input is needed since the reduction installs one."""
        r = genutil.rng(34)
        from spectramono.core import is_transitive

        for _ in range(10):
            t = genutil.random_tournament(r, 6)
            if is_transitive(t):
                continue
            result = classify_k3(i_representation(t))
            assert result.monomorphic
            if isinstance(result.variant, IRepDominatedNonTransitive):
                assert result.variant.label == I
                assert result.variant.tournament.out_degree(0) == 5

    def test_general_label_on_cycle_fails(self):
        t = flip_arc(transitive_tournament(5), 1, 4)
        result = classify_k3(c_representation(t, UNIT_C))
        assert not result.monomorphic
        assert isinstance(result.variant, NotMonomorphic)
        first, second = result.variant.witness
        polys = result.variant.witness_polys
        g = c_representation(t, UNIT_C)
        assert char_poly(substructure(g, first)) == polys[0]
        assert char_poly(substructure(g, second)) == polys[1]
        assert polys[0] != polys[1]

    def test_all_zero_is_outside_every_class(self):
        g = constant_structure(5, GaussianScalar.zero())
        result = classify_k3(g)
        assert not result.monomorphic
        assert "zero" in result.variant.reason
        assert result.variant.witness is None

    def test_mixed_moduli(self):
        g = relabel(constant_structure(5, GaussianScalar.one()), (3, 4), GaussianScalar.exact(2))
        result = classify_k3(g)
        assert not result.monomorphic
        assert result.variant.witness is not None

    def test_range(self):
        with pytest.raises(TheoremRangeError):
            classify_k3(constant_structure(4, GaussianScalar.one()))

    def test_agreement_with_enumeration(self):
        r = genutil.rng(35)
        for _ in range(60):
            t = Tournament.from_pair_bits(5, r.randrange(1 << 10))
            c = r.choice([I, UNIT_C, GaussianScalar.exact("5/13", "12/13")])
            g = c_representation(t, c)
            assert classify_k3(g).monomorphic == is_k_spectrally_monomorphic(g, 3).monomorphic


class TestClassifyK4:
    def test_paley_hat_is_not_four_monomorphic(self):
        result = classify_k4(i_representation(hat(paley_tournament(7))))
        assert not result.monomorphic
        assert result.variant.witness == ((0, 1, 2, 3), (0, 1, 2, 4))

    def test_transitive_survives(self):
        g = c_representation(transitive_tournament(7), I)
        result = classify_k4(g)
        assert result.monomorphic
        assert isinstance(result.variant, CRepTransitive)

    def test_real_constant(self):
        g = constant_structure(7, GaussianScalar.exact("1/2"))
        assert isinstance(classify_k4(g).variant, RealConstant)

    def test_range(self):
        with pytest.raises(TheoremRangeError):
            classify_k4(constant_structure(6, GaussianScalar.one()))

    def test_agreement_with_enumeration(self):
        r = genutil.rng(36)
        for _ in range(40):
            t = Tournament.from_pair_bits(7, r.randrange(1 << 21))
            c = r.choice([I, UNIT_C])
            g = c_representation(t, c)
            assert classify_k4(g).monomorphic == is_k_spectrally_monomorphic(g, 4).monomorphic


class TestClassifyMidK:
    def test_matches_k4_at_lower_edge(self):
        g = i_representation(hat(paley_tournament(7)))
        result = classify_mid_k(g, 4)
        assert not result.monomorphic
        assert result.variant.witness == ((0, 1, 2, 3), (0, 1, 2, 4))

    def test_transitive_all_mid_k(self):
        g = c_representation(transitive_tournament(9), UNIT_C)
        for k in range(4, 6):
            result = classify_mid_k(g, k)
            assert result.monomorphic
            assert isinstance(result.variant, CRepTransitive)

    def test_range(self):
        g = c_representation(transitive_tournament(8), UNIT_C)
        with pytest.raises(TheoremRangeError):
            classify_mid_k(g, 3)
        with pytest.raises(TheoremRangeError):
            classify_mid_k(g, 5)
        with pytest.raises(TheoremRangeError):
            classify_mid_k(c_representation(transitive_tournament(7), UNIT_C), 4)


class TestClassifyNMinus3:
    def test_recovers_doubly_regular_base(self):
        g = i_representation(hat(paley_tournament(7)))
        result = classify_n_minus_3(g)
        assert result.k == 5
        assert result.monomorphic
        assert isinstance(result.variant, IRepDRTHat)
        assert result.variant.tournament == paley_tournament(7)
        assert result.variant.certificate.t == 1
        assert apply_selector(result.canonical, result.witness_selector) == g

    def test_non_regular_base_fails(self):
        t = flip_arc(paley_tournament(7), 0, 1)
        result = classify_n_minus_3(i_representation(hat(t)))
        assert not result.monomorphic
        assert "doubly regular" in result.variant.reason
        assert result.variant.witness is not None

    def test_transitive(self):
        g = c_representation(transitive_tournament(8), UNIT_C)
        result = classify_n_minus_3(g)
        assert result.k == 5
        assert isinstance(result.variant, CRepTransitive)

    def test_six_vertex_boundary_is_k3(self):
        """At n = 6 the refinement has no room (no 5-vertex doubly regular
        tournament exists) and the k = 3 characterization is the statement."""
        r = genutil.rng(37)
        from spectramono.core import is_transitive

        t = genutil.random_tournament(r, 6)
        while is_transitive(t):
            t = genutil.random_tournament(r, 6)
        result = classify_n_minus_3(i_representation(t))
        assert result.k == 3
        assert result.monomorphic

    def test_range(self):
        with pytest.raises(TheoremRangeError):
            classify_n_minus_3(constant_structure(5, GaussianScalar.one()))

    def test_agreement_with_enumeration(self):
        r = genutil.rng(38)
        for n in (6, 7, 8):
            for _ in range(8):
                t = genutil.random_tournament(r, n)
                g = c_representation(t, r.choice([I, UNIT_C]))
                result = classify_n_minus_3(g)
                enumerated = is_k_spectrally_monomorphic(g, result.k)
                assert result.monomorphic == enumerated.monomorphic


class TestC3ViaDeterminants:
    def test_doubly_regular_pairs(self):
        g = i_representation(hat(paley_tournament(7)))
        assert c3_via_determinants(g, 0, 1, 2) == 2
        assert c3_via_determinants(g, 0, 3, 7) == 2

    def test_transitive_pairs(self):
        g = i_representation(hat(transitive_tournament(7)))
        assert c3_via_determinants(g, 0, 2, 5) == 0

    def test_planted_single_cycle(self):
        t = hat(flip_arc(transitive_tournament(7), 1, 4))
        g = i_representation(t)
        # the only 3-cycle through the flipped pair's neighbour pair {1,2}
        # (vertices 2,3 after hat's shift) is via old vertex 4
        assert c3_via_determinants(g, 0, 2, 3) == 1

    def test_cross_check_against_direct_count(self):
        r = genutil.rng(39)
        for _ in range(15):
            t = hat(genutil.random_tournament(r, 6))
            g = i_representation(t)
            x, y = sorted(r.sample(range(1, 7), 2))
            assert c3_via_determinants(g, 0, x, y) == pair_cycle_counts(t, x, y)[0]

    def test_scaled_labels(self):
        """Labels 4i instead of i: determinants grow by m^4 = 256 and the
        count is unchanged."""
        t = hat(paley_tournament(7))
        g = apply_selector(i_representation(t), Selector.constant(8, GaussianScalar.exact(2)))
        assert g.label(0, 1) == GaussianScalar.exact(0, 4)
        assert c3_via_determinants(g, 0, 1, 2) == 2

    def test_requires_dominating_vertex(self):
        g = i_representation(hat(paley_tournament(7)))
        with pytest.raises(InputError):
            c3_via_determinants(g, 1, 2, 3)

    def test_requires_imaginary_labels(self):
        g = c_representation(transitive_tournament(7), UNIT_C)
        with pytest.raises(InputError):
            c3_via_determinants(g, 0, 1, 2)

    def test_requires_distinct_vertices(self):
        g = i_representation(hat(paley_tournament(7)))
        with pytest.raises(InputError):
            c3_via_determinants(g, 0, 1, 1)
