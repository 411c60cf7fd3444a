import json

import numpy as np
import pytest

from levibranch import (Weight, WeightPolynomial, alternating_sum, build_levi,
                        build_root_system, kostant_partition,
                        kostka_multiplicity, nabla_bar, symmetrize,
                        weyl_character, weyl_dim, weyl_group)
from levibranch.rootsys import WeightError
from levibranch.weightpoly import (BudgetError, PartitionTable,
                                   chamber_cone_mask, dominant_multiplicities,
                                   dominants_below, full_table,
                                   kostka_by_kostant, levi_table)


class TestWeightPolynomial:
    def test_normalisation_and_equality(self):
        p = WeightPolynomial({Weight.of(1, 0): 2, Weight.of(0, 1): 0})
        assert len(p) == 1 and p.coefficient(Weight.of(0, 1)) == 0
        q = WeightPolynomial([(Weight.of(1, 0), 1), (Weight.of(1, 0), 1)])
        assert p == q

    def test_ring_ops(self):
        e = WeightPolynomial.monomial
        a = e(Weight.of(1, 0)) + e(Weight.of(0, 1))
        b = e(Weight.of(0, 0)) - e(Weight.of(1, -1))
        prod = a * b
        # (1,0)+(0,0) cancels against (0,1)+(1,-1)
        assert prod.coefficient(Weight.of(1, 0)) == 0
        assert prod.coefficient(Weight.of(0, 1)) == 1
        assert prod.coefficient(Weight.of(2, -1)) == -1
        assert (a - a) == WeightPolynomial.zero()
        assert (3 * a).coefficient(Weight.of(0, 1)) == 3

    def test_serialization_bit_exact(self):
        p = WeightPolynomial({Weight.of(2, -1): 3, Weight((1, 1)): -2})
        blob1 = json.dumps(p.to_json(), sort_keys=True)
        blob2 = json.dumps(WeightPolynomial.from_json(p.to_json()).to_json(),
                           sort_keys=True)
        assert blob1 == blob2
        assert WeightPolynomial.from_json(p.to_json()) == p

    def test_iteration_sorted(self):
        p = WeightPolynomial({Weight.of(3, 0): 1, Weight.of(-1, 2): 4})
        assert [w for w, _ in p] == sorted(p.support())


class TestPartitionTable:
    def test_examples(self, levi_gl3_21):
        table = levi_table(levi_gl3_21)
        assert sorted(table.root_list) == sorted(
            [Weight.of(1, 0, -1), Weight.of(0, 1, -1)])
        assert kostant_partition(table, Weight.zero(3)) == 1
        assert kostant_partition(table, Weight.of(1, 1, -2)) == 1
        assert kostant_partition(table, Weight.of(1, -1, 0)) == 0

    def test_counts_match_enumeration(self, c2):
        # brute-force N-combinations as the oracle
        table = full_table(c2)
        roots = c2.positive_roots
        import itertools
        from collections import Counter
        counter = Counter()
        for coeffs in itertools.product(range(5), repeat=len(roots)):
            total = Weight.zero(2)
            for c, a in zip(coeffs, roots):
                total = total + c * a
            if all(x <= 12 for x in total):
                counter[total] += 1
        for target, count in counter.items():
            if all(abs(x) <= 8 for x in target):
                assert table.count(target) == count, target

    def test_persistence_roundtrip(self, tmp_path, levi_c3_gl3):
        table = PartitionTable(
            [a for a in levi_c3_gl3.parent.positive_roots
             if a not in set(levi_c3_gl3.rbar_plus)], 3)
        vals = {w: table.count(w) for w in
                [Weight.of(2, 0, 0), Weight.of(1, 1, 0), Weight.of(2, 1, 1)]}
        path = tmp_path / "cache.txt"
        table.save_text(path)
        fresh = PartitionTable(table.root_list, 3)
        fresh.load_text(path)
        for w, v in vals.items():
            assert fresh.values[w] == v
            assert fresh.count(w) == v

    def test_cone_mask_matches_scalar(self, rng):
        for family, rank in (("GL", 3), ("B", 2), ("C", 3), ("D", 4)):
            datum = build_root_system(family, rank)
            rows = np.array([[rng.randint(-8, 8) for _ in range(rank)]
                             for _ in range(200)], dtype=np.int64)
            mask = chamber_cone_mask(family, rows)
            zero = Weight.zero(rank)
            for row, bit in zip(rows, mask):
                assert bool(bit) == datum.dominance_leq(zero, Weight(row))


class TestCharacters:
    def test_trivial(self, c3):
        ch = weyl_character(c3, Weight.zero(3))
        assert ch == WeightPolynomial.monomial(Weight.zero(3))

    def test_c2_defining(self, c2):
        ch = weyl_character(c2, Weight.of(1, 0))
        assert dict(ch) == {Weight.of(1, 0): 1, Weight.of(0, 1): 1,
                            Weight.of(0, -1): 1, Weight.of(-1, 0): 1}

    def test_c3_fundamental_dim(self, c3):
        assert weyl_dim(c3, Weight.of(1, 1, 0)) == 14
        assert weyl_character(c3, Weight.of(1, 1, 0)).dimension() == 14

    def test_spin_character(self, b3):
        spin = Weight((1, 1, 1))
        ch = weyl_character(b3, spin)
        assert ch.dimension() == 8
        assert all(all(abs(c) == 1 for c in w) for w, _ in ch)

    @pytest.mark.parametrize("family,rank,lam", [
        ("GL", 3, (2, 1, 0)), ("C", 2, (2, 1)), ("B", 2, (2, 2)), ("D", 4, (1, 1, 0, 0)),
    ])
    def test_characters_are_weyl_symmetric(self, family, rank, lam):
        datum = build_root_system(family, rank)
        ch = weyl_character(datum, Weight.of(*lam))
        for w in weyl_group(datum):
            assert ch.apply(w) == ch

    @pytest.mark.parametrize("family,rank,lam", [
        ("GL", 3, (2, 1, 0)), ("GL", 3, (3, 1, -1)), ("C", 2, (2, 1)),
        ("B", 2, (2, 1)), ("D", 3, (2, 1, 1)),
    ])
    def test_freudenthal_matches_kostant_formula(self, family, rank, lam):
        datum = build_root_system(family, rank)
        lam = Weight.of(*lam)
        mult = dominant_multiplicities(datum, lam)
        for nu, m in mult.items():
            assert kostka_by_kostant(datum, lam, nu) == m
        # and a few points outside the support
        assert kostka_by_kostant(datum, lam, lam + datum.highest_root) == 0

    def test_budget_error(self, c3):
        with pytest.raises(BudgetError):
            weyl_character(c3, Weight.of(40, 30, 20), budget=1000)

    def test_requires_dominant(self, c3):
        with pytest.raises(WeightError):
            weyl_character(c3, Weight.of(0, 1, 0))


class TestKostka:
    def test_diagonal_and_order(self, gl3):
        lam = Weight.of(2, 1, 0)
        assert kostka_multiplicity(gl3, lam, lam) == 1
        assert kostka_multiplicity(gl3, lam, Weight.of(3, 0, 0)) == 0
        assert kostka_multiplicity(gl3, lam, Weight.of(1, 1, 1)) == 2

    def test_weyl_invariance(self, gl3, rng):
        lam = Weight.of(3, 1, 0)
        for w in weyl_group(gl3):
            beta = Weight.of(2, 1, 1)
            assert kostka_multiplicity(gl3, lam, w.act(beta)) == \
                kostka_multiplicity(gl3, lam, beta)

    def test_dimension_sums(self, c2):
        for lam in dominants_below(c2, Weight.of(3, 2)):
            mult = dominant_multiplicities(c2, lam)
            from levibranch.weightpoly import _frame_for
            frame = _frame_for(c2)
            total = sum(m * len(frame.orbit_rows(nu)) for nu, m in mult.items())
            assert total == weyl_dim(c2, lam)


class TestSymmetrize:
    def test_zero_weight(self, gl3):
        m0 = symmetrize(gl3, Weight.zero(3))
        assert dict(m0) == {Weight.zero(3): 6}

    def test_stabiliser_coefficients(self, gl3):
        m = symmetrize(gl3, Weight.of(1, 0, 0))
        assert dict(m) == {Weight.of(1, 0, 0): 2, Weight.of(0, 1, 0): 2,
                           Weight.of(0, 0, 1): 2}

    def test_regular_orbit(self, c2):
        m = symmetrize(c2, Weight.of(2, 1))
        assert len(m) == 8 and all(c == 1 for _, c in m)

    def test_orbit_invariance(self, c2, rng):
        gamma = Weight.of(3, -1)
        for w in weyl_group(c2):
            assert symmetrize(c2, w.act(gamma)) == symmetrize(c2, gamma)


class TestAlternating:
    def test_trivial_levi(self, gl3):
        levi = build_levi(gl3, [])
        gamma = Weight.of(2, 0, 1)
        assert alternating_sum(levi, gamma) == WeightPolynomial.monomial(gamma)

    def test_wall_cancellation(self, levi_gl3_21):
        # gamma fixed by the block reflection
        assert alternating_sum(levi_gl3_21, Weight.of(1, 1, 5)) == \
            WeightPolynomial.zero()

    def test_two_term_block(self, levi_gl3_21):
        rho_bar = levi_gl3_21.rho_bar
        alt = alternating_sum(levi_gl3_21, rho_bar)
        assert dict(alt) == {rho_bar: 1, Weight((-1, 1, 0)): -1}

    def test_antisymmetry(self, levi_c3_gl3, rng):
        from levibranch.weylgrp import levi_group
        gamma = Weight.of(3, 1, -2)
        base = alternating_sum(levi_c3_gl3, gamma)
        for wbar in levi_group(levi_c3_gl3):
            assert alternating_sum(levi_c3_gl3, wbar.act(gamma)) == \
                (base if wbar.sign() == 1 else -base)


class TestNabla:
    def test_empty(self, gl3):
        levi = build_levi(gl3, [])
        assert nabla_bar(levi) == WeightPolynomial.monomial(Weight.zero(3))

    def test_single_block(self, levi_gl3_21):
        alpha = Weight.of(1, -1, 0)
        expected = (WeightPolynomial.monomial(Weight.zero(3))
                    - WeightPolynomial.monomial(alpha))
        assert nabla_bar(levi_gl3_21) == expected

    def test_sp12_term_count(self, levi_sp12):
        poly = nabla_bar(levi_sp12)
        assert len(poly) == 288
        assert poly.coefficient(Weight.zero(6)) == 1

    @pytest.mark.parametrize("fixture", [
        "levi_c3_gl3", "levi_b3_gl2_so3", "levi_d4_gl4", "levi_gl4_22"])
    def test_product_equals_alternating(self, fixture, request):
        # nabla_bar raises internally when the two expansions disagree
        nabla_bar(request.getfixturevalue(fixture))
