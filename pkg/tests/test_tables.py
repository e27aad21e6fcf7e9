import itertools
import random

import pytest

from ufabound import tables
from ufabound.errors import CapacityError
from ufabound.statesets import full_mask, mask_of
from ufabound.tables import (BipartiteArcGraph, PrefixTable, SuffixTable,
                             augment, break_set, breaks_through, drops_down,
                             enumerate_prefix_tables, enumerate_suffix_tables,
                             haspath, is_ordered, layer_structure,
                             prefix_table_from_text, prefix_table_to_text,
                             starting_state, suffix_table_from_text,
                             suffix_table_to_text, table_rank_via_matrix,
                             table_size)


def pt(n, *sets):
    return PrefixTable.from_sets(n, sets)


CHAIN3 = pt(3, {1}, {1, 2}, {1, 2, 3})


def starting_states_brute_force(f):
    """Oracle: check the containment condition with plain Python sets."""
    sets = [set(tables.elements(v)) for v in f.values]
    return [i + 1 for i, s in enumerate(sets) if all(s <= t for t in sets)]


class TestPrefixTableInvariants:
    def test_rejects_empty_value(self):
        with pytest.raises(ValueError):
            pt(2, {1}, set())

    def test_rejects_missing_starting_state(self):
        with pytest.raises(ValueError):
            pt(2, {1}, {2})

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            pt(2, {1}, {3})

    def test_every_enumerated_table_has_brute_force_starting_state(self):
        for f in enumerate_prefix_tables(3):
            starts = starting_states_brute_force(f)
            assert starts
            assert starting_state(f) == min(starts)


class TestStartingStateAndSize:
    def test_constant_full_table(self):
        assert starting_state(pt(3, {1, 2, 3}, {1, 2, 3}, {1, 2, 3})) == 1

    def test_subset_scan_examples(self):
        # frozen from the brute-force containment oracle
        f = pt(2, {2}, {1, 2})
        assert starting_states_brute_force(f) == [1]
        assert starting_state(f) == 1
        g = pt(3, {1, 2}, {1}, {1, 2, 3})
        assert starting_states_brute_force(g) == [2]
        assert starting_state(g) == 2

    def test_table_size(self):
        assert table_size(pt(3, {1}, {1}, {1})) == 3
        assert table_size(pt(3, {1, 2, 3}, {1, 2, 3}, {1, 2, 3})) == 9
        assert table_size(pt(2, {2}, {1, 2})) == 3


class TestSuffixTableInvariants:
    def test_accept_entry_must_be_full(self):
        with pytest.raises(ValueError):
            SuffixTable.from_sets(2, [{1}, {1, 2}], accept={1})

    def test_accept_flags_must_be_nonempty(self):
        with pytest.raises(ValueError):
            SuffixTable.from_sets(2, [{1}, {2}], accept=set())

    def test_empty_values_are_legal_outside_accept(self):
        g = SuffixTable.from_sets(2, [{1, 2}, set()], accept={1})
        assert g.value(2) == 0


class TestHaspath:
    def test_single_arc(self):
        g = BipartiteArcGraph(1, (mask_of({1}),), (0,))
        assert haspath(g, 1, mask_of({1}))

    def test_no_arcs(self):
        g = BipartiteArcGraph(2, (0, 0), (0, 0))
        assert not haspath(g, 1, full_mask(2))

    def test_alternating_path(self):
        # (L,1)->(R,2), (R,2)->(L,2), (L,2)->(R,1); target {1}
        g = BipartiteArcGraph(2, (mask_of({2}), mask_of({1})), (0, mask_of({2})))
        assert haspath(g, 1, mask_of({1}))
        assert not haspath(g, 2, mask_of({2}))  # right vertex 2 unreachable from (L,2)

    def test_start_out_of_range(self):
        g = BipartiteArcGraph(2, (0, 0), (0, 0))
        with pytest.raises(ValueError):
            haspath(g, 3, 0)


class TestAugment:
    def test_example(self):
        f = pt(3, {1}, {1, 2}, {1, 3})
        fe, fep, fee = augment(f, 2, 3, 2, 3)
        assert fe.value(2) == mask_of({1, 2, 3}) and fe.value(3) == f.value(3)
        assert fep.value(3) == mask_of({1, 2, 3}) and fep.value(2) == f.value(2)
        assert fee.value(2) == fee.value(3) == mask_of({1, 2, 3})
        assert table_size(fee) == table_size(f) + 2

    def test_precondition_violations(self):
        f = pt(3, {1}, {1, 2}, {1, 3})
        with pytest.raises(ValueError):
            augment(f, 2, 2, 2, 3)       # u1 == u2
        with pytest.raises(ValueError):
            augment(f, 2, 3, 2, 2)       # v1 == v2
        with pytest.raises(ValueError):
            augment(f, 2, 3, 3, 2)       # v1 not in f(u1)
        with pytest.raises(ValueError):
            augment(f, 2, 3, 1, 3)       # v2 = 3 but cross arc demands absence of 1 in f(3)

    def test_exhaustive_preservation_n3(self):
        # every valid quadruple keeps validity, the starting state, and adds two arcs
        for f in enumerate_prefix_tables(3):
            s = starting_state(f)
            for u1, u2 in itertools.permutations(range(1, 4), 2):
                for v1 in tables.elements(f.value(u1) & ~f.value(u2)):
                    for v2 in tables.elements(f.value(u2) & ~f.value(u1)):
                        fe, fep, fee = augment(f, u1, u2, v1, v2)
                        for h in (fe, fep, fee):
                            assert starting_state(h) == s
                        assert table_size(fee) == table_size(f) + 2
                        assert table_size(fe) == table_size(fep) == table_size(f) + 1


class TestOrderedness:
    def test_all_n2_tables_are_ordered(self):
        assert all(is_ordered(f) for f in enumerate_prefix_tables(2))

    def test_unordered_example(self):
        assert not is_ordered(pt(3, {1}, {1, 2}, {1, 3}))

    def test_constant_table_is_ordered(self):
        assert is_ordered(pt(3, {2}, {2}, {2}))

    def test_characterizations_agree_exhaustively(self):
        # is_ordered asserts the quadruple scan against the chain test internally
        for n in (2, 3):
            for f in enumerate_prefix_tables(n):
                is_ordered(f)

    def test_characterizations_agree_random_n4(self):
        rng = random.Random(5)
        pool = enumerate_prefix_tables(4)
        for f in rng.sample(pool, 500):
            is_ordered(f)


class TestLayerStructure:
    def test_chain_table(self):
        ls = layer_structure(CHAIN3)
        assert ls.rank_k == 2
        assert ls.nested_sets == (mask_of({1}), mask_of({1, 2}), mask_of({1, 2, 3}))
        assert ls.prefix_layer == (0, 1, 2)
        assert ls.suffix_layer == (0, 1, 2)

    def test_constant_full(self):
        ls = layer_structure(pt(3, {1, 2, 3}, {1, 2, 3}, {1, 2, 3}))
        assert ls.rank_k == 0
        assert ls.nested_sets == (full_mask(3),)
        assert ls.prefix_layer == (0, 0, 0)
        assert ls.suffix_layer == (0, 0, 0)

    def test_constant_proper_subset(self):
        ls = layer_structure(pt(3, {1, 2}, {1, 2}, {1, 2}))
        assert ls.rank_k == 1
        assert ls.nested_sets == (mask_of({1, 2}), full_mask(3))
        assert ls.prefix_layer == (0, 0, 0)
        assert ls.suffix_layer == (0, 0, 1)

    def test_rejects_unordered(self):
        with pytest.raises(ValueError):
            layer_structure(pt(3, {1}, {1, 2}, {1, 3}))

    def test_starting_state_sits_on_layer_zero(self):
        for f in enumerate_prefix_tables(3):
            if not is_ordered(f):
                continue
            ls = layer_structure(f)
            assert ls.prefix_layer[starting_state(f) - 1] == 0
            assert all(p <= ls.rank_k for p in ls.prefix_layer)


class TestTableRankViaMatrix:
    def test_constant_full_is_zero(self):
        assert table_rank_via_matrix(pt(2, {1, 2}, {1, 2})) == 0

    def test_chain_table(self):
        assert table_rank_via_matrix(CHAIN3) == 2

    def test_matches_layer_rank_exhaustively(self):
        for n in (2, 3):
            for f in enumerate_prefix_tables(n):
                if is_ordered(f):
                    assert table_rank_via_matrix(f) == layer_structure(f).rank_k


class TestBreakthroughAndDropDown:
    def test_own_layers_are_neutral(self):
        for f in enumerate_prefix_tables(3):
            if not is_ordered(f):
                continue
            assert break_set(f, f) == set()
            for i in range(layer_structure(f).rank_k):
                assert not drops_down(f, f, i)

    def test_break_example(self):
        f = pt(3, {1, 2, 3}, {1, 2, 3}, {1, 2, 3})
        assert break_set(f, CHAIN3) == {0, 1}

    def test_drop_example(self):
        f = pt(3, {1}, {1}, {1})
        assert drops_down(f, CHAIN3, 1)
        assert not drops_down(f, CHAIN3, 0)  # nothing lies below layer 0

    def test_drop_at_layer_zero_is_impossible(self):
        ordered = [f for f in enumerate_prefix_tables(3) if is_ordered(f)]
        for f in ordered:
            for f0 in ordered:
                if layer_structure(f0).rank_k >= 1:
                    assert not drops_down(f, f0, 0)

    def test_layer_index_validated(self):
        with pytest.raises(ValueError):
            breaks_through(CHAIN3, CHAIN3, 2)
        with pytest.raises(ValueError):
            drops_down(CHAIN3, CHAIN3, -1)

    def test_break_set_matches_pointwise_predicate(self):
        rng = random.Random(9)
        ordered = [f for f in enumerate_prefix_tables(3) if is_ordered(f)]
        for _ in range(300):
            f, f0 = rng.choice(ordered), rng.choice(ordered)
            k = layer_structure(f0).rank_k
            assert break_set(f, f0) == {i for i in range(k) if breaks_through(f, f0, i)}

    def test_distinct_at_least_as_large_tables_break_through(self):
        # exhaustive at n = 2 and 3
        for n in (2, 3):
            ordered = [f for f in enumerate_prefix_tables(n) if is_ordered(f)]
            for f in ordered:
                for f0 in ordered:
                    if f != f0 and table_size(f) >= table_size(f0):
                        assert break_set(f, f0), (f, f0)


class TestEnumeration:
    def test_counts(self):
        assert len(enumerate_prefix_tables(2)) == 7
        assert len(enumerate_suffix_tables(2)) == 9
        assert len(enumerate_suffix_tables(3)) == 9 ** 3 - 8 ** 3

    def test_suffix_count_closed_form(self):
        # one option per state: any subset of {1..n}, or the accepting value
        for n in (1, 2, 3, 4):
            assert len(enumerate_suffix_tables(n)) == (2**n + 1)**n - (2**n)**n

    def test_prefix_count_matches_determinization_bound(self):
        # the tables are exactly the states of the classic one-way
        # determinization, so their number equals that closed form
        from ufabound.combinatorics import table1_row
        for n in (1, 2, 3, 4):
            assert len(enumerate_prefix_tables(n)) == table1_row(n)[3]

    def test_prefix_tables_are_sorted_and_distinct(self):
        out = [f.values for f in enumerate_prefix_tables(3)]
        assert out == sorted(out) and len(set(out)) == len(out)

    def test_suffix_tables_sorted_by_accept_then_values(self):
        out = [(g.accept_flags, g.values) for g in enumerate_suffix_tables(3)]
        assert out == sorted(out) and len(set(out)) == len(out)

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            enumerate_prefix_tables(5)
        with pytest.raises(CapacityError):
            enumerate_suffix_tables(5)


class TestTextSerialization:
    def test_documented_forms(self):
        f = prefix_table_from_text("3; 1; 1,2; 1,2,3")
        assert f == CHAIN3
        assert prefix_table_to_text(f) == "3; 1; 1,2; 1,2,3"
        g = suffix_table_from_text("3; A; 2; -")
        assert g.accept_flags == mask_of({1})
        assert g.values == (full_mask(3), mask_of({2}), 0)
        assert suffix_table_to_text(g) == "3; A; 2; -"

    def test_round_trip_is_bit_exact(self):
        for f in enumerate_prefix_tables(3):
            assert prefix_table_from_text(prefix_table_to_text(f)) == f
        for g in enumerate_suffix_tables(2):
            assert suffix_table_from_text(suffix_table_to_text(g)) == g

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            prefix_table_from_text("3; 1; 1,2")
        with pytest.raises(ValueError):
            prefix_table_from_text("2; 1; 3")
        with pytest.raises(ValueError):
            suffix_table_from_text("2; -; -")  # nothing accepts
