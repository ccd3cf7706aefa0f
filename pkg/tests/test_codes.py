from __future__ import annotations

import pytest

from cccodes.codes import (
    Code,
    CodeParams,
    Composition,
    composition_of,
    distance_five_cyclic_code,
    hamming_distance,
    is_refinement,
    min_distance,
    refine_code,
    shorten_code,
    support,
    verify_code,
)
from conftest import naive_hamming


class TestComposition:
    def test_normalised_on_construction(self):
        assert Composition((1, 2, 0, 1)).counts == (2, 1, 1)
        assert Composition((3,)).counts == (3,)

    def test_weight(self):
        assert Composition((2, 1)).weight == 3
        assert Composition((4, 1)).weight == 5

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Composition(())
        with pytest.raises(ValueError):
            Composition((0, 0))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Composition((2, -1))

    def test_parse_str_roundtrip(self):
        c = Composition.parse("2,1")
        assert c.counts == (2, 1) and str(c) == "2,1"


class TestCodeParams:
    def test_weight_exceeds_length(self):
        with pytest.raises(ValueError):
            CodeParams(3, 2, 4, Composition((2, 1)))

    def test_too_many_symbols(self):
        with pytest.raises(ValueError):
            CodeParams(3, 5, 4, Composition((1, 1, 1)))

    def test_alphabet_cap(self):
        with pytest.raises(ValueError):
            CodeParams(37, 5, 2, Composition((1,)))

    def test_singleton_only_flag(self):
        assert CodeParams(3, 4, 7, Composition((2, 1))).singleton_only
        assert not CodeParams(3, 4, 6, Composition((2, 1))).singleton_only


class TestHamming:
    def test_positional_count(self):
        assert hamming_distance((1, 2, 0, 3, 0, 0, 0), (0, 1, 2, 0, 3, 0, 0)) == 5

    def test_identity(self):
        u = (1, 2, 0, 3)
        assert hamming_distance(u, u) == 0

    def test_swap(self):
        assert hamming_distance((1, 1, 2, 0, 0), (2, 1, 1, 0, 0)) == 2

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            hamming_distance((1, 2), (1, 2, 0))


class TestCompositionOf:
    def test_ternary(self):
        assert composition_of((1, 1, 2, 0, 0), 3).counts == (2, 1)

    def test_quaternary(self):
        assert composition_of((3, 2, 1, 0, 0, 0, 0), 4).counts == (1, 1, 1)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            composition_of((0, 0, 0), 3)

    def test_symbol_out_of_range(self):
        with pytest.raises(ValueError):
            composition_of((1, 3, 0), 3)

    def test_support(self):
        assert support((0, 2, 0, 1)) == (1, 3)


class TestMinDistance:
    def test_cyclic_code_n7(self):
        code = distance_five_cyclic_code(7)
        # oracle: exhaustive pairwise check over the 7 shifts
        words = code.words
        naive = min(
            naive_hamming(words[i], words[j])
            for i in range(len(words))
            for j in range(i + 1, len(words))
        )
        assert naive == 5
        assert min_distance(code) == 5

    def test_disjoint_supports(self):
        params = CodeParams(3, 6, 4, Composition((2, 1)))
        code = Code(params, [(1, 1, 2, 0, 0, 0), (0, 0, 0, 1, 1, 2)])
        assert min_distance(code) == 2 * params.weight

    def test_optimal_length5_code(self, ternary_w3):
        code = ternary_w3(5)
        words = code.words
        naive = min(
            naive_hamming(words[i], words[j])
            for i in range(len(words))
            for j in range(i + 1, len(words))
        )
        assert naive == 4
        assert min_distance(code) == 4

    def test_needs_two_words(self):
        params = CodeParams(3, 5, 4, Composition((2, 1)))
        with pytest.raises(ValueError):
            min_distance(Code(params, [(1, 1, 2, 0, 0)]))


class TestVerifyCode:
    def test_valid(self, ternary_w3):
        assert verify_code(ternary_w3(5)).ok

    def test_wrong_composition_named(self, ternary_w3):
        good = ternary_w3(5)
        words = list(good.words)
        words[0] = (2, 2, 1, 0, 0)  # composition [2,1] -> [1,2] reversed symbols
        report = verify_code(Code(good.params, words))
        assert not report.ok
        kinds = {v.kind for v in report.violations}
        assert "composition" in kinds
        flagged = [v for v in report.violations if v.kind == "composition"]
        assert flagged[0].detail == ((2, 2, 1, 0, 0),)

    def test_close_pair_measured(self):
        params = CodeParams(3, 5, 4, Composition((2, 1)))
        code = Code(params, [(1, 1, 2, 0, 0), (1, 1, 0, 2, 0)])
        report = verify_code(code)
        assert not report.ok
        v = report.violations[0]
        assert v.kind == "distance" and v.measured == 2

    def test_duplicates(self):
        params = CodeParams(3, 5, 4, Composition((2, 1)))
        code = Code(params, [(1, 1, 2, 0, 0), (1, 1, 2, 0, 0)])
        report = verify_code(code)
        assert any(v.kind == "duplicate" for v in report.violations)

    def test_length_and_symbol(self):
        params = CodeParams(3, 5, 4, Composition((2, 1)))
        report = verify_code(Code(params, [(1, 1, 2, 0), (1, 1, 3, 0, 0)]))
        kinds = {v.kind for v in report.violations}
        assert kinds == {"length", "symbol"}


class TestRefinement:
    def test_partition_found(self):
        part = is_refinement(Composition((2, 1, 1)), Composition((2, 2)))
        assert part == ((0,), (1, 2))

    def test_no_partition(self):
        assert is_refinement(Composition((2, 2)), Composition((3, 1))) is None

    def test_identity(self):
        part = is_refinement(Composition((2, 1)), Composition((2, 1)))
        assert part == ((0,), (1,))

    def test_single_word_relabel(self):
        params = CodeParams(3, 10, 6, Composition((2, 2)))
        code = Code(params, [(1, 1, 2, 2, 0, 0, 0, 0, 0, 0)])
        out = refine_code(code, Composition((2, 1, 1)), 4)
        assert out.words == ((1, 1, 2, 3, 0, 0, 0, 0, 0, 0),)
        assert out.params.q == 4 and out.params.comp.counts == (2, 1, 1)

    def test_identity_partition_is_noop(self, ternary_w3):
        code = ternary_w3(5)
        out = refine_code(code, Composition((2, 1)), 3)
        assert out.words == code.words

    def test_alphabet_too_small(self):
        params = CodeParams(3, 10, 6, Composition((2, 2)))
        code = Code(params, [(1, 1, 2, 2, 0, 0, 0, 0, 0, 0)])
        with pytest.raises(ValueError):
            refine_code(code, Composition((2, 1, 1)), 3)

    def test_inconsistent_partition(self):
        params = CodeParams(3, 10, 6, Composition((2, 2)))
        code = Code(params, [(1, 1, 2, 2, 0, 0, 0, 0, 0, 0)])
        with pytest.raises(ValueError):
            refine_code(code, Composition((2, 1, 1)), 4, partition=((0, 1), (2,)))

    def test_distance_never_shrinks(self, ternary_w3):
        code = ternary_w3(9)
        out = refine_code(code, Composition((1, 1, 1)), 4)
        assert verify_code(out).ok
        assert min_distance(out) >= min_distance(code)
        assert len(out) == len(code)


class TestShorten:
    def test_no_zero_at_position(self):
        params = CodeParams(3, 3, 4, Composition((2, 1)))
        code = Code(params, [(1, 1, 2)])
        out = shorten_code(code, 1)
        assert len(out) == 0 and out.params.n == 2

    def test_distance_preserved(self):
        code = distance_five_cyclic_code(9)
        out = shorten_code(code, 0)
        assert out.params.n == 8
        assert verify_code(out).ok
        if len(out) >= 2:
            assert min_distance(out) >= 5

    def test_position_out_of_range(self):
        code = distance_five_cyclic_code(7)
        with pytest.raises(ValueError):
            shorten_code(code, 7)


class TestCyclicConstruction:
    def test_n7(self):
        code = distance_five_cyclic_code(7)
        assert len(code) == 7
        assert verify_code(code).ok
        assert min_distance(code) == 5

    def test_n10_distinct(self):
        code = distance_five_cyclic_code(10)
        assert len(code) == len(set(code.words)) == 10
        assert verify_code(code).ok

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            distance_five_cyclic_code(6)
