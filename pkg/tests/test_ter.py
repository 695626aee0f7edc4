import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wordqe.core import EditKind, EmptySegment, Label, ScriptMismatch, TranslationTriplet
from wordqe.ter import (
    NO_SHIFTS,
    ShiftParams,
    edits_to_tags,
    generate_reference_tags,
    levenshtein_align,
    ter_align,
)

from _oracles import all_alignments, best_single_shift_cost, edit_distance

tokens = st.lists(st.sampled_from("abcd"), min_size=1, max_size=8)


def kinds(script):
    return [e.kind for e in script.edits]


def as_oracle_ops(script):
    out = []
    for e in script.alignment:
        if e.kind is EditKind.MATCH:
            out.append(("M", e.mt_index, e.pe_index))
        elif e.kind is EditKind.SUBSTITUTION:
            out.append(("S", e.mt_index, e.pe_index))
        elif e.kind is EditKind.INSERTION:
            out.append(("I", e.mt_index))
        else:
            out.append(("D", e.pe_index))
    return tuple(out)


class TestLevenshteinAlign:
    def test_identical(self):
        script = levenshtein_align("abc", "abc")
        assert kinds(script) == [EditKind.MATCH] * 3
        assert script.total_cost == 0

    @pytest.mark.parametrize("mt,pe", [("axc", "abc"), ("ac", "abc")])
    def test_unique_optimum_matches_enumeration(self, mt, pe):
        paths = all_alignments(mt, pe)
        best = min(c for c, _ in paths)
        optimal = [ops for c, ops in paths if c == best]
        assert len(optimal) == 1
        script = levenshtein_align(mt, pe)
        assert script.total_cost == best == 1
        assert as_oracle_ops(script) == optimal[0]

    def test_substitution_record(self):
        sub = levenshtein_align("axc", "abc").edits[1]
        assert sub.kind is EditKind.SUBSTITUTION
        assert (sub.mt_index, sub.pe_index, sub.token) == (1, 1, "b")

    def test_deletion_record(self):
        dele = levenshtein_align("ac", "abc").edits[1]
        assert dele.kind is EditKind.DELETION
        assert dele.mt_index is None and dele.pe_index == 1

    def test_insertion_record(self):
        script = levenshtein_align("abxc", "abc")
        ins = [e for e in script.edits if e.kind is EditKind.INSERTION]
        assert len(ins) == 1 and ins[0].mt_index == 2 and ins[0].pe_index is None

    def test_tie_prefers_substitution_over_indels(self):
        # cost 1 either way at the last cell; substitution wins
        assert kinds(levenshtein_align("ab", "ac")) == [EditKind.MATCH, EditKind.SUBSTITUTION]

    def test_empty_raises(self):
        with pytest.raises(EmptySegment):
            levenshtein_align([], ["a"])
        with pytest.raises(EmptySegment):
            levenshtein_align(["a"], [])

    @given(tokens, tokens)
    def test_optimal_and_replays(self, mt, pe):
        script = levenshtein_align(mt, pe)
        assert script.total_cost == edit_distance(mt, pe)
        assert script.replay(mt) == list(pe)


class TestTerAlign:
    def test_identical(self):
        script, ter = ter_align("abc", "abc")
        assert ter == 0.0 and script.total_cost == 0

    def test_rotation_needs_one_shift(self):
        mt, pe = list("cab"), list("abc")
        script, ter = ter_align(mt, pe)
        assert best_single_shift_cost(mt, pe) == 1
        assert [e.shift_span for e in script.shifts] == [(0, 1, 2)]
        assert script.total_cost == 1
        assert ter == pytest.approx(1 / 3)
        assert script.replay(mt) == pe

    def test_sub_and_del(self):
        script, ter = ter_align("ax", "abc")
        assert script.total_cost == 2 == edit_distance("ax", "abc")
        assert ter == pytest.approx(2 / 3)
        assert sorted(e.kind.value for e in script.edits if e.kind is not EditKind.MATCH) == [
            "deletion", "substitution"]

    def test_shifts_disabled(self):
        script, ter = ter_align("cab", "abc", NO_SHIFTS)
        assert not script.shifts
        assert script.total_cost == 2

    def test_span_limit_blocks_long_moves(self):
        mt, pe = "defabc", "abcdef"
        assert ter_align(mt, pe)[0].total_cost == 1
        limited, _ = ter_align(mt, pe, ShiftParams(max_span=2))
        assert all(e.shift_span[1] <= 2 for e in limited.shifts)
        assert limited.total_cost > 1

    def test_distance_limit(self):
        mt, pe = list("zabcdefgh"), list("abcdefghz")
        # moving "z" needs distance 8; moving the 8-token block needs span 8
        far, _ = ter_align(mt, pe, ShiftParams(max_span=2, max_distance=3))
        assert not far.shifts
        near, _ = ter_align(mt, pe)
        assert near.total_cost == 1

    @given(tokens, tokens)
    def test_shifts_never_hurt_and_replay(self, mt, pe):
        script, ter = ter_align(mt, pe)
        assert script.total_cost <= levenshtein_align(mt, pe).total_cost
        assert script.replay(mt) == list(pe)
        assert ter == script.total_cost / len(pe)

    @given(st.lists(st.sampled_from("abc"), min_size=1, max_size=4),
           st.lists(st.sampled_from("abc"), min_size=1, max_size=4))
    def test_not_worse_than_best_single_shift_when_it_pays(self, mt, pe):
        # a single profitable shift is always found by the first greedy round
        script, _ = ter_align(mt, pe)
        single = best_single_shift_cost(mt, pe)
        if single < edit_distance(mt, pe):
            assert script.total_cost <= single


class TestEditsToTags:
    def test_identity(self):
        tags = edits_to_tags(levenshtein_align("abc", "abc"), 3)
        assert str(tags) == "OK OK OK OK OK OK OK"

    def test_substitution(self):
        assert str(edits_to_tags(levenshtein_align("axc", "abc"), 3)) == "OK OK OK BAD OK OK OK"

    def test_missing_word(self):
        assert str(edits_to_tags(levenshtein_align("ac", "abc"), 2)) == "OK OK BAD OK OK"

    def test_dropped_mt_word(self):
        assert str(edits_to_tags(levenshtein_align("abxc", "abc"), 4)) == "OK OK OK OK OK BAD OK OK OK"

    def test_deletion_run_collapses_to_one_gap(self):
        tags = edits_to_tags(levenshtein_align("ad", "abcd"), 2)
        assert str(tags) == "OK OK BAD OK OK"

    def test_leading_and_trailing_gaps(self):
        tags = edits_to_tags(levenshtein_align("b", "abc"), 1)
        assert str(tags) == "BAD OK BAD"

    def test_shifted_word_is_bad(self):
        script, _ = ter_align("cab", "abc")
        assert str(edits_to_tags(script, 3)) == "OK BAD OK OK OK OK OK"

    def test_mismatch(self):
        with pytest.raises(ScriptMismatch):
            edits_to_tags(levenshtein_align("abc", "abc"), 4)


class TestGenerateReferenceTags:
    def test_identical_all_ok(self):
        tags = generate_reference_tags(TranslationTriplet(["s"], "the cat sat".split(),
                                                          "the cat sat".split()))
        assert set(tags) == {Label.OK} and len(tags) == 7

    def test_one_substitution(self):
        tags = generate_reference_tags(TranslationTriplet([], "the dog sat".split(),
                                                          "the cat sat".split()))
        assert tags.words.count(Label.BAD) == 1 and Label.BAD not in tags.gaps

    def test_one_missing_word(self):
        tags = generate_reference_tags(TranslationTriplet([], "the sat".split(),
                                                          "the cat sat".split()))
        assert tags.gaps.count(Label.BAD) == 1 and Label.BAD not in tags.words

    def test_case_sensitive(self):
        tags = generate_reference_tags(TranslationTriplet([], ["The"], ["the"]))
        assert str(tags) == "OK BAD OK"

    @given(tokens, tokens)
    def test_arity_and_all_ok_iff_zero(self, mt, pe):
        script, ter = ter_align(mt, pe)
        tags = edits_to_tags(script, len(mt))
        assert tags == generate_reference_tags(TranslationTriplet([], mt, pe))
        assert len(tags) == 2 * len(mt) + 1
        assert (Label.BAD not in tags) == (ter == 0)


def test_random_pairs_replay():
    rnd = random.Random(3)
    for _ in range(200):
        mt = [rnd.choice("abcdef") for _ in range(rnd.randint(1, 15))]
        pe = [rnd.choice("abcdef") for _ in range(rnd.randint(1, 15))]
        script, _ = ter_align(mt, pe)
        assert script.replay(mt) == pe
