import pytest
from hypothesis import given
from hypothesis import strategies as st

from wordqe.core import ArityMismatch, Label, SegmentationMismatch, SubwordMap, TagSequence
from wordqe.subword import (
    PREFIX,
    SENTENCEPIECE,
    SubwordConvention,
    build_subword_map,
    disagreement_report,
    heuristic_subword_tags,
    naive_subword_tags,
    subword_tags_to_word_tags,
)
from wordqe.ter import tags_for_pair

OK, BAD = Label.OK, Label.BAD


def T(line):
    return TagSequence.from_line(line)


class TestBuildSubwordMap:
    def test_single_word(self):
        assert build_subword_map(["hello"], ["he@@", "llo"]).spans == ((0, 2),)

    def test_two_words(self):
        assert build_subword_map(["ab", "c"], ["a@@", "b", "c"]).spans == ((0, 2), (2, 3))

    def test_wrong_spelling(self):
        with pytest.raises(SegmentationMismatch):
            build_subword_map(["ab"], ["a@@", "c"])

    def test_exhausted(self):
        with pytest.raises(SegmentationMismatch):
            build_subword_map(["abc"], ["a@@", "b@@"])

    def test_leftover(self):
        with pytest.raises(SegmentationMismatch):
            build_subword_map(["a"], ["a", "b"])

    def test_prefix_convention(self):
        conv = SubwordConvention("##", PREFIX)
        assert build_subword_map(["hello", "x"], ["he", "##llo", "x"], conv).spans == ((0, 2), (2, 3))

    def test_sentencepiece_convention(self):
        m = build_subword_map(["hello", "world"], ["▁he", "llo", "▁world"], SENTENCEPIECE)
        assert m.spans == ((0, 2), (2, 3))

    def test_bare_marker_matched_literally(self):
        assert build_subword_map(["@@"], ["@@"]).spans == ((0, 1),)

    def test_marker_only_stripped_at_its_position(self):
        # "@@a" is not a suffix-marked piece, so it spells "@@a"
        assert build_subword_map(["@@ab"], ["@@a@@", "b"]).spans == ((0, 2),)
        with pytest.raises(SegmentationMismatch):
            build_subword_map(["ab"], ["@@a", "b"])


class TestSubwordToWord:
    def test_all_ok(self):
        assert subword_tags_to_word_tags(T("OK OK OK OK OK"), SubwordMap(((0, 2),))) == T("OK OK OK")

    def test_intra_word_gap_bad(self):
        got = subword_tags_to_word_tags(T("OK OK BAD OK OK"), SubwordMap(((0, 2),)))
        assert got == T("OK BAD OK")

    def test_single_piece_words_copy(self):
        got = subword_tags_to_word_tags(T("OK BAD OK OK OK"), SubwordMap(((0, 1), (1, 2))))
        assert got == T("OK BAD OK OK OK")

    def test_gap_before_span_and_ending_gap(self):
        smap = SubwordMap(((0, 1), (1, 3)))
        got = subword_tags_to_word_tags(T("OK OK BAD OK OK OK BAD"), smap)
        assert got == T("OK OK BAD OK BAD")

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            subword_tags_to_word_tags(T("OK OK OK"), SubwordMap(((0, 2),)))


class TestHeuristic:
    smap = SubwordMap(((0, 2),))

    def test_ok_word_forces_ok(self):
        got = heuristic_subword_tags(T("OK OK OK"), T("BAD BAD BAD BAD BAD"), self.smap)
        assert got == T("OK OK OK OK OK")

    def test_conflict_forces_all_bad(self):
        got = heuristic_subword_tags(T("OK BAD OK"), T("OK OK OK OK OK"), self.smap)
        assert got == T("OK BAD BAD BAD OK")

    def test_agreeing_span_copied(self):
        got = heuristic_subword_tags(T("OK BAD OK"), T("OK BAD OK OK OK"), self.smap)
        assert got == T("OK BAD OK OK OK")

    def test_bad_gap_only_span_copied(self):
        got = heuristic_subword_tags(T("OK BAD OK"), T("OK OK BAD OK OK"), self.smap)
        assert got == T("OK OK BAD OK OK")

    def test_outer_gaps_come_from_word_tags(self):
        got = heuristic_subword_tags(T("BAD OK BAD"), T("OK OK OK OK OK"), self.smap)
        assert got == T("BAD OK OK OK BAD")

    def test_arity_checks(self):
        with pytest.raises(ArityMismatch):
            heuristic_subword_tags(T("OK OK OK OK OK"), T("OK OK OK OK OK"), self.smap)
        with pytest.raises(ArityMismatch):
            heuristic_subword_tags(T("OK OK OK"), T("OK OK OK"), self.smap)


@st.composite
def round_trip_case(draw):
    pieces = draw(st.lists(st.integers(1, 4), min_size=1, max_size=8))
    spans, pos = [], 0
    for n in pieces:
        spans.append((pos, pos + n))
        pos += n
    label = st.sampled_from([OK, BAD])
    q_w = TagSequence(draw(st.lists(label, min_size=2 * len(pieces) + 1, max_size=2 * len(pieces) + 1)))
    q_sw = TagSequence(draw(st.lists(label, min_size=2 * pos + 1, max_size=2 * pos + 1)))
    return q_w, q_sw, SubwordMap(tuple(spans))


@given(round_trip_case())
def test_round_trip(case):
    q_w, q_sw, smap = case
    heuristic = heuristic_subword_tags(q_w, q_sw, smap)
    assert len(heuristic) == 2 * smap.subword_count + 1
    assert subword_tags_to_word_tags(heuristic, smap) == q_w


class TestNaive:
    def test_identical(self):
        assert set(naive_subword_tags(["a@@", "b"], ["a@@", "b"])) == {OK}

    def test_one_substitution(self):
        tags = naive_subword_tags(["a@@", "b", "c"], ["a@@", "x", "c"])
        assert tags.words.count(BAD) == 1 and BAD not in tags.gaps

    def test_one_missing(self):
        tags = naive_subword_tags(["a@@", "c"], ["a@@", "b", "c"])
        assert tags.gaps.count(BAD) == 1 and BAD not in tags.words

    def test_same_as_ter_on_subwords(self):
        mt, pe = "th@@ e ca@@ t".split(), "th@@ e do@@ g".split()
        assert naive_subword_tags(mt, pe) == tags_for_pair(mt, pe)


def test_disagreement_report():
    words_mt, words_pe = ["ab", "c"], ["ax", "c"]
    sw_mt, sw_pe = ["a@@", "b", "c"], ["a@@", "x", "c"]
    smap = build_subword_map(words_mt, sw_mt)
    q_w = tags_for_pair(words_mt, words_pe)
    q_sw = naive_subword_tags(sw_mt, sw_pe)
    report = disagreement_report([q_w], [q_sw], [smap])
    assert report.slots == 5
    # naive tags mark piece "b" BAD, which collapses to word "ab" BAD as well
    assert report.disagreements == 0
    forced = disagreement_report([q_w], [T("OK OK OK OK OK OK OK")], [smap])
    assert forced.disagreements == 1 and forced.rate == pytest.approx(0.2)
