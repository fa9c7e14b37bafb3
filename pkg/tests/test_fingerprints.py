import io
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyest.exceptions import ParseError
from polyest.fingerprints import (
    Fingerprint,
    Histogram,
    build_fingerprint,
    build_histogram,
    parse_input,
    tokenize_words,
    write_fingerprint,
)


class TestHistogram:
    def test_small(self):
        h = build_histogram(["a", "b", "a"])
        assert h.counts == {"a": 2, "b": 1}
        assert h.n == 3

    def test_empty(self):
        h = build_histogram([])
        assert h.counts == {} and h.n == 0

    def test_many_copies(self):
        h = build_histogram("x" for _ in range(10**6))
        assert h.counts == {"x": 10**6}

    def test_integer_symbols(self):
        assert build_histogram([3, 3, 7]).counts == {3: 2, 7: 1}

    @pytest.mark.parametrize("bad", [0, -2, 1.5])
    def test_rejects_bad_counts(self, bad):
        with pytest.raises(ValueError):
            Histogram({"a": bad})


class TestFingerprint:
    @pytest.mark.parametrize(
        "counts, phi, n",
        [
            ({"a": 2, "b": 1}, {1: 1, 2: 1}, 3),
            ({}, {}, 0),
            ({"a": 3, "b": 3, "c": 1}, {1: 1, 3: 2}, 7),
        ],
    )
    def test_examples(self, counts, phi, n):
        f = build_fingerprint(Histogram(counts))
        assert f.phi == phi
        assert f.n == n

    def test_declared_n_mismatch(self):
        with pytest.raises(ValueError):
            Fingerprint({1: 2}, n=3)

    def test_zero_entries_dropped(self):
        assert Fingerprint({1: 2, 4: 0}).phi == {1: 2}

    def test_negative_entry(self):
        with pytest.raises(ValueError):
            Fingerprint({2: -1})

    def test_to_histogram_round_trip(self):
        f = Fingerprint({1: 3, 5: 2})
        assert build_fingerprint(f.to_histogram()) == f


class TestTokenizer:
    @pytest.mark.parametrize(
        "text, tokens",
        [
            ("To be, to be!", ["to", "be", "to", "be"]),
            ("Hamlet's", ["hamlet", "s"]),
            ("", []),
            ("well-known 42nd", ["well", "known", "nd"]),
            ("Éclair  ÜBER", ["éclair", "über"]),
            ("snake_case", ["snake", "case"]),
        ],
    )
    def test_cases(self, text, tokens):
        assert tokenize_words(text) == tokens

    def test_bytes_and_stream(self):
        assert tokenize_words("Ay me".encode()) == ["ay", "me"]
        assert tokenize_words(io.StringIO("Ay,\nme")) == ["ay", "me"]

    def test_invalid_utf8(self):
        with pytest.raises(ParseError):
            tokenize_words(b"\xff\xfe bad")


class TestParse:
    def test_counts(self):
        f = parse_input(io.StringIO("a\t2\nb\t1"))
        assert f.phi == {1: 1, 2: 1} and f.n == 3

    def test_fingerprint(self):
        f = parse_input(io.StringIO("1 2\n2 1"), format="fingerprint")
        assert f.phi == {1: 2, 2: 1} and f.n == 4

    def test_text(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("To be, or not to be")
        f = parse_input(p, format="text")
        assert f.phi == {1: 2, 2: 2} and f.n == 6

    def test_declared_n(self):
        assert parse_input(io.StringIO("1 2\n2 1"), format="fingerprint", n=4).n == 4
        with pytest.raises(ParseError):
            parse_input(io.StringIO("1 2\n2 1"), format="fingerprint", n=5)

    @pytest.mark.parametrize(
        "text",
        ["2 -1", "1 2\n1 3", "2 1\n1 1", "1", "1 2 3", "x 1", "1 0", "0 1", "1 ²"],
    )
    def test_fingerprint_errors(self, text):
        with pytest.raises(ParseError):
            parse_input(io.StringIO(text), format="fingerprint")

    @pytest.mark.parametrize("text", ["a\t0", "a\t-1", "a 2", "a\t2\na\t1", "a\t1.5"])
    def test_counts_errors(self, text):
        with pytest.raises(ParseError):
            parse_input(io.StringIO(text))

    def test_error_reports_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_input(io.StringIO("1 1\n2 1\n3 -4"), format="fingerprint")

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_input(tmp_path / "nope.txt")

    def test_write_round_trip(self):
        f = Fingerprint({1: 5, 3: 2, 10: 1})
        assert parse_input(io.StringIO(write_fingerprint(f)), format="fingerprint") == f


symbols = st.lists(st.integers(0, 30) | st.sampled_from(list("abcdef")), max_size=200)


@given(symbols)
def test_round_trip_sample_size(s):
    f = build_fingerprint(build_histogram(s))
    assert sum(j * v for j, v in f.phi.items()) == len(s)
    assert f.distinct == len(set(s))


@given(symbols, st.randoms())
def test_label_permutation_invariance(s, rnd):
    labels = sorted(set(s), key=repr)
    shuffled = labels[:]
    rnd.shuffle(shuffled)
    relabel = dict(zip(labels, shuffled))
    a = build_fingerprint(build_histogram(s))
    b = build_fingerprint(build_histogram(relabel[x] for x in s))
    assert a == b


@given(st.lists(st.integers(1, 50), max_size=100))
def test_fingerprint_counts_match_counter(counts):
    f = build_fingerprint(counts)
    assert f.phi == dict(Counter(counts))
