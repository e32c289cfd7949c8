import pytest
from hypothesis import given, settings, strategies as st

from topoinc.errors import DomainError
from topoinc.sequences import (
    BitSeqSpec,
    MSetSpec,
    evaluate,
    omega_star_check,
    reflect_equiv,
    reflected,
    shift_equiv,
    shifted,
    word_window,
)

words = lambda lo, hi: st.text("01", min_size=lo, max_size=hi)
specs = st.builds(BitSeqSpec, words(1, 3), words(0, 5), words(1, 3))


def test_evaluate():
    s = BitSeqSpec("1", "0", "0")
    assert evaluate(s, -7) == 1
    assert evaluate(s, 0) == 0
    assert evaluate(s, 9) == 0


def test_word_window():
    s = BitSeqSpec("1", "0", "0")
    assert word_window(s, 1) == "100"
    assert word_window(s, 0) == "0"
    assert word_window(s, 2) == "11000"
    with pytest.raises(DomainError):
        word_window(s, -1)


def test_shift_examples():
    s = BitSeqSpec("1", "0110", "01")
    assert shift_equiv(s, s) == 0
    assert shift_equiv(shifted(s, 3), s) == 3
    assert shift_equiv(BitSeqSpec("1", "0", "10"), BitSeqSpec("1", "00", "10")) is None


def test_reflect_examples():
    s = BitSeqSpec("0", "1101", "1")
    r = reflected(s, len(s.core) - 1)
    assert reflect_equiv(s, r) == len(s.core) - 1
    assert all(r(k) == s(len(s.core) - 1 - k) for k in range(-30, 30))
    pal = BitSeqSpec("0", "101", "0")
    assert reflect_equiv(pal, pal) is not None
    assert reflect_equiv(BitSeqSpec("1", "0", "10"), BitSeqSpec("1", "01", "10")) is None
    with pytest.raises(DomainError):
        reflected(s, 0)


def test_omega_star_check():
    assert omega_star_check(BitSeqSpec("1", "0", "10"))
    assert not omega_star_check(BitSeqSpec("1", "1", "10"))
    assert not omega_star_check(BitSeqSpec("1", "0", "1"))


def test_normalization_is_canonical():
    assert BitSeqSpec("11", "0", "1010") == BitSeqSpec("1", "0", "10")
    assert BitSeqSpec("1", "0110", "10") == BitSeqSpec("1", "01", "10")
    s = BitSeqSpec("01", "1100", "011")
    assert BitSeqSpec.from_json(s.to_json()) == s


def test_from_window():
    s = BitSeqSpec.from_window("10110", 2)
    assert word_window(s, 2) == "10110"
    with pytest.raises(DomainError):
        BitSeqSpec.from_window("101", 2)


def test_bad_inputs():
    with pytest.raises(DomainError):
        BitSeqSpec("", "0", "1")
    with pytest.raises(DomainError):
        BitSeqSpec("1", "2", "1")
    with pytest.raises(DomainError):
        BitSeqSpec.from_json({"left": "1"})
    with pytest.raises(DomainError):
        MSetSpec((4, 4))
    with pytest.raises(DomainError):
        MSetSpec.of([3, 5])
    assert MSetSpec.of([9, 4, 6]).values == (4, 6, 9)


@given(specs)
def test_normalized_spec_denotes_same_sequence(s):
    raw = (s.left, s.core, s.right)
    again = BitSeqSpec(*raw)
    assert again == s
    assert len(s.core) == 0 or s.core[-1] != s.right[-1]


@given(specs, st.integers(0, 8))
def test_shifted_is_detected(s, m):
    t = shifted(s, m)
    found = shift_equiv(t, s)
    assert found is not None
    assert all(t(found + k) == s(k) for k in range(-40, 40))


@settings(max_examples=60)
@given(specs, specs, specs)
def test_shift_equivalence_is_an_equivalence(a, b, c):
    assert shift_equiv(a, a) == 0
    ab, bc = shift_equiv(a, b), shift_equiv(b, c)
    if ab is not None:
        assert shift_equiv(b, a) is not None
    if ab is not None and bc is not None:
        assert shift_equiv(a, c) is not None


@given(specs, st.integers(0, 4))
def test_double_reflection_is_a_shift(s, extra):
    r = reflected(s, max(len(s.core) - 1, 0) + extra)
    rr = reflected(r, max(len(r.core) - 1, 0))
    assert reflect_equiv(s, r) is not None
    assert shift_equiv(s, rr) is not None


def test_negative_shift_limits():
    s = BitSeqSpec("1", "0", "0")
    with pytest.raises(DomainError):
        shifted(s, -1)
    assert shifted(BitSeqSpec("1", "10", "0"), -1) == BitSeqSpec("1", "0", "0")
