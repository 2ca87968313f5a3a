import pytest

from utinv.matrix import commutator, elementary, identity, inverse, mul
from utinv.words import (
    GenWord,
    WordSizeError,
    concat,
    empty_word,
    evaluate_word,
    exponent_sums,
    exponent_vector,
    flat_length,
    flat_letters,
    freely_reduced_letters,
    is_freely_trivial,
    relabel,
    word_indices,
)

from helpers import random_unitriangular, random_word_letters, seeded


def test_letter_and_validation():
    w = GenWord.letter(3, -2)
    assert w.factors == ((3, -2),)
    assert GenWord.letter(0, 0).is_empty
    with pytest.raises(ValueError):
        GenWord(((0, 0),))
    with pytest.raises(ValueError):
        GenWord(((-1, 1),))


def test_evaluate_empty_word():
    gens = [identity(3)]
    assert evaluate_word(empty_word(), gens) == identity(3)


def test_evaluate_single_power():
    w = GenWord.from_letters([(0, 3)])
    assert evaluate_word(w, [elementary(2, 1, 2, 2)]) == elementary(2, 1, 2, 6)


def test_evaluate_commutator_shape():
    # g0 g1 g0^-1 g1^-1 read left to right equals [g0^-1, g1^-1].
    gens = [elementary(3, 2, 3, 1), elementary(3, 1, 2, 1)]
    w = GenWord.from_letters([(0, 1), (1, 1), (0, -1), (1, -1)])
    value = evaluate_word(w, gens)
    assert value == elementary(3, 1, 3, -1)
    assert value == commutator(inverse(gens[0]), inverse(gens[1]))


def test_evaluate_is_homomorphic():
    rng = seeded(31)
    for _ in range(100):
        n = rng.randint(2, 5)
        gens = [random_unitriangular(rng, n, 12) for _ in range(rng.randint(1, 4))]
        w1 = GenWord.from_letters(random_word_letters(rng, len(gens), rng.randint(0, 6)) or [])
        w2 = GenWord.from_letters(random_word_letters(rng, len(gens), rng.randint(0, 6)) or [])
        assert evaluate_word(concat(w1, w2), gens) == mul(
            evaluate_word(w1, gens), evaluate_word(w2, gens)
        )


def test_evaluate_nested_and_inverse():
    gens = [elementary(3, 1, 2, 1), elementary(3, 2, 3, 1)]
    base = GenWord.from_letters([(0, 1), (1, 1)])
    squared = base.power(2)
    assert evaluate_word(squared, gens) == mul(
        evaluate_word(base, gens), evaluate_word(base, gens)
    )
    inv = base.inverse()
    assert evaluate_word(inv, gens) == inverse(evaluate_word(base, gens))
    assert evaluate_word(concat(base, inv), gens) == identity(3)


def test_evaluate_bad_index():
    with pytest.raises(IndexError):
        evaluate_word(GenWord.letter(2), [identity(2)])


def test_exponent_sums_flat_and_nested():
    w = GenWord.from_letters([(0, 2), (1, -3), (0, 1)])
    assert exponent_sums(w) == {0: 3, 1: -3}
    nested = concat(w.power(-2), GenWord.letter(1, -6))
    assert exponent_sums(nested) == {0: -6}
    assert exponent_vector(nested, [0, 1]) == [-6, 0]
    with pytest.raises(ValueError):
        exponent_vector(GenWord.letter(5), [0, 1])


def test_concat_merges_adjacent():
    a = GenWord.from_letters([(0, 2)])
    b = GenWord.from_letters([(0, -2), (1, 1)])
    merged = concat(a, b)
    assert merged.factors == ((1, 1),)
    assert concat(a, a.inverse()).is_empty


def test_power_compresses_single_factor():
    w = GenWord.letter(4, 3)
    assert w.power(5).factors == ((4, 15),)
    nested = GenWord.from_letters([(0, 1), (1, 1)]).power(7)
    assert len(nested.factors) == 1
    assert nested.power(-1).factors[0][1] == -7


def test_flat_letters_and_length():
    w = concat(GenWord.from_letters([(0, 1), (1, 2)]).power(2), GenWord.letter(1, -2))
    assert flat_length(w) == 5
    assert flat_letters(w) == [(0, 1), (1, 2), (0, 1)]
    big = GenWord.from_letters([(0, 1), (1, 1)]).power(10**9)
    with pytest.raises(WordSizeError):
        flat_letters(big)


def test_freely_reduced_letters():
    assert freely_reduced_letters([(0, 1), (0, -1), (1, 2), (1, -1), (1, -1)]) == []
    assert freely_reduced_letters([(0, 1), (1, 0), (0, 2)]) == [(0, 3)]


def test_is_freely_trivial():
    assert is_freely_trivial(empty_word())
    w = GenWord.from_letters([(0, 1), (1, 1), (1, -1), (0, -1)])
    assert is_freely_trivial(w)
    assert not is_freely_trivial(GenWord.letter(0))


def test_word_indices_and_relabel():
    w = concat(GenWord.from_letters([(0, 1), (2, -1)]).power(3), GenWord.letter(1))
    assert word_indices(w) == {0, 1, 2}
    r = relabel(w, {0: 10, 1: 11, 2: 12})
    assert word_indices(r) == {10, 11, 12}
    assert exponent_sums(r) == {10: 3, 12: -3, 11: 1}


def test_deep_nesting_stays_cheap():
    # 40 levels of squaring-plus-a-letter: never expanded, still exact.
    w = GenWord.from_letters([(0, 1), (1, 1)])
    for _ in range(40):
        w = concat(w.power(2), GenWord.letter(0, 1))
    assert exponent_sums(w) == {0: 2**41 - 1, 1: 2**40}
    assert flat_length(w) == 3 * 2**40 - 1
    value = evaluate_word(w, [elementary(2, 1, 2, 1), elementary(2, 1, 2, 1)])
    assert value.rows[0][1] == 3 * 2**40 - 1
