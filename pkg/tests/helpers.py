"""Shared builders for randomized tests; everything is seeded and exact."""

import random

from utinv.matrix import MatrixUT, MalcevVector, from_malcev, identity


def random_unitriangular(rng, n, bound):
    rows = []
    for i in range(n):
        row = [0] * i + [1] + [rng.randint(-bound, bound) for _ in range(n - i - 1)]
        rows.append(row)
    return MatrixUT(rows)


def random_instance(rng, n, size, bound):
    return [random_unitriangular(rng, n, bound) for _ in range(size)]


def random_word_letters(rng, n_gens, length):
    return [(rng.randrange(n_gens), rng.choice([-2, -1, 1, 2, 3])) for _ in range(length)]


def matrix_with_coords(n, coords):
    return from_malcev(MalcevVector(n, tuple(coords)))


def e(n, i, j, k):
    from utinv.matrix import elementary

    return elementary(n, i, j, k)


def I(n):
    return identity(n)


def seeded(seed):
    return random.Random(seed)
