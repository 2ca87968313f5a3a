"""Brute-force cross-checks: product BFS, witness search, Fourier-Motzkin.

Everything here is deliberately naive -- exhaustive enumeration with exact
arithmetic and no pruning -- because its job is to distrust the production
path.  BFS keys elements by the full matrix, witness words are re-evaluated
by the caller's tests, and the LP oracle decides feasibility by variable
elimination instead of pivoting.  Depth-limited searches are inconclusive on
the negative side; only the positive answers are proofs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import identity, inverse, mul
from .words import GenWord, freely_reduced_letters


class ResourceLimitError(RuntimeError):
    """An enumeration exceeded its explicit budget; never truncate silently."""


@dataclass
class ReachSet:
    """Nonempty products over A of length <= depth, with one shortest witness each.

    elements maps a matrix to (length, parent, generator_index): the element
    equals parent * A[generator_index], parent None for length-1 products.
    """

    depth: int
    elements: dict
    sizes: tuple  # cumulative element count after each layer 1..depth

    def __contains__(self, m):
        return m in self.elements

    def length_of(self, m):
        return self.elements[m][0]

    def witness(self, m):
        """Shortest stored witness word for m, adjacent powers merged."""
        letters = []
        current = m
        while current is not None:
            _, parent, gen = self.elements[current]
            letters.append((gen, 1))
            current = parent
        letters.reverse()
        return GenWord.from_letters(freely_reduced_letters(letters))


def bfs_products(gens, depth, max_elements=2_000_000):
    """Breadth-first closure of products of length 1..depth over gens."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if not gens:
        raise ValueError("bfs_products needs at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators have mixed dimensions")
    elements = {}
    frontier = []
    for i, g in enumerate(gens):
        if g not in elements:
            elements[g] = (1, None, i)
            frontier.append(g)
    sizes = [len(elements)]
    for layer in range(2, depth + 1):
        new = []
        for m in frontier:
            for i, g in enumerate(gens):
                prod = mul(m, g)
                if prod not in elements:
                    elements[prod] = (layer, m, i)
                    new.append(prod)
            if len(elements) > max_elements:
                raise ResourceLimitError(
                    f"reach set exceeded {max_elements} elements at depth {layer}"
                )
        frontier = new
        sizes.append(len(elements))
    return ReachSet(depth, elements, tuple(sizes))


def witness_inverse(gens, index, depth, max_elements=2_000_000, reach=None):
    """A word w over gens with eval(w) = gens[index]^-1 and length <= depth.

    None means no witness within the depth budget: inconclusive, not a proof
    of non-invertibility.
    """
    if not 0 <= index < len(gens):
        raise IndexError(f"generator index {index} out of range")
    if reach is None:
        reach = bfs_products(gens, depth, max_elements)
    target = inverse(gens[index])
    if target in reach and reach.length_of(target) <= depth:
        return reach.witness(target)
    return None


def identity_word_using(gens, index, depth, max_elements=2_000_000, reach=None):
    """A word of length <= depth that evaluates to the identity and uses gens[index].

    Splits the hypothetical word as x * gens[index] * y and scans x over the
    reach set (plus the empty word), looking up y = (x * gens[index])^-1.
    None is inconclusive.
    """
    if not 0 <= index < len(gens):
        raise IndexError(f"generator index {index} out of range")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    n = gens[index].n
    one = identity(n)

    def finish(prefix_word, z, budget):
        if z == one:
            return GenWord.from_letters(
                freely_reduced_letters(list(prefix_word.factors) + [(index, 1)])
            )
        zi = inverse(z)
        if reach is not None and zi in reach and reach.length_of(zi) <= budget:
            suffix = reach.witness(zi)
            letters = list(prefix_word.factors) + [(index, 1)] + list(suffix.factors)
            return GenWord.from_letters(freely_reduced_letters(letters))
        return None

    if reach is None and depth > 1:
        reach = bfs_products(gens, depth - 1, max_elements)
    found = finish(GenWord(), gens[index], depth - 1)
    if found is not None:
        return found
    if reach is not None:
        for m, (length, _, _) in reach.elements.items():
            if length > depth - 1:
                continue
            found = finish(reach.witness(m), mul(m, gens[index]), depth - 1 - length)
            if found is not None:
                return found
    return None


def _normalize_inequality(row):
    """Divide a >= 0 row by the gcd of its entries; None for trivial rows."""
    g = 0
    for x in row:
        g = _gcd(g, x)
    if g == 0:
        return None  # all-zero row: 0 >= 0
    if g > 1:
        row = tuple(x // g for x in row)
    return row


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def fourier_motzkin_feasible(matrix, max_vars=8):
    """Exact feasibility of {Mv = 0, sum(v) = 1, v >= 0} by variable elimination.

    Equalities become inequality pairs; rows are integer tuples
    (coefficients..., constant) meaning coeffs . v + constant >= 0.  Guarded
    to max_vars variables because elimination can blow up doubly
    exponentially.
    """
    entries = getattr(matrix, "entries", None)
    if entries is None:
        entries = [tuple(r) for r in matrix]
    ncols = getattr(matrix, "ncols", len(entries[0]) if entries else 0)
    if ncols > max_vars:
        raise ResourceLimitError(f"{ncols} variables exceed the elimination guard {max_vars}")

    rows = set()

    def add(row):
        coeffs, const = row[:-1], row[-1]
        if all(c == 0 for c in coeffs):
            return const >= 0
        norm = _normalize_inequality(row)
        if norm is not None:
            rows.add(norm)
        return True

    ok = True
    for r in entries:
        ok &= add(tuple(r) + (0,))
        ok &= add(tuple(-x for x in r) + (0,))
    ok &= add(tuple([1] * ncols) + (-1,))
    ok &= add(tuple([-1] * ncols) + (1,))
    for i in range(ncols):
        unit = [0] * (ncols + 1)
        unit[i] = 1
        ok &= add(tuple(unit))
    if not ok:
        return False

    for k in range(ncols):
        pos, neg, rest = [], [], set()
        for row in rows:
            if row[k] > 0:
                pos.append(row)
            elif row[k] < 0:
                neg.append(row)
            else:
                rest.add(row)
        rows = rest
        for p in pos:
            for q in neg:
                lam, mu = -q[k], p[k]
                combined = tuple(lam * a + mu * b for a, b in zip(p, q))
                coeffs, const = combined[:-1], combined[-1]
                if all(c == 0 for c in coeffs):
                    if const < 0:
                        return False
                    continue
                norm = _normalize_inequality(combined)
                if norm is not None:
                    rows.add(norm)
    # every variable eliminated; survivors were constants and already checked
    return True


class IntegerRowLattice:
    """Integer span of row vectors, kept in echelon form with positive pivots."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> row (list of ints)

    def add(self, vec):
        vec = list(vec)
        if len(vec) != self.ncols:
            raise ValueError(f"vector has length {len(vec)}, lattice has {self.ncols} columns")
        j = 0
        while j < self.ncols:
            if vec[j] == 0:
                j += 1
                continue
            pivot = self.rows.get(j)
            if pivot is None:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                self.rows[j] = vec
                return
            a, b = pivot[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, pivot)]
            else:
                g, x, y = _xgcd_pair(a, b)
                new_pivot = [x * u + y * w for u, w in zip(pivot, vec)]
                reduced = [(a // g) * w - (b // g) * u for u, w in zip(pivot, vec)]
                self.rows[j] = new_pivot
                vec = reduced
            # vec[j] is now 0; continue clearing deeper columns

    def __contains__(self, vec):
        work = list(vec)
        if len(work) != self.ncols:
            raise ValueError(f"vector has length {len(work)}, lattice has {self.ncols} columns")
        for j in range(self.ncols):
            if work[j] == 0:
                continue
            pivot = self.rows.get(j)
            if pivot is None or work[j] % pivot[j] != 0:
                return False
            q = work[j] // pivot[j]
            work = [x - q * y for x, y in zip(work, pivot)]
        return True


def _xgcd_pair(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def row_lattice_contains(rows, target):
    """Is target in the integer span of the given rows?"""
    ncols = len(target)
    lattice = IntegerRowLattice(ncols)
    for r in rows:
        if len(r) != ncols:
            raise ValueError("row length does not match target length")
        lattice.add(r)
    return list(target) in lattice
