"""Induced generating sequences and presentations for subgroups of UT(n, Z).

A subgroup given by finitely many generators is echelonized against the
coordinate filtration: one tracked element per occupied pivot, pivot values
positive, sign-normalized.  Echelonization is noncommutative Gaussian
elimination -- sift a candidate through the occupied pivots, dividing out slot
powers; on a pivot collision combine slot and candidate by an extended-Euclid
pair; once the generators are absorbed, close under slot conjugates until
nothing changes.  Every element carries a word over the original generators
("expression") so that membership results are constructive.

From the final sequence two families of identity words are produced: each
generator rewritten over the slots, and each slot conjugate s_p^-e s_q s_p^e
(q deeper than p, e = +-1) rewritten over the slots.  Their signed exponent
counts span the full relation lattice of the subgroup modulo its commutator
subgroup, which is all the downstream linear programming consumes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .matrix import (
    DimensionMismatch,
    MatrixUT,
    identity,
    inverse,
    malcev_coordinates,
    mul,
    power,
)
from .words import (
    GenWord,
    concat,
    exponent_vector,
    is_freely_trivial,
    word_indices,
)


@dataclass(frozen=True)
class TrackedElement:
    """A group element together with a word over the ambient generators."""

    elem: MatrixUT
    expr: GenWord

    def inverse(self):
        return TrackedElement(inverse(self.elem), self.expr.power(-1))


class InducedSequence:
    """Echelonized generating sequence: pivot index -> sign-normalized element.

    Pivot indices are 0-based positions into the coordinate order of
    `matrix.malcev_positions`.  Slot p has zero coordinates before p and a
    strictly positive coordinate at p.
    """

    __slots__ = ("n", "slots", "_pivot_values")

    def __init__(self, n, slots):
        self.n = n
        self.slots = dict(sorted(slots.items()))
        self._pivot_values = {
            p: malcev_coordinates(t.elem).coords[p] for p, t in self.slots.items()
        }
        for p, value in self._pivot_values.items():
            if value <= 0:
                raise ValueError(f"slot at pivot {p} has nonpositive pivot value {value}")

    @property
    def pivots(self):
        return list(self.slots)

    def pivot_value(self, p):
        return self._pivot_values[p]

    def __len__(self):
        return len(self.slots)


def sift(seq, t):
    """Divide t through the occupied pivots, lowest first.

    Returns (residual, exponents): residual = product(slot_p ** -q_p) * t with
    the q_p chosen by floor division of the running pivot coordinate by the
    slot's pivot value, so the residual keeps the nonnegative remainder at
    every occupied pivot.  residual's expression stays consistent with its
    element.
    """
    if seq.n and t.elem.n != seq.n:
        raise DimensionMismatch(f"sift: element lives in UT({t.elem.n}), sequence in UT({seq.n})")
    elem = t.elem
    expr = t.expr
    exponents = {}
    coords = malcev_coordinates(elem).coords
    for p, slot in seq.slots.items():
        c = coords[p]
        if c == 0:
            continue
        a = seq.pivot_value(p)
        q = c // a
        if q:
            elem = mul(power(slot.elem, -q), elem)
            expr = concat(slot.expr.power(-q), expr)
            coords = malcev_coordinates(elem).coords
            exponents[p] = q
    return TrackedElement(elem, expr), exponents


def _xgcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) > 0 for positive a, b."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return g, x, y


class _Builder:
    """Mutable worklist state behind induced_sequence."""

    def __init__(self, n):
        self.n = n
        self.slots = {}  # pivot -> TrackedElement
        self.values = {}  # pivot -> positive pivot coordinate
        self.changed = False

    def as_sequence(self):
        return InducedSequence(self.n, self.slots)

    def _sift_raw(self, t):
        elem, expr = t.elem, t.expr
        coords = malcev_coordinates(elem).coords
        for p in sorted(self.slots):
            c = coords[p]
            if c == 0:
                continue
            a = self.values[p]
            q = c // a
            if q:
                elem = mul(power(self.slots[p].elem, -q), elem)
                expr = concat(self.slots[p].expr.power(-q), expr)
                coords = malcev_coordinates(elem).coords
        return TrackedElement(elem, expr), coords

    def _reduce_tail(self, t, pivot):
        """Bring t's coordinates at pivots deeper than pivot into [0, value).

        Left division by a deeper slot never touches coordinates before that
        slot's pivot, so this is a Hermite-style normalization: without it the
        entries of combined slots grow doubly exponentially along collision
        chains.
        """
        elem, expr = t.elem, t.expr
        coords = malcev_coordinates(elem).coords
        for q in sorted(self.slots):
            if q <= pivot:
                continue
            c = coords[q]
            if c == 0:
                continue
            k = c // self.values[q]
            if k:
                elem = mul(power(self.slots[q].elem, -k), elem)
                expr = concat(self.slots[q].expr.power(-k), expr)
                coords = malcev_coordinates(elem).coords
        return TrackedElement(elem, expr)

    def absorb(self, queue):
        while queue:
            residual, coords = self._sift_raw(queue.popleft())
            depth = next((p for p, c in enumerate(coords) if c != 0), None)
            if depth is None:
                continue
            if coords[depth] < 0:
                residual = residual.inverse()
                coords = malcev_coordinates(residual.elem).coords
            b = coords[depth]
            if depth not in self.slots:
                self.slots[depth] = self._reduce_tail(residual, depth)
                self.values[depth] = b
                self.changed = True
                continue
            # pivot collision: remainder 0 < b < slot value
            old = self.slots[depth]
            a = self.values[depth]
            g, x, y = _xgcd(a, b)
            combined = TrackedElement(
                mul(power(old.elem, x), power(residual.elem, y)),
                concat(old.expr.power(x), residual.expr.power(y)),
            )
            self.slots[depth] = self._reduce_tail(combined, depth)
            self.values[depth] = g
            self.changed = True
            queue.append(old)
            queue.append(residual)

    def reduce_all(self):
        """Normalize every slot tail, deepest pivot first; True if any changed."""
        changed = False
        for p in sorted(self.slots, reverse=True):
            reduced = self._reduce_tail(self.slots[p], p)
            if reduced.elem != self.slots[p].elem:
                self.slots[p] = reduced
                changed = True
        return changed

    def closure_items(self):
        """Conjugates s_p^-e s_q s_p^e for p < q, both signs, in a fixed order."""
        items = []
        pivots = sorted(self.slots)
        for pi, p in enumerate(pivots):
            sp = self.slots[p]
            sp_inv_elem = inverse(sp.elem)
            for q in pivots[pi + 1 :]:
                sq = self.slots[q]
                for eps in (1, -1):
                    left = sp_inv_elem if eps == 1 else sp.elem
                    right = sp.elem if eps == 1 else sp_inv_elem
                    elem = mul(mul(left, sq.elem), right)
                    expr = concat(sp.expr.power(-eps), sq.expr, sp.expr.power(eps))
                    items.append(TrackedElement(elem, expr))
        return items


def induced_sequence(gens, n=None):
    """Echelonize tracked generators into an InducedSequence.

    Terminates because an insertion fills one of finitely many pivots and a
    collision strictly decreases a positive pivot value.  At the fixpoint
    every generator and every slot conjugate sifts to the identity, which is
    what makes sifting a complete membership test for the subgroup.
    """
    gens = list(gens)
    if gens:
        n = gens[0].elem.n
        for t in gens:
            if t.elem.n != n:
                raise DimensionMismatch("generators have mixed dimensions")
    elif n is None:
        n = 0
    builder = _Builder(n)
    builder.absorb(deque(gens))
    builder.reduce_all()
    while True:
        builder.changed = False
        builder.absorb(deque(builder.closure_items()))
        builder.absorb(deque(gens))
        if not builder.changed and not builder.reduce_all():
            break
    return builder.as_sequence()


@dataclass(frozen=True)
class RelationSet:
    """Words over the generator indices, each evaluating to the identity."""

    relations: tuple

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def _normal_form_word(seq, exponents, invert=False):
    """Word over the ambient generators for prod slot_p^q_p (pivots ascending).

    With invert=True, the inverse word (descending pivots, negated powers).
    """
    pivots = sorted(exponents)
    if invert:
        parts = [seq.slots[p].expr.power(-exponents[p]) for p in reversed(pivots)]
    else:
        parts = [seq.slots[p].expr.power(exponents[p]) for p in pivots]
    return concat(*parts) if parts else GenWord()


def subgroup_relations(gens):
    """Identity words presenting <gens> abelianized: Algorithm step "relations".

    Returns (i) one word a^-1 * (a's slot normal form) per generator and
    (ii) one word conj * (conj's slot normal form)^-1 per slot conjugate
    s_p^-e s_q s_p^e, p < q, e = +-1.  Words that visibly reduce to the empty
    word are dropped.  The exponent-count vectors of the returned words span
    the lattice of exponent vectors of all identity words over gens.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("subgroup_relations needs at least one generator")
    tracked = [TrackedElement(m, GenWord.letter(c)) for c, m in enumerate(gens)]
    seq = induced_sequence(tracked)
    relations = []

    for c, t in enumerate(tracked):
        residual, exps = sift(seq, t)
        if not residual.elem.is_identity():
            raise AssertionError("generator does not sift to the identity")
        word = concat(GenWord.letter(c, -1), _normal_form_word(seq, exps))
        if not is_freely_trivial(word):
            relations.append(word)

    pivots = sorted(seq.slots)
    for pi, p in enumerate(pivots):
        sp = seq.slots[p]
        sp_inv_elem = inverse(sp.elem)
        for q in pivots[pi + 1 :]:
            sq = seq.slots[q]
            for eps in (1, -1):
                left = sp_inv_elem if eps == 1 else sp.elem
                right = sp.elem if eps == 1 else sp_inv_elem
                conj = TrackedElement(
                    mul(mul(left, sq.elem), right),
                    concat(sp.expr.power(-eps), sq.expr, sp.expr.power(eps)),
                )
                residual, exps = sift(seq, conj)
                if not residual.elem.is_identity():
                    raise AssertionError("slot conjugate does not sift to the identity")
                word = concat(conj.expr, _normal_form_word(seq, exps, invert=True))
                if not is_freely_trivial(word):
                    relations.append(word)

    return RelationSet(tuple(relations))


@dataclass(frozen=True)
class ExponentMatrix:
    """Signed occurrence counts: one row per relation, one column per index."""

    entries: tuple  # tuple of row tuples, arbitrary-precision integers
    col_index: tuple  # ascending generator indices labelling the columns

    @property
    def nrows(self):
        return len(self.entries)

    @property
    def ncols(self):
        return len(self.col_index)

    def row(self, r):
        return self.entries[r]


def exponent_matrix(relations, index_set):
    """Count signed occurrences of each index of index_set in each relation.

    Columns are ordered by ascending generator index.  A relation mentioning
    an index outside index_set raises ValueError.
    """
    cols = sorted(index_set)
    if len(set(cols)) != len(cols):
        raise ValueError("index set contains duplicates")
    rows = []
    for word in relations:
        stray = word_indices(word) - set(cols)
        if stray:
            raise ValueError(f"relation uses indices {sorted(stray)} outside the index set")
        rows.append(tuple(exponent_vector(word, cols)))
    return ExponentMatrix(tuple(rows), tuple(cols))
