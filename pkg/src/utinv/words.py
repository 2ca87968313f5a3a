"""Compressed words over an indexed generating set.

A word is a sequence of factors (atom, exponent) with nonzero integer
exponents; an atom is either a generator index or a nested word.  Nesting is
what keeps words small: the subgroup sieve produces expressions like
(bezout combination)^q with q in the billions, which are two factors here but
would be astronomically long written letter by letter.  Subwords are shared,
so a word is really a DAG, and evaluation / exponent counting memoize on node
identity.

Flat words (integer atoms only) are the common case at the API boundary:
instance files, oracle witnesses and small relations all stay flat.
"""

from __future__ import annotations

from . import matrix as _matrix


class WordSizeError(RuntimeError):
    """Flattening would materialize more letters than the given budget."""


class GenWord:
    """Immutable group word; factors is a tuple of (atom, exponent) pairs."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors=()):
        out = []
        for atom, exp in factors:
            exp = int(exp)
            if exp == 0:
                raise ValueError("word exponents must be nonzero")
            if isinstance(atom, int):
                if atom < 0:
                    raise ValueError(f"generator index must be >= 0, got {atom}")
            elif not isinstance(atom, GenWord):
                raise TypeError(f"atom must be an index or a GenWord, got {type(atom)!r}")
            out.append((atom, exp))
        object.__setattr__(self, "factors", tuple(out))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GenWord is immutable")

    @classmethod
    def _make(cls, factors):
        self = object.__new__(cls)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def letter(cls, index, exponent=1):
        if exponent == 0:
            return _EMPTY
        return cls(((index, exponent),))

    @classmethod
    def from_letters(cls, letters):
        """Flat word from (index, exponent) pairs."""
        return cls(letters)

    @property
    def is_empty(self):
        return not self.factors

    def power(self, exponent):
        exponent = int(exponent)
        if exponent == 0 or not self.factors:
            return _EMPTY
        if exponent == 1:
            return self
        if len(self.factors) == 1:
            atom, exp = self.factors[0]
            return GenWord._make(((atom, exp * exponent),))
        return GenWord._make(((self, exponent),))

    def inverse(self):
        return self.power(-1)

    def __mul__(self, other):
        if not isinstance(other, GenWord):
            return NotImplemented
        return concat(self, other)

    def __eq__(self, other):
        if not isinstance(other, GenWord):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.factors)
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        parts = []
        for atom, exp in self.factors:
            base = f"g{atom}" if isinstance(atom, int) else f"({atom!r})"
            parts.append(base if exp == 1 else f"{base}^{exp}")
        return "GenWord(" + " ".join(parts) + ")" if parts else "GenWord()"


_EMPTY = GenWord._make(())


def empty_word():
    return _EMPTY


def concat(*words):
    """Concatenation, merging adjacent factors with the same atom.

    Merging same-atom neighbours (and dropping the resulting zero exponents)
    is free reduction at the factor level; no other normalization happens.
    """
    out = []
    for w in words:
        for atom, exp in w.factors:
            prev = out[-1][0] if out else None
            same = prev is atom or (isinstance(prev, int) and prev == atom)
            if same:
                merged = out[-1][1] + exp
                if merged == 0:
                    out.pop()
                else:
                    out[-1] = (atom, merged)
            else:
                out.append((atom, exp))
    if not out:
        return _EMPTY
    return GenWord._make(tuple(out))


class WordEvaluator:
    """Evaluates words over a fixed generator list, caching shared subwords.

    Expression words produced by the sieve share slot subwords heavily; one
    evaluator reused across a batch of words evaluates each shared node and
    each repeated matrix power once.
    """

    def __init__(self, gens):
        if not gens:
            raise ValueError("need at least one generator for the dimension")
        self.gens = list(gens)
        self.n = gens[0].n
        for g in gens:
            if g.n != self.n:
                raise _matrix.DimensionMismatch("generators have mixed dimensions")
        self._nodes = {}
        self._powers = {}

    def _power(self, base, exp):
        if exp == 1:
            return base
        key = (base, exp)
        got = self._powers.get(key)
        if got is None:
            got = _matrix.power(base, exp)
            self._powers[key] = got
        return got

    def __call__(self, word):
        # cache keys are node ids; the node itself is kept alive alongside the
        # value so an id can never be recycled while the cache holds it
        got = self._nodes.get(id(word))
        if got is not None:
            return got[1]
        acc = _matrix.identity(self.n)
        for atom, exp in word.factors:
            if isinstance(atom, int):
                if atom >= len(self.gens):
                    raise IndexError(
                        f"word references generator {atom}, only {len(self.gens)} given"
                    )
                base = self.gens[atom]
            else:
                base = self(atom)
            acc = _matrix.mul(acc, self._power(base, exp))
        self._nodes[id(word)] = (word, acc)
        return acc


def evaluate_word(word, gens):
    """Ordered product of gens[index]**exponent, leftmost factor first.

    The empty word evaluates to the identity.  All generators must share a
    dimension; indices outside gens raise IndexError.
    """
    return WordEvaluator(gens)(word)


def evaluate_in(word, n, gens):
    """Like evaluate_word but usable with an empty generator list."""
    if not gens:
        if _flat_is_empty(word):
            return _matrix.identity(n)
        raise IndexError("nonempty word over an empty generating set")
    return evaluate_word(word, gens)


def _flat_is_empty(word):
    return not word.factors


def exponent_sums(word):
    """Signed exponent count of every generator index, as a dict."""
    cache = {}

    def sums(w):
        key = id(w)
        got = cache.get(key)
        if got is not None:
            return got
        total = {}
        for atom, exp in w.factors:
            if isinstance(atom, int):
                total[atom] = total.get(atom, 0) + exp
            else:
                for idx, cnt in sums(atom).items():
                    total[idx] = total.get(idx, 0) + exp * cnt
        cache[key] = total
        return total

    return {idx: cnt for idx, cnt in sums(word).items() if cnt != 0}


def exponent_vector(word, index_order):
    """Exponent sums as a vector over the given index order; stray indices raise."""
    sums = exponent_sums(word)
    positions = {idx: c for c, idx in enumerate(index_order)}
    vec = [0] * len(index_order)
    for idx, cnt in sums.items():
        if idx not in positions:
            raise ValueError(f"word uses generator {idx} outside the index set")
        vec[positions[idx]] = cnt
    return vec


def word_indices(word):
    """Set of generator indices appearing in the word (before cancellation)."""
    cache = {}

    def walk(w):
        key = id(w)
        got = cache.get(key)
        if got is not None:
            return got
        found = set()
        for atom, exp in w.factors:
            if isinstance(atom, int):
                found.add(atom)
            else:
                found |= walk(atom)
        cache[key] = found
        return found

    return walk(word)


def flat_length(word):
    """Number of letters the fully expanded word would have."""
    cache = {}

    def length(w):
        key = id(w)
        got = cache.get(key)
        if got is not None:
            return got
        total = 0
        for atom, exp in w.factors:
            total += length(atom) * abs(exp) if isinstance(atom, GenWord) else 1
        cache[key] = total
        return total

    return length(word)


def flat_letters(word, max_letters=1_000_000):
    """Expand to a flat (index, exponent) list, merging adjacent same-index letters.

    Raises WordSizeError instead of materializing anything bigger than
    max_letters; large words stay nested on purpose.
    """
    if flat_length(word) > max_letters:
        raise WordSizeError(f"flat form exceeds {max_letters} letters")
    out = []

    def push(idx, exp):
        if out and out[-1][0] == idx:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (idx, merged)
        else:
            out.append((idx, exp))

    def walk(w, sign):
        factors = w.factors if sign == 1 else tuple(reversed(w.factors))
        for atom, exp in factors:
            e = exp * sign
            if isinstance(atom, int):
                push(atom, e)
            elif e >= 0:
                for _ in range(e):
                    walk(atom, 1)
            else:
                for _ in range(-e):
                    walk(atom, -1)

    walk(word, 1)
    return out


def freely_reduced_letters(letters):
    """Merge adjacent same-index letters and drop zero exponents, repeatedly."""
    out = []
    for idx, exp in letters:
        if exp == 0:
            continue
        if out and out[-1][0] == idx:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (idx, merged)
        else:
            out.append((idx, exp))
    return out


def is_freely_trivial(word, max_letters=4096):
    """True when the word visibly reduces to the empty word.

    Only flattens small words; a word too large to flatten is reported
    nontrivial, which is safe for the caller (it keeps the relation).
    """
    if not word.factors:
        return True
    try:
        return not flat_letters(word, max_letters=max_letters)
    except WordSizeError:
        return False


def relabel(word, mapping):
    """Rewrite generator indices through mapping (a dict or sequence)."""
    cache = {}

    def walk(w):
        key = id(w)
        got = cache.get(key)
        if got is not None:
            return got
        factors = []
        for atom, exp in w.factors:
            if isinstance(atom, int):
                factors.append((mapping[atom], exp))
            else:
                factors.append((walk(atom), exp))
        new = GenWord._make(tuple(factors))
        cache[key] = new
        return new

    return walk(word)
