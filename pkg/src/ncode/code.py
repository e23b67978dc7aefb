"""Combinatorial codes over the neuron set [n] = {1, ..., n}.

Codewords are stored as integer bit masks: neuron ``i`` is bit ``i - 1``.
Every public function that takes a "neuron set" accepts either such a mask
or any iterable of 1-indexed neuron labels.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import PreconditionError

MAX_NEURONS = 64

NeuronSet = Union[int, Iterable[int]]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(neurons: NeuronSet) -> int:
    """Convert a neuron set (1-indexed labels) or a mask to a mask."""
    if isinstance(neurons, int):
        if neurons < 0:
            raise PreconditionError(f"negative codeword mask {neurons}")
        return neurons
    mask = 0
    for i in neurons:
        if not isinstance(i, int) or i < 1:
            raise PreconditionError(f"neuron labels are positive integers, got {i!r}")
        mask |= 1 << (i - 1)
    return mask


def members(mask: int) -> list[int]:
    """Sorted 1-indexed neurons of a codeword mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def word_key(mask: int) -> tuple[int, int]:
    """Canonical ordering: by weight, then by numeric value of the mask."""
    return (popcount(mask), mask)


def format_word(mask: int, n: int | None = None) -> str:
    if mask == 0:
        return "∅"
    labels = members(mask)
    if (n if n is not None else labels[-1]) <= 9:
        return "".join(str(i) for i in labels)
    return "{" + ",".join(str(i) for i in labels) + "}"


class Code:
    """An immutable combinatorial code on ``n`` neurons.

    Equality is ``(n, codewords)`` equality; codes on different neuron
    counts never compare equal.  Iteration follows the canonical order
    (weight, then mask value).
    """

    def __init__(self, n: int, words: Iterable[int]):
        if not isinstance(n, int) or n < 0 or n > MAX_NEURONS:
            raise PreconditionError(f"neuron count must be in 0..{MAX_NEURONS}, got {n!r}")
        ws = frozenset(words)
        top = full_mask(n)
        for w in ws:
            if w & ~top:
                raise PreconditionError(
                    f"codeword {members(w)} has a neuron outside [1..{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", ws)

    def __setattr__(self, key, value):
        if key in ("n", "words"):
            raise AttributeError("Code is immutable")
        object.__setattr__(self, key, value)

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return self.n == other.n and self.words == other.words

    def __hash__(self):
        return hash((self.n, self.words))

    def __len__(self):
        return len(self.words)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_words)

    def __contains__(self, item) -> bool:
        return to_mask(item) in self.words

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self})"

    def __str__(self):
        return "{" + ", ".join(format_word(w, self.n) for w in reversed(self.sorted_words)) + "}"

    @cached_property
    def sorted_words(self) -> tuple[int, ...]:
        return tuple(sorted(self.words, key=word_key))

    @cached_property
    def maximal(self) -> frozenset[int]:
        return frozenset(maximal_codewords(self))

    @property
    def dim(self) -> int:
        """Dimension of the simplicial complex of the code (max weight - 1)."""
        return max((popcount(w) for w in self.words), default=0) - 1

    def as_lists(self) -> list[list[int]]:
        return [members(w) for w in self.sorted_words]


def code_from_words(n: int, words: Iterable[NeuronSet], strict: bool = False) -> Code:
    """Build a code on ``n`` neurons, adding the empty codeword.

    With ``strict=True`` an input lacking the empty codeword is rejected
    instead of silently completed.
    """
    if not isinstance(n, int) or n < 1:
        raise PreconditionError(f"neuron count must be a positive integer, got {n!r}")
    if n > MAX_NEURONS:
        raise PreconditionError(f"at most {MAX_NEURONS} neurons are supported, got {n}")
    top = full_mask(n)
    masks = set()
    for w in words:
        m = to_mask(w)
        if m & ~top:
            raise PreconditionError(
                f"codeword {members(m)} has a neuron outside [1..{n}]")
        masks.add(m)
    if 0 not in masks:
        if strict:
            raise PreconditionError("code lacks the empty codeword (strict mode)")
        masks.add(0)
    return Code(n, masks)


def parse_code(text: str, n: int) -> Code:
    """Parse the compact notation ``"123 12 1 2 3"`` (digit neurons, n <= 9).

    Commas and braces are ignored; ``∅`` or ``0`` denote the empty word.
    """
    if n > 9:
        raise PreconditionError("compact notation only supports n <= 9")
    cleaned = text.replace(",", " ").replace("{", " ").replace("}", " ")
    words = []
    for tok in cleaned.split():
        if tok in ("∅", "0", "e"):
            words.append(0)
        else:
            words.append([int(ch) for ch in tok])
    return code_from_words(n, words)


def maximal_codewords(C: Code) -> set[int]:
    ws = sorted(C.words, key=word_key, reverse=True)
    out: list[int] = []
    for w in ws:
        if not any(w & m == w for m in out):
            out.append(w)
    return set(out)


def trunk(C: Code, sigma: NeuronSet) -> frozenset[int]:
    s = to_mask(sigma)
    if s & ~full_mask(C.n):
        raise PreconditionError(f"{members(s)} is not a subset of [1..{C.n}]")
    return frozenset(c for c in C.words if c & s == s)


def _subsets(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_simplicial_complex(C: Code) -> bool:
    words = C.words
    # checking codimension-one faces suffices
    for w in words:
        m = w
        while m:
            low = m & -m
            if w & ~low not in words:
                return False
            m ^= low
    return True


class SimplicialComplex(Code):
    """A code closed under taking subsets."""

    def __init__(self, n: int, words: Iterable[int]):
        super().__init__(n, words)
        if not is_simplicial_complex(self):
            raise PreconditionError("codewords are not closed under taking subsets")

    @cached_property
    def facets(self) -> tuple[int, ...]:
        return tuple(sorted(maximal_codewords(self), key=word_key))

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[NeuronSet]) -> "SimplicialComplex":
        words = {0}
        for f in facets:
            m = to_mask(f)
            if m & ~full_mask(n):
                raise PreconditionError(f"facet {members(m)} has a neuron outside [1..{n}]")
            words.update(_subsets(m))
        return cls(n, words)


def simplicial_complex_of(C: Code) -> SimplicialComplex:
    words: set[int] = set()
    for m in maximal_codewords(C):
        words.update(_subsets(m))
    words.add(0)
    return SimplicialComplex(C.n, words)


def is_intersection_complete(C: Code) -> bool:
    ws = list(C.words)
    words = C.words
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            if a & b not in words:
                return False
    return True


def intersection_completion(C: Code) -> Code:
    """Smallest intersection complete code containing ``C``."""
    closure: set[int] = set()
    for c in C.words:
        closure |= {c & s for s in closure}
        closure.add(c)
    return Code(C.n, closure)


def completion_membership(C: Code, sigma: NeuronSet) -> bool:
    """Decide membership in the intersection completion through trunks alone.

    ``sigma`` is an intersection of codewords iff its trunk is nonempty and
    strictly shrinks when any neuron outside ``sigma`` is added.
    """
    s = to_mask(sigma)
    tk = trunk(C, s)
    if not tk:
        return False
    for i in range(C.n):
        bit = 1 << i
        if s & bit:
            continue
        if all(c & bit for c in tk):
            return False
    return True


def cone(delta: Code, apex: int) -> SimplicialComplex:
    """Cone over a complex with a new apex neuron ``apex > n``."""
    if apex <= delta.n:
        raise PreconditionError(f"apex {apex} must exceed n = {delta.n}")
    if not is_simplicial_complex(delta):
        raise PreconditionError("cone is only defined for simplicial complexes")
    bit = 1 << (apex - 1)
    return SimplicialComplex(apex, set(delta.words) | {w | bit for w in delta.words})
