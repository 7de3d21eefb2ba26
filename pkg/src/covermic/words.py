"""Words in finitely presented groups.

A word is a tuple of nonzero signed integers: +k is the k-th generator,
-k its inverse.  Letters only ever appear at I/O boundaries; everything
internal works on the signed-integer form so presentations with more
than 26 generators (as produced by rewriting) need no special casing.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]


class WordError(ValueError):
    """Raised for malformed word input (unknown letter, zero letter)."""


def free_reduce(letters: Iterable[int]) -> Word:
    """Freely reduce a word: cancel adjacent x x^-1 pairs until none remain.

    Idempotent and length-nonincreasing; the empty word is the identity.
    """
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise WordError("word letters must be nonzero integers")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def concat(*words: Sequence[int]) -> Word:
    """Freely reduced product of words, composed left to right."""
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(word: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(invert(word), -n)
    return concat(*([word] * n)) if n else ()


def conjugate(word: Sequence[int], by: Sequence[int]) -> Word:
    """by^-1 * word * by, freely reduced."""
    return concat(invert(by), word, by)


def cyclic_reduce(word: Sequence[int]) -> Word:
    """Cyclically reduced form (conjugation-minimal length)."""
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Parse a letter string into a word over the given generator alphabet.

    Lower-case letters are generators, upper-case their inverses;
    composition is left to right.  The result is freely reduced.
    """
    index = {name: i + 1 for i, name in enumerate(alphabet)}
    letters: list[int] = []
    for ch in text:
        if ch.isspace():
            continue
        low = ch.lower()
        if low not in index:
            raise WordError(f"unknown generator letter {ch!r}")
        k = index[low]
        letters.append(k if ch == low else -k)
    return free_reduce(letters)


def render_word(word: Sequence[int], alphabet: Sequence[str]) -> str:
    """Inverse of parse_word on freely reduced words."""
    chars: list[str] = []
    for x in word:
        k = abs(x)
        if not 1 <= k <= len(alphabet):
            raise WordError(f"letter index {x} outside alphabet of size {len(alphabet)}")
        name = alphabet[k - 1]
        chars.append(name if x > 0 else name.upper())
    return "".join(chars)


def exponent_sums(word: Sequence[int], ngens: int) -> list[int]:
    """Abelianized image of the word: one exponent sum per generator."""
    sums = [0] * ngens
    for x in word:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums
