"""Alphabets, words, the X/Y encodings and Lyndon words.

Two alphabets are used throughout: ``X = {x0, x1}`` for iterated integrals and
``Y0 = {y0, y1, ...}`` for nested sums.  A :class:`Word` stores its alphabet and
a tuple of letter indices; the empty word is written ``1``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator


class Alphabet(enum.Enum):
    X = "x"
    Y0 = "y"


@dataclass(frozen=True, order=True)
class Letter:
    alphabet: Alphabet
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("letter index must be non-negative")
        if self.alphabet is Alphabet.X and self.index > 1:
            raise ValueError(f"x{self.index} is not a letter of X")

    def __str__(self):
        return f"{self.alphabet.value}{self.index}"


@dataclass(frozen=True)
class Word:
    """Immutable word over a single alphabet.

    Words compare lexicographically (a proper prefix is smaller), with
    ``x0 < x1`` and ``y_i < y_j`` for ``i < j``.
    """

    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(i) for i in self.letters)
        object.__setattr__(self, "letters", letters)
        if any(i < 0 for i in letters):
            raise ValueError("letter index must be non-negative")
        if self.alphabet is Alphabet.X and any(i > 1 for i in letters):
            raise ValueError("letters of X are x0 and x1")

    @classmethod
    def empty(cls, alphabet: Alphabet = Alphabet.X) -> Word:
        return cls(alphabet, ())

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return (Letter(self.alphabet, i) for i in self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return Letter(self.alphabet, self.letters[item])

    def __add__(self, other: Word) -> Word:
        _check_same(self, other)
        return Word(self.alphabet, self.letters + other.letters)

    def __lt__(self, other: Word):
        _check_same(self, other)
        return self.letters < other.letters

    def __le__(self, other: Word):
        _check_same(self, other)
        return self.letters <= other.letters

    def __gt__(self, other: Word):
        return other < self

    def __ge__(self, other: Word):
        return other <= self

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"{self.alphabet.value}{i}" for i in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    @property
    def weight(self) -> int:
        """Sum of the letter indices (the weight of a Y-word)."""
        return sum(self.letters)

    def names(self) -> list[str]:
        return [f"{self.alphabet.value}{i}" for i in self.letters]

    def is_lyndon(self) -> bool:
        return is_lyndon(self)


def _check_same(u: Word, v: Word):
    if u.alphabet is not v.alphabet:
        raise ValueError(f"alphabet mismatch: {u.alphabet.name} vs {v.alphabet.name}")


_LETTER = re.compile(r"([xy])(\d+)$")


def parse_letter(token: str) -> Letter:
    m = _LETTER.match(token.strip())
    if not m:
        raise ValueError(f"not a letter: {token!r}")
    return Letter(Alphabet(m.group(1)), int(m.group(2)))


def parse_word(text: str, alphabet: Alphabet | None = None) -> Word:
    """Parse ``"x0 x1 x1"``, ``"y2 y0"`` or ``"1"`` (the empty word).

    Letters may also be written without spaces (``"x0x1"``).
    """
    text = text.strip()
    if text in ("", "1"):
        return Word(alphabet or Alphabet.X, ())
    tokens = re.findall(r"[xy]\d+|\S", text)
    letters = [parse_letter(t) for t in tokens]
    found = {l.alphabet for l in letters}
    if len(found) > 1:
        raise ValueError(f"word mixes alphabets: {text!r}")
    (alpha,) = found
    if alphabet is not None and alpha is not alphabet:
        raise ValueError(f"expected a word over {alphabet.name}, got {text!r}")
    return Word(alpha, tuple(l.index for l in letters))


def X(*letters: int) -> Word:
    """Shorthand: ``X(0, 1, 1)`` is the word x0 x1 x1."""
    return Word(Alphabet.X, letters)


def Y(*letters: int) -> Word:
    """Shorthand: ``Y(2, 0)`` is the word y2 y0."""
    return Word(Alphabet.Y0, letters)


def pi_X(w: Word) -> Word:
    """Map ``y_{s1}...y_{sr}`` to ``x0^{s1-1} x1 ... x0^{sr-1} x1``."""
    if w.alphabet is not Alphabet.Y0:
        raise ValueError("pi_X expects a word over Y0")
    out: list[int] = []
    for s in w.letters:
        if s == 0:
            raise ValueError("pi_X undefined on y_0")
        out.extend([0] * (s - 1))
        out.append(1)
    return Word(Alphabet.X, tuple(out))


def pi_Y_word(w: Word) -> Word | None:
    """Word-level pi_Y: the Y-word for ``w`` in ``1 + X*x1``, None if w ends in x0."""
    if w.alphabet is not Alphabet.X:
        raise ValueError("pi_Y expects a word over X")
    if w.letters and w.letters[-1] == 0:
        return None
    out = []
    run = 0
    for x in w.letters:
        if x == 0:
            run += 1
        else:
            out.append(run + 1)
            run = 0
    return Word(Alphabet.Y0, tuple(out))


def pi_Y(w: Word):
    """Adjoint of pi_X, as an NCPoly over Y0 (zero on words ending in x0)."""
    from polystar.ncpoly import NCPoly

    image = pi_Y_word(w)
    if image is None:
        return NCPoly.zero(Alphabet.Y0)
    return NCPoly.from_word(image)


def is_lyndon(w: Word) -> bool:
    """True iff ``w`` is non-empty and strictly smaller than each proper right factor."""
    s = w.letters
    if not s:
        return False
    return all(s < s[i:] for i in range(1, len(s)))


def _alphabet_size(alphabet: Alphabet, size: int | None) -> int:
    if alphabet is Alphabet.X:
        return 2
    if size is None or size < 1:
        raise ValueError("a finite letter count is needed for Y0")
    return size


def lyndon_words(alphabet: Alphabet, max_length: int, size: int | None = None) -> list[Word]:
    """All Lyndon words of length <= max_length in lexicographic order.

    Uses Duval's successor rule.  For ``Y0`` the letters y0..y_{size-1} are used.
    """
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    k = _alphabet_size(alphabet, size)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(Word(alphabet, tuple(w)))
        m = len(w)
        while len(w) < max_length:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def lyndon_factorization(w: Word) -> list[Word]:
    """Chen-Fox-Lyndon factorization (non-increasing Lyndon factors), by Duval."""
    s = w.letters
    n = len(s)
    i = 0
    factors = []
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            factors.append(Word(w.alphabet, s[i:i + j - k]))
            i += j - k
    return factors
