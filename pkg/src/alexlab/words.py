"""Freely reduced words in a finitely generated free group.

A word is stored in run-length form: a tuple of (generator, exponent)
pairs with 1-based generator indices, nonzero exponents, and distinct
adjacent generators.  Free reduction is applied eagerly on construction,
so equal group elements compare equal as Python objects.
"""

from __future__ import annotations


def _reduce(letters):
    out = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if gen < 1:
            raise ValueError(f"generator index {gen} must be >= 1")
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((gen, merged))
        else:
            out.append((gen, exp))
    return tuple(out)


class FreeWord:
    """An element of a free group, in freely reduced run-length form."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        self.letters = _reduce(letters)

    @classmethod
    def generator(cls, i, exp=1):
        return cls(((i, exp),))

    @classmethod
    def identity(cls):
        return cls()

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self):
        return not self.letters

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return FreeWord(self.letters + other.letters)

    def inverse(self):
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n):
        if n == 0:
            return FreeWord()
        base = self if n > 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate_by(self, w):
        """w * self * w^-1."""
        return w * self * w.inverse()

    def max_generator(self):
        return max((g for g, _ in self.letters), default=0)

    def exponent_sum(self, i):
        return sum(e for g, e in self.letters if g == i)

    def exponent_vector(self, num_generators):
        vec = [0] * num_generators
        for g, e in self.letters:
            vec[g - 1] += e
        return vec

    def substitute(self, images):
        """Apply the endomorphism sending generator i to images[i-1]."""
        out = FreeWord()
        for g, e in self.letters:
            out = out * (images[g - 1] ** e)
        return out

    def shift(self, offset):
        """Reindex every generator i to i + offset."""
        return FreeWord(tuple((g + offset, e) for g, e in self.letters))

    def length(self):
        return sum(abs(e) for _, e in self.letters)

    def __repr__(self):
        return f"FreeWord({self.letters!r})"


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()
