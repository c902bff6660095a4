"""Canonical finite subsets of Z and their images in cyclic groups.

All covering quantities are invariant under translation, so a ``ZSet`` is
always stored shifted to have minimum 0; equality and hashing are then
by value.  Rationals are plain :class:`fractions.Fraction` objects.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple

from coverlab.errors import CoverError


@dataclass(frozen=True, order=True)
class ZSet:
    """A finite non-empty subset of Z, translated so that its minimum is 0."""

    elements: Tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(x) for x in self.elements)
        if not els:
            raise CoverError("empty set")
        if els[0] != 0:
            raise CoverError(f"ZSet must start at 0, got {els[0]}")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise CoverError("ZSet elements must be strictly increasing")
        object.__setattr__(self, "elements", els)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def diameter(self) -> int:
        return self.elements[-1]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def reflect(self) -> "ZSet":
        d = self.diameter
        return ZSet(tuple(sorted(d - x for x in self.elements)))

    def dilate(self, c: int) -> "ZSet":
        if c < 1:
            raise CoverError("dilation factor must be positive")
        return ZSet(tuple(c * x for x in self.elements))

    def mask(self) -> int:
        """Bit x is set for every element x."""
        m = 0
        for x in self.elements:
            m |= 1 << x
        return m

    def __str__(self):
        return format_set(self.elements)


@dataclass(frozen=True)
class CyclicSet:
    """A non-empty subset of Z_n given by residues in [0, n)."""

    modulus: int
    residues: Tuple[int, ...]

    def __post_init__(self):
        n = int(self.modulus)
        if n < 1:
            raise CoverError("modulus must be positive")
        res = tuple(int(r) for r in self.residues)
        if not res:
            raise CoverError("empty set")
        if any(r < 0 or r >= n for r in res):
            raise CoverError(f"residues must lie in [0, {n})")
        if any(b <= a for a, b in zip(res, res[1:])):
            raise CoverError("residues must be strictly increasing")
        object.__setattr__(self, "modulus", n)
        object.__setattr__(self, "residues", res)

    @classmethod
    def from_iterable(cls, values: Iterable[int], n: int) -> "CyclicSet":
        if n < 1:
            raise CoverError("modulus must be positive")
        return cls(n, tuple(sorted({int(v) % n for v in values})))

    @property
    def size(self) -> int:
        return len(self.residues)

    def __len__(self):
        return len(self.residues)

    def __iter__(self):
        return iter(self.residues)

    def __str__(self):
        return f"{format_set(self.residues)} mod {self.modulus}"


def normalize(raw: Iterable[int]) -> ZSet:
    """Sort, deduplicate and shift ``raw`` so that its minimum is 0."""
    values = sorted({int(x) for x in raw})
    if not values:
        raise CoverError("empty set")
    lo = values[0]
    return ZSet(tuple(x - lo for x in values))


def embed_cyclic(S: ZSet, n: int) -> CyclicSet:
    """Regard ``S`` as a subset of Z_n; needs n > diam(S) so no residues collide."""
    if n <= S.diameter:
        raise CoverError(f"modulus too small: need n > diam(S) = {S.diameter}, got {n}")
    return CyclicSet(n, tuple(x % n for x in S.elements))


def parse_set(text: str) -> ZSet:
    """Parse ``"0,1,3"`` (whitespace tolerated) into a normalized ``ZSet``."""
    tokens = [t for t in text.replace(" ", "").split(",") if t]
    if not tokens:
        raise CoverError("empty set")
    try:
        return normalize(int(t) for t in tokens)
    except ValueError:
        raise CoverError(f"cannot parse integer set {text!r}") from None


def parse_ints(text: str) -> Tuple[int, ...]:
    tokens = [t for t in text.replace(" ", "").split(",") if t]
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise CoverError(f"cannot parse integer list {text!r}") from None


def format_set(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CoverError(f"cannot parse rational {text!r}") from None


def harmonic(k: int) -> Fraction:
    """The k-th harmonic number 1 + 1/2 + ... + 1/k, exactly."""
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))
