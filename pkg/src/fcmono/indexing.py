"""The index set {0,1}^m of local solutions and matrix rows."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Tuple


@dataclass(frozen=True)
class BinaryIndex:
    """``I = (i_1, ..., i_m)``; ``i_1`` is the least significant bit of the position."""

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("index must have at least one entry")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"entries must be 0 or 1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @property
    def m(self) -> int:
        return len(self.bits)

    @classmethod
    def from_position(cls, pos: int, m: int) -> "BinaryIndex":
        if not 0 <= pos < 2 ** m:
            raise ValueError(f"position {pos} out of range for m={m}")
        return cls(tuple((pos >> k) & 1 for k in range(m)))

    @classmethod
    def parse(cls, text: str) -> "BinaryIndex":
        """From the bit string ``"i1i2...im"``."""
        return cls(tuple(int(ch) for ch in text.strip()))

    @classmethod
    def zero(cls, m: int) -> "BinaryIndex":
        return cls((0,) * m)

    @classmethod
    def unit(cls, k: int, m: int) -> "BinaryIndex":
        """e_k, 1-based."""
        return cls(tuple(1 if j == k - 1 else 0 for j in range(m)))

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, k):
        return self.bits[k]

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return "".join(str(b) for b in self.bits)


def _same_m(a: BinaryIndex, b: BinaryIndex):
    if a.m != b.m:
        raise ValueError(f"index length mismatch: {a.m} vs {b.m}")


def position(index: BinaryIndex) -> int:
    return sum(b << k for k, b in enumerate(index.bits))


def leq(j: BinaryIndex, i: BinaryIndex) -> bool:
    """Componentwise ``J <= I``."""
    _same_m(j, i)
    return all(a <= b for a, b in zip(j.bits, i.bits))


def meet(i: BinaryIndex, j: BinaryIndex) -> BinaryIndex:
    """Componentwise product ``I . I'``."""
    _same_m(i, j)
    return BinaryIndex(tuple(a * b for a, b in zip(i.bits, j.bits)))


def weight(index: BinaryIndex) -> int:
    return sum(index.bits)


def all_indices(m: int) -> Iterator[BinaryIndex]:
    """All of {0,1}^m in position order."""
    for pos in range(2 ** m):
        yield BinaryIndex.from_position(pos, m)


def below(index: BinaryIndex) -> Iterator[BinaryIndex]:
    """All ``J <= I``."""
    choices = [(0, 1) if b else (0,) for b in index.bits]
    for bits in product(*choices):
        yield BinaryIndex(bits)
