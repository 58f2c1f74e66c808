"""Ground sets, bitmask subsets and the extended naturals.

Subsets of a finite ground set are plain ``int`` bitmasks: bit ``i`` set means
the element with index ``i`` belongs to the subset.  :class:`SubsetMask` is a
labelled view that remembers its ground set; every function that takes a
mask accepts either form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

MAX_EXHAUSTIVE = 16


class GroundSetMismatch(ValueError):
    """A mask does not belong to the ground set it is used with."""


class GroundSetTooLarge(ValueError):
    """Exhaustive enumeration was requested on a ground set above the cap."""


class UnknownLabel(KeyError):
    """A label that is not an element of the ground set."""


@dataclass(frozen=True)
class GroundSet:
    """An ordered finite set of distinct string labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"element labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate element labels in {labels}")
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @classmethod
    def of_size(cls, n: int) -> GroundSet:
        """Ground set labelled ``"0" .. "n-1"``."""
        return cls(tuple(str(i) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def mask(self, labels: Iterable[str]) -> int:
        bits = 0
        for lab in labels:
            bits |= 1 << self.index(lab)
        return bits

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in indices(mask)]

    def format(self, mask: int) -> str:
        """``{a,b}`` in ascending index order."""
        return "{" + ",".join(self.labels_of(mask)) + "}"

    def subset(self, mask: int) -> SubsetMask:
        return SubsetMask(self, mask)

    def check(self, mask: MaskLike) -> int:
        """Return the raw bits of ``mask``, rejecting foreign or oversized masks."""
        if isinstance(mask, SubsetMask):
            if mask.ground != self:
                raise GroundSetMismatch(f"mask over {mask.ground.labels} used with {self.labels}")
            return mask.bits
        if isinstance(mask, bool) or not isinstance(mask, int):
            raise TypeError(f"expected a mask, got {type(mask).__name__}")
        if mask < 0 or mask >> len(self.labels):
            raise GroundSetMismatch(f"mask {mask:#x} has bits outside a ground set of size {self.n}")
        return mask

    def require_exhaustive(self, cap: int = MAX_EXHAUSTIVE) -> None:
        if self.n > cap:
            raise GroundSetTooLarge(f"ground set of size {self.n} exceeds the exhaustive cap {cap}")


@dataclass(frozen=True)
class SubsetMask:
    ground: GroundSet
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.ground.n:
            raise GroundSetMismatch(f"mask {self.bits:#x} has bits outside the ground set")

    def _other(self, other: MaskLike) -> int:
        return self.ground.check(other)

    def __and__(self, other):
        return SubsetMask(self.ground, self.bits & self._other(other))

    def __or__(self, other):
        return SubsetMask(self.ground, self.bits | self._other(other))

    def __sub__(self, other):
        return SubsetMask(self.ground, self.bits & ~self._other(other))

    def __len__(self):
        return self.bits.bit_count()

    def __iter__(self):
        return iter(self.ground.labels_of(self.bits))

    def __contains__(self, label):
        return bool(self.bits >> self.ground.index(label) & 1)

    def issubset(self, other: MaskLike) -> bool:
        return self.bits & ~self._other(other) == 0

    def complement(self) -> SubsetMask:
        return SubsetMask(self.ground, self.ground.full & ~self.bits)

    def __str__(self):
        return self.ground.format(self.bits)


MaskLike = Union[int, SubsetMask]


def popcount(mask: int) -> int:
    return mask.bit_count()


def indices(mask: int) -> Iterator[int]:
    """Set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def compress(mask: int, within: int) -> int:
    """Re-index ``mask & within`` onto the positions of ``within`` (bit extract)."""
    out = 0
    for pos, i in enumerate(indices(within)):
        if mask >> i & 1:
            out |= 1 << pos
    return out


def expand(mask: int, within: int) -> int:
    """Inverse of :func:`compress`: scatter low bits of ``mask`` onto ``within``."""
    out = 0
    for pos, i in enumerate(indices(within)):
        if mask >> pos & 1:
            out |= 1 << i
    return out


def diff_size(A: MaskLike, B: MaskLike) -> int:
    """``|A \\ B|``; both arguments must live on the same ground set."""
    if isinstance(A, SubsetMask) or isinstance(B, SubsetMask):
        ground = A.ground if isinstance(A, SubsetMask) else B.ground
        a, b = ground.check(A), ground.check(B)
    else:
        a, b = A, B
    return (a & ~b).bit_count()


def nested_pairs(E: GroundSet, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, int]]:
    """Yield every ``(A, B)`` with ``B ⊆ A ⊆ E``, 3**n pairs in total.

    Order is ascending ``A``, then ascending ``B``.  ``start``/``stop`` bound
    the outer ``A`` so consumers can partition the stream.
    """
    E.require_exhaustive()
    stop = 1 << E.n if stop is None else stop
    for A in range(start, stop):
        for B in submasks(A):
            yield A, B


class ExtendedNat:
    """A natural number or infinity, with saturating addition.

    Compares and adds with plain ``int``.  Infinity is the tagged value
    :data:`INF`; it is never represented by a numeric stand-in.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        if value is not None:
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"ExtendedNat needs an int or None, got {value!r}")
            if value < 0:
                raise ValueError(f"ExtendedNat cannot be negative: {value}")
        object.__setattr__(self, "_value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedNat is immutable")

    @classmethod
    def coerce(cls, x: int | ExtendedNat) -> ExtendedNat:
        return x if isinstance(x, ExtendedNat) else cls(x)

    @classmethod
    def parse(cls, text: str) -> ExtendedNat:
        text = text.strip()
        if text == "inf":
            return INF
        if not text.isdigit():
            raise ValueError(f"not a natural number or 'inf': {text!r}")
        return cls(int(text))

    @property
    def value(self) -> int | None:
        """The finite value, or ``None`` for infinity."""
        return self._value

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def __int__(self):
        if self._value is None:
            raise OverflowError("infinity has no integer value")
        return self._value

    def __index__(self):
        return self.__int__()

    def __bool__(self):
        return self._value != 0

    @staticmethod
    def _unwrap(other):
        # -> (ok, value-or-None)
        if isinstance(other, ExtendedNat):
            return True, other._value
        if isinstance(other, int) and not isinstance(other, bool):
            return True, other
        return False, None

    def __add__(self, other):
        ok, v = self._unwrap(other)
        if not ok:
            return NotImplemented
        if self._value is None or v is None:
            return INF
        return ExtendedNat(self._value + v)

    __radd__ = __add__

    def __sub__(self, other):
        ok, v = self._unwrap(other)
        if not ok:
            return NotImplemented
        if v is None:
            raise ArithmeticError("cannot subtract infinity")
        if self._value is None:
            return INF
        return ExtendedNat(self._value - v)

    def monus(self, k: int) -> ExtendedNat:
        """Truncated subtraction ``max(self - k, 0)``; infinity stays infinite."""
        if self._value is None:
            return INF
        return ExtendedNat(max(self._value - k, 0))

    def _cmp(self, other):
        ok, v = self._unwrap(other)
        if not ok:
            return None
        a, b = self._value, v
        if a is None:
            return 0 if b is None else 1
        if b is None:
            return -1
        return (a > b) - (a < b)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash(self._value) if self._value is not None else hash(("ExtendedNat", "inf"))

    def __repr__(self):
        return "INF" if self._value is None else f"ExtendedNat({self._value})"

    def __str__(self):
        return "inf" if self._value is None else str(self._value)


INF = ExtendedNat(None)
