"""Exact arithmetic for permutations, sign vectors and twisted powers.

Cells are labelled 1..d throughout.  A permutation stores its image
sequence (1-based); a sign vector stores one sign per cell.  Signed
permutations act on the doubled label set {-d..-1, 1..d} as odd maps.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DegreeMismatch(ValueError):
    """Raised when two operands act on different cell sets."""


def _check_degree(a, b) -> None:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degree mismatch: {a.degree} != {b.degree}")


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..d}, stored as the image sequence of 1..d."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def cycles(self, drop_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element,
        listed by increasing smallest element."""
        seen = [False] * self.degree
        out = []
        for i in range(1, self.degree + 1):
            if seen[i - 1]:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self(i)
            while j != i:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1 or not drop_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> "Partition":
        lengths = sorted((len(c) for c in self.cycles()), reverse=True)
        return Partition(tuple(lengths))

    def __str__(self) -> str:
        return format_cycles(self)

    @staticmethod
    def identity(d: int) -> "Permutation":
        return Permutation(tuple(range(1, d + 1)))

    @staticmethod
    def from_cycles(d: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, d + 1))
        used: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= d:
                    raise ValueError(f"cell {a} out of range 1..{d}")
                if a in used:
                    raise ValueError(f"cell {a} repeated across cycles")
                used.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a - 1] = b
        return Permutation(tuple(images))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """a after b: i -> a(b(i))."""
    _check_degree(a, b)
    return Permutation(tuple(a.images[v - 1] for v in b.images))


def conjugate(t: Permutation, s: Permutation) -> Permutation:
    """t # s = t o s o t^-1; preserves the cycle type of s."""
    _check_degree(t, s)
    out = [0] * t.degree
    for i in range(1, t.degree + 1):
        out[t(i) - 1] = t(s(i))
    return Permutation(tuple(out))


@dataclass(frozen=True)
class SignVector:
    """One sign per cell; the odd extension to negative labels is implicit."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +-1: {self.signs}")

    @property
    def degree(self) -> int:
        return len(self.signs)

    def __call__(self, i: int) -> int:
        """Value at a doubled label: odd extension for i < 0."""
        if i > 0:
            return self.signs[i - 1]
        return -self.signs[-i - 1]

    def negate(self) -> "SignVector":
        return SignVector(tuple(-s for s in self.signs))

    def __str__(self) -> str:
        return "".join("+" if s == 1 else "-" for s in self.signs)

    @staticmethod
    def all_plus(d: int) -> "SignVector":
        return SignVector((1,) * d)

    @staticmethod
    def parse(text: str) -> "SignVector":
        table = {"+": 1, "-": -1}
        try:
            return SignVector(tuple(table[c] for c in text.strip()))
        except KeyError:
            raise ValueError(f"bad sign string {text!r}") from None


@dataclass(frozen=True)
class SignedPermutation:
    """An odd bijection of {-d..-1, 1..d}: sigma(i) = sign(i) * base(|i|)
    twisted by a per-cell sign, sigma(-i) = -sigma(i)."""

    base: Permutation
    sign: SignVector

    def __post_init__(self):
        if self.base.degree != self.sign.degree:
            raise DegreeMismatch(
                f"base degree {self.base.degree} != sign length {self.sign.degree}"
            )

    @property
    def degree(self) -> int:
        return self.base.degree

    def __call__(self, i: int) -> int:
        if i > 0:
            return self.sign(i) * self.base(i)
        return -self(-i)

    def inverse(self) -> "SignedPermutation":
        binv = self.base.inverse()
        return SignedPermutation(
            binv, SignVector(tuple(self.sign(binv(i)) for i in range(1, self.degree + 1)))
        )

    @staticmethod
    def identity(d: int) -> "SignedPermutation":
        return SignedPermutation(Permutation.identity(d), SignVector.all_plus(d))


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts summing to the degree."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be >= 1: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def partitions(d: int) -> list[Partition]:
    """All partitions of d in reverse-lexicographic order on the parts."""
    if d < 1:
        raise ValueError("d must be >= 1")
    out: list[Partition] = []

    def descend(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            descend(remaining - part, part, prefix)
            prefix.pop()

    descend(d, d, [])
    return out


def canonical_x(p: Partition) -> Permutation:
    """The permutation with consecutive-block cycles (1..j1)(j1+1..j1+j2)..."""
    cycles = []
    start = 1
    for part in p:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(p.total, cycles)


def twisted_power(x: Permutation, e: SignVector) -> Permutation | None:
    """The map i -> x(i) where e(i)=+1 and i -> x^-1(i) where e(i)=-1.

    Returns None when the result is not a bijection (which happens exactly
    when some i has e(i) != e(x(i)) and x^2(i) != i); in that case the
    census simply skips the sign vector.  On success the inverse is the
    twisted power by the negated sign vector.
    """
    if x.degree != e.degree:
        raise DegreeMismatch(f"degree mismatch: {x.degree} != {e.degree}")
    xinv = x.inverse()
    images = tuple(x(i) if e(i) == 1 else xinv(i) for i in range(1, x.degree + 1))
    if sorted(images) != list(range(1, x.degree + 1)):
        return None
    return Permutation(images)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation like ``(1,2,3)(4)``; fixed points may be omitted."""
    body = text.strip()
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(body):
        if body[pos:m.start()].strip():
            raise ValueError(f"unexpected text in cycle notation: {body!r}")
        pos = m.end()
        inner = m.group(1).strip()
        if not inner:
            continue
        cycles.append(tuple(int(tok) for tok in inner.split(",")))
    if body[pos:].strip():
        raise ValueError(f"unexpected text in cycle notation: {body!r}")
    return Permutation.from_cycles(degree, cycles)


def format_cycles(p: Permutation, drop_fixed: bool = False) -> str:
    cycles = p.cycles(drop_fixed=drop_fixed)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(a) for a in c) + ")" for c in cycles)
