"""Origamis and their canonical double covers.

An origami of degree d is a triple (x, y, eps): two gluing permutations
of the d square cells plus a per-cell sign.  Its canonical double cover
lives on the doubled label set {-d..-1, 1..d}; internally cover maps are
stored as image arrays of length 2d, indexed so that label +i sits at
position i-1 and label -i at position d+i-1.

Cover maps produced here satisfy m(-i) = -m^{-1}(i) (negating both sides
inverts the map), which is what makes the cycle decomposition split into
pairs {c, c'} with c' the negated reverse of c.
"""
from __future__ import annotations

from dataclasses import dataclass

from .perms import Permutation, SignVector, parse_cycles, format_cycles


class MalformedCover(ValueError):
    """A cover map whose cycles do not pair up c / negated-reverse(c)."""


def _idx(p: int, d: int) -> int:
    return p - 1 if p > 0 else d - p - 1


def _pt(i: int, d: int) -> int:
    return i + 1 if i < d else d - i - 1


@dataclass(frozen=True)
class CoverMap:
    """A bijection of the doubled label set, stored as a 2d image array."""

    images: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.images) // 2

    def __call__(self, p: int) -> int:
        return self.images[_idx(p, self.degree)]

    def inverse(self) -> "CoverMap":
        d = self.degree
        inv = [0] * (2 * d)
        for i, v in enumerate(self.images):
            inv[_idx(v, d)] = _pt(i, d)
        return CoverMap(tuple(inv))

    def compose(self, other: "CoverMap") -> "CoverMap":
        """self after other."""
        d = self.degree
        return CoverMap(tuple(self(other(_pt(i, d))) for i in range(2 * d)))

    def cycles(self) -> list[tuple[int, ...]]:
        d = self.degree
        seen = [False] * (2 * d)
        out = []
        for i in range(2 * d):
            if seen[i]:
                continue
            start = _pt(i, d)
            cyc = [start]
            seen[i] = True
            p = self(start)
            while p != start:
                cyc.append(p)
                seen[_idx(p, d)] = True
                p = self(p)
            out.append(tuple(cyc))
        return out

    @staticmethod
    def from_images(pairs: dict[int, int], d: int) -> "CoverMap":
        return CoverMap(tuple(pairs[_pt(i, d)] for i in range(2 * d)))


@dataclass(frozen=True)
class Origami:
    """A square-tiled surface: gluings x (horizontal), y (vertical base)
    and a per-cell sign list.  Connectivity is not enforced here."""

    x: Permutation
    y: Permutation
    eps: SignVector

    def __post_init__(self):
        if not (self.x.degree == self.y.degree == self.eps.degree):
            raise ValueError(
                f"degree mismatch: x={self.x.degree} y={self.y.degree} eps={self.eps.degree}"
            )

    @property
    def degree(self) -> int:
        return self.x.degree

    def __str__(self) -> str:
        return f"x={format_cycles(self.x)}; y={format_cycles(self.y)}; eps={self.eps}"

    @staticmethod
    def parse(text: str) -> "Origami":
        """Parse ``x=(1,2,3)(4); y=(1,4); eps=+--+``."""
        fields: dict[str, str] = {}
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            key, _, value = chunk.partition("=")
            fields[key.strip()] = value.strip()
        missing = {"x", "y", "eps"} - fields.keys()
        if missing:
            raise ValueError(f"missing fields {sorted(missing)} in {text!r}")
        eps = SignVector.parse(fields["eps"])
        d = eps.degree
        return Origami(parse_cycles(fields["x"], d), parse_cycles(fields["y"], d), eps)


@dataclass(frozen=True)
class DoubleCover:
    """The canonical translation double cover of an origami, on 2d cells."""

    xhat: CoverMap
    yhat: CoverMap

    @property
    def degree(self) -> int:
        return self.xhat.degree


def double_cover(o: Origami) -> DoubleCover:
    """The cover maps: xhat(i) = x^{sign(i)}(i) and
    yhat(i) = eps(i) * eps(y^{eps(i)}(i)) * y^{eps(i)}(i), both taken with
    the odd extensions of x and y to negative labels."""
    d = o.degree
    x, y, eps = o.x, o.y, o.eps
    xinv, yinv = x.inverse(), y.inverse()
    xh = [0] * (2 * d)
    yh = [0] * (2 * d)
    for i in range(1, d + 1):
        xh[_idx(i, d)] = x(i)
        xh[_idx(-i, d)] = -xinv(i)
        # positive label: follow y or y^-1 according to the cell sign
        v = y(i) if eps(i) == 1 else yinv(i)
        yh[_idx(i, d)] = eps(i) * eps(v) * v
        # negative label: odd extensions flip the sign of eps and of the cell
        w = yinv(i) if eps(i) == 1 else y(i)
        yh[_idx(-i, d)] = -eps(i) * eps(w) * w
    return DoubleCover(CoverMap(tuple(xh)), CoverMap(tuple(yh)))


def paired_cycles(m: CoverMap) -> list[tuple[int, ...]]:
    """Split the cycles of a cover map into representatives, one per pair
    {c, c'} where c' is the negated reverse of c.  The representative is
    the cycle containing the smallest positive label of the pair, rotated
    to start there."""
    d = m.degree
    seen = [False] * d  # by absolute label
    reps = []
    for i in range(1, d + 1):
        if seen[i - 1]:
            continue
        cyc = [i]
        seen[i - 1] = True
        p = m(i)
        while p != i:
            if seen[abs(p) - 1]:
                raise MalformedCover(f"cycle through {i} revisits label {abs(p)}")
            seen[abs(p) - 1] = True
            cyc.append(p)
            p = m(p)
        reps.append(tuple(cyc))
    # the partner cycle must be the negated reverse: m(-a_{k+1}) = -a_k
    for cyc in reps:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            if m(-b) != -a:
                raise MalformedCover(f"partner of cycle {cyc} is not its negated reverse")
    return reps


def restore(yhat: CoverMap) -> tuple[Permutation, SignVector]:
    """Invert the double-cover formula for the y part.

    From the paired cycle decomposition c_1 c_1' ... c_n c_n' we take
    y = |c_1|...|c_n| and eps(i) = -1 exactly when i appears negated in
    the chosen cycles.  Each pair's chosen cycle is the one containing
    the smallest positive label, which pins eps deterministically.
    """
    d = yhat.degree
    reps = paired_cycles(yhat)
    signs = [1] * d
    cycles = []
    for cyc in reps:
        cycles.append(tuple(abs(p) for p in cyc))
        for p in cyc:
            if p < 0:
                signs[-p - 1] = -1
    return Permutation.from_cycles(d, cycles), SignVector(tuple(signs))


def is_connected(o: Origami) -> bool:
    """True iff <x, y> acts transitively on the cells; the sign list never
    disconnects anything."""
    d = o.degree
    seen = [False] * d
    stack = [1]
    seen[0] = True
    count = 1
    while stack:
        i = stack.pop()
        for j in (o.x(i), o.y(i)):
            if not seen[j - 1]:
                seen[j - 1] = True
                count += 1
                stack.append(j)
    return count == d


class DisconnectedOrigami(ValueError):
    """Operation requires a connected origami."""


def is_abelian(o: Origami) -> bool:
    """True iff the flat structure comes from an abelian differential,
    i.e. the canonical double cover is disconnected (two orbits of size d)."""
    if not is_connected(o):
        raise DisconnectedOrigami(f"origami is disconnected: {o}")
    cover = double_cover(o)
    d = o.degree
    seen = [False] * (2 * d)
    stack = [0]
    seen[0] = True
    count = 1
    xh, yh = cover.xhat.images, cover.yhat.images
    xhi, yhi = cover.xhat.inverse().images, cover.yhat.inverse().images
    while stack:
        i = stack.pop()
        for q in (xh[i], yh[i], xhi[i], yhi[i]):
            j = _idx(q, d)
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count < 2 * d
