"""Isomorphism classes of origamis with a fixed canonical horizontal gluing.

Two origamis sharing the canonical x are isomorphic exactly when their
double-cover y-parts are conjugate under Stab(x), the group of odd signed
permutations fixing the x cover map under conjugation.  The census walks
each conjugation orbit with a small generating set of Stab(x) (per-cycle
rotations, reflection-with-sign-flip, swaps of equal-length cycles); the
literal sigma-by-sigma sweep of the class construction is kept as
``restricted_class_sweep`` and the two are checked against each other in
the test suite before the fast path is trusted at degree 7.

Internally cells are 0-based and a sign list is packed into a bit mask
whose most significant bit is cell 1, so that integer order on masks is
lexicographic order on sign strings with ``+`` < ``-``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import DisconnectedOrigami, Origami, is_connected
from .perms import (
    Partition,
    Permutation,
    SignVector,
    SignedPermutation,
    canonical_x,
    compose,
    conjugate,
    partitions,
    twisted_power,
)


class ClassNotFound(LookupError):
    """An origami was looked up that no census class contains."""


class NotCanonical(ValueError):
    """The x gluing is not in canonical (consecutive-block) form."""


# ---------------------------------------------------------------------------
# stabilizer of the canonical x


def _blocks(parts: tuple[int, ...]) -> list[tuple[int, int]]:
    """(start, length) of each consecutive cycle block, 0-based."""
    out = []
    start = 0
    for m in parts:
        out.append((start, m))
        start += m
    return out


def stabilizer_x(x: Permutation) -> list[SignedPermutation]:
    """All odd signed permutations sigma with delta_sigma constant on each
    x-cycle and the unsigned part conjugating the per-cycle twisted power
    of x back to x.  Enumerated by choosing, per cycle, a target cycle of
    equal length, a rotation offset and a sign."""
    d = x.degree
    parts = tuple(len(c) for c in x.cycles())
    if x != canonical_x(Partition(tuple(sorted(parts, reverse=True)))):
        raise NotCanonical(f"x not canonical: {x}")
    blocks = _blocks(parts)
    by_len: dict[int, list[int]] = {}
    for j, (_, m) in enumerate(blocks):
        by_len.setdefault(m, []).append(j)

    # all ways to permute blocks within each length group
    group_lens = sorted(by_len)
    group_targets = [list(itertools.permutations(by_len[m])) for m in group_lens]

    out = []
    for targets in itertools.product(*group_targets):
        target_of: dict[int, int] = {}
        for m, perm in zip(group_lens, targets):
            for src, dst in zip(by_len[m], perm):
                target_of[src] = dst
        per_block = [
            [(t, s) for t in range(blocks[j][1]) for s in (1, -1)]
            for j in range(len(blocks))
        ]
        for choice in itertools.product(*per_block):
            images = [0] * d
            signs = [1] * d
            for j, (offset, sign) in enumerate(choice):
                src_start, m = blocks[j]
                dst_start, _ = blocks[target_of[j]]
                for k in range(m):
                    pos = (offset + k) % m if sign == 1 else (offset - k) % m
                    images[src_start + k] = dst_start + pos + 1
                    signs[src_start + k] = sign
            out.append(SignedPermutation(Permutation(tuple(images)), SignVector(tuple(signs))))
    return out


def _stab_generator_arrays(d: int, parts: tuple[int, ...]) -> np.ndarray:
    """Generators of Stab(x) as image arrays over the 2d cover indices
    (cell i-1 at index i-1, cell -i at index d+i-1)."""
    blocks = _blocks(parts)
    gens: list[list[int]] = []

    def full(pos_images: list[int], signs: list[int]) -> list[int]:
        arr = [0] * (2 * d)
        for i in range(d):
            j = pos_images[i]
            arr[i] = j if signs[i] == 1 else d + j
            arr[d + i] = d + j if signs[i] == 1 else j
        return arr

    ident = list(range(d))
    for j, (s, m) in enumerate(blocks):
        if m > 1:  # rotation by one step
            imgs = ident.copy()
            for k in range(m):
                imgs[s + k] = s + (k + 1) % m
            gens.append(full(imgs, [1] * d))
        # reflection fixing the block minimum, with the sign flipped
        imgs = ident.copy()
        signs = [1] * d
        for k in range(m):
            imgs[s + k] = s + (-k) % m
            signs[s + k] = -1
        gens.append(full(imgs, signs))
        # swap with the next block of equal length
        if j + 1 < len(blocks) and blocks[j + 1][1] == m:
            s2 = blocks[j + 1][0]
            imgs = ident.copy()
            for k in range(m):
                imgs[s + k] = s2 + k
                imgs[s2 + k] = s + k
            gens.append(full(imgs, [1] * d))
    return np.array(gens, dtype=np.int64)


# ---------------------------------------------------------------------------
# packed encodings

def _mask_bit(c: int, d: int) -> int:
    return 1 << (d - 1 - c)


def _mask_of(eps: SignVector) -> int:
    d = eps.degree
    mask = 0
    for i in range(1, d + 1):
        if eps(i) == -1:
            mask |= _mask_bit(i - 1, d)
    return mask


def _eps_of_mask(mask: int, d: int) -> SignVector:
    return SignVector(tuple(-1 if mask & _mask_bit(c, d) else 1 for c in range(d)))


def _rank_of_perm(y: tuple[int, ...]) -> int:
    """Lexicographic rank of a 0-based image tuple (Lehmer code)."""
    d = len(y)
    rank = 0
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    for i in range(d):
        fact //= d - i
        smaller = sum(1 for j in range(i + 1, d) if y[j] < y[i])
        rank += smaller * fact
    return rank


def _perm_of_rank(rank: int, d: int) -> tuple[int, ...]:
    fact = [1] * (d + 1)
    for k in range(2, d + 1):
        fact[k] = fact[k - 1] * k
    pool = list(range(d))
    out = []
    for i in range(d):
        f = fact[d - 1 - i]
        q, rank = divmod(rank, f)
        out.append(pool.pop(q))
    return tuple(out)


def _cycles0(y: tuple[int, ...]) -> list[list[int]]:
    d = len(y)
    seen = [False] * d
    out = []
    for s in range(d):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        j = y[s]
        while j != s:
            cyc.append(j)
            seen[j] = True
            j = y[j]
        out.append(cyc)
    return out


def _build_yhat(y: tuple[int, ...], yinv: tuple[int, ...], mask: int, d: int) -> list[int]:
    """The cover y map of (y, eps-from-mask) as a 2d index array."""
    yh = [0] * (2 * d)
    for c in range(d):
        e = -1 if mask & _mask_bit(c, d) else 1
        v = y[c] if e == 1 else yinv[c]
        sv = -1 if mask & _mask_bit(v, d) else 1
        yh[c] = v if e * sv == 1 else d + v
        w = yinv[c] if e == 1 else y[c]
        sw = -1 if mask & _mask_bit(w, d) else 1
        yh[d + c] = w if -e * sw == 1 else d + w
    return yh


def _walk_restore(yh, d: int) -> tuple[tuple[int, ...], int, int]:
    """Read (y, eps-mask, cycle count) back off a cover y map.  Starting
    every cycle at its smallest positive cell makes the mask the minimal
    member of its sign-flip family."""
    seen = [False] * d
    y = [0] * d
    neg = 0
    ncyc = 0
    for s in range(d):
        if seen[s]:
            continue
        ncyc += 1
        p = s
        while True:
            c = p if p < d else p - d
            seen[c] = True
            if p >= d:
                neg |= _mask_bit(c, d)
            q = yh[p]
            y[c] = q if q < d else q - d
            p = q
            if p == s:
                break
    return tuple(y), neg, ncyc


def _transitive(x: tuple[int, ...], y: tuple[int, ...], d: int) -> bool:
    seen = [False] * d
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        c = stack.pop()
        for q in (x[c], y[c]):
            if not seen[q]:
                seen[q] = True
                count += 1
                stack.append(q)
    return count == d


def _cover_connected(xh, yh, d: int) -> bool:
    parent = list(range(2 * d))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(2 * d):
        for q in (xh[i], yh[i]):
            ra, rb = find(i), find(q)
            if ra != rb:
                parent[ra] = rb
    return len({find(i) for i in range(2 * d)}) == 1


def _xhat_array(x: tuple[int, ...], d: int) -> list[int]:
    xinv = [0] * d
    for i, v in enumerate(x):
        xinv[v] = i
    return list(x) + [d + c for c in xinv]


# ---------------------------------------------------------------------------
# census data model


@dataclass(frozen=True)
class OrigamiClass:
    """One isomorphism class of connected origamis with canonical x."""

    degree: int
    partition: Partition
    x: Permutation
    y: Permutation
    eps: SignVector
    size: int
    abelian: bool
    class_id: Optional[int] = None
    members: Optional[frozenset] = None  # frozenset of (y images, eps signs)

    @property
    def canonical_rep(self) -> Origami:
        return Origami(self.x, self.y, self.eps)


@dataclass
class Census:
    """All classes of connected origamis of one degree, with lookup tables
    keyed by the packed (y, eps) canonical member of each cover y map."""

    degree: int
    classes: list[OrigamiClass]
    parts: list[Partition]
    tables: Optional[list[tuple[np.ndarray, np.ndarray]]] = None

    def __post_init__(self):
        self._part_index = {p.parts: i for i, p in enumerate(self.parts)}
        self._rep_index = {
            (c.partition.parts, c.y.images, c.eps.signs): c.class_id for c in self.classes
        }

    def counts(self) -> tuple[int, int]:
        """(abelian, non-abelian) class counts."""
        a = sum(1 for c in self.classes if c.abelian)
        return a, len(self.classes) - a


# ---------------------------------------------------------------------------
# orbit machinery


class _PartitionContext:
    """Cached per-partition arrays for orbit walks."""

    def __init__(self, d: int, parts: tuple[int, ...]):
        self.d = d
        self.parts = parts
        x = canonical_x(Partition(parts))
        self.x0 = tuple(v - 1 for v in x.images)
        self.xh = _xhat_array(self.x0, d)
        self.G = _stab_generator_arrays(d, parts)
        self.Ginv = np.empty_like(self.G)
        rows = np.arange(len(self.G))[:, None]
        self.Ginv[rows, self.G] = np.arange(2 * d)[None, :]
        self.rows = rows

    def candidates(self, node: np.ndarray) -> np.ndarray:
        """Conjugates of a cover y map by every generator, one per row."""
        return self.G[self.rows, node[self.Ginv]]


def _orbit(ctx: _PartitionContext, y: tuple[int, ...], mask: int):
    """BFS over the Stab(x)-conjugation orbit of the cover y map of
    (y, mask).  Yields (key, y, mask, node) per orbit element, the key
    being rank(y) * 2^d + mask of the minimal sign variant."""
    d = ctx.d
    yinv = [0] * d
    for i, v in enumerate(y):
        yinv[v] = i
    yh0 = np.array(_build_yhat(y, tuple(yinv), mask, d), dtype=np.int64)
    y0, m0, ncyc = _walk_restore(yh0.tolist(), d)
    key0 = _rank_of_perm(y0) * (1 << d) + m0
    seen = {key0}
    frontier = [yh0]
    yield key0, y0, m0, ncyc
    while frontier:
        node = frontier.pop()
        for row in ctx.candidates(node):
            lst = row.tolist()
            yt, mt, nc = _walk_restore(lst, d)
            key = _rank_of_perm(yt) * (1 << d) + mt
            if key not in seen:
                seen.add(key)
                frontier.append(row)
                yield key, yt, mt, nc


def _expand_members(y: tuple[int, ...], mask: int, d: int):
    """All (y, eps) pairs sharing the cover y map of (y, mask): per y-cycle
    either keep it or replace it by its inverse with the signs on its
    support negated (the two cycle representatives of the cover pairing)."""
    cycs = _cycles0(y)
    flips = [sum(_mask_bit(c, d) for c in cyc) for cyc in cycs]
    for bits in range(1 << len(cycs)):
        yy = list(y)
        m = mask
        for j, cyc in enumerate(cycs):
            if bits >> j & 1:
                m ^= flips[j]
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    yy[b] = a
        yield tuple(yy), m


def _require_canonical_connected(o: Origami) -> tuple[int, ...]:
    if not is_connected(o):
        raise DisconnectedOrigami(f"origami is disconnected: {o}")
    parts = tuple(sorted((len(c) for c in o.x.cycles()), reverse=True))
    if o.x != canonical_x(Partition(parts)):
        raise NotCanonical(f"x not canonical: {o.x}")
    return parts


def restricted_class(o: Origami) -> OrigamiClass:
    """The set of (y, eps) pairs isomorphic to o with the same canonical x,
    computed as the Stab(x)-conjugation orbit of the cover y map."""
    parts = _require_canonical_connected(o)
    d = o.degree
    ctx = _PartitionContext(d, parts)
    y0 = tuple(v - 1 for v in o.y.images)
    mask0 = _mask_of(o.eps)
    members = []
    minkey = None
    nodes = 0
    ncyc0 = 0
    for key, yt, mt, ncyc in _orbit(ctx, y0, mask0):
        nodes += 1
        ncyc0 = ncyc
        if minkey is None or key < minkey:
            minkey = key
        for ym, mm in _expand_members(yt, mt, d):
            members.append((tuple(v + 1 for v in ym), _eps_of_mask(mm, d).signs))
    rep_y = _perm_of_rank(minkey >> d, d)
    return OrigamiClass(
        degree=d,
        partition=Partition(parts),
        x=o.x,
        y=Permutation(tuple(v + 1 for v in rep_y)),
        eps=_eps_of_mask(minkey & ((1 << d) - 1), d),
        size=nodes * (1 << ncyc0),
        abelian=not _cover_connected(ctx.xh, _build_yhat(y0, tuple(_inv(y0)), mask0, d), d),
        members=frozenset(members),
    )


def _inv(y: tuple[int, ...]) -> list[int]:
    out = [0] * len(y)
    for i, v in enumerate(y):
        out[v] = i
    return out


def restricted_class_sweep(o: Origami) -> frozenset:
    """The literal class construction: every sigma in Stab(x) against every
    candidate sign vector, keeping the pairs that pass the twisted-power
    and sign conditions.  Quadratic-cost reference used to validate the
    orbit walk; returns the member set."""
    parts = _require_canonical_connected(o)
    del parts
    d = o.degree
    x, y, eps = o.x, o.y, o.eps
    members = set()
    for sigma in stabilizer_x(x):
        sbar, delta = sigma.base, sigma.sign
        sbar_inv = sbar.inverse()
        for bits in range(1 << d):
            eps_p = _eps_of_mask(bits, d)
            expo = SignVector(
                tuple(eps(i) * eps_p(sbar(i)) * delta(i) for i in range(1, d + 1))
            )
            tp = twisted_power(y, expo)
            if tp is None:
                continue
            y_new = conjugate(sbar, tp)
            eta = tuple(
                delta(sbar_inv(i)) * eps(sbar_inv(i)) * eps_p(i) for i in range(1, d + 1)
            )
            if all(eta[i - 1] * eta[y_new(i) - 1] == 1 for i in range(1, d + 1)):
                members.add((y_new.images, eps_p.signs))
    return frozenset(members)


# ---------------------------------------------------------------------------
# census


def _census_partition(args):
    """Sweep one partition: classify every connected (y, eps) with the
    canonical x of this cycle type.  Returns per-class summaries plus the
    packed lookup table, all in sweep discovery order."""
    d, parts, keep_members = args
    ctx = _PartitionContext(d, parts)
    two_d = 1 << d
    all_masks = np.arange(two_d, dtype=np.int64)
    seen: dict[int, int] = {}
    classes = []
    for rank, y in enumerate(itertools.permutations(range(d))):
        if not _transitive(ctx.x0, y, d):
            continue
        # normalized mask (minimal sign variant) for every eps at once
        norm = all_masks.copy()
        for cyc in _cycles0(y):
            flip = sum(_mask_bit(c, d) for c in cyc)
            sel = (norm >> (d - 1 - cyc[0])) & 1
            norm ^= flip * sel
        normlist = norm.tolist()
        base = rank * two_d
        for mask in range(two_d):
            if base + normlist[mask] in seen:
                continue
            cid = len(classes)
            nodes = 0
            minkey = None
            ncyc0 = 0
            members = [] if keep_members else None
            for key, yt, mt, ncyc in _orbit(ctx, y, mask):
                seen[key] = cid
                nodes += 1
                ncyc0 = ncyc
                if minkey is None or key < minkey:
                    minkey = key
                if members is not None:
                    members.extend((ym, mm) for ym, mm in _expand_members(yt, mt, d))
            yinv = tuple(_inv(y))
            abelian = not _cover_connected(
                ctx.xh, _build_yhat(y, yinv, mask, d), d
            )
            classes.append(
                {
                    "minkey": minkey,
                    "size": nodes * (1 << ncyc0),
                    "abelian": abelian,
                    "members": members,
                }
            )
    keys = np.fromiter(seen.keys(), dtype=np.uint32, count=len(seen))
    ids = np.fromiter(seen.values(), dtype=np.int32, count=len(seen))
    order = np.argsort(keys)
    return classes, keys[order], ids[order]


def census(d: int, workers: int = 1, keep_members: Optional[bool] = None) -> Census:
    """Classify every connected origami of degree d.

    Partitions are processed in reverse-lexicographic order and class ids
    follow sweep discovery order within each partition, so the result is
    identical for any worker count.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if keep_members is None:
        keep_members = d <= 5
    parts_list = partitions(d)
    jobs = [(d, p.parts, keep_members) for p in parts_list]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_census_partition, jobs))
    else:
        results = [_census_partition(job) for job in jobs]

    classes: list[OrigamiClass] = []
    tables = []
    for part, (cls_list, keys, ids) in zip(parts_list, results):
        offset = len(classes)
        x = canonical_x(part)
        for rec in cls_list:
            minkey = rec["minkey"]
            rep_y = _perm_of_rank(minkey >> d, d)
            members = None
            if rec["members"] is not None:
                members = frozenset(
                    (tuple(v + 1 for v in ym), _eps_of_mask(mm, d).signs)
                    for ym, mm in rec["members"]
                )
            classes.append(
                OrigamiClass(
                    degree=d,
                    partition=part,
                    x=x,
                    y=Permutation(tuple(v + 1 for v in rep_y)),
                    eps=_eps_of_mask(minkey & ((1 << d) - 1), d),
                    size=rec["size"],
                    abelian=rec["abelian"],
                    class_id=len(classes),
                    members=members,
                )
            )
        tables.append((keys, ids + offset))
    return Census(degree=d, classes=classes, parts=parts_list, tables=tables)


def find_class(c: Census, o: Origami) -> int:
    """The id of the class containing o; o must be connected with x in
    canonical form."""
    parts = _require_canonical_connected(o)
    d = c.degree
    if o.degree != d:
        raise ValueError(f"degree mismatch: census {d}, origami {o.degree}")
    try:
        pi = c._part_index[parts]
    except KeyError:
        raise ClassNotFound(f"no partition {parts} in census") from None
    y0 = tuple(v - 1 for v in o.y.images)
    # canonical key: read (y, eps) back off the cover y map, which pins the
    # per-cycle representative choice
    mask0 = _mask_of(o.eps)
    yh = _build_yhat(y0, tuple(_inv(y0)), mask0, d)
    yc, mask, _ = _walk_restore(yh, d)
    key = _rank_of_perm(yc) * (1 << d) + mask
    if c.tables is not None:
        keys, ids = c.tables[pi]
        pos = int(np.searchsorted(keys, key))
        if pos < len(keys) and keys[pos] == key:
            return int(ids[pos])
        raise ClassNotFound(f"origami not in census: {o}")
    # census loaded without tables: canonicalize by orbit minimum
    ctx = _PartitionContext(d, parts)
    minkey = min(k for k, *_ in _orbit(ctx, y0, _mask_of(o.eps)))
    rep_y = tuple(v + 1 for v in _perm_of_rank(minkey >> d, d))
    rep_eps = _eps_of_mask(minkey & ((1 << d) - 1), d).signs
    try:
        return c._rep_index[(parts, rep_y, rep_eps)]
    except KeyError:
        raise ClassNotFound(f"origami not in census: {o}") from None
