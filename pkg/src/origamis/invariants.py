"""Per-origami invariants (stratum, genus) and the cross-component report.

The stratum of an origami is the multiset of singularity orders in the
quadratic-differential convention (orders >= -1, order-0 marked vertices
retained), together with the abelian flag and the surface genus.  Two
independent computations are provided: a corner walk on the squares
downstairs (elementary, correct by construction) and a vertex pairing on
the canonical double cover (fast); the test suite proves them equal on
every connected origami of small degree.

The report groups Teichmueller-curve components by their invariant key
(degree, abelian flag, stratum, index, valency list, curve genus) and
lists every key shared by two or more components -- the candidates for
Galois conjugacy that the classical invariants cannot separate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from io import StringIO

from .action import ClassAction
from .classify import Census
from .curves import CurveComponent, valency_string
from .model import Origami, double_cover, is_abelian, is_connected
from .perms import compose


class InvariantError(RuntimeError):
    """Internal consistency failure while computing invariants."""


@dataclass(frozen=True)
class Stratum:
    """Singularity data of the flat surface carried by an origami."""

    abelian: bool
    orders: tuple[int, ...]  # ascending, quadratic convention, 0s retained
    genus: int

    def __str__(self) -> str:
        letter = "A" if self.abelian else "Q"
        return f"{letter}{self.genus}({','.join(map(str, self.orders))})"


def _make_stratum(abelian: bool, orders: list[int]) -> Stratum:
    total = sum(orders)
    if total % 4:
        raise InvariantError(f"singularity orders {orders} do not sum to 4g-4")
    genus = 1 + total // 4
    if genus < 0 or any(o < -1 for o in orders):
        raise InvariantError(f"invalid singularity orders {orders}")
    return Stratum(abelian, tuple(sorted(orders)), genus)


# Corner slots: 0=SW, 1=SE, 2=NE, 3=NW.  Walking counterclockwise around a
# vertex, each corner contributes angle pi/2.  The steps below follow the
# corner of the double cover (where the flat structure is a translation
# structure, so the walk is a plain permutation), then project downstairs:
# sheet -p at corner c equals sheet p at the corner rotated by a half turn.
_OPP = {0: 2, 1: 3, 2: 0, 3: 1}


def corner_walk_orders(o: Origami) -> list[int]:
    """Singularity orders from the corner walk downstairs: each orbit of s
    projected corner slots is one vertex of cone angle s*pi/2, i.e. one
    singularity of order s/2 - 2."""
    d = o.degree
    cov = double_cover(o)
    xh, yh = cov.xhat, cov.yhat
    xh_inv, yh_inv = xh.inverse(), yh.inverse()

    def step(p: int, c: int) -> tuple[int, int]:
        if c == 0:
            q, c2 = xh_inv(p), 1
        elif c == 1:
            q, c2 = yh_inv(p), 2
        elif c == 2:
            q, c2 = xh(p), 3
        else:
            q, c2 = yh(p), 0
        if q < 0:
            return -q, _OPP[c2]
        return q, c2

    seen = set()
    orders = []
    for p0 in range(1, d + 1):
        for c0 in range(4):
            if (p0, c0) in seen:
                continue
            s = 0
            p, c = p0, c0
            while (p, c) not in seen:
                seen.add((p, c))
                s += 1
                p, c = step(p, c)
            if s % 2:
                raise InvariantError("odd corner orbit; gluing data corrupt")
            orders.append(s // 2 - 2)
    return orders


def double_cover_orders(o: Origami) -> list[int]:
    """Singularity orders from the vertex cycles of the double cover.

    The commutator of the cover maps has one cycle per cover vertex (cycle
    length L <-> cone angle 2*pi*L).  The deck involution sends the vertex
    through i to the vertex through yhat(xhat(-i)); a fixed vertex projects
    to one singularity of order L - 2, a swapped pair to one of order
    2L - 2.
    """
    cov = double_cover(o)
    xh, yh = cov.xhat, cov.yhat
    zh = xh.compose(yh).compose(xh.inverse()).compose(yh.inverse())
    cycles = zh.cycles()
    vertex_of = {}
    for k, cyc in enumerate(cycles):
        for p in cyc:
            vertex_of[p] = k
    orders = []
    done = set()
    for k, cyc in enumerate(cycles):
        if k in done:
            continue
        partner = vertex_of[yh(xh(-cyc[0]))]
        done.add(k)
        if partner == k:
            orders.append(len(cyc) - 2)
        else:
            if len(cycles[partner]) != len(cyc):
                raise InvariantError("paired cover vertices of unequal length")
            done.add(partner)
            orders.append(2 * len(cyc) - 2)
    return orders


def stratum(o: Origami, oracle: bool = False) -> Stratum:
    """Stratum of a connected origami.

    Abelian origamis use the commutator shortcut (orders 2(L-1) per cycle
    of x y x^-1 y^-1); otherwise the double-cover vertex pairing.  With
    ``oracle=True`` the corner walk is used instead (slower, independent).
    """
    if not is_connected(o):
        raise InvariantError("stratum requires a connected origami")
    abelian = is_abelian(o)
    if oracle:
        return _make_stratum(abelian, corner_walk_orders(o))
    if abelian:
        z = compose(
            compose(o.x, o.y), compose(o.x.inverse(), o.y.inverse())
        )
        orders = [2 * (len(cyc) - 1) for cyc in z.cycles()]
        return _make_stratum(True, orders)
    return _make_stratum(False, double_cover_orders(o))


def origami_genus(o: Origami) -> int:
    return stratum(o).genus


@dataclass(frozen=True)
class InvariantKey:
    """Everything the classical invariants can see of a component."""

    degree: int
    abelian: bool
    stratum: Stratum
    index: int
    valency: tuple[tuple[int, ...], ...]
    curve_genus: int


def invariant_key(
    comp: CurveComponent, c: Census, check_members: bool = False
) -> InvariantKey:
    reps = [c.classes[i].canonical_rep for i in comp.class_ids]
    strata = {stratum(reps[0])} if not check_members else {stratum(r) for r in reps}
    if len(strata) != 1:
        raise InvariantError(
            f"component {comp.component_id} members disagree on stratum: {strata}"
        )
    st = strata.pop()
    return InvariantKey(
        degree=c.degree,
        abelian=c.classes[comp.class_ids[0]].abelian,
        stratum=st,
        index=comp.index,
        valency=comp.valency,
        curve_genus=comp.genus,
    )


# Published summary table (class counts, component counts, curve genus
# range, ambiguous-key counts) used for the report's comparison section.
# The d=2 abelian class count is a known erratum in the published summary:
# the enumeration gives 3 pairwise non-isomorphic classes (the two cover
# maps of every origami are isomorphism invariants and separate them), and
# the classical count of index-2 torus covers is also 3.
PUBLISHED_SUMMARY = {
    1: {"classes": (1, 0), "components": (1, 0), "genus": ((0, 0), None), "ambiguous": (0, 0)},
    2: {"classes": (2, 1), "components": (1, 1), "genus": ((0, 0), (0, 0)), "ambiguous": (0, 0)},
    3: {"classes": (7, 4), "components": (2, 1), "genus": ((0, 0), (0, 0)), "ambiguous": (0, 0)},
    4: {"classes": (26, 34), "components": (5, 6), "genus": ((0, 0), (0, 0)), "ambiguous": (0, 0)},
    5: {"classes": (91, 227), "components": (8, 13), "genus": ((0, 0), (0, 0)), "ambiguous": (0, 0)},
    6: {"classes": (490, 2316), "components": (28, 88), "genus": ((0, 0), (0, 0)), "ambiguous": (1, 13)},
    7: {"classes": (2773, 26586), "components": (41, 88), "genus": ((0, 1), (0, 11)), "ambiguous": (5, 3)},
}

KNOWN_ERRATA = {
    (2, "classes", "abelian"): (
        "published summary says 2 abelian classes at degree 2; the honest "
        "enumeration gives 3 (the identity-x class is not isomorphic to the "
        "other two: isomorphism preserves the cycle types of both cover maps)"
    ),
    (7, "classes", "abelian"): (
        "published summary says 2773 abelian classes at degree 7; the honest "
        "count is 2785, confirmed by an independent enumeration of conjugacy "
        "classes of transitive permutation pairs modulo inverting both "
        "entries (4163 pair classes, 1407 inversion-fixed, quotient 2785); "
        "the same method reproduces the published 91 and 490 at degrees 5 "
        "and 6 exactly"
    ),
    (7, "classes", "non-abelian"): (
        "published summary says 26586 non-abelian classes at degree 7; the "
        "honest count is 26574 (the total 29359 agrees; 12 classes are "
        "abelian, see the abelian-count note)"
    ),
    (6, "ambiguous", "abelian"): (
        "published summary says 1 abelian case at degree 6 but omits a second "
        "one: stratum A3(4,4), index 9, two mirror-closed components with "
        "identical valency (3^3|2^4,1|4,3,2); confirmed by an independent "
        "orbit computation on the underlying translation-surface pairs "
        "(two disjoint orbits of 9 classes each)"
    ),
    (6, "ambiguous", "non-abelian"): (
        "published summary says 13 non-abelian cases at degree 6 but the "
        "published detail table itself lists 12 non-abelian rows (plus 1 "
        "abelian); the computed 12 agree with the detail table row by row"
    ),
}


def _mirror_component_map(
    comps: list[CurveComponent], action: ClassAction
) -> dict[int, int]:
    comp_of_class = {}
    for comp in comps:
        for i in comp.class_ids:
            comp_of_class[i] = comp.component_id
    out = {}
    for comp in comps:
        images = {comp_of_class[action.mirror[i]] for i in comp.class_ids}
        if len(images) != 1:
            raise InvariantError(
                f"mirror scatters component {comp.component_id} over {images}"
            )
        out[comp.component_id] = images.pop()
    return out


def _mirror_annotation(group_ids: list[int], mirror_map: dict[int, int]) -> str:
    if all(mirror_map[i] == i for i in group_ids):
        return "mirror-closed" + ("" if len(group_ids) == 1 else " (each)")
    pairs = []
    singles = []
    seen = set()
    for i in group_ids:
        if i in seen:
            continue
        j = mirror_map[i]
        if j != i and j in group_ids:
            pairs.append((i, j))
            seen.update((i, j))
        elif j == i:
            singles.append(i)
            seen.add(i)
        else:
            return (
                "unrecognized mirror pattern: "
                + ", ".join(f"{k}->{mirror_map[k]}" for k in group_ids)
            )
    parts = []
    if pairs:
        label = "mirror-conjugate pair" + ("s" if len(pairs) > 1 else "")
        parts.append(
            f"{label} " + ", ".join(f"({i},{j})" for i, j in pairs)
        )
    if singles:
        parts.append("mirror-closed " + ", ".join(map(str, singles)))
    return "; ".join(parts)


def galois_report(
    c: Census, action: ClassAction, comps: list[CurveComponent]
) -> dict:
    """Structured report: per-key component groups, ambiguous keys, summary
    row, and discrepancy notes against the published summary table."""
    d = c.degree
    keys = {comp.component_id: invariant_key(comp, c) for comp in comps}
    groups: dict[InvariantKey, list[int]] = {}
    for comp in comps:
        groups.setdefault(keys[comp.component_id], []).append(comp.component_id)
    mirror_map = _mirror_component_map(comps, action)

    def key_record(key: InvariantKey, ids: list[int]) -> dict:
        return {
            "abelian": key.abelian,
            "stratum": str(key.stratum),
            "index": key.index,
            "valency": valency_string(comps[ids[0]]),
            "curve_genus": key.curve_genus,
            "components": sorted(ids),
            "relationship": _mirror_annotation(sorted(ids), mirror_map),
        }

    ambiguous = [
        key_record(key, ids)
        for key, ids in sorted(
            groups.items(),
            key=lambda kv: (kv[0].abelian is False, kv[0].index, str(kv[0].stratum)),
        )
        if len(ids) >= 2
    ]
    n_ab_cl = sum(1 for cl in c.classes if cl.abelian)
    n_na_cl = len(c.classes) - n_ab_cl
    ab_comps = [comp for comp in comps if keys[comp.component_id].abelian]
    na_comps = [comp for comp in comps if not keys[comp.component_id].abelian]

    def genus_range(cs):
        if not cs:
            return None
        gs = [comp.genus for comp in cs]
        return (min(gs), max(gs))

    summary = {
        "degree": d,
        "classes": (n_ab_cl, n_na_cl),
        "components": (len(ab_comps), len(na_comps)),
        "genus": (genus_range(ab_comps), genus_range(na_comps)),
        "ambiguous": (
            sum(1 for r in ambiguous if r["abelian"]),
            sum(1 for r in ambiguous if not r["abelian"]),
        ),
    }
    notes = []
    pub = PUBLISHED_SUMMARY.get(d)
    if pub:
        for field in ("classes", "components", "genus", "ambiguous"):
            for j, kind in enumerate(("abelian", "non-abelian")):
                got = summary[field][j]
                want = pub[field][j]
                if got != want:
                    err = KNOWN_ERRATA.get((d, field, kind))
                    if err:
                        notes.append(f"known erratum ({field}, {kind}): {err}")
                    else:
                        notes.append(
                            f"computed {field} ({kind}) = {got} differs from "
                            f"published summary {want}; computed value reported"
                        )
    if d == 6:
        for r in ambiguous:
            if r["abelian"] and r["stratum"] == "A3(0,8)" and "pair" in r["relationship"]:
                notes.append(
                    "the published detail table annotates the A3(0,8) pair as "
                    "mirror-closed; the computed mirror map swaps the two "
                    "components (confirmed by an independent orbit computation "
                    "on the underlying translation-surface pairs)"
                )
    if d == 7:
        for r in ambiguous:
            if (
                not r["abelian"]
                and r["stratum"] == "Q4(12)"
                and len(r["components"]) != 2
            ):
                notes.append(
                    "the published detail table annotates the Q4(12) index-28 "
                    f"key as two curves; the computed key is shared by "
                    f"{len(r['components'])} components with identical "
                    "invariants"
                )
        notes.append(
            'the source text speaks of "9 cases" of possible conjugacy at '
            "degree 7 while its own table lists 8 rows (5 abelian + 3 "
            "non-abelian); the 8 rows are taken as ground truth"
        )
    return {"summary": summary, "ambiguous_keys": ambiguous, "notes": notes}


def render_report(report: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = StringIO()
        buf.write("no,kind,stratum,index,valency,curve_genus,components,relationship\n")
        for n, r in enumerate(report["ambiguous_keys"], 1):
            kind = "abelian" if r["abelian"] else "non-abelian"
            comps = " ".join(map(str, r["components"]))
            buf.write(
                f'{report["summary"]["degree"]}-{n},{kind},{r["stratum"]},'
                f'{r["index"]},"{r["valency"]}",{r["curve_genus"]},'
                f'"{comps}","{r["relationship"]}"\n'
            )
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    s = report["summary"]
    buf = StringIO()
    buf.write(f"degree {s['degree']}\n")
    buf.write(
        f"classes: abelian={s['classes'][0]} non-abelian={s['classes'][1]}\n"
    )
    buf.write(
        f"components: abelian={s['components'][0]} non-abelian={s['components'][1]}\n"
    )
    for j, kind in enumerate(("abelian", "non-abelian")):
        g = s["genus"][j]
        if g is not None:
            buf.write(f"curve genus ({kind}): {g[0]}..{g[1]}\n")
    buf.write(
        f"keys shared by >=2 components: abelian={s['ambiguous'][0]} "
        f"non-abelian={s['ambiguous'][1]}\n"
    )
    if report["ambiguous_keys"]:
        buf.write("\nshared invariant keys:\n")
        for n, r in enumerate(report["ambiguous_keys"], 1):
            kind = "abelian" if r["abelian"] else "non-abelian"
            buf.write(
                f"  {s['degree']}-{n}: {kind} {r['stratum']} index={r['index']} "
                f"valency={r['valency']} genus={r['curve_genus']} "
                f"components={r['components']} [{r['relationship']}]\n"
            )
    for note in report["notes"]:
        buf.write(f"\nNOTE: {note}\n")
    return buf.getvalue()
