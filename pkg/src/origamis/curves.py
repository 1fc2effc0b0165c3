"""Teichmueller-curve components and their combinatorial invariants.

Components are the orbits of class ids under the group generated by the two
class permutations phi_T and phi_S.  For each component we compute the
valency lists (cycle types, restricted to the component, of the order-3
element S.T, of S, and of T whose cycles are the cusps), the curve genus
from the cycle counts, and Veech-group data (coset representative words and
Schreier generators over the alphabet {T, S}).
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import ClassAction


@dataclass(frozen=True)
class CurveComponent:
    """One orbit of the modular-group action on classes."""

    component_id: int
    class_ids: tuple[int, ...]  # sorted ascending
    index: int  # orbit size = index of the Veech group
    valency_u: tuple[int, ...]  # cycle type of the order-3 element, desc
    valency_s: tuple[int, ...]  # cycle type of phi_S, desc
    valency_t: tuple[int, ...]  # cycle type of phi_T (cusps), desc
    genus: int

    @property
    def cusp_widths(self) -> tuple[int, ...]:
        return self.valency_t

    @property
    def valency(self) -> tuple[tuple[int, ...], ...]:
        return (self.valency_u, self.valency_s, self.valency_t)


@dataclass(frozen=True)
class VeechData:
    """Reidemeister-Schreier data for the stabilizer of the base class."""

    base: int
    representatives: dict[int, str]  # class_id -> word over {T, S}
    generators: tuple[str, ...]  # words over {T, S, t, s} (lowercase = inverse)


class ActionRelationError(RuntimeError):
    """The action tables violate a modular-group relation."""


def _cycle_type_on(perm: tuple[int, ...], members: tuple[int, ...]) -> tuple[int, ...]:
    member_set = set(members)
    seen = set()
    lengths = []
    for start in members:
        if start in seen:
            continue
        n = 0
        j = start
        while j not in seen:
            if j not in member_set:
                raise ActionRelationError(
                    f"permutation leaves the component through class {j}"
                )
            seen.add(j)
            n += 1
            j = perm[j]
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def _order3(action: ClassAction) -> tuple[int, ...]:
    """The order-3 composition of phi_S and phi_T, verified."""
    st = tuple(action.phi_S[action.phi_T[i]] for i in range(action.size))
    cube = tuple(st[st[st[i]]] for i in range(action.size))
    if cube != tuple(range(action.size)):
        raise ActionRelationError("(S.T)^3 is not the identity")
    return st


def components(action: ClassAction) -> list[CurveComponent]:
    """Orbits of class ids under <phi_T, phi_S>, ordered by smallest member."""
    n = action.size
    st = _order3(action)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        stack = [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            orbit.append(i)
            for j in (action.phi_T[i], action.phi_S[i]):
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        ids = tuple(sorted(orbit))
        vu = _cycle_type_on(st, ids)
        vs = _cycle_type_on(action.phi_S, ids)
        vt = _cycle_type_on(action.phi_T, ids)
        out.append(
            CurveComponent(
                component_id=len(out),
                class_ids=ids,
                index=len(ids),
                valency_u=vu,
                valency_s=vs,
                valency_t=vt,
                genus=curve_genus(len(ids), vu, vs, vt),
            )
        )
    return out


def curve_genus(index: int, *valencies: tuple[int, ...]) -> int:
    """Genus of the curve from the three cycle types: 1 + (index - n)/2
    with n the total number of cycles."""
    n = sum(len(v) for v in valencies)
    if (index - n) % 2:
        raise ActionRelationError(
            f"index {index} minus cycle count {n} is odd; valency data corrupt"
        )
    g = 1 + (index - n) // 2
    if g < 0:
        raise ActionRelationError(f"negative curve genus from index {index}, n {n}")
    return g


def valency_string(comp: CurveComponent) -> str:
    """Table-style rendering ``(3^5|2^7,1|5,4,3^2)``."""

    def part(v: tuple[int, ...]) -> str:
        out = []
        i = 0
        while i < len(v):
            j = i
            while j < len(v) and v[j] == v[i]:
                j += 1
            out.append(f"{v[i]}^{j - i}" if j - i > 1 else str(v[i]))
            i = j
        return ",".join(out)

    return "(" + "|".join(part(v) for v in comp.valency) + ")"


def veech_data(comp: CurveComponent, action: ClassAction, base: int | None = None) -> VeechData:
    """Coset representatives and Schreier generators for the stabilizer of
    the base class (default: smallest class id in the component).

    Breadth-first over generator letters T then S; generator words use
    lowercase letters for inverses.  Every emitted generator fixes base.
    """
    if base is None:
        base = comp.class_ids[0]
    if base not in comp.class_ids:
        raise ValueError(f"base {base} not in component {comp.component_id}")
    tables = {"T": action.phi_T, "S": action.phi_S}
    reps = {base: ""}
    queue = [base]
    while queue:
        nxt = []
        for i in queue:
            for letter in ("T", "S"):
                j = tables[letter][i]
                if j not in reps:
                    reps[j] = reps[i] + letter
                    nxt.append(j)
        queue = nxt
    inverse_letter = {"T": "t", "S": "s"}

    def word_inverse(w: str) -> str:
        return "".join(inverse_letter[ch] for ch in reversed(w))

    gens = []
    for i in sorted(reps):
        for letter in ("T", "S"):
            j = tables[letter][i]
            word = reps[i] + letter + word_inverse(reps[j])
            if reps[j] == reps[i] + letter:
                continue  # spanning-tree edge, trivial generator
            gens.append(word)
    return VeechData(base=base, representatives=reps, generators=tuple(gens))


def apply_word(action: ClassAction, word: str, class_id: int) -> int:
    """Apply a word over {T, S, t, s} (left to right) to a class id."""
    inv_t = [0] * action.size
    inv_s = [0] * action.size
    for i in range(action.size):
        inv_t[action.phi_T[i]] = i
        inv_s[action.phi_S[i]] = i
    tables = {"T": action.phi_T, "S": action.phi_S, "t": inv_t, "s": inv_s}
    for ch in word:
        class_id = tables[ch][class_id]
    return class_id


def export_diagram(comp: CurveComponent, action: ClassAction) -> str:
    """Graphviz text for the component: one node per fundamental-domain
    copy (= class), solid directed T edges, dashed S edges, with cusp
    widths annotated."""
    lines = [
        f"digraph component_{comp.component_id} {{",
        f'  label="component {comp.component_id}: index={comp.index} '
        f'genus={comp.genus} cusps={",".join(map(str, comp.valency_t))}";',
    ]
    for i in comp.class_ids:
        lines.append(f'  c{i} [label="{i}"];')
    for i in comp.class_ids:
        lines.append(f'  c{i} -> c{action.phi_T[i]} [label="T"];')
    for i in comp.class_ids:
        j = action.phi_S[i]
        if i <= j:
            lines.append(f'  c{i} -> c{j} [label="S", dir=none, style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
