"""Action of the modular-group generators T, S and the mirror map on classes.

All three maps are computed on the canonical double cover of a class
representative and read back with restore:

* T (shear): the new vertical cover map is yhat o xhat conjugated by the
  recut relabeling kappa (kappa fixes positive labels, kappa(-i) = -x^-1(i));
  x is unchanged.
* S (quarter turn): relabel sheets by the sign vector delta that makes yhat
  sign-preserving (delta is the sign part of restore(yhat)); the positive
  part of the relabeled yhat is the new x, the relabeled xhat^-1 is the new
  vertical cover map.
* mirror (horizontal flip): invert x, keep (y, eps).

After each transform x is conjugated back to canonical form and the result
is looked up in the census.  The group relations (S^2 = 1, (ST)^3 = 1,
mirror^2 = 1, mirror.T.mirror = T^-1) and independence of the chosen class
member are enforced by the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classify import Census, find_class
from .model import CoverMap, Origami, double_cover, restore
from .perms import Permutation, SignVector, conjugate


def canonical_conjugator(x: Permutation) -> Permutation:
    """The relabeling sigma such that sigma # x is in canonical
    consecutive-block form: cycles sorted by length descending then by
    smallest element, each cycle numbered from its smallest element."""
    cycs = x.cycles()
    cycs.sort(key=lambda c: (-len(c), c[0]))
    images = [0] * x.degree
    label = 1
    for cyc in cycs:
        for a in cyc:
            images[a - 1] = label
            label += 1
    return Permutation(tuple(images))


def _relabel(x: Permutation, y: Permutation, eps: SignVector) -> Origami:
    """Conjugate the triple so x becomes canonical."""
    sig = canonical_conjugator(x)
    sig_inv = sig.inverse()
    return Origami(
        conjugate(sig, x),
        conjugate(sig, y),
        SignVector(tuple(eps(sig_inv(i)) for i in range(1, x.degree + 1))),
    )


def transform_T(o: Origami) -> Origami:
    """Decompose o in the sheared direction pair (horizontal, diagonal).

    Shearing keeps the horizontal gluing and composes the vertical cover
    map with the horizontal one; regrouping the sheared half-squares into
    unit squares relabels the cover by kappa with kappa(i) = i and
    kappa(-i) = -x^-1(i), which carries the deck involution of the recut
    cover back to i -> -i so that restore applies.
    """
    d = o.degree
    cov = double_cover(o)
    comp = cov.yhat.compose(cov.xhat)
    xinv = o.x.inverse()
    kappa = CoverMap.from_images(
        {**{i: i for i in range(1, d + 1)}, **{-i: -xinv(i) for i in range(1, d + 1)}},
        d,
    )
    y_t, eps_t = restore(kappa.compose(comp).compose(kappa.inverse()))
    return Origami(o.x, y_t, eps_t)


def transform_S(o: Origami) -> Origami:
    """Quarter turn: x and y trade places with one inversion.

    First pass: walk the vertical cylinders collecting the sheet sign per
    cell (exactly restore(yhat)); relabeling the cover sheets by that sign
    vector makes yhat sign-preserving, and its positive part is the new
    horizontal gluing.  Second pass: the relabeled xhat^-1 is the new
    vertical cover map; restore it and conjugate the new x to canonical
    form.
    """
    d = o.degree
    cov = double_cover(o)
    x_s, delta = restore(cov.yhat)
    sigma_delta = CoverMap.from_images(
        {s * i: s * delta(i) * i for i in range(1, d + 1) for s in (1, -1)}, d
    )
    y_s, eps_s = restore(sigma_delta.compose(cov.xhat.inverse()).compose(sigma_delta))
    return _relabel(x_s, y_s, eps_s)


def transform_mirror(o: Origami) -> Origami:
    """Horizontal flip: invert x, keep (y, eps), restore canonical form."""
    return _relabel(o.x.inverse(), o.y, o.eps)


def act_T(c: Census, class_id: int) -> int:
    return find_class(c, transform_T(c.classes[class_id].canonical_rep))


def act_S(c: Census, class_id: int) -> int:
    return find_class(c, transform_S(c.classes[class_id].canonical_rep))


def act_mirror(c: Census, class_id: int) -> int:
    return find_class(c, transform_mirror(c.classes[class_id].canonical_rep))


@dataclass(frozen=True)
class ClassAction:
    """The three class-id tables for one census degree."""

    degree: int
    phi_T: tuple[int, ...]
    phi_S: tuple[int, ...]
    mirror: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.phi_T)


def build_action(c: Census) -> ClassAction:
    phi_t = []
    phi_s = []
    mir = []
    for cl in c.classes:
        rep = cl.canonical_rep
        phi_t.append(find_class(c, transform_T(rep)))
        phi_s.append(find_class(c, transform_S(rep)))
        mir.append(find_class(c, transform_mirror(rep)))
    return ClassAction(c.degree, tuple(phi_t), tuple(phi_s), tuple(mir))
