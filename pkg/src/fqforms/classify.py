"""Class tables for definite binary forms of a fixed discriminant.

Every reduced definite binary form (a, b, c) with b^2 - ac = D has
deg a <= deg D / 2 and deg b < deg a, so the forms of discriminant
exactly D come from a finite enumeration with c = (b^2 - D)/a.

Reduced forms in one GL_2(A)-class differ by a constant transformation,
and equal exact discriminants force its determinant to be +-1, so the
class partition is the orbit partition under {U in GL_2(F_q) :
det U = +-1}, computed vectorized, and proper classes are SL_2(F_q)
orbits.  Genera group classes by their local data (Jordan invariants at
the divisors of D, Hasse symbol at infinity).

A class with discriminant u^2 D is carried to the table of D by rescaling
one variable, so tables over canonical discriminants (leading coefficient
1 or delta) cover every square class.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .ffpoly import SquareClass, factor, is_irreducible
from .localgenus import genus_symbol
from .qform import Form, Transformation, reduce, successive_minima


def is_definite_disc(d):
    """Whether a discriminant value belongs to definite forms."""
    if d.is_zero():
        return False
    if d.degree % 2 == 1:
        return True
    return not d.field.is_square(d.lc())


def enumerate_forms(field, disc, primitive_only=False):
    """All reduced definite binary forms with discriminant exactly `disc`."""
    if not is_definite_disc(disc):
        raise ValueError("discriminant is not definite-shaped")
    m = disc.degree
    out = []
    for deg_a in range(m // 2 + 1):
        for lead in range(1, field.q):
            for low in range(field.q**deg_a):
                a = field.poly_from_key(low + lead * field.q**deg_a)
                for bkey in range(field.q**deg_a):
                    b = field.poly_from_key(bkey)
                    c, rem = divmod(b * b - disc, a)
                    if not rem.is_zero():
                        continue
                    form = Form.binary(a, b, c)
                    if primitive_only and not form.is_primitive():
                        continue
                    out.append(form)
    return out


@functools.cache
def _unit_actions(q, dets):
    """Rows (alpha, beta, gamma, delta) over F_q with det in `dets`, plus the
    coefficient matrices acting on stacked (a, b, c) coefficient rows."""
    grid = np.indices((q, q, q, q)).reshape(4, -1).T.astype(np.int64)
    al, be, ga, de = grid.T
    det = (al * de - be * ga) % q
    keep = np.zeros(len(grid), dtype=bool)
    for d in dets:
        keep |= det == d % q
    al, be, ga, de = grid[keep].T
    w_a = np.stack([al * al, 2 * al * ga, ga * ga], axis=1) % q
    w_b = np.stack([al * be, al * de + be * ga, ga * de], axis=1) % q
    w_c = np.stack([be * be, 2 * be * de, de * de], axis=1) % q
    return grid[keep], w_a, w_b, w_c


def _reduced_orbit(form, q, dets):
    """Keys (a', b', c') of the reduced images of `form` under constant
    transformations with determinant in `dets`."""
    a, b, c = form.binary_coeffs()
    length = max(len(p.coeffs) for p in (a, b, c))
    rows = np.array(
        [list(p.coeffs) + [0] * (length - len(p.coeffs)) for p in (a, b, c)],
        dtype=np.int64,
    )
    _, w_a, w_b, w_c = _unit_actions(q, dets)
    im_a = w_a @ rows % q
    im_b = w_b @ rows % q
    im_c = w_c @ rows % q
    idx = np.arange(length, dtype=np.int64)
    deg_a = np.where(im_a != 0, idx, -1).max(axis=1)
    deg_b = np.where(im_b != 0, idx, -1).max(axis=1)
    deg_c = np.where(im_c != 0, idx, -1).max(axis=1)
    ok = (deg_b < deg_a) & (deg_a <= deg_c)
    powers = q ** np.arange(length, dtype=np.int64)
    keys = np.stack([im_a[ok] @ powers, im_b[ok] @ powers, im_c[ok] @ powers], axis=1)
    return {tuple(int(v) for v in row) for row in keys}


def _form_key(form):
    a, b, c = form.binary_coeffs()
    return (a.key(), b.key(), c.key())


@dataclass
class ClassTable:
    """Forms of one exact discriminant with their class partitions.

    `classes` and `proper_classes` are lists of sorted form-index lists;
    `genera` is a list of sorted class-index lists.  Orderings are
    canonical (by smallest member), so tables are deterministic.
    """

    field: object
    disc: object
    primitive_only: bool
    forms: list
    classes: list
    proper_classes: list
    genera: list

    @property
    def class_representatives(self):
        return [self.forms[cls[0]] for cls in self.classes]

    def class_index_of(self, form):
        """Index of the class containing a (definite, same-disc) form."""
        red, _ = reduce(form)
        key = _form_key(red)
        for i, cls in enumerate(self.classes):
            if any(_form_key(self.forms[j]) == key for j in cls):
                return i
        raise ValueError("form does not belong to this table")

    def genus_index_of_class(self, class_index):
        for g, members in enumerate(self.genera):
            if class_index in members:
                return g
        raise AssertionError("class missing from genus partition")

    def class_count_in_genus_of(self, form):
        g = self.genus_index_of_class(self.class_index_of(form))
        return len(self.genera[g])

    def proper_counts_per_genus(self):
        class_to_proper = {}
        for pi, pcls in enumerate(self.proper_classes):
            for ci, cls in enumerate(self.classes):
                if pcls[0] in cls:
                    class_to_proper.setdefault(ci, []).append(pi)
                    break
        return [
            sum(len(class_to_proper[ci]) for ci in genus) for genus in self.genera
        ]


def class_table(field, disc, primitive_only=False):
    """Classes, proper classes and genera of discriminant exactly `disc`."""
    return _class_table_cached(field, disc, primitive_only)


@functools.cache
def _class_table_cached(field, disc, primitive_only):
    if field.e != 1:
        raise NotImplementedError("class tables are computed over prime fields")
    forms = enumerate_forms(field, disc, primitive_only)
    index = {_form_key(f): i for i, f in enumerate(forms)}
    q = field.q
    unassigned = set(range(len(forms)))
    classes = []
    proper_classes = []
    while unassigned:
        seed = min(unassigned)
        orbit = _reduced_orbit(forms[seed], q, (1, -1))
        members = sorted(index[k] for k in orbit if k in index)
        sl_orbit = _reduced_orbit(forms[seed], q, (1,))
        proper = sorted(index[k] for k in sl_orbit if k in index)
        rest = sorted(set(members) - set(proper))
        classes.append(members)
        proper_classes.append(proper)
        if rest:
            proper_classes.append(rest)
        unassigned -= set(members)
    classes.sort(key=lambda cls: cls[0])
    proper_classes.sort(key=lambda cls: cls[0])
    by_symbol = {}
    for ci, cls in enumerate(classes):
        sym = genus_symbol(forms[cls[0]])
        by_symbol.setdefault(sym, []).append(ci)
    genera = sorted(by_symbol.values(), key=lambda g: g[0])
    return ClassTable(
        field=field,
        disc=disc,
        primitive_only=primitive_only,
        forms=forms,
        classes=classes,
        proper_classes=proper_classes,
        genera=genera,
    )


def canonical_disc(d):
    """The square-class representative with leading coefficient 1 or delta."""
    return SquareClass(d).rep


def canonical_discs(field, max_degree, exact_degree=None):
    """Canonical definite discriminants, ascending by (degree, key)."""
    degrees = (
        [exact_degree] if exact_degree is not None else list(range(max_degree + 1))
    )
    out = []
    for m in degrees:
        if m == 0:
            out.append(field.poly((field.delta,)))
            continue
        leads = (1, field.delta) if m % 2 else (field.delta,)
        for lead in leads:
            for low in range(field.q**m):
                out.append(field.poly_from_key(low + lead * field.q**m))
    return out


def rescale_to_canonical_disc(form):
    """An equivalent-by-variable-scaling form whose disc is canonical.

    Returns (form', scale u) with form' = form o diag(1, u); its disc is
    u^2 disc(form), the canonical square-class representative.
    """
    F = form.field
    d = form.discriminant()
    lead = d.lc()
    target = canonical_disc(d)
    ratio = F.mul(target.lc(), F.inv(lead))  # u^2
    u = _field_sqrt(F, ratio)
    scale = Transformation.from_scalars(F, [[1, 0], [0, u]])
    return scale.apply(form), u


def _field_sqrt(field, a):
    for r in range(1, field.q):
        if field.mul(r, r) == a:
            return r
    raise ValueError("element is not a square")


def class_number(form):
    """Number of classes in the genus of the form (within its exact disc)."""
    if form.n != 2 or not form.is_definite():
        raise ValueError("class numbers are computed for definite binary forms")
    table = class_table(form.field, form.discriminant(), form.is_primitive())
    return table.class_count_in_genus_of(form)


def proper_class_count(field, disc, primitive_only=True):
    """|G_D|: the number of proper classes of discriminant exactly `disc`."""
    return len(class_table(field, disc, primitive_only).proper_classes)


def cn1_prediction(form):
    """The three-condition class-number-one criterion (valid for q > 13)."""
    d = form.discriminant()
    if d.degree <= 1:
        return True
    if d.degree == 2:
        mu1 = successive_minima(form)[0]
        if mu1 == 1:
            return True
        return mu1 == 0 and not is_irreducible(d)
    return False


def cn1_classification(form):
    """(prediction, observed class number); prediction is None for q <= 13.

    The criterion: deg D <= 1, or deg D = 2 with mu_1 = 1, or deg D = 2
    with mu_1 = 0 and D reducible.
    """
    observed = class_number(form)
    if form.field.q <= 13:
        return None, observed
    return cn1_prediction(form), observed


def irreducible_factor_count(d):
    """Number of distinct irreducible factors (r in the genus-count 2^r)."""
    if d.degree == 0:
        return 0
    return len(factor(d)[1])
