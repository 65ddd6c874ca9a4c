"""Local invariants of forms over A = F_q[t] at the places of K = F_q(t).

Places are the monic irreducible polynomials plus INFINITY (uniformizer
1/t, residue field F_q).  All residue characteristics are odd, so the tame
Hilbert symbol formula applies everywhere and Jordan splittings need no
dyadic cases.

Local representability over the completion A_p is decided from the Jordan
diagonalization: a unit is represented iff the scale-0 residue form
represents it over the residue field, and p f descends to a recursion on
the lattice with every scale shifted down, since an anisotropic scale-0
residue form forces the scale-0 coordinates to vanish mod p.  A direct
search modulo p^(2N+1) with the Hensel gradient criterion is kept as a
cross-check oracle for small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetError
from .ffpoly import factor, invmod, is_irreducible, residue_char
from .qform import diagonal_square_classes


class _PlaceAtInfinity:
    def __repr__(self):
        return "INFINITY"


INFINITY = _PlaceAtInfinity()


def _check_finite_place(p):
    if p.lc() != 1 or not is_irreducible(p):
        raise ValueError("finite place must be a monic irreducible polynomial")


def _strip_valuation(f, p):
    """(v, u) with f = p^v * u and p not dividing u."""
    v = 0
    while True:
        quo, rem = divmod(f, p)
        if not rem.is_zero():
            return v, f
        f = quo
        v += 1


def hilbert_symbol(f, g, place):
    """Tame Hilbert symbol (f, g) at a place of F_q(t), as +1 or -1."""
    if f.is_zero() or g.is_zero():
        raise ValueError("Hilbert symbol requires nonzero arguments")
    F = f.field
    if place is INFINITY:
        alpha, beta = -f.degree, -g.degree
        cf, cg = F.char(f.lc()), F.char(g.lc())
        cm1 = F.char(F.neg(1))
    else:
        _check_finite_place(place)
        alpha, uf = _strip_valuation(f, place)
        beta, ug = _strip_valuation(g, place)
        cf = residue_char(uf, place)
        cg = residue_char(ug, place)
        cm1 = residue_char(-f.field.one, place)
    out = 1
    if beta % 2:
        out *= cf
    if alpha % 2:
        out *= cg
    if (alpha * beta) % 2:
        out *= cm1
    return out


def hasse_invariant(form, place):
    """Product of hilbert_symbol(d_i, d_j) over i < j for a diagonalization."""
    ds = diagonal_square_classes(form)
    out = 1
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            out *= hilbert_symbol(ds[i], ds[j], place)
    return out


@dataclass(frozen=True)
class JordanInvariant:
    """Jordan blocks at a finite place: (scale, rank, unit determinant char)."""

    blocks: tuple

    def __iter__(self):
        return iter(self.blocks)


def _jordan_diagonal(form, p):
    """p-adic diagonalization: [(scale, unit-part char), ...], scales ascending.

    Works modulo p^N with N = v_p(disc) + 2, enough precision for every
    pivot since pivot valuations sum to at most v_p(disc).
    """
    F = form.field
    n = form.n
    disc_val, _ = _strip_valuation(form.discriminant(), p)
    prec = disc_val + 2
    pn = p**prec

    def val(x):
        if x.is_zero():
            return prec
        return _strip_valuation(x, p)[0]

    m = [[e % pn for e in row] for row in form.gram]
    active = list(range(n))
    out = []
    while active:
        vals = {(i, j): val(m[i][j]) for i in active for j in active if i <= j}
        (bi, bj), best = min(vals.items(), key=lambda kv: (kv[1], kv[0]))
        if best >= prec:
            raise AssertionError("insufficient p-adic precision")
        if bi != bj:
            # push the minimum onto the diagonal: row/col add, odd residue char
            for k in active:
                m[bi][k] = (m[bi][k] + m[bj][k]) % pn
            for k in active:
                m[k][bi] = (m[k][bi] + m[k][bj]) % pn
        s = val(m[bi][bi])
        unit = m[bi][bi] // p**s
        inv_unit = invmod(unit, p ** (prec - s))
        out.append((s, residue_char(unit, p)))
        rest = [k for k in active if k != bi]
        # Schur complement m[k][l] - m[k][bi] m[bi][l] / pivot, symmetric
        for k in rest:
            fk = ((m[k][bi] // p**s) * inv_unit) % pn
            for l in rest:
                m[k][l] = (m[k][l] - fk * m[bi][l]) % pn
        active = rest
    out.sort()
    return out


def jordan_invariants(form, p):
    """Blocks (scale, rank, char of unit-block determinant), scales ascending."""
    _check_finite_place(p)
    diag = _jordan_diagonal(form, p)
    blocks = []
    for s, ch in diag:
        if blocks and blocks[-1][0] == s:
            blocks[-1][1] += 1
            blocks[-1][2] *= ch
        else:
            blocks.append([s, 1, ch])
    return JordanInvariant(tuple(tuple(b) for b in blocks))


@dataclass(frozen=True)
class GenusSymbol:
    """Exact discriminant, Jordan data at each divisor of disc, and the
    data at infinity (disc degree parity, disc leading char, Hasse symbol)."""

    disc_key: int
    finite: tuple  # ((place key, JordanInvariant), ...) sorted by place key
    infinity: tuple


def genus_symbol(form):
    d = form.discriminant()
    places = [p for p, _ in factor(d)[1]]
    finite = tuple(
        sorted((p.key(), jordan_invariants(form, p)) for p in places)
    )
    F = form.field
    inf = (d.degree % 2, F.char(d.lc()), hasse_invariant(form, INFINITY))
    return GenusSymbol(d.key(), finite, inf)


def same_genus(q1, q2):
    """Equal exact discriminant plus equal local data everywhere."""
    if q1.field != q2.field or q1.n != q2.n:
        return False
    if q1.discriminant() != q2.discriminant():
        return False
    return genus_symbol(q1) == genus_symbol(q2)


# -- local representability ------------------------------------------------

class LocalRepDecider:
    """Representability over A_p with the Jordan data computed once."""

    def __init__(self, form, p):
        _check_finite_place(p)
        self.place = p
        self.entries = _jordan_diagonal(form, p)
        self.chi_minus1 = residue_char(-form.field.one, p)

    def __call__(self, f):
        if f.is_zero():
            return True
        m, w = _strip_valuation(f, self.place)
        return _descend(self.entries, m, residue_char(w, self.place), self.chi_minus1)


def local_represents(form, f, p):
    """Whether f is represented by the form over the completion A_p."""
    return LocalRepDecider(form, p)(f)


def represented_at_infinity(form, f):
    """Whether f is represented by the form over K_inf = F_q((1/t)).

    For anisotropic Q and f != 0 this is the isotropy of Q + <-f>, i.e.
    the extended form failing to be definite.  Rank-4 anisotropic forms
    represent every class, so extending them is never needed here.
    """
    from .qform import Form

    if f.is_zero():
        return True
    if not form.is_definite():
        return True
    if form.n == 4:
        return True  # the 4-dim anisotropic space over K_inf is universal
    F = form.field
    n = form.n
    gram = [list(row) + [F.zero] for row in form.gram]
    gram.append([F.zero] * n + [-f])
    return not Form(tuple(tuple(row) for row in gram)).is_definite()


def _descend(entries, m, chi_w, chi_m1):
    sigma = min(s for s, _ in entries)
    if m < sigma:
        return False
    if sigma:
        entries = [(s - sigma, ch) for s, ch in entries]
        m -= sigma
    scale0 = [ch for s, ch in entries if s == 0]
    if m == 0:
        # a unit is represented iff the scale-0 residue form represents it
        return len(scale0) >= 2 or scale0[0] * chi_w == 1
    if len(scale0) >= 3:
        return True
    if len(scale0) == 2 and chi_m1 * scale0[0] * scale0[1] == 1:
        return True  # isotropic residue form lifts to a hyperbolic plane
    # anisotropic scale-0 residue: those coordinates vanish mod p; divide by p
    return _descend(
        [(1 if s == 0 else s - 1, ch) for s, ch in entries], m - 1, chi_w, chi_m1
    )


def local_represents_search(form, f, p, budget=300_000):
    """Direct decision by search modulo p^(2N+1), N = v_p(disc) + v_p(f) + 1.

    Accepts iff some x has Q(x) = f mod p^(2N+1) with gradient valuation
    <= N (a Hensel-liftable approximate solution).  Exponential in deg p
    and N; intended as a cross-check oracle on small instances.  At the
    place t the vector grid is evaluated with the repset machinery.
    """
    _check_finite_place(p)
    F = form.field
    if f.is_zero():
        return True
    disc_val, _ = _strip_valuation(form.discriminant(), p)
    fval, _ = _strip_valuation(f, p)
    cap = disc_val + fval + 1
    residue_count = F.q ** (p.degree * (2 * cap + 1))
    if residue_count**form.n > budget:
        raise BudgetError(
            f"local search needs {residue_count**form.n} vectors (budget {budget})"
        )
    if p.degree == 1 and F.e == 1:
        if p != F.t:
            form, f = _shift_to_origin(form, f, p)
        return _search_at_t(form, f, cap)
    return _search_generic(form, f, p, cap)


def _shift_to_origin(form, f, p):
    """Apply the automorphism t -> t + r that maps the place p = t - r to t."""
    from .qform import Form

    F = f.field
    arg = F.t + F.poly((F.neg(p.coeffs[0]),))

    def sub(g):
        acc = F.zero
        for c in reversed(g.coeffs):
            acc = acc * arg + c
        return acc

    return Form(tuple(tuple(sub(e) for e in row) for row in form.gram)), sub(f)


def _grad_valuation(form, vec, p, top):
    vals = []
    for i in range(form.n):
        acc = form.field.zero
        for j in range(form.n):
            acc = acc + 2 * form.gram[i][j] * vec[j]
        acc = acc % p**top
        vals.append(top if acc.is_zero() else _strip_valuation(acc, p)[0])
    return min(vals)


def _search_generic(form, f, p, cap):
    F = form.field
    modulus = p ** (2 * cap + 1)
    residues = [F.poly_from_key(k) for k in range(F.q ** (p.degree * (2 * cap + 1)))]
    for vec in itertools.product(residues, repeat=form.n):
        if (form.value(vec) - f) % modulus:
            continue
        if _grad_valuation(form, vec, p, 2 * cap + 1) <= cap:
            return True
    return False


def _search_at_t(form, f, cap):
    import numpy as np

    from .repset import _Grid

    F = form.field
    q = F.q
    length = 2 * cap + 1
    modkey = q**length
    target = f.key() % modkey
    grid = _Grid(form, (length - 1,) * form.n, budget=float("inf"))
    t = F.t
    for tail in grid.tails():
        keys = grid.keys_for_tail(tail) % modkey
        for ix, iy in np.argwhere(keys == target):
            vec = [F.poly_from_key(int(ix)), F.poly_from_key(int(iy))] + [
                F.poly_from_key(z) for z in tail
            ]
            if _grad_valuation(form, vec, t, length) <= cap:
                return True
    return False
