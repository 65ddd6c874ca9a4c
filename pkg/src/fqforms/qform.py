"""Quadratic forms over A = F_q[t] of rank 2..4.

A form is stored by its symmetric Gram matrix M = (m_ij), so that
Q(x) = sum m_ij x_i x_j with off-diagonal contributions counted twice;
the binary shorthand (a, b, c) means a X^2 + 2b X Y + c Y^2.  q odd makes
halving safe everywhere.

Reduction follows the degree-based analogue of Gauss reduction: a form is
reduced when deg m_ii <= deg m_jj for i <= j and deg m_ij < deg m_ii for
i < j.  Every definite form is equivalent to a reduced one, and two
reduced forms in one GL_n(A)-class differ by a constant transformation in
GL_n(F_q), which keeps the equivalence search finite.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import CapabilityError
from .ffpoly import SquareClass

_REDUCE_CAP = 10_000


# -- small matrices of polynomials ---------------------------------------

def _mat_identity(field, n):
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )

def _mat_transpose(m):
    return tuple(zip(*m))

def _mat_mul(a, b):
    n, mid, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for k in range(1, mid):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)

def _mat_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = None
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in m[1:])
        term = m[0][j] * _mat_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc

def _mat_adjugate(m):
    n = len(m)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                r[:j] + r[j + 1 :] for k, r in enumerate(m) if k != i
            )
            term = _mat_det(minor) if n > 1 else m[0][0].field.one
            if (i + j) % 2:
                term = -term
            row.append(term)
        cof.append(tuple(row))
    return _mat_transpose(tuple(cof))


class Transformation:
    """A change of variables in GL_n(A): matrix over A with constant unit det."""

    __slots__ = ("field", "matrix", "det")

    def __init__(self, field, matrix):
        self.field = field
        self.matrix = tuple(tuple(row) for row in matrix)
        d = _mat_det(self.matrix)
        if d.degree != 0:
            raise ValueError("transformation determinant is not a unit of F_q")
        self.det = d.coeffs[0]

    @classmethod
    def identity(cls, field, n):
        return cls(field, _mat_identity(field, n))

    @classmethod
    def from_scalars(cls, field, rows):
        return cls(field, [[field.constant(c) for c in row] for row in rows])

    def __matmul__(self, other):
        return Transformation(self.field, _mat_mul(self.matrix, other.matrix))

    def inverse(self):
        F = self.field
        inv = F.poly((F.inv(self.det),))
        adj = _mat_adjugate(self.matrix)
        return Transformation(F, [[e * inv for e in row] for row in adj])

    def apply(self, form):
        """The transported form Q o T, with Gram matrix T^t M T."""
        mt = _mat_transpose(self.matrix)
        return Form(_mat_mul(mt, _mat_mul(form.gram, self.matrix)))

    def __eq__(self, other):
        return isinstance(other, Transformation) and self.matrix == other.matrix

    def __repr__(self):
        rows = "; ".join(
            ", ".join(str(e) for e in row) for row in self.matrix
        )
        return f"Transformation([{rows}])"


class Form:
    """Nondegenerate quadratic form over F_q[t], rank 2..4."""

    __slots__ = ("field", "gram", "n")

    def __init__(self, gram):
        gram = tuple(tuple(row) for row in gram)
        n = len(gram)
        if not 2 <= n <= 4 or any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square of rank 2..4")
        self.field = gram[0][0].field
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if _mat_det(gram).is_zero():
            raise ValueError("degenerate form")
        self.gram = gram
        self.n = n

    @classmethod
    def binary(cls, a, b, c):
        return cls(((a, b), (b, c)))

    @classmethod
    def diagonal(cls, entries):
        F = entries[0].field
        n = len(entries)
        return cls(
            tuple(
                tuple(entries[i] if i == j else F.zero for j in range(n))
                for i in range(n)
            )
        )

    def binary_coeffs(self):
        if self.n != 2:
            raise ValueError("not a binary form")
        return self.gram[0][0], self.gram[0][1], self.gram[1][1]

    def value(self, vec):
        """Q(x) for a coordinate vector of polynomials."""
        acc = self.field.zero
        for i in range(self.n):
            for j in range(self.n):
                acc = acc + self.gram[i][j] * vec[i] * vec[j]
        return acc

    def bilinear(self, u, v):
        """The associated bilinear form u^t M v."""
        acc = self.field.zero
        for i in range(self.n):
            for j in range(self.n):
                acc = acc + self.gram[i][j] * u[i] * v[j]
        return acc

    def discriminant(self):
        """(-1)^(n(n-1)/2) det(M); equals b^2 - ac for binary forms."""
        d = _mat_det(self.gram)
        if (self.n * (self.n - 1) // 2) % 2:
            d = -d
        return d

    def disc_class(self):
        return SquareClass(self.discriminant())

    def is_definite(self):
        """Anisotropy over F_q((1/t)), decided at the infinite place."""
        if self.n == 2:
            d = self.discriminant()
            if d.degree % 2 == 1:
                return True
            return not self.field.is_square(d.lc())
        groups = {0: [], 1: []}
        for d in diagonal_square_classes(self):
            groups[d.degree % 2].append(d.lc())
        return all(_residue_anisotropic(self.field, g) for g in groups.values())

    def content(self):
        """Monic gcd of all Gram entries."""
        from .ffpoly import gcd

        acc = None
        for row in self.gram:
            for e in row:
                if not e.is_zero():
                    acc = e if acc is None else gcd(acc, e)
        return acc.monic()

    def is_primitive(self):
        return self.content().degree == 0

    def primitive_part(self):
        """(Q/content, content)."""
        c = self.content()
        if c.degree == 0:
            return self, c
        return Form(tuple(tuple(e // c for e in row) for row in self.gram)), c

    def is_reduced(self):
        g = self.gram
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if g[i][i].degree > g[j][j].degree:
                    return False
                if g[i][j].degree >= g[i][i].degree:
                    return False
        return True

    def key(self):
        """Packed integer identifying the form within its field and rank."""
        out = 0
        for i in range(self.n):
            for j in range(i, self.n):
                out = (out << 48) | self.gram[i][j].key()
        return out

    def __eq__(self, other):
        return isinstance(other, Form) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"Form({form_to_string(self)!r})"


def _residue_anisotropic(field, lcs):
    # rank 0/1 residue forms are anisotropic; rank 2 <u, v> iff -uv non-square
    if len(lcs) <= 1:
        return True
    if len(lcs) == 2:
        return field.char(field.neg(field.mul(lcs[0], lcs[1]))) == -1
    return False


def diagonal_square_classes(form):
    """Diagonalization of Q over K = F_q(t), as square-class representatives.

    Entry i is a polynomial representing d_i in K^x / K^x2 (numerators times
    denominators, so ratios never appear).
    """
    F = form.field
    m = [list(row) for row in form.gram]
    out = []
    scale = F.one  # square-class of the denominator accumulated so far
    n = form.n
    for _ in range(n):
        k = len(out)
        pivot = next((i for i in range(k, n) if not m[i][i].is_zero()), None)
        if pivot is None:
            i, j = next(
                (i, j)
                for i in range(k, n)
                for j in range(k, n)
                if not m[i][j].is_zero()
            )
            for col in range(k, n):
                m[i][col] = m[i][col] + m[j][col]
            for row in range(k, n):
                m[row][i] = m[row][i] + m[row][j]
            pivot = i
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            for row in m:
                row[k], row[pivot] = row[pivot], row[k]
        d = m[k][k]
        out.append(d * scale)
        # complement: M'[r][c] = d*M[r][c] - M[r][k]*M[k][c], a form equal to M/d
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = d * m[r][c] - m[r][k] * m[k][c]
        scale = scale * d
    return out


# -- reduction -----------------------------------------------------------

def reduce(form):
    """(R, T) with R reduced, T in GL_n(A) and Q o T = R exactly.

    Requires a definite form; the shear loop need not terminate otherwise.
    """
    if not form.is_definite():
        raise ValueError("reduction requires a definite form")
    if form.n == 2:
        return _reduce_binary(form)
    return _reduce_higher(form)


def _reduce_binary(form):
    F = form.field
    a, b, c = form.binary_coeffs()
    t = Transformation.identity(F, 2)
    swap = Transformation.from_scalars(F, [[0, 1], [1, 0]])
    for _ in range(_REDUCE_CAP):
        if b.degree < a.degree <= c.degree:
            red = Form.binary(a, b, c)
            return red, t
        if a.degree > c.degree:
            a, c = c, a
            t = t @ swap
        elif b.degree >= a.degree:
            k, r = divmod(b, a)
            c = c - k * (b + r)  # c - k(2b - ka)
            b = r
            t = t @ Transformation(F, ((F.one, -k), (F.zero, F.one)))
    raise AssertionError("binary reduction did not terminate")

def _reduce_higher(form):
    F = form.field
    n = form.n
    m = [list(row) for row in form.gram]
    t = Transformation.identity(F, n)
    for _ in range(_REDUCE_CAP):
        order = sorted(range(n), key=lambda i: (m[i][i].degree, i))
        if order != list(range(n)):
            perm = [[F.one if order[j] == i else F.zero for j in range(n)] for i in range(n)]
            pt = Transformation(F, perm)
            t = t @ pt
            m = [list(row) for row in pt.apply(Form(tuple(map(tuple, m)))).gram]
            continue
        sheared = False
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j].degree >= m[i][i].degree:
                    k = m[i][j] // m[i][i]
                    el = [[F.one if r == c else F.zero for c in range(n)] for r in range(n)]
                    el[i][j] = -k
                    et = Transformation(F, el)
                    t = t @ et
                    m = [list(row) for row in et.apply(Form(tuple(map(tuple, m)))).gram]
                    sheared = True
                    break
            if sheared:
                break
        if not sheared:
            red = Form(tuple(map(tuple, m)))
            return red, t
    raise AssertionError("reduction did not terminate; non-definite input?")


def successive_minima(form):
    """Increasing degrees of the diagonal of a reduced representative."""
    red, _ = reduce(form)
    return tuple(red.gram[i][i].degree for i in range(form.n))


# -- equivalence ----------------------------------------------------------

def _poly_rows(polys, length):
    return np.array(
        [list(p.coeffs) + [0] * (length - len(p.coeffs)) for p in polys],
        dtype=np.int64,
    )

def _constant_witnesses_binary(r1, r2):
    """All U in GL_2(F_q) with U^t M1 U = M2, as (alpha, beta, gamma, delta)."""
    F = r1.field
    q = F.q
    if F.e != 1:
        return _constant_witnesses_generic(r1, r2)
    a, b, c = r1.binary_coeffs()
    a2, b2, c2 = r2.binary_coeffs()
    length = max(
        len(p.coeffs) for p in (a, b, c, a2, b2, c2)
    )
    pmat = _poly_rows([a, b, c], length)
    targets = _poly_rows([a2, b2, c2], length)
    pairs = np.indices((q, q)).reshape(2, -1).T  # rows (x, y)
    x, y = pairs[:, 0], pairs[:, 1]
    w = np.stack([x * x % q, 2 * x * y % q, y * y % q], axis=1)
    vals = w @ pmat % q
    first = pairs[(vals == targets[0]).all(axis=1)]
    second = pairs[(vals == targets[2]).all(axis=1)]
    if len(first) == 0 or len(second) == 0:
        return []
    al, ga = first[:, 0][:, None], first[:, 1][:, None]
    be, de = second[:, 0][None, :], second[:, 1][None, :]
    wb = np.stack(
        [al * be % q, (al * de + be * ga) % q, ga * de % q], axis=2
    ).reshape(-1, 3)
    ok = (wb @ pmat % q == targets[1]).all(axis=1)
    dets = (al * de - be * ga) % q
    ok &= (dets != 0).reshape(-1)
    ii, jj = np.nonzero(ok.reshape(len(first), len(second)))
    return [
        (int(first[i][0]), int(second[j][0]), int(first[i][1]), int(second[j][1]))
        for i, j in zip(ii, jj)
    ]

def _constant_witnesses_generic(r1, r2):
    # plain search, used for extension fields (never on hot paths)
    F = r1.field
    out = []
    for flat in itertools.product(F.elements(), repeat=r1.n * r1.n):
        rows = [flat[i * r1.n : (i + 1) * r1.n] for i in range(r1.n)]
        try:
            u = Transformation.from_scalars(F, rows)
        except ValueError:
            continue
        if u.apply(r1) == r2:
            out.append(tuple(flat))
    return out

def _constant_witnesses_ternary(r1, r2):
    F = r1.field
    q = F.q
    if q > 7:
        raise CapabilityError(
            f"rank-3 equivalence search is GL_3(F_q)-exhaustive (~q^9); q={q} > 7"
        )
    g1, g2 = r1.gram, r2.gram
    length = max(
        max(len(e.coeffs) for e in row) for g in (g1, g2) for row in g
    )
    pmat = _poly_rows(
        [g1[0][0], g1[1][1], g1[2][2], g1[0][1], g1[0][2], g1[1][2]], length
    )
    vecs = np.indices((q, q, q)).reshape(3, -1).T
    x, y, z = vecs[:, 0], vecs[:, 1], vecs[:, 2]
    w = np.stack(
        [x * x, y * y, z * z, 2 * x * y, 2 * x * z, 2 * y * z], axis=1
    ) % q
    vals = w @ pmat % q

    def matches(target):
        row = _poly_rows([target], length)[0]
        return vecs[(vals == row).all(axis=1)]

    c1 = matches(g2[0][0])
    c2 = matches(g2[1][1])
    c3 = matches(g2[2][2])
    tb12 = _poly_rows([g2[0][1]], length)[0]
    tb13 = _poly_rows([g2[0][2]], length)[0]
    tb23 = _poly_rows([g2[1][2]], length)[0]

    def bil(u, v):
        w = np.stack(
            [
                u[:, 0] * v[0],
                u[:, 1] * v[1],
                u[:, 2] * v[2],
                u[:, 0] * v[1] + u[:, 1] * v[0],
                u[:, 0] * v[2] + u[:, 2] * v[0],
                u[:, 1] * v[2] + u[:, 2] * v[1],
            ],
            axis=1,
        ) % q
        return w @ pmat % q

    out = []
    for u2 in c2:
        m12 = c1[(bil(c1, u2) == tb12).all(axis=1)]
        if len(m12) == 0:
            continue
        m23 = c3[(bil(c3, u2) == tb23).all(axis=1)]
        if len(m23) == 0:
            continue
        for u1 in m12:
            ok = (bil(m23, u1) == tb13).all(axis=1)
            for u3 in m23[ok]:
                det = (
                    u1[0] * (u2[1] * u3[2] - u2[2] * u3[1])
                    - u2[0] * (u1[1] * u3[2] - u1[2] * u3[1])
                    + u3[0] * (u1[1] * u2[2] - u1[2] * u2[1])
                ) % q
                if det:
                    out.append(
                        tuple(int(v) for v in np.stack([u1, u2, u3], axis=1).ravel())
                    )
    return out

def _constant_witnesses(r1, r2):
    if r1.n == 2:
        return _constant_witnesses_binary(r1, r2)
    if r1.n == 3:
        return _constant_witnesses_ternary(r1, r2)
    raise CapabilityError("rank-4 equivalence search (~q^16) is not supported")

def _scalar_matrix(field, n, flat):
    return Transformation.from_scalars(
        field, [flat[i * n : (i + 1) * n] for i in range(n)]
    )

def _witness_transforms(q1, q2):
    """Yield (U, t1, t2) data for the reduced representatives of q1, q2."""
    if q1.field != q2.field or q1.n != q2.n:
        raise ValueError("forms must share a field and rank")
    if not (q1.is_definite() and q2.is_definite()):
        raise ValueError("equivalence search requires definite forms")
    r1, t1 = reduce(q1)
    r2, t2 = reduce(q2)
    if tuple(r1.gram[i][i].degree for i in range(q1.n)) != tuple(
        r2.gram[i][i].degree for i in range(q2.n)
    ):
        return None
    return _constant_witnesses(r1, r2), t1, t2


def equivalent(q1, q2):
    """A transformation W with Q1 o W = Q2, or None."""
    found = _witness_transforms(q1, q2)
    if found is None or not found[0]:
        return None
    units, t1, t2 = found
    u = _scalar_matrix(q1.field, q1.n, units[0])
    return t1 @ u @ t2.inverse()


def properly_equivalent(q1, q2):
    """A determinant-1 transformation W with Q1 o W = Q2, or None.

    All transformations between reduced definite forms are constant, so it
    suffices to scan constant witnesses for one with the right determinant.
    """
    found = _witness_transforms(q1, q2)
    if found is None or not found[0]:
        return None
    units, t1, t2 = found
    F = q1.field
    want = F.mul(t2.det, F.inv(t1.det))
    n = q1.n
    for flat in units:
        u = _scalar_matrix(F, n, flat)
        if u.det == want:
            return t1 @ u @ t2.inverse()
    return None


def norm_form(d):
    """The binary form (1, 0, -d) of discriminant d."""
    F = d.field
    return Form.binary(F.one, F.zero, -d)


# -- literals --------------------------------------------------------------

def form_to_string(form):
    from .ffpoly import poly_to_string

    g = form.gram
    if form.n == 2:
        return "({}, {}, {})".format(
            poly_to_string(g[0][0]), poly_to_string(g[0][1]), poly_to_string(g[1][1])
        )
    if form.n == 3:
        parts = [g[0][0], g[1][1], g[2][2]], [g[0][1], g[0][2], g[1][2]]
        return "({};{})".format(
            ",".join(poly_to_string(p) for p in parts[0]),
            ",".join(poly_to_string(p) for p in parts[1]),
        )
    rows = "; ".join(
        ", ".join(poly_to_string(e) for e in row) for row in g
    )
    return f"[{rows}]"


def form_from_string(field, text):
    """Parse `(a, b, c)` or `(a11,a22,a33;a12,a13,a23)` literals."""
    from .ffpoly import poly_from_string

    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"form literal must be parenthesized: {text!r}")
    body = s[1:-1]
    if ";" in body:
        diag_s, off_s = body.split(";")
        diag = [poly_from_string(field, p) for p in diag_s.split(",")]
        off = [poly_from_string(field, p) for p in off_s.split(",")]
        if len(diag) != 3 or len(off) != 3:
            raise ValueError(f"rank-3 literal needs 3+3 entries: {text!r}")
        a11, a22, a33 = diag
        a12, a13, a23 = off
        return Form(((a11, a12, a13), (a12, a22, a23), (a13, a23, a33)))
    parts = [poly_from_string(field, p) for p in body.split(",")]
    if len(parts) != 3:
        raise ValueError(f"binary literal needs 3 entries: {text!r}")
    return Form.binary(*parts)
