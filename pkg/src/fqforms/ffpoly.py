"""Exact arithmetic in F_q (q odd) and the polynomial ring A = F_q[t].

Field elements are plain Python ints.  For a prime field F_p the element
is its residue in {0, ..., p-1}.  For an extension F_{p^e} the element is
the base-p packing c_0 + c_1*p + ... + c_{e-1}*p^{e-1} of its coordinate
vector over F_p, so 0 and 1 always denote the additive and multiplicative
identities.  All arithmetic goes through a `Field` instance.

Polynomials over F_q are immutable `Poly` values holding a tuple of field
elements, lowest degree first, with no trailing zeros ([] is the zero
polynomial).  deg(0) is the sentinel NEG_INF, which compares less than
every integer, so degree formulas involving max() are total.

A polynomial also has a base-q integer key (`key()`), used by the
enumeration-heavy modules to store large sets of polynomials compactly.
"""

from __future__ import annotations

import functools
import itertools
import random

NEG_INF = float("-inf")


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, n):
        if d * d > n:
            return True
        if n % d == 0:
            return False
    return True


class Field:
    """The finite field F_q with q = p^e odd, plus its fixed non-square delta.

    `modulus` is the coefficient tuple (lowest first, monic) of the degree-e
    irreducible polynomial over F_p used for e > 1; ignored when e = 1.
    `delta` defaults to the first non-square in the ascending element order.
    """

    def __init__(self, p, e=1, modulus=None, delta=None):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = self._find_modulus()
            modulus = tuple(c % p for c in modulus)
            self.modulus = modulus
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            if not self._modulus_irreducible():
                raise ValueError("modulus is not irreducible over F_p")
        if delta is None:
            delta = self._first_nonsquare()
        if delta == 0 or self.is_square(delta):
            raise ValueError(f"delta={delta} is not a non-square")
        self.delta = delta
        self.zero = self.poly(())
        self.one = self.poly((1,))
        self.t = self.poly((0, 1))

    # -- element arithmetic (ints) ------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.e):
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        return self._from_vec(self._vec_mulmod(self._to_vec(a), self._to_vec(b)))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        out = 1
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def is_square(self, a):
        """Whether a is a nonzero square; errors on zero."""
        if a == 0:
            raise ValueError("is_square is undefined at 0")
        return self.pow(a, (self.q - 1) // 2) == 1

    def char(self, a):
        """Quadratic character: 0 at 0, else +1 for squares, -1 otherwise."""
        if a == 0:
            return 0
        return 1 if self.is_square(a) else -1

    def elements(self):
        return range(self.q)

    # -- extension-field internals ------------------------------------

    def _to_vec(self, a):
        p = self.p
        v = []
        for _ in range(self.e):
            v.append(a % p)
            a //= p
        return v

    def _from_vec(self, v):
        out = 0
        for c in reversed(v):
            out = out * self.p + c
        return out

    def _vec_mulmod(self, u, v):
        p = self.p
        prod = [0] * (2 * self.e - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    prod[i + j] = (prod[i + j] + ui * vj) % p
        m = self.modulus
        for i in range(len(prod) - 1, self.e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(self.e):
                    prod[i - self.e + j] = (prod[i - self.e + j] - c * m[j]) % p
        return prod[: self.e]

    def _find_modulus(self):
        base = Field(self.p)
        for tail in itertools.product(range(self.p), repeat=self.e):
            cand = base.poly(tail + (1,))
            if is_irreducible(cand):
                return cand.coeffs
        raise AssertionError("no irreducible modulus found")

    def _modulus_irreducible(self):
        return is_irreducible(Field(self.p).poly(self.modulus))

    def _first_nonsquare(self):
        for a in range(1, self.q):
            if not self.is_square(a):
                return a
        raise AssertionError("odd field has a non-square")

    # -- polynomial constructors --------------------------------------

    def poly(self, coeffs):
        return Poly(self, coeffs)

    def poly_from_key(self, key):
        q = self.q
        coeffs = []
        while key:
            key, c = divmod(key, q)
            coeffs.append(c)
        return Poly(self, coeffs)

    def constant(self, c):
        return Poly(self, (c % self.p,) if self.e == 1 else (c,))

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus, self.delta)
            == (other.p, other.e, other.modulus, other.delta)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus, self.delta))

    def __repr__(self):
        if self.e == 1:
            return f"Field({self.p})"
        return f"Field({self.p}, {self.e})"


@functools.cache
def prime_field(p):
    """Shared Field instance for F_p with the default delta."""
    return Field(p)


class Poly:
    """Immutable polynomial over a Field; coefficients lowest degree first."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        """Leading coefficient; errors on the zero polynomial."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def key(self):
        """Base-q integer packing of the coefficient tuple."""
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.q + c
        return out

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, int):
            return self.field.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return F.zero
        if F.e == 1:
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(F, [c % p for c in out])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        F = self.field
        dg = len(other.coeffs) - 1
        r = list(self.coeffs)
        if len(r) - 1 < dg:
            return F.zero, self
        inv_lc = F.inv(other.coeffs[-1])
        quo = [0] * (len(r) - dg)
        g = other.coeffs
        for i in range(len(r) - 1 - dg, -1, -1):
            c = r[i + dg]
            if c:
                qc = F.mul(c, inv_lc)
                quo[i] = qc
                for j in range(dg + 1):
                    r[i + j] = F.sub(r[i + j], F.mul(qc, g[j]))
        return Poly(F, quo), Poly(F, r[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        F = self.field
        inv = F.inv(self.coeffs[-1])
        return Poly(F, [F.mul(c, inv) for c in self.coeffs])

    def derivative(self):
        F = self.field
        p = F.p
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(F.mul(c, i % p) if F.e > 1 else (c * i) % p)
        return Poly(F, out)

    def __call__(self, x):
        """Evaluate at a field element."""
        F = self.field
        out = 0
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, x), c)
        return out

    def shift(self, n):
        """Multiply by t^n."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.constant(other)
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({poly_to_string(self)!r})"

    def __str__(self):
        return poly_to_string(self)


# -- parsing and printing ----------------------------------------------

def poly_to_string(f):
    """Canonical text form: descending degree, coefficients in 0..p-1.

    Examples over F_13: `t^3+12*t`, `1`, `0`.  Extension-field coefficients
    print as their packed integer value.
    """
    if f.is_zero():
        return "0"
    parts = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return "+".join(parts)


def poly_from_string(field, text):
    """Parse `poly := term (('+'|'-') term)*`, term `coeff['*'t['^'exp]]`."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial literal")
    # split into signed terms
    terms = []
    i = 0
    start = 0
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = i = 1
    while i <= len(s):
        if i == len(s) or s[i] in "+-":
            if i == start:
                raise ValueError(f"bad polynomial literal: {text!r}")
            terms.append((sign, s[start:i]))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
            start = i + 1
        i += 1
    coeffs = {}
    for sign, term in terms:
        coeff, exp = _parse_term(term)
        coeff = coeff % field.p if sign > 0 else (-coeff) % field.p
        coeffs[exp] = field.add(coeffs.get(exp, 0), coeff)
    out = [0] * (max(coeffs) + 1)
    for exp, c in coeffs.items():
        out[exp] = c
    return field.poly(out)


def _parse_term(term):
    if "t" not in term:
        return int(term), 0
    head, _, tail = term.partition("t")
    if head == "":
        coeff = 1
    elif head.endswith("*"):
        coeff = int(head[:-1])
    else:
        raise ValueError(f"bad term: {term!r}")
    if tail == "":
        return coeff, 1
    if tail.startswith("^"):
        exp = int(tail[1:])
        if exp < 0:
            raise ValueError(f"bad exponent in term: {term!r}")
        return coeff, exp
    raise ValueError(f"bad term: {term!r}")


# -- gcd family ---------------------------------------------------------

def gcd(f, g):
    """Monic greatest common divisor; gcd(0, 0) is an error."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def xgcd(f, g):
    """(d, s, u) with d = s*f + u*g, d the monic gcd."""
    F = f.field
    r0, r1 = f, g
    s0, s1 = F.one, F.zero
    t0, t1 = F.zero, F.one
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    lead_inv = F.inv(r0.lc())
    return r0.monic(), s0 * lead_inv, t0 * lead_inv


def invmod(f, m):
    """Inverse of f modulo m; errors when gcd(f, m) != 1."""
    d, s, _ = xgcd(f, m)
    if d.degree != 0:
        raise ZeroDivisionError("element is not invertible modulo m")
    return s % m


def powmod(f, n, m):
    out = f.field.one % m
    f = f % m
    while n:
        if n & 1:
            out = (out * f) % m
        f = (f * f) % m
        n >>= 1
    return out


# -- irreducibility and factorization -----------------------------------

def is_irreducible(f):
    """Rabin's test; constants are not irreducible."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    n = f.degree
    if n == 0:
        return False
    if n == 1:
        return True
    F = f.field
    f = f.monic()
    t = F.t
    # x^(q^n) == x mod f, and x^(q^(n/l)) - x coprime to f for primes l | n
    frob = powmod(t, F.q**n, f)
    if frob != t % f:
        return False
    for ell in _prime_divisors(n):
        g = powmod(t, F.q ** (n // ell), f) - t
        if gcd(g if not g.is_zero() else f, f).degree != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_part_decomposition(f):
    """Full squarefree decomposition: f = unit * prod_i g_i^i, g_i squarefree monic.

    Returns (unit, {i: g_i}) with only nontrivial g_i present.  Handles the
    characteristic-p collapse f' = 0 via p-th roots (Frobenius is bijective).
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    F = f.field
    unit = f.lc()
    f = f.monic()
    parts = {}
    _squarefree_rec(f, 1, parts)
    return unit, parts


def _squarefree_rec(f, mult, parts):
    if f.degree == 0:
        return
    F = f.field
    df = f.derivative()
    if df.is_zero():
        # f = h(t^p); descend on the p-th root
        root = _pth_root(f)
        _squarefree_rec(root, mult * F.p, parts)
        return
    c = gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        piece = w // y
        if piece.degree > 0:
            key = mult * i
            parts[key] = parts.get(key, F.one) * piece
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _squarefree_rec(c, mult * F.p, parts)


def _pth_root(f):
    F = f.field
    p = F.p
    out = []
    for i in range(0, len(f.coeffs), p):
        c = f.coeffs[i]
        # p-th root of the coefficient (identity on F_p; Frobenius inverse else)
        out.append(c if F.e == 1 else F.pow(c, F.q // p))
    return F.poly(out)


def squarefree_decompose(f):
    """(f0, g, unit) with f = unit * g^2 * f0, f0 squarefree monic, g monic."""
    unit, parts = squarefree_part_decomposition(f)
    F = f.field
    f0 = F.one
    g = F.one
    for i, gi in parts.items():
        if i % 2:
            f0 = f0 * gi
        g = g * gi ** (i // 2)
    return f0, g, unit


def factor(f):
    """(unit, [(irreducible monic, multiplicity), ...]) sorted canonically."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    unit, parts = squarefree_part_decomposition(f)
    found = {}
    for mult, g in parts.items():
        for irr in _factor_squarefree(g):
            found[irr] = found.get(irr, 0) + mult
    out = sorted(found.items(), key=lambda kv: (kv[0].degree, kv[0].key()))
    return unit, out


def _factor_squarefree(f):
    """Distinct-degree then equal-degree splitting of a squarefree monic f."""
    F = f.field
    out = []
    t = F.t
    v = f.monic()
    h = t % v
    d = 0
    while v.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, F.q, v)
        g = gcd_or_self(h - t, v)
        if g.degree > 0:
            out.extend(_equal_degree_split(g, d))
            v = v // g
            h = h % v
    if v.degree > 0:
        out.append(v)
    return out


def gcd_or_self(g, f):
    return f if g.is_zero() else gcd(g, f)


def _equal_degree_split(f, d):
    """Cantor-Zassenhaus with a generator seeded from f, for reproducibility."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    rng = random.Random(f.key() * 0x9E3779B1 + F.q)
    n = f.degree
    exponent = (F.q**d - 1) // 2
    while True:
        a = F.poly([rng.randrange(F.q) for _ in range(n)])
        if a.degree <= 0:
            continue
        g = gcd_or_self(a, f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)
        b = powmod(a, exponent, f) - 1
        g = gcd_or_self(b, f)
        if 0 < g.degree < n:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)


# -- characters and square classes ---------------------------------------

def residue_char(f, p):
    """Quadratic character of f in the residue field A/(p): +1, -1, or 0.

    0 iff p divides f; otherwise (f mod p)^((q^d - 1)/2) mapped to +/-1.
    """
    if not is_irreducible(p):
        raise ValueError("place must be a monic irreducible polynomial")
    F = f.field
    r = f % p
    if r.is_zero():
        return 0
    d = p.degree
    val = powmod(r, (F.q**d - 1) // 2, p)
    if val == F.one % p:
        return 1
    return -1


class SquareClass:
    """Class of a nonzero polynomial modulo squares of constants.

    The canonical representative is f scaled by a constant square so its
    leading coefficient is 1 (square lc) or delta (non-square lc).
    """

    __slots__ = ("rep",)

    def __init__(self, f):
        if f.is_zero():
            raise ValueError("zero polynomial has no square class")
        F = f.field
        u = f.lc()
        if F.is_square(u):
            scale = F.inv(u)
        else:
            scale = F.mul(F.delta, F.inv(u))
        self.rep = f * F.poly((scale,))

    def __eq__(self, other):
        return isinstance(other, SquareClass) and self.rep == other.rep

    def __hash__(self):
        return hash(("sqcls", self.rep))

    def __repr__(self):
        return f"SquareClass({poly_to_string(self.rep)!r})"
