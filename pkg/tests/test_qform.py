import random

import pytest

from fqforms.errors import CapabilityError
from fqforms.ffpoly import SquareClass, poly_from_string, prime_field
from fqforms.qform import (
    Form,
    Transformation,
    diagonal_square_classes,
    equivalent,
    form_from_string,
    form_to_string,
    norm_form,
    properly_equivalent,
    reduce,
    successive_minima,
)

F5 = prime_field(5)
F7 = prime_field(7)
F13 = prime_field(13)


def binary(field, sa, sb, sc):
    return Form.binary(
        poly_from_string(field, sa),
        poly_from_string(field, sb),
        poly_from_string(field, sc),
    )


def remark_form():
    # (t-5, 4, -(t^2+5t+11)) with coefficients reduced mod 13
    return binary(F13, "t+8", "4", "12*t^2+8*t+2")


def rand_gl2(field, rng, max_deg=3, proper=False):
    """Random GL_2(A) element built from shears and a unit diagonal."""
    F = field
    t = Transformation.identity(F, 2)
    for _ in range(rng.randrange(1, 4)):
        f = F.poly([rng.randrange(F.q) for _ in range(max_deg + 1)])
        if rng.randrange(2):
            m = ((F.one, f), (F.zero, F.one))
        else:
            m = ((F.one, F.zero), (f, F.one))
        t = t @ Transformation(F, m)
    if not proper:
        u = rng.randrange(1, F.q)
        t = t @ Transformation.from_scalars(F, [[u, 0], [0, 1]])
    return t


def rand_definite_reduced(field, rng, max_mu2=3):
    """Random reduced definite binary form via (a, b, c) with the degree rules."""
    F = field
    while True:
        mu1 = rng.randrange(0, max_mu2 + 1)
        mu2 = rng.randrange(mu1, max_mu2 + 1)
        a = F.poly([rng.randrange(F.q) for _ in range(mu1)] + [rng.randrange(1, F.q)])
        c = F.poly([rng.randrange(F.q) for _ in range(mu2)] + [rng.randrange(1, F.q)])
        b = F.poly([rng.randrange(F.q) for _ in range(mu1)])
        try:
            q = Form.binary(a, b, c)
        except ValueError:
            continue
        if q.is_definite() and q.is_reduced():
            return q


def test_discriminant_remark_form():
    q = remark_form()
    d = q.discriminant()
    t = F13.t
    assert d == t**3 - t
    assert str(d) == "t^3+12*t"


def test_discriminant_norm_form_and_scaling():
    d = F5.constant(F5.delta)
    q = Form.binary(F5.one, F5.zero, -d)
    assert q.discriminant() == d
    rng = random.Random(0)
    for _ in range(20):
        qq = rand_definite_reduced(F5, rng)
        u = rand_gl2(F5, rng)
        assert SquareClass(u.apply(qq).discriminant()) == SquareClass(qq.discriminant())


def test_degenerate_rejected():
    with pytest.raises(ValueError):
        Form.binary(F5.one, F5.one, F5.one)
    with pytest.raises(ValueError):
        Form(((F5.one, F5.t), (F5.one, F5.t)))  # asymmetric


def test_is_definite_binary():
    delta = F5.constant(F5.delta)
    assert Form.binary(F5.one, F5.zero, -delta).is_definite()
    t = F5.t
    assert Form.binary(F5.one, F5.zero, t).is_definite()  # disc odd degree
    assert not Form.binary(F5.one, F5.zero, -t * t).is_definite()  # disc = t^2


def test_is_definite_ternary_family():
    # X^2 + t Y^2 - delta (t + a^2) Z^2 is definite
    for q in (5, 13):
        F = prime_field(q)
        t, d = F.t, F.constant(F.delta)
        for a in (1, 2):
            aa = F.mul(a, a)
            form = Form.diagonal([F.one, t, -d * (t + aa)])
            assert form.is_definite()
    # but X^2 + t Y^2 - (t + 1) Z^2 is isotropic at infinity
    t = F5.t
    assert not Form.diagonal([F5.one, t, -(t + 1)]).is_definite()


def is_square_in_A(f):
    from fqforms.ffpoly import squarefree_decompose

    f0, _, unit = squarefree_decompose(f)
    return f0.degree == 0 and f.field.is_square(unit)


def test_diagonal_square_classes_matches_disc():
    rng = random.Random(4)
    for _ in range(30):
        q = rand_definite_reduced(F5, rng)
        u = rand_gl2(F5, rng)
        qq = u.apply(q)
        ds = diagonal_square_classes(qq)
        prod = ds[0] * ds[1]
        # product of diagonal classes = det(M) in K^x/K^x2; binary disc = -det
        assert is_square_in_A(prod * -qq.discriminant())


def test_primitivity():
    t = F5.t
    q = Form.binary(t, F5.zero, t**3 - t)
    assert not q.is_primitive()
    prim, content = q.primitive_part()
    assert content == t
    assert prim.is_primitive()
    assert Form.binary(F5.one, t, t**2 + 1).content().degree == 0
    scaled = Form(tuple(tuple(e * t for e in row) for row in q.gram))
    assert scaled.content() == q.content() * t


def test_reduce_trivial_and_shear():
    q = rand_definite_reduced(F5, random.Random(1))
    red, t = reduce(q)
    assert red == q
    assert t == Transformation.identity(F5, 2)
    t7 = F7.t
    q = Form.binary(t7, t7, t7**3)
    red, tr = reduce(q)
    assert red.binary_coeffs() == (t7, F7.zero, t7**3 - t7)
    assert tr.apply(q) == red


def test_reduce_transport_and_idempotence_random():
    rng = random.Random(42)
    for field in (F5, F13):
        for _ in range(40):
            q = rand_definite_reduced(field, rng)
            u = rand_gl2(field, rng)
            scrambled = u.apply(q)
            red, tr = reduce(scrambled)
            assert red.is_reduced()
            assert tr.apply(scrambled) == red  # exact transport identity
            w = equivalent(q, red)
            assert w is not None and w.apply(q) == red
            again, t2 = reduce(red)
            assert again == red and t2 == Transformation.identity(field, 2)


def test_reduce_rejects_indefinite():
    t = F5.t
    with pytest.raises(ValueError):
        reduce(Form.binary(F5.one, F5.zero, -t * t))


def test_reduce_ternary():
    rng = random.Random(6)
    F = F5
    t, d = F.t, F.constant(F.delta)
    base = Form.diagonal([F.one, t, -d * (t + 1)])
    red, tr = reduce(base)
    assert red == base  # already reduced, diagonal sorted
    # scramble by a random GL_3(A) transformation and reduce back
    for _ in range(10):
        g = Transformation.identity(F, 3)
        for _ in range(3):
            i, j = rng.sample(range(3), 2)
            el = [[F.one if r == c else F.zero for c in range(3)] for r in range(3)]
            el[i][j] = F.poly([rng.randrange(5) for _ in range(3)])
            g = g @ Transformation(F, el)
        scrambled = g.apply(base)
        red, tr = reduce(scrambled)
        assert red.is_reduced()
        assert tr.apply(scrambled) == red
        mins = [red.gram[i][i].degree for i in range(3)]
        assert mins == [0, 1, 1]


def test_successive_minima():
    d = F5.constant(F5.delta)
    assert successive_minima(Form.binary(F5.one, F5.zero, -d)) == (0, 0)
    assert successive_minima(remark_form()) == (1, 2)
    t = F13.t
    nf = norm_form(t**3 - t)
    assert nf.is_reduced()
    assert successive_minima(nf) == (0, 3)


def test_minima_sum_equals_disc_degree():
    rng = random.Random(8)
    for _ in range(50):
        q = rand_definite_reduced(F5, rng)
        mu = successive_minima(q)
        assert mu[0] + mu[1] == q.discriminant().degree


def test_equivalent_by_construction():
    rng = random.Random(10)
    for field in (F5, F13):
        for _ in range(25):
            q = rand_definite_reduced(field, rng)
            u = rand_gl2(field, rng)
            w = equivalent(q, u.apply(q))
            assert w is not None
            assert w.apply(q) == u.apply(q)


def test_equivalent_delta_pair():
    d = F5.constant(F5.delta)
    q1 = Form.binary(F5.one, F5.zero, -d)
    q2 = Form.binary(d, F5.zero, -F5.one)
    w = equivalent(q1, q2)
    assert w is not None and w.apply(q1) == q2


def test_inequivalent_distinct_disc_class():
    t = F5.t
    q1 = Form.binary(F5.one, F5.zero, -t)
    q2 = Form.binary(F5.one, F5.zero, -F5.constant(F5.delta) * t)
    assert SquareClass(q1.discriminant()) != SquareClass(q2.discriminant())
    assert equivalent(q1, q2) is None


def test_properly_equivalent():
    rng = random.Random(12)
    for _ in range(25):
        q = rand_definite_reduced(F5, rng)
        v = rand_gl2(F5, rng, proper=True)
        assert v.det == 1
        w = properly_equivalent(q, v.apply(q))
        assert w is not None and w.det == 1
        assert w.apply(q) == v.apply(q)
    q = rand_definite_reduced(F13, rng)
    w = properly_equivalent(q, q)
    assert w is not None and w.det == 1


def brute_force_equivalent(q1, q2, max_entry_deg=2):
    """Search all GL_2(A) witnesses with entry degree <= max_entry_deg.

    Columns are pruned by the forced Gram identities Q1(col1) = a2 and
    Q1(col2) = c2 before pairing, which is still a direct matrix search.
    """
    F = q1.field
    a2, b2, c2 = q2.binary_coeffs()
    cols = [
        (F.poly_from_key(i), F.poly_from_key(j))
        for i in range(F.q ** (max_entry_deg + 1))
        for j in range(F.q ** (max_entry_deg + 1))
    ]
    firsts = [u for u in cols if q1.value(u) == a2]
    seconds = [v for v in cols if q1.value(v) == c2]
    for u in firsts:
        for v in seconds:
            if q1.bilinear(u, v) != b2:
                continue
            if (u[0] * v[1] - u[1] * v[0]).degree == 0:
                return Transformation(F, ((u[0], v[0]), (u[1], v[1])))
    return None


def test_equivalence_brute_force_cross_check():
    # oracle: GL_2(A) matrices with entry degree <= 2 over F_5, deg disc <= 2
    rng = random.Random(14)
    checked = 0
    while checked < 6:
        q1 = rand_definite_reduced(F5, rng, max_mu2=2)
        if q1.discriminant().degree > 2:
            continue
        q2 = rand_definite_reduced(F5, rng, max_mu2=2)
        if SquareClass(q1.discriminant()) != SquareClass(q2.discriminant()):
            continue
        brute = brute_force_equivalent(q1, q2)
        assert (brute is not None) == (equivalent(q1, q2) is not None)
        if brute is not None:
            assert brute.apply(q1) == q2
        checked += 1


def test_ternary_equivalence_and_capability():
    F = F5
    t, d = F.t, F.constant(F.delta)
    base = Form.diagonal([F.one, t, -d * (t + 1)])
    g = Transformation(
        F,
        (
            (F.one, F.t, F.zero),
            (F.zero, F.one, F.constant(2)),
            (F.zero, F.zero, F.one),
        ),
    )
    w = equivalent(base, g.apply(base))
    assert w is not None and w.apply(base) == g.apply(base)
    F17 = prime_field(17)
    t17, d17 = F17.t, F17.constant(F17.delta)
    big = Form.diagonal([F17.one, t17, -d17 * (t17 + 1)])
    with pytest.raises(CapabilityError):
        equivalent(big, big)


def test_form_literals_round_trip():
    q = remark_form()
    s = form_to_string(q)
    assert s == "(t+8, 4, 12*t^2+8*t+2)"
    assert form_from_string(F13, s) == q
    t, d = F5.t, F5.constant(F5.delta)
    tern = Form.diagonal([F5.one, t, -d * (t + 1)])
    assert form_from_string(F5, form_to_string(tern)) == tern
    with pytest.raises(ValueError):
        form_from_string(F5, "(1, 2)")
