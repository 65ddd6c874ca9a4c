import json

import pytest

from fqforms.ffpoly import prime_field
from fqforms.verify import (
    SweepConfig,
    count_quadric_intersection,
    run_check,
    smooth_discriminant_identity,
    ternary_family_check,
    verify_disc_recovery,
    verify_equiv_theorems,
    verify_minima_recovery,
)


def small_cfg(q=5, max_deg=2, **kw):
    return SweepConfig(q=q, max_disc_degree=max_deg, **kw)


def test_minima_recovery_small():
    r = verify_minima_recovery(small_cfg())
    assert r.passed
    assert r.instances_checked > 0
    assert r.stats["classes"] > 10


def test_disc_recovery_small():
    r = verify_disc_recovery(small_cfg())
    assert r.passed


def test_equiv_theorems_small():
    r = verify_equiv_theorems(small_cfg())
    assert r.passed
    hist = r.stats["distinguishing_degree_histogram"]
    assert sum(hist.values()) > 0
    assert r.stats["undistinguished_pairs"] == 0


def test_equiv_theorems_q7():
    r = verify_equiv_theorems(small_cfg(q=7, max_deg=2))
    assert r.passed
    assert r.stats["undistinguished_pairs"] == 0


def test_expect_exceptions_mode_q3():
    # below the q > 3 hypothesis failures are recorded, not raised
    r = verify_equiv_theorems(small_cfg(q=3, max_deg=2))
    assert r.passed  # violations (if any) live in expected_exceptions
    assert isinstance(r.expected_exceptions, list)


def test_smooth_identity_three_fields():
    for q in (5, 13, 17):
        r = smooth_discriminant_identity(SweepConfig(q=q, samples=300, seed=7))
        assert r.passed, q
        # the resultant-based discriminant is a fixed multiple of the
        # closed-form invariant; the ratio is reported, never assumed
        assert len(r.stats["proportionality_ratios"]) == 1


def test_quadric_counts_hasse():
    r = run_check("quadric", SweepConfig(q=7, samples=60, seed=3))
    assert r.passed
    assert r.stats["max_count"] <= 7 + 1 + 5  # q + 1 + floor(2 sqrt q)
    demo = r.stats["singular_demo"]
    assert demo["count"] >= demo["at_least"]


def test_quadric_counts_q5_window_still_disjoint():
    # 2(q+1) = 12 exceeds q + 1 + 2 sqrt(q) ~ 10.47 even at q = 5
    r = run_check("quadric", SweepConfig(q=5, samples=60, seed=3))
    assert r.passed


def test_ternary_family_small_window():
    r = ternary_family_check(small_cfg(), window=4)
    assert r.passed
    assert r.stats["mismatches_not_explained_by_infinity"] == 0
    # the t-only reading does have mismatches: the infinite place really
    # excludes the delta square class
    assert r.stats["local_at_t_only_mismatches"] > 0


def test_cn1_survey_q13_mode():
    r = run_check("cn1", SweepConfig(q=13, samples=3, seed=1))
    assert r.passed
    # failures below the q > 13 threshold are expected exceptions
    assert all(v.check == "cn1" for v in r.expected_exceptions)


def test_comp_bridge_q5():
    r = run_check("comp", SweepConfig(q=5, max_disc_degree=3))
    assert r.passed
    assert r.instances_checked == 231


def test_reports_deterministic():
    a = run_check("smooth", SweepConfig(q=5, samples=100, seed=11))
    b = run_check("smooth", SweepConfig(q=5, samples=100, seed=11))
    assert json.dumps(a.as_dict(), sort_keys=True) == json.dumps(
        b.as_dict(), sort_keys=True
    )
    c = run_check("smooth", SweepConfig(q=5, samples=100, seed=11, jobs=4))
    d1 = a.as_dict()
    d2 = c.as_dict()
    d1["config"].pop("jobs")
    d2["config"].pop("jobs")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(q=4)
    with pytest.raises(ValueError):
        SweepConfig(q=5, jobs=0)
    with pytest.raises(ValueError):
        run_check("nonsense", SweepConfig(q=5))


def test_quadric_point_count_matches_naive():
    # independent slow oracle on the projective count
    q = 5
    F = prime_field(q)
    coeffs = (1, 2, 3, 4)
    fast = count_quadric_intersection(q, F.delta, coeffs)
    a, b, bp, c = coeffs
    d = F.delta
    count = 0
    seen = set()
    for x0 in range(q):
        for x1 in range(q):
            for x2 in range(q):
                for x3 in range(q):
                    v = (x0, x1, x2, x3)
                    if v == (0, 0, 0, 0):
                        continue
                    # normalize to the first nonzero coordinate = 1
                    lead = next(i for i in range(4) if v[i])
                    inv = F.inv(v[lead])
                    norm = tuple(F.mul(inv, x) for x in v)
                    if norm in seen:
                        continue
                    seen.add(norm)
                    u, vv, x, y = norm
                    q1 = (u * u - d * vv * vv - x * x + d * y * y) % q
                    q2 = (
                        a * u * u + 2 * b * u * vv + c * vv * vv
                        - a * x * x - 2 * bp * x * y - c * y * y
                    ) % q
                    if q1 == 0 and q2 == 0:
                        count += 1
    assert fast == count


def test_comp_bridge_q13_sampled():
    # deg <= 2 exhaustive plus seeded deg-3 sample of the q = 13 bridge
    import random as _random

    from fqforms.classify import (
        canonical_discs,
        class_table,
        irreducible_factor_count,
    )
    from fqforms.ffpoly import squarefree_decompose
    from fqforms.picard import comp_sequence_check

    F13 = prime_field(13)
    rng = _random.Random(17)
    discs = [
        d
        for d in canonical_discs(F13, 2)
        if squarefree_decompose(d)[1].degree == 0
    ]
    deg3 = [
        d
        for d in canonical_discs(F13, 3, exact_degree=3)
        if squarefree_decompose(d)[1].degree == 0
    ]
    discs += [deg3[i] for i in sorted(rng.sample(range(len(deg3)), 25))]
    for d in discs:
        report = comp_sequence_check(d)
        assert report.passed, str(d)
        table = class_table(F13, d, primitive_only=True)
        assert len(table.genera) == 2 ** irreducible_factor_count(d), str(d)


def test_violation_replay():
    # recorded witnesses replay to the recorded observation
    from fqforms.classify import class_number
    from fqforms.qform import form_from_string

    F13 = prime_field(13)
    r = run_check("cn1", SweepConfig(q=13, samples=30, seed=0))
    assert r.expected_exceptions
    for v in r.expected_exceptions[:3]:
        form = form_from_string(F13, v.witness["form"])
        assert class_number(form) == v.observed
