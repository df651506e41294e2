"""End-to-end acceptance checks, one recorded PASS/FAIL line per criterion.

Each line is printed in the terminal summary under "acceptance criteria".
"""

import random
from math import comb

import pytest
from conftest import FAST_PRIME

from seccalc.h1 import check_h1_sec, restricted_cohomology
from seccalc.hirzebruch import (
    LAFACE_TABLE, check_numerically_special_fe, h0_formula, instantiate, is_laface_special,
    laface_reduce, section_class,
)
from seccalc.k3 import C1, C2, check_dvl_families
from seccalc.lattice import (
    F, K3, P, P2, arithmetic_genus, canonical_class, euler_nu, expected_dimension, intersect,
    make_class, plane_class, self_intersection, subtract, virtual_dimension,
)
from seccalc.negone import IncompleteSplitting, cremona_step, hh_splitting
from seccalc.oracle import basis, effective_dimension
from seccalc.special import (
    NotSpecialEffect, check_alpha_property, find_alpha_curves, greedy_configuration,
    homogeneous_smooth_search, validate_lemma_bounds, verify_configuration,
)

L12, L13, L23 = plane_class(1, 1, 1, 0), plane_class(1, 1, 0, 1), plane_class(1, 0, 1, 1)
SEXTUPLE = plane_class(9, 6, 6, 6)
L6 = make_class(F(6), (4, 24), (3,) * 11)


def _accepted_alphas(L, Y, top):
    out = []
    for a in range(1, top + 1):
        try:
            check_alpha_property(L, Y, a)
            out.append(a)
        except NotSpecialEffect:
            pass
    return out


def test_criterion_1_sextuple_points(accept):
    trace = [virtual_dimension(subtract(SEXTUPLE, b, L12)) if b else virtual_dimension(SEXTUPLE)
             for b in range(5)]
    dim = effective_dimension(SEXTUPLE).dimension
    alphas = _accepted_alphas(SEXTUPLE, L12, 6)
    ok = trace == [-9, -7, -6, -6, -7] and dim == 0 and alphas == [3]
    accept("1 sextuple-point trace", ok, f"trace {trace}, oracle dim {dim}, accepted alphas {alphas}")


def test_criterion_2_configuration(accept):
    cert = verify_configuration(SEXTUPLE, [(L12, 3), (L13, 3), (L23, 3)])
    middle = [tuple(t[1:]) for _, _, t in cert.steps[1:]]
    ok = middle == [(-4, -3, -3), (-1, 0, 0)] and cert.final_nu == 0
    accept("2 three-line configuration", ok, f"intermediate {middle}, final nu {cert.final_nu}")


def test_criterion_3_double_conic(accept):
    L, Y = plane_class(2, 2, 2), plane_class(1, 1, 1)
    alpha = check_alpha_property(L, Y, 2)
    h1 = check_h1_sec(L, Y, evidence="oracle")
    got = (alpha.alpha, alpha.nu_trace, h1.restricted_degree, h1.genus, h1.h0_restricted,
           h1.h1_restricted, h1.h0_residual, h1.verdict)
    accept("3 double line certificates", got == (2, (-1, 0, 0), -2, 0, 0, 1, 1, "accepted"),
           str(got))


def test_criterion_4a_homogeneous_families(accept):
    fams = homogeneous_smooth_search(5, 12, 12, 30)
    keys = [(f.e, f.h) for f in fams]
    ranges_ok = all(
        f.d_range(m) == {(1, 2): (m, 2 * m - 2), (2, 5): (2 * m, (5 * m - 2) // 2)}[(f.e, f.h)]
        for f in fams for m in range(2, 13))
    ok = keys == [(1, 2), (2, 5)] and ranges_ok and not any(f.e == 3 for f in fams)
    accept("4a homogeneous families (e,h) and no e=3", ok,
           f"families {keys}, inclusive upper ranges match: {ranges_ok}")


def test_criterion_4b_strict_upper_bounds_as_stated(accept):
    # literal reading: m <= d < 2m-2 and 2m <= d < (5m-2)/2; the enumeration
    # also finds d = 2m-2 and d = floor((5m-2)/2), so this check fails
    fams = {(f.e, f.h): f for f in homogeneous_smooth_search(5, 12, 12, 30)}
    bad = []
    for m in range(2, 13):
        lo, hi = fams[(1, 2)].d_range(m)
        if not (lo == m and hi < 2 * m - 2):
            bad.append(("e=1", m, hi))
        lo, hi = fams[(2, 5)].d_range(m)
        if not (lo == 2 * m and 2 * hi < 5 * m - 2):
            bad.append(("e=2", m, hi))
    accept("4b strict upper bounds as stated", not bad,
           f"{len(bad)} violations, first {bad[:3]}")


QUARTICS = ((2, 4, 5), (3, 4, 9), (4, 4, 14), (4, 3, 7))


def test_criterion_5_alexander_hirschowitz(accept):
    problems = []
    for n in range(2, 7):
        for h in range(2, n + 1):
            L = make_class(P(n), 2, (2,) * h)
            rep = effective_dimension(L)
            if rep.dimension <= expected_dimension(L) or rep.dimension != comb(n - h + 2, 2) - 1:
                problems.append((str(L), rep.dimension))
    for n, d, h in QUARTICS:
        L = make_class(P(n), d, (2,) * h)
        rep = effective_dimension(L)
        if rep.dimension != 0 or rep.dimension <= expected_dimension(L):
            problems.append((str(L), rep.dimension))
    rng = random.Random(7)
    seen = set()
    while len(seen) < 40:
        n = rng.choice((2, 3, 4))
        d = rng.randint(3, {2: 11, 3: 6, 4: 4}[n])
        h = rng.randint(1, comb(d + n, n) // (n + 1) + 2)
        if (n, d, h) in QUARTICS or (n, d, h) in seen:
            continue
        seen.add((n, d, h))
        L = make_class(P(n), d, (2,) * h)
        rep = effective_dimension(L, prime=FAST_PRIME)
        if rep.dimension != expected_dimension(L):
            problems.append((str(L), rep.dimension))
    accept("5 double-point exceptions special, 40 random non-special", not problems, str(problems))


def test_criterion_6_quadrics(accept):
    got = {}
    for n, h, nu_l in ((3, 9, -2), (4, 14, -1)):
        L, Q = make_class(P(n), 4, (2,) * h), make_class(P(n), 2, (1,) * h)
        rep = effective_dimension(L)
        cert = check_h1_sec(L, Q)
        got[n] = (virtual_dimension(L), virtual_dimension(Q), virtual_dimension(L - Q),
                  virtual_dimension(L - 2 * Q), rep.h1, cert.h0_restricted, cert.h1_restricted,
                  cert.verdict)
    ok = got == {3: (-2, 0, 0, 0, 2, 0, 2, "accepted"), 4: (-1, 0, 0, 0, 1, 0, 1, "accepted")}
    accept("6 double quadrics in P3 and P4", ok, str(got))


def _table_instances():
    return [(row, params, L, vdim, dim) for row in LAFACE_TABLE
            for params, L, vdim, dim in instantiate(row)]


@pytest.fixture(scope="module")
def table():
    return _table_instances()


def test_criterion_7a_virtdim_column(table, accept):
    bad = [(row.label, p, virtual_dimension(L), v) for row, p, L, v, _ in table
           if virtual_dimension(L) != v and not row.label.startswith("L_6")]
    accept("7a virtdim column (rows other than L_6)", not bad and len(table) == 138,
           f"{len(table)} instances, mismatches {bad}")


def test_criterion_7b_l6_virtdim_as_printed(accept):
    # the row prints -1, but (4,24) on F_6 has 65 sections and 11 triple
    # points impose 66 conditions, so nu = 65 - 1 - 66 = -2
    row = next(r for r in LAFACE_TABLE if r.label.startswith("L_6"))
    printed, computed = row.vdim(None, None, None), virtual_dimension(L6)
    accept("7b L_6 virtdim as printed", computed == printed,
           f"computed {computed}, table {printed}")


def test_criterion_7c_dim_column(table, accept):
    bad = []
    for row, p, L, _, dim in table:
        got = effective_dimension(L, prime=FAST_PRIME, trials=2).dimension
        if got != dim:
            bad.append((row.label, p, got, dim))
    accept("7c dim column", not bad, f"{len(table)} instances, mismatches {bad}")


def test_criterion_7d_laface_special(table, accept):
    bad = [(row.label, p) for row, p, L, _, _ in table if not is_laface_special(L)[0]]
    accept("7d is_laface_special on every instance", not bad, f"not special: {bad}")


def test_criterion_7e_h0_formula_column_counts(accept):
    bad = [(e, a, b) for e in range(5) for a in range(7) for b in range(-2, 31)
           if h0_formula(e, a, b) != len(basis(make_class(F(e), (a, b), ())))]
    accept("7e h0 formula equals oracle column count", not bad, f"mismatches {bad[:5]}")


def test_criterion_8_l6_counterexample(accept):
    red = laface_reduce(L6)
    E = next(ev.curve for ev in red.steps if ev.kind == "split")
    h = section_class(L6)
    cE, ch = check_h1_sec(L6, E), check_h1_sec(L6, h)
    special, _ = is_laface_special(L6)
    config = check_numerically_special_fe(L6)
    ok = ("c" in cE.failed and "c" in ch.failed and not cE.accepted and not ch.accepted
          and special and config is not None)
    accept("8 L_6 rejects h1 candidates but is special", ok,
           f"E {E} failed {cE.failed}, h failed {ch.failed}, laface {special}, "
           f"nsec {None if config is None else config.multiplicities}")


def _random_plane_class(rng, h, dmax=15):
    return plane_class(rng.randint(-3, dmax), *(rng.randint(-2, 8) for _ in range(h)))


def test_criterion_9a_cremona_invariance(accept):
    rng = random.Random(1)
    bad = 0
    for _ in range(10_000):
        h = rng.randint(3, 8)
        A, B = _random_plane_class(rng, h), _random_plane_class(rng, h)
        i, j, k = rng.sample(range(h), 3)
        TA, TB = cremona_step(A, i, j, k), cremona_step(B, i, j, k)
        K = canonical_class(P2, h)
        if (euler_nu(TA), self_intersection(TA), intersect(TA, K), intersect(TA, TB)) != \
                (euler_nu(A), self_intersection(A), intersect(A, K), intersect(A, B)):
            bad += 1
    accept("9a Cremona invariance on 10^4 classes", bad == 0, f"{bad} failures")


def test_criterion_9b_splitting_formula(accept):
    rng = random.Random(2)
    checked = bad = 0
    for _ in range(400):
        h = rng.randint(1, 8)
        L = plane_class(rng.randint(1, 14), *(rng.randint(0, 7) for _ in range(h)))
        try:
            s = hh_splitting(L)
        except IncompleteSplitting:
            continue
        checked += 1
        if s.residual_nu != euler_nu(L) + sum(comb(N, 2) for N in s.multiplicities):
            bad += 1
    accept("9b splitting formula on every computed splitting", checked > 300 and bad == 0,
           f"{checked} splittings, {bad} failures")


def test_criterion_9c_lemma_validators(accept):
    rng = random.Random(3)
    certs = list(verify_configuration(SEXTUPLE, [(L12, 3), (L13, 3), (L23, 3)]).certificates)
    certs.append(check_alpha_property(plane_class(2, 2, 2), plane_class(1, 1, 1), 2))
    for _ in range(150):
        h, d = rng.randint(2, 7), rng.randint(2, 12)
        # multiplicities between d/3 and 2d/3 make special effects common
        L = plane_class(d, *(rng.randint(d // 3 + 1, max(d // 3 + 1, 2 * d // 3))
                             for _ in range(h)))
        certs.extend(find_alpha_curves(L, e_bound=3, c_bound=2))
        config = greedy_configuration(L, e_bound=3, c_bound=2)
        if config is not None:
            certs.extend(config.certificates)
    bad = 0
    for c in certs:
        h0 = effective_dimension(c.residual, prime=FAST_PRIME, trials=2).h0
        if not validate_lemma_bounds(c, h0_residual=h0):
            bad += 1
    accept("9c lemma validators on accepted certificates", len(certs) >= 20 and bad == 0,
           f"{len(certs)} certificates, {bad} failures")


def _random_system(rng):
    kind = rng.random()
    if kind < 0.5:
        h = rng.randint(1, 9)
        return make_class(P2, rng.randint(1, 9), [rng.randint(1, 4) for _ in range(h)])
    if kind < 0.75:
        h = rng.randint(1, 9)
        return make_class(P(3), rng.randint(1, 5), [rng.randint(1, 3) for _ in range(h)])
    e = rng.randint(0, 3)
    a = rng.randint(0, 3)
    h = rng.randint(1, 7)
    return make_class(F(e), (a, a * e + rng.randint(0, 5)), [rng.randint(1, 3) for _ in range(h)])


def test_criterion_9d_oracle_at_least_expected(accept):
    rng = random.Random(4)
    bad = []
    for i in range(1000):
        L = _random_system(rng)
        rep = effective_dimension(L, prime=FAST_PRIME, trials=2, seed=i)
        if rep.dimension < expected_dimension(L):
            bad.append(str(L))
    accept("9d oracle dim >= expected on 10^3 systems", not bad, f"violations {bad[:5]}")


def test_criterion_9e_euler_identity(accept):
    rng = random.Random(5)
    bad = checked = 0
    for _ in range(3000):
        surface = rng.choice((P2, F(rng.randint(0, 3)), K3(2 * rng.randint(1, 4))))
        h = rng.randint(1, 4)
        if surface.kind == "Hirzebruch":
            L = make_class(surface, (rng.randint(0, 4), rng.randint(0, 12)),
                           [rng.randint(0, 4) for _ in range(h)])
            Y = make_class(surface, (rng.randint(0, 2), rng.randint(0, 5)),
                           [rng.randint(0, 2) for _ in range(h)])
        else:
            L = make_class(surface, rng.randint(0, 8), [rng.randint(0, 5) for _ in range(h)])
            Y = make_class(surface, rng.randint(0, 4), [rng.randint(0, 2) for _ in range(h)])
        if L == Y or arithmetic_genus(Y) < 0:
            continue
        rc = restricted_cohomology(L, Y)
        checked += 1
        if rc.h0 - rc.h1 != rc.degree - rc.genus + 1 or min(rc.h0, rc.h1) < 0:
            bad += 1
    accept("9e Euler identity on restricted cohomology", bad == 0,
           f"{checked} restrictions, {bad} failures")


def test_criterion_10_k3(accept):
    report = check_dvl_families(d_max=6, m_max=4)
    nus = [(f["system"].surface.n, f["nu"], 1 - f["system"].degree) for f in report.families]
    curves = [(self_intersection(C), arithmetic_genus(C)) for C in (C1, C2)]
    restricted = {f["restricted"] for f in report.families}
    cases = [c for c in report.fixed_component_cases if c["case"] in ("iii-a", "iii-b")]
    ok = (report.ok and all(a == b for _, a, b in nus) and curves == [(0, 2), (0, 2)]
          and restricted == {(0, 1)} and cases
          and all(c["nu"] == c["nu_minus_curve"] for c in cases)
          and len(report.discrepancies) > 0)
    d = report.discrepancies[0] if report.discrepancies else None
    accept("10 K3 families and discrepancy report", ok,
           f"{len(report.families)} family members, {len(cases)} fixed-component cases, "
           f"discrepancy {d.quantity if d else None}: computed {d.computed if d else None} "
           f"vs claimed {d.claimed if d else None}")
