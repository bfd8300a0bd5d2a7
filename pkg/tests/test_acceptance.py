"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
"""

import random
import time
from fractions import Fraction

import pytest

from brauer_pbw.classification import audit, build_kappa_w, classify, kappa_w_recursive
from brauer_pbw.combinatorics import (
    Partition,
    Pseudograph,
    basis_morphism,
    brute_force_stabilizer,
    build_x,
    enumerate_basis,
    partitions,
    pseudographs,
    stabilizer_order,
)
from brauer_pbw.diagram_core import (
    Morphism,
    as_morphism,
    cap,
    compose,
    cross,
    cup,
    empty_diagram,
    identity,
    morphisms_rank,
    PolyT,
    random_diagram,
    tensor,
)
from brauer_pbw.jacobi import graph_modify, graphical_terms, omega_direct, omega_graphical, raw_coefficient
from brauer_pbw.specialization import compare_generating_function, specialize, specialized_jacobi, verify_form_and_lie

from brute import asd_classes, brute_orbits, small_shapes


@pytest.fixture
def report(capsys):
    def emit(number, ok, text):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {text}")

    return emit


def _split_sizes(rng, total):
    # an even number of points, at most total, split between the two rows
    points = 2 * rng.randint(0, total // 2)
    upper = rng.randint(0, points)
    return upper, points - upper


def test_criterion_1_category_axioms(report):
    rng = random.Random(1)
    start = time.perf_counter()
    failures = []
    t = Morphism.from_diagram(empty_diagram(), PolyT.monomial(1))
    for _ in range(150):
        k, l = _split_sizes(rng, 8)
        a = random_diagram(k, l, rng)
        b = random_diagram(l, rng.choice([x for x in range(0, 9 - l) if (x + l) % 2 == 0]), rng)
        c = random_diagram(b.lower, rng.choice([x for x in range(0, 9 - b.lower) if (x + b.lower) % 2 == 0]), rng)
        if compose(compose(a, b), c) != compose(a, compose(b, c)):
            failures.append("associativity")
        a2 = random_diagram(*_split_sizes(rng, 4), rng)
        b2 = random_diagram(a2.lower, rng.choice([x for x in range(0, 4) if (x + a2.lower) % 2 == 0]), rng)
        if compose(tensor(a, a2), tensor(b, b2)) != tensor(compose(a, b), compose(a2, b2)):
            failures.append("interchange")
    zig = compose(tensor(identity(1), cap()), tensor(cup(), identity(1)))
    zag = compose(tensor(cap(), identity(1)), tensor(identity(1), cup()))
    if zig != as_morphism(identity(1)) or zag != as_morphism(identity(1)):
        failures.append("zig-zag")
    if compose(cap(), cup()) != t:
        failures.append("loop value")
    if compose(cross(), cup()) != as_morphism(cup()) or compose(cap(), cross()) != as_morphism(cap()):
        failures.append("symmetry")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    report(1, ok, f"category axioms on 150 random triples of at most 8 points each, {len(failures)} failures, {elapsed:.1f}s")
    assert ok, failures


def test_criterion_2_asd_separates_orbits(report):
    start = time.perf_counter()
    bad = [s for s in small_shapes() if set(brute_orbits(*s)) != set(asd_classes(*s))]
    elapsed = time.perf_counter() - start
    shapes = len(list(small_shapes()))
    ok = not bad and elapsed < 60
    report(2, ok, f"orbit classes equal datum classes for {shapes - len(bad)}/{shapes} shapes, {elapsed:.1f}s")
    assert ok, bad


def test_criterion_3_stabilizer_formula(report):
    bad, total = [], 0
    for p, e, d in small_shapes():
        for gsize in range(d + 1):
            for g in pseudographs(p, e, gsize, odd_loops=False):
                for lam in partitions(d - gsize):
                    total += 1
                    if stabilizer_order(g, lam) != brute_force_stabilizer(build_x(g, lam), p, e, d)[0]:
                        bad.append((g, lam))
    report(3, not bad, f"stabilizer formula matches brute force for {total - len(bad)}/{total} pairs")
    assert not bad


def test_criterion_4_vanishing_and_independence(report):
    vanishing_bad, independence_bad, count = [], [], 0
    for p, e, d in small_shapes():
        for gsize in range(d + 1):
            for g in pseudographs(p, e, gsize, odd_loops=False):
                for lam in partitions(d - gsize):
                    should_vanish = any(i == j and lab % 2 == 0 for i, j, lab in g.edges) or any(x % 2 for x in lam.parts)
                    if basis_morphism(g, lam).is_zero() != should_vanish:
                        vanishing_bad.append((g, lam))
    for p in (1, 2):
        for e in (1, 2):
            if (p * e) % 2:
                continue
            for d in range(4):
                basis = enumerate_basis(p, e, d)
                count += len(basis)
                ms = [basis_morphism(g, lam) for g, lam in basis]
                if any(m.is_zero() for m in ms) or morphisms_rank(ms) != len(ms):
                    independence_bad.append((p, e, d))
    ok = not vanishing_bad and not independence_bad
    report(4, ok, f"vanishing rule holds ({len(vanishing_bad)} exceptions); {count} basis elements independent ({len(independence_bad)} failing shapes)")
    assert ok


def test_criterion_5_omega_oracle(report):
    start = time.perf_counter()
    cases = [(e, d) for e in (1, 2) for d in range(1, 5)] + [(3, 1), (3, 2)]
    total, mismatches = 0, []
    for e, d in cases:
        for g, lam in enumerate_basis(2, e, d):
            for rho in (1, -1):
                total += 1
                if omega_graphical(g, lam, rho).expand() != omega_direct(g, lam, rho):
                    mismatches.append((g, lam, rho))
    worked = Pseudograph(2, 3, ((1, 1, 0), (1, 2, 1), (2, 2, 2)))
    target = graph_modify(worked, ("open", 2))
    coefficients = {
        rho: raw_coefficient(graphical_terms(worked, Partition.of(2, 2), rho), target, Partition.of(2)) for rho in (1, -1)
    }
    worked_ok = all(c == 4 for c in coefficients.values())
    elapsed = time.perf_counter() - start
    ok = not mismatches and worked_ok
    report(
        5,
        ok,
        f"direct == graphical for {total - len(mismatches)}/{total} cases; "
        f"worked-example coefficient {coefficients[1]} (rho=+1), {coefficients[-1]} (rho=-1), expected 4; {elapsed:.0f}s",
    )
    assert not mismatches
    assert worked_ok, coefficients


def test_criterion_6_classification(report):
    lines, ok = [], True
    for e in (1, 2, 3, 4):
        for rho in (1, -1):
            rep = audit(e, rho, 4)
            if not rep.ok:
                ok = False
                bad = [
                    f"d={r.degree}: kernel {r.kernel_dim} vs families {r.family_dim}, failing {r.failing_families}"
                    for r in rep.degrees
                    if not r.ok
                ]
                lines.append(f"(e={e}, rho={rho:+d}) " + "; ".join(bad))
    coefficient = kappa_w_recursive(-1, 3)[Partition.of(2)]
    kappa_ok = coefficient == Fraction(1, 2) and build_kappa_w(-1, 3).terms[(Pseudograph(2, 1, ((1, 2, 1),)), Partition.of(2))] == coefficient
    ok = ok and kappa_ok
    detail = " | ".join(lines) if lines else "kernel equals family span for all 8 (e, rho)"
    report(6, ok, f"{detail}; kappa(-1,3) coefficient from recursion {coefficient}")
    assert kappa_ok
    assert not lines, lines


def test_criterion_7_functoriality(report):
    rng = random.Random(7)
    failures = 0
    for m, n in [(2, 0), (3, 0), (0, 1), (1, 1)]:
        for _ in range(200):
            k, l = _split_sizes(rng, 5)
            r = rng.choice([x for x in range(0, 5) if (x + l) % 2 == 0])
            a, b = random_diagram(k, l, rng), random_diagram(l, r, rng)
            if specialize(compose(a, b), m, n) != specialize(a, m, n).compose(specialize(b, m, n)):
                failures += 1
    report(7, failures == 0, f"F(a o b) == F(a) o F(b) on 4 x 200 pairs, {failures} failures")
    assert failures == 0


def test_criterion_8_specialized_identities(report):
    problems = []
    checked = 0
    for m, n in [(3, 0), (0, 1), (1, 1)]:
        res = verify_form_and_lie(m, n)
        if not res.ok:
            problems.append(f"form/bracket at ({m},{n})")
        for e in (1, 2, 3, 4):
            for rho in (1, -1):
                for fam in classify(e, rho, 3):
                    checked += 1
                    residuals = specialized_jacobi(fam.build(), m, n)
                    if not all(r.is_zero() for r in residuals.values()):
                        problems.append(f"{fam.name} at ({m},{n})")
    report(8, not problems, f"form and bracket ratios exact; {checked} specialized Jacobi checks, problems: {problems or 'none'}")
    assert not problems


def test_criterion_9_generating_functions(report):
    results = []
    for variant, m, n in [("orthogonal", 3, 0), ("symplectic", 0, 1)]:
        for N in (0, 1):
            results.append(compare_generating_function(variant, N, m, n))
    ok = all(r.ok for r in results)
    parts = [
        f"{r.variant} N={r.N}: closed form {'ok' if r.closed_form_ok else 'MISMATCH'}, scalar {r.scalar}" for r in results
    ]
    report(9, ok, "; ".join(parts))
    assert all(r.closed_form_ok for r in results)
    assert ok, [r.to_json() for r in results]
