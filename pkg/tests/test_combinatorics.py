import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauer_pbw.combinatorics import (
    Partition,
    Pseudograph,
    asd,
    basis_morphism,
    brute_force_stabilizer,
    build_x,
    canonical_listing,
    datum_of,
    enumerate_basis,
    enumerate_sym_basis,
    even_partitions,
    group_order,
    listing_sign,
    orbit_coordinates,
    partitions,
    pseudographs,
    stabilizer_order,
    sym_basis_morphism,
    symmetrize,
)
from brauer_pbw.diagram_core import ShapeError, morphisms_rank, random_diagram

from brute import asd_classes, brute_orbits, small_shapes


def test_partition_normalizes_and_counts():
    assert Partition.of(1, 3, 2).parts == (3, 2, 1)
    assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert even_partitions(4) == [Partition.of(4), Partition.of(2, 2)]
    with pytest.raises(ValueError):
        Partition.of(0)
    assert Partition.of(2, 2, 1).remove(2) == Partition.of(2, 1)


def test_pseudograph_counts():
    # two univalent vertices joined by one edge of each label
    assert len(pseudographs(2, 1, 3)) == 1
    # e = 2, p = 2: loop pairs and double edges
    graphs = pseudographs(2, 2, 1)
    assert Pseudograph(2, 2, ((1, 1, 1), (2, 2, 0))) not in graphs  # even loop excluded
    assert Pseudograph(2, 2, ((1, 2, 0), (1, 2, 1))) in graphs
    assert len(pseudographs(2, 2, 1, odd_loops=False)) > len(graphs)


def test_pseudograph_validation():
    with pytest.raises((ShapeError, ValueError)):
        Pseudograph(2, 1, ((1, 1, 1),))


def test_transpose_and_sign():
    g = Pseudograph(2, 2, ((1, 1, 1), (2, 2, 3)))
    assert g.transpose() == Pseudograph(2, 2, ((1, 1, 3), (2, 2, 1)))
    lie = Pseudograph(2, 2, ((1, 2, 0), (1, 2, 1)))
    assert lie.transpose() == lie
    assert lie.sign() == -1


def test_build_x_shape_and_datum():
    g = Pseudograph(2, 2, ((1, 2, 0), (1, 2, 2)))
    lam = Partition.of(2)
    x = build_x(g, lam)
    assert (x.upper, x.lower) == (4, 8)
    assert asd(x, 2, 2, 4) == datum_of(g, lam)


def test_group_order():
    assert group_order(2, 2, 3) == 2 * 2 * 8 * 6


@pytest.mark.parametrize("shape", list(small_shapes()))
def test_asd_separates_orbits(shape):
    assert set(brute_orbits(*shape)) == set(asd_classes(*shape))


def _all_pairs(p, e, d):
    for gsize in range(d + 1):
        for g in pseudographs(p, e, gsize, odd_loops=False):
            for lam in partitions(d - gsize):
                yield g, lam


@pytest.mark.parametrize("shape", list(small_shapes()))
def test_stabilizer_formula(shape):
    p, e, d = shape
    for g, lam in _all_pairs(p, e, d):
        order, _ = brute_force_stabilizer(build_x(g, lam), p, e, d)
        assert stabilizer_order(g, lam) == order


@pytest.mark.parametrize("shape", list(small_shapes(max_pe=4, max_d=3)))
def test_vanishing_matches_character(shape):
    p, e, d = shape
    for g, lam in _all_pairs(p, e, d):
        f = basis_morphism(g, lam)
        even_loop = any(i == j and lab % 2 == 0 for i, j, lab in g.edges)
        odd_part = any(part % 2 for part in lam.parts)
        assert f.is_zero() == (even_loop or odd_part)


def test_symmetrize_orbit_matches_naive():
    rng = random.Random(11)
    for p, e, d in [(2, 1, 2), (2, 2, 1), (1, 2, 2)]:
        for _ in range(5):
            x = random_diagram(p * e, 2 * d, rng)
            assert symmetrize(x, p, e, d) == symmetrize(x, p, e, d, naive=True)


def test_orbit_coordinates_recover_representative():
    rng = random.Random(5)
    for p, e, d in [(2, 1, 3), (2, 2, 2), (1, 4, 2)]:
        for _ in range(10):
            x = random_diagram(p * e, 2 * d, rng)
            g, lam, sign = orbit_coordinates(x, p, e, d)
            assert asd(x, p, e, d) == datum_of(g, lam)
            assert symmetrize(x, p, e, d) == symmetrize(build_x(g, lam), p, e, d) * sign


def test_basis_is_independent():
    for p in (1, 2):
        for e in (1, 2):
            if (p * e) % 2:
                continue
            for d in range(4):
                basis = enumerate_basis(p, e, d)
                morphisms = [basis_morphism(g, lam) for g, lam in basis]
                assert all(not f.is_zero() for f in morphisms)
                assert morphisms_rank(morphisms) == len(basis)


def test_sym_basis_is_independent():
    for e in (1, 2):
        for d in range(4):
            for rho in (1, -1):
                basis = enumerate_sym_basis(e, d, rho)
                morphisms = [sym_basis_morphism(g, lam, rho) for g, lam in basis]
                assert morphisms_rank(morphisms) == len(basis)


def test_listing_sign_reversed_chain():
    g = Pseudograph(2, 1, ((1, 2, 3),))
    first = canonical_listing(g)
    chain = first.chains[0]
    flipped = type(first)(first.vertices, first.valence, (chain.reversed(),))
    assert listing_sign(flipped, first) == -1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(0, 10**6))
def test_symmetrization_is_invariant(d, seed):
    # acting by any group element changes f(x) by the character
    p, e = 2, 1
    x = random_diagram(p * e, 2 * d, random.Random(seed))
    f = symmetrize(x, p, e, d)
    g, lam, sign = orbit_coordinates(x, p, e, d)
    assert f == basis_morphism(g, lam) * sign or f.is_zero()
