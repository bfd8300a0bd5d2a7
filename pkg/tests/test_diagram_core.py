import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauer_pbw.diagram_core import (
    ArcDiagram,
    Morphism,
    PolyT,
    ShapeError,
    all_diagrams,
    alt,
    as_morphism,
    block_permutation,
    cap,
    compose,
    compose_diagrams,
    cross,
    cup,
    cyc,
    empty_diagram,
    identity,
    morphisms_rank,
    permutation_diagram,
    permutation_sign,
    random_diagram,
    s_d,
    s_d_reversed,
    symmetrizer,
    tensor,
)

from conftest import diagrams

T = PolyT.monomial(1)


def test_polyt_arithmetic():
    p = PolyT([1, 2])  # 1 + 2t
    q = PolyT([0, 0, 3])
    assert (p * q).coeffs == (0, 0, 3, 6)
    assert (p - p).is_zero()
    assert p(Fraction(1, 2)) == 2
    assert PolyT([1, 0, 0]) == PolyT.const(1)
    assert p.shift(2) == PolyT([0, 0, 1, 2])


def test_arc_diagram_validation():
    with pytest.raises(ShapeError):
        ArcDiagram(1, 0, [])
    with pytest.raises(ShapeError):
        ArcDiagram(1, 1, [(1, 1)])
    with pytest.raises(ShapeError):
        ArcDiagram(2, 2, [(1, 2), (1, 3)])


def test_composition_is_permutation_order():
    s, t = [2, 3, 1], [2, 1, 3]
    # s first, then t gives the permutation i -> t(s(i))
    t_after_s = [t[s[i] - 1] for i in range(3)]
    assert compose(permutation_diagram(s), permutation_diagram(t)) == as_morphism(permutation_diagram(t_after_s))


def test_closed_loop_counts_t():
    d, loops = compose_diagrams(cap(), cup())
    assert d == empty_diagram() and loops == 1
    assert compose(cap(), cup()) == Morphism.from_diagram(empty_diagram(), T)


def test_zigzag_both_sides():
    left = compose(tensor(identity(1), cap()), tensor(cup(), identity(1)))
    right = compose(tensor(cap(), identity(1)), tensor(identity(1), cup()))
    assert left == as_morphism(identity(1))
    assert right == as_morphism(identity(1))


def test_cup_and_cap_are_symmetric():
    assert compose(cross(), cup()) == as_morphism(cup())
    assert compose(cap(), cross()) == as_morphism(cap())


def test_number_of_diagrams_is_double_factorial():
    for k, l in [(0, 0), (1, 1), (2, 2), (3, 1), (3, 3), (4, 2)]:
        n = k + l
        assert sum(1 for _ in all_diagrams(k, l)) == math.prod(range(n - 1, 0, -2))


def test_symmetrizer_is_quasi_idempotent():
    for n in (2, 3):
        for sign in (1, -1):
            s = symmetrizer(n, sign)
            assert compose(s, s) == s * math.factorial(n)


def test_block_symmetrizer_and_s_d():
    assert compose(symmetrizer(2, 1, 2), symmetrizer(2, 1, 2)) == symmetrizer(2, 1, 2) * 2
    for d in range(4):
        assert s_d(d) == s_d_reversed(d)
    assert len(s_d(2)) == 8


def test_alt_kills_cup():
    # a cup is symmetric, so it vanishes on the antisymmetric part
    assert compose(alt(2), cup()).is_zero()


def test_permutation_sign():
    assert permutation_sign([1, 2, 3]) == 1
    assert permutation_sign([2, 1, 3]) == -1
    assert permutation_sign([2, 3, 1]) == 1


def test_cyc_has_e_terms():
    assert len(cyc(3)) == 3


def test_block_permutation_moves_blocks():
    b = block_permutation([2, 1], 2)
    assert b == permutation_diagram([3, 4, 1, 2])


def test_rank_of_diagrams_is_free():
    ds = [as_morphism(d) for d in all_diagrams(2, 2)]
    assert morphisms_rank(ds) == 3
    assert morphisms_rank(ds + [ds[0] * 2 + ds[1]]) == 3


def test_json_round_trip_is_bit_exact():
    rng = random.Random(3)
    f = as_morphism(random_diagram(3, 3, rng)) * PolyT([Fraction(1, 3), -2]) + as_morphism(random_diagram(3, 3, rng))
    text = json.dumps(f.to_json())
    g = Morphism.from_json(json.loads(text))
    assert g == f
    assert json.dumps(g.to_json()) == text


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        compose(identity(2), identity(3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_associativity(data):
    a = data.draw(diagrams(max_points=6))
    b = data.draw(diagrams(upper=a.lower, max_points=a.lower + 4))
    c = data.draw(diagrams(upper=b.lower, max_points=b.lower + 4))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_interchange(data):
    a = data.draw(diagrams(max_points=4))
    b = data.draw(diagrams(max_points=4))
    c = data.draw(diagrams(upper=a.lower, max_points=a.lower + 4))
    d = data.draw(diagrams(upper=b.lower, max_points=b.lower + 4))
    assert compose(tensor(a, b), tensor(c, d)) == tensor(compose(a, c), compose(b, d))


@settings(max_examples=60, deadline=None)
@given(diagrams())
def test_identity_is_neutral(x):
    assert compose(identity(x.upper), x) == as_morphism(x)
    assert compose(x, identity(x.lower)) == as_morphism(x)


@settings(max_examples=40, deadline=None)
@given(diagrams())
def test_diagram_json_round_trip(x):
    assert ArcDiagram.from_json(json.loads(json.dumps(x.to_json()))) == x
