"""The specialization functor ``F_{m,2n}`` to super vector spaces and the explicit formulas.

``V = k^{m|2n}`` has basis ``e_1, ..., e_{m+2n}``; the first ``m`` are even.
Indices are 0-based internally and 1-based in JSON.  The dual basis is
``e_i^* = e_i`` for even ``i``; on each odd pair ``(a, b) = (m+2k-1, m+2k)``
it is ``e_a^* = e_b`` and ``e_b^* = -e_a``.

A :class:`SuperMap` is an even linear map ``V^{(x)k} -> V^{(x)l}`` stored
sparsely.  Arc diagrams are evaluated through a factorization into an upper
permutation, cups, caps and a lower permutation; permutations carry the
Koszul sign of the symmetric braiding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import sympy

from . import linalg
from .combinatorics import Partition, partitions, sym_basis_morphism
from .diagram_core import ArcDiagram, Morphism, alt, compose, s_d, symmetrizer, tensor, tensor_power
from .jacobi import DeformationMap

Index = tuple[int, ...]
Vector = dict[Index, Fraction]


# -- the super vector space -------------------------------------------------------------


@dataclass(frozen=True)
class SuperSpace:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError("dimensions must be non-negative")

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n

    @property
    def t(self) -> int:
        return self.m - 2 * self.n

    def parity(self, i: int) -> int:
        return 0 if i < self.m else 1

    def dual(self, i: int) -> tuple[int, int]:
        """``e_i^* = sign * e_j`` as ``(j, sign)``."""
        if i < self.m:
            return i, 1
        if (i - self.m) % 2 == 0:
            return i + 1, 1
        return i - 1, -1

    @property
    def form(self) -> dict[tuple[int, int], int]:
        """Nonzero values ``f_cup(e_a (x) e_b)``."""
        return _form(self.m, self.n)

    @property
    def coform(self) -> list[tuple[int, int, int]]:
        """``f_cap(1) = sum c * e_a (x) e_b`` as triples ``(a, b, c)``."""
        return _coform(self.m, self.n)

    def basis(self, k: int) -> Iterator[Index]:
        return itertools.product(range(self.dim), repeat=k)

    def degree(self, idx: Index) -> int:
        return sum(self.parity(i) for i in idx) % 2

    def to_gl(self, a: int, b: int) -> dict[tuple[int, int], int]:
        """Write ``e_a (x) e_b`` in the basis ``E_ij = e_i (x) e_j^*``."""
        # e_b = sign * e_j^*  where e_j^* = s e_b, so e_b = s * e_j^*
        for j in range(self.dim):
            jj, s = self.dual(j)
            if jj == b:
                return {(a, j): s}
        raise AssertionError("unreachable")

    def from_gl(self, i: int, j: int) -> tuple[tuple[int, int], int]:
        """``E_ij = sign * e_i (x) e_b``."""
        b, s = self.dual(j)
        return (i, b), s


@lru_cache(maxsize=None)
def _form(m: int, n: int) -> dict[tuple[int, int], int]:
    space = SuperSpace(m, n)
    out = {}
    for i in range(space.dim):
        j, s = space.dual(i)
        # f_cup(e_i^* (x) e_i) = 1 and e_i^* = s e_j, so f_cup(e_j (x) e_i) = s
        out[(j, i)] = s
    return out


@lru_cache(maxsize=None)
def _coform(m: int, n: int) -> list[tuple[int, int, int]]:
    space = SuperSpace(m, n)
    out = []
    for i in range(space.dim):
        j, s = space.dual(i)
        out.append((i, j, s))
    return out


def koszul_sign(space: SuperSpace, idx: Index, perm: Sequence[int]) -> int:
    """Sign of moving factor ``p`` of ``idx`` to position ``perm[p]`` (0-based) in ``V^{(x)k}``."""
    sign = 1
    for p in range(len(idx)):
        if not space.parity(idx[p]):
            continue
        for q in range(p + 1, len(idx)):
            if perm[p] > perm[q] and space.parity(idx[q]):
                sign = -sign
    return sign


def permute(space: SuperSpace, idx: Index, perm: Sequence[int]) -> tuple[Index, int]:
    out = [0] * len(idx)
    for p, i in enumerate(idx):
        out[perm[p]] = i
    return tuple(out), koszul_sign(space, idx, perm)


# -- sparse even maps ---------------------------------------------------------------------


def _add(vec: Vector, key: Index, c: Fraction | int) -> None:
    v = vec.get(key, 0) + c
    if v:
        vec[key] = v
    else:
        vec.pop(key, None)


@dataclass
class SuperMap:
    space: SuperSpace
    source: int
    target: int
    data: dict[Index, Vector] = field(default_factory=dict)

    def image(self, idx: Index) -> Vector:
        return self.data.get(tuple(idx), {})

    def apply(self, vec: Mapping[Index, Fraction]) -> Vector:
        out: Vector = {}
        for idx, c in vec.items():
            for o, d in self.image(idx).items():
                _add(out, o, c * d)
        return out

    def compose(self, other: SuperMap) -> SuperMap:
        """``self`` first, then ``other``."""
        if self.target != other.source or self.space != other.space:
            raise ValueError("maps are not composable")
        data = {}
        for idx, vec in self.data.items():
            img = other.apply(vec)
            if img:
                data[idx] = img
        return SuperMap(self.space, self.source, other.target, data)

    def tensor(self, other: SuperMap) -> SuperMap:
        """Tensor product of even maps (no Koszul sign is needed)."""
        data = {}
        for a, va in self.data.items():
            for b, vb in other.data.items():
                vec: Vector = {}
                for oa, ca in va.items():
                    for ob, cb in vb.items():
                        _add(vec, oa + ob, ca * cb)
                if vec:
                    data[a + b] = vec
        return SuperMap(self.space, self.source + other.source, self.target + other.target, data)

    def __add__(self, other: SuperMap) -> SuperMap:
        data = {k: dict(v) for k, v in self.data.items()}
        for idx, vec in other.data.items():
            tgt = data.setdefault(idx, {})
            for o, c in vec.items():
                _add(tgt, o, c)
            if not tgt:
                del data[idx]
        return SuperMap(self.space, self.source, self.target, data)

    def scaled(self, c: Fraction | int) -> SuperMap:
        if c == 0:
            return SuperMap(self.space, self.source, self.target)
        return SuperMap(
            self.space, self.source, self.target, {k: {o: x * c for o, x in v.items()} for k, v in self.data.items()}
        )

    def __sub__(self, other: SuperMap) -> SuperMap:
        return self + other.scaled(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMap):
            return NotImplemented
        return (self.space, self.source, self.target) == (other.space, other.source, other.target) and self.entries() == other.entries()

    def entries(self) -> dict[tuple[Index, Index], Fraction]:
        return {(i, o): c for i, v in self.data.items() for o, c in v.items() if c}

    def is_zero(self) -> bool:
        return not self.entries()

    def rank(self) -> int:
        return linalg.rank([v for v in self.data.values() if v])

    def to_json(self) -> dict:
        rows = []
        for idx in sorted(self.data):
            vec = self.data[idx]
            if not vec:
                continue
            rows.append(
                {
                    "in": [i + 1 for i in idx],
                    "out": [{"idx": [j + 1 for j in o], "coeff": f"{c.numerator}/{c.denominator}"} for o, c in sorted(vec.items())],
                }
            )
        return {"m": self.space.m, "n": self.space.n, "source": self.source, "target": self.target, "entries": rows}

    @classmethod
    def from_json(cls, data: Mapping) -> SuperMap:
        space = SuperSpace(int(data["m"]), int(data["n"]))
        out: dict[Index, Vector] = {}
        for row in data["entries"]:
            vec: Vector = {}
            for item in row["out"]:
                vec[tuple(j - 1 for j in item["idx"])] = Fraction(item["coeff"])
            out[tuple(i - 1 for i in row["in"])] = vec
        return cls(space, int(data["source"]), int(data["target"]), out)


def identity_map(space: SuperSpace, k: int) -> SuperMap:
    return SuperMap(space, k, k, {idx: {idx: Fraction(1)} for idx in space.basis(k)})


def permutation_map(space: SuperSpace, sigma: Sequence[int]) -> SuperMap:
    """``F`` of ``permutation_diagram(sigma)``: factor ``i`` moves to position ``sigma(i)`` (1-based ``sigma``)."""
    perm = [s - 1 for s in sigma]
    data = {}
    for idx in space.basis(len(perm)):
        out, sign = permute(space, idx, perm)
        data[idx] = {out: Fraction(sign)}
    return SuperMap(space, len(perm), len(perm), data)


def cup_map(space: SuperSpace) -> SuperMap:
    data = {}
    for (a, b), c in space.form.items():
        data[(a, b)] = {(): Fraction(c)}
    return SuperMap(space, 2, 0, data)


def cap_map(space: SuperSpace) -> SuperMap:
    vec: Vector = {}
    for a, b, c in space.coform:
        _add(vec, (a, b), c)
    return SuperMap(space, 0, 2, {(): vec})


# -- evaluating arc diagrams ------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """``x = lower_perm o caps o cups o upper_perm`` (applied right to left).

    ``upper_perm`` puts the through strands first, ordered by their lower end,
    followed by the upper arcs as adjacent pairs; ``lower_perm`` sends the
    through strands and the cap pairs to their lower positions.  Permutations
    are 1-based images.
    """

    upper: int
    lower: int
    through: int
    cups: int
    caps: int
    upper_perm: tuple[int, ...]
    lower_perm: tuple[int, ...]


def factorize(x: ArcDiagram) -> Factorization:
    k, l = x.upper, x.lower
    through, up_arcs, low_arcs = [], [], []
    for a, b in x.arcs:
        if b <= k:
            up_arcs.append((a, b))
        elif a > k:
            low_arcs.append((a - k, b - k))
        else:
            through.append((b - k, a))
    through.sort()
    upper_perm = [0] * k
    for pos, (_, a) in enumerate(through, 1):
        upper_perm[a - 1] = pos
    s = len(through)
    for j, (a, b) in enumerate(up_arcs):
        upper_perm[a - 1] = s + 2 * j + 1
        upper_perm[b - 1] = s + 2 * j + 2
    lower_perm = [0] * (s + 2 * len(low_arcs))
    for pos, (lo, _) in enumerate(through):
        lower_perm[pos] = lo
    for j, (a, b) in enumerate(low_arcs):
        lower_perm[s + 2 * j] = a
        lower_perm[s + 2 * j + 1] = b
    return Factorization(k, l, s, len(up_arcs), len(low_arcs), tuple(upper_perm), tuple(lower_perm))


def factorization_morphism(f: Factorization) -> Morphism:
    """The Brauer-category composite described by ``f``; equals the factorized diagram."""
    from .diagram_core import cap, cup, identity, permutation_diagram

    steps = [Morphism.from_diagram(permutation_diagram(list(f.upper_perm)))]
    steps.append(tensor(identity(f.through), tensor_power(cup(), f.cups)))
    steps.append(tensor(identity(f.through), tensor_power(cap(), f.caps)))
    steps.append(Morphism.from_diagram(permutation_diagram(list(f.lower_perm))))
    out = steps[0]
    for s in steps[1:]:
        out = compose(out, s)
    return out


def _diagram_image(space: SuperSpace, f: Factorization, idx: Index) -> Vector:
    form = space.form
    moved, sign = permute(space, idx, [p - 1 for p in f.upper_perm])
    s = f.through
    for j in range(f.cups):
        c = form.get((moved[s + 2 * j], moved[s + 2 * j + 1]))
        if not c:
            return {}
        sign *= c
    head = moved[:s]
    out: Vector = {}
    lower = [p - 1 for p in f.lower_perm]
    for choice in itertools.product(space.coform, repeat=f.caps):
        coeff = sign
        tail: list[int] = []
        for a, b, c in choice:
            coeff *= c
            tail += [a, b]
        target, ksign = permute(space, head + tuple(tail), lower)
        _add(out, target, coeff * ksign)
    return out


def specialize_diagram(x: ArcDiagram, space: SuperSpace) -> SuperMap:
    f = factorize(x)
    data = {}
    for idx in space.basis(x.upper):
        img = _diagram_image(space, f, idx)
        if img:
            data[idx] = img
    return SuperMap(space, x.upper, x.lower, data)


def specialize(f: Morphism | ArcDiagram, m: int, n: int) -> SuperMap:
    """``F_{m,2n}(f)`` with ``t`` evaluated at ``m - 2n``."""
    space = SuperSpace(m, n)
    if isinstance(f, ArcDiagram):
        return specialize_diagram(f, space)
    out = SuperMap(space, f.upper, f.lower)
    t = Fraction(space.t)
    for x, c in f.terms.items():
        value = c(t)
        if value:
            out = out + specialize_diagram(x, space).scaled(value)
    return out


# -- the Lie superalgebra side ---------------------------------------------------------------


def matrix_of(space: SuperSpace, vec: Mapping[Index, Fraction]) -> sympy.Matrix:
    """The ``gl`` matrix of an element of ``V (x) V`` via ``E_ij = e_i (x) e_j^*``."""
    M = sympy.zeros(space.dim, space.dim)
    for (a, b), c in vec.items():
        for (i, j), s in space.to_gl(a, b).items():
            M[i, j] += sympy.Rational(c.numerator, c.denominator) * s
    return M


def tensor_of(space: SuperSpace, M: sympy.Matrix) -> Vector:
    out: Vector = {}
    for i in range(space.dim):
        for j in range(space.dim):
            if M[i, j] != 0:
                (a, b), s = space.from_gl(i, j)
                val = Fraction(int(sympy.fraction(M[i, j])[0]), int(sympy.fraction(M[i, j])[1]))
                _add(out, (a, b), val * s)
    return out


def supertrace(space: SuperSpace, M: sympy.Matrix) -> sympy.Expr:
    return sum(((-1) ** space.parity(i)) * M[i, i] for i in range(space.dim))


def lie_element(space: SuperSpace, a: int, b: int) -> Vector:
    """``e_a (x) e_b - (-1)^{|a||b|} e_b (x) e_a``, the image of ``alt_2``."""
    vec: Vector = {}
    _add(vec, (a, b), 1)
    _add(vec, (b, a), -((-1) ** (space.parity(a) * space.parity(b))))
    return vec


def action_map(space: SuperSpace, k: int) -> SuperMap:
    """``gl (x) V^{(x)k} -> V^{(x)k}`` by the super Leibniz rule, with ``e_i (x) e_j`` acting as ``v -> e_i f_cup(e_j, v)``."""
    form = space.form
    data = {}
    for idx in space.basis(k + 2):
        i, j, rest = idx[0], idx[1], idx[2:]
        px = (space.parity(i) + space.parity(j)) % 2
        vec: Vector = {}
        passed = 0
        for p, kp in enumerate(rest):
            c = form.get((j, kp))
            if c:
                sign = -1 if px and passed % 2 else 1
                _add(vec, rest[:p] + (i,) + rest[p + 1 :], c * sign)
            passed += space.parity(kp)
        if vec:
            data[idx] = vec
    return SuperMap(space, k + 2, k, data)


# -- ratio tests ---------------------------------------------------------------------------------


def proportionality(a: SuperMap, b: SuperMap) -> Fraction | None:
    """The scalar ``c`` with ``a == c * b`` if it exists and ``b`` is nonzero, else ``None``."""
    ea, eb = a.entries(), b.entries()
    if set(ea) != set(eb) or not eb:
        return None
    ratios = {ea[k] / eb[k] for k in eb}
    if len(ratios) != 1:
        return None
    return ratios.pop()


def are_proportional(a: SuperMap, b: SuperMap) -> bool:
    """``a == c * b`` for some nonzero ``c``, or both maps vanish."""
    if a.is_zero() and b.is_zero():
        return True
    return proportionality(a, b) is not None


# -- explicit formulas -----------------------------------------------------------------------------


def x_star(space: SuperSpace, i: int, j: int) -> Vector:
    """``X^*_ij = e_i^* (x) e_j - (-1)^{|i||j|} e_j (x) e_i^*``."""
    ii, s = space.dual(i)
    vec: Vector = {}
    _add(vec, (ii, j), s)
    _add(vec, (j, ii), -s * (-1) ** (space.parity(i) * space.parity(j)))
    return vec


def _tensor_vectors(vectors: Sequence[Mapping[Index, Fraction]]) -> Vector:
    out: Vector = {(): Fraction(1)}
    for v in vectors:
        nxt: Vector = {}
        for a, ca in out.items():
            for b, cb in v.items():
                _add(nxt, a + b, ca * cb)
        out = nxt
    return out


def chain(space: SuperSpace, i: int, j: int, length: int) -> Vector:
    """``sum X^*_{i,i_2} (x) X^*_{i_2,i_3} (x) ... (x) X^*_{i_length,j}`` as a tensor of ``length`` factors."""
    if length == 0:
        raise ValueError("a chain needs at least one factor")
    out: Vector = {}
    for mids in itertools.product(range(space.dim), repeat=length - 1):
        path = (i,) + mids + (j,)
        for key, c in _tensor_vectors([x_star(space, path[r], path[r + 1]) for r in range(length)]).items():
            _add(out, key, c)
    return out


def trace_chain(space: SuperSpace, length: int) -> Vector:
    """``sum (-1)^{|i_1|} X^*_{i_1,i_2} (x) ... (x) X^*_{i_length,i_1}``."""
    out: Vector = {}
    for path in itertools.product(range(space.dim), repeat=length):
        sign = (-1) ** space.parity(path[0])
        cyc = path + (path[0],)
        for key, c in _tensor_vectors([x_star(space, cyc[r], cyc[r + 1]) for r in range(length)]).items():
            _add(out, key, c * sign)
    return out


def _input_in_e_star(space: SuperSpace, a: int, b: int) -> tuple[int, int, int]:
    """``e_a (x) e_b = sign * E^*_{i,b}``."""
    for i in range(space.dim):
        ii, s = space.dual(i)
        if ii == a:
            return i, b, s
    raise AssertionError("unreachable")


def build_h_mu_tilde(mu: Partition, m: int, n: int) -> SuperMap:
    """``h~_mu``: ``T^e V -> T^{2|mu|} V``, consecutive pairs read as ``E^*_{ij}``; no symmetrization."""
    space = SuperSpace(m, n)
    e = 2 * mu.length
    data = {}
    for idx in space.basis(e):
        factors = []
        sign = 1
        for k, part in enumerate(mu.parts):
            i, j, s = _input_in_e_star(space, idx[2 * k], idx[2 * k + 1])
            sign *= s
            factors.append(chain(space, i, j, part))
        vec = {key: c * sign for key, c in _tensor_vectors(factors).items() if c}
        if vec:
            data[idx] = vec
    return SuperMap(space, e, 2 * mu.size, data)


def build_h_mu(mu: Partition, m: int, n: int) -> SuperMap:
    """``h_mu`` restricted to ``Lambda^e V`` (pre-composed with ``alt_e``) and symmetrized into ``S^{|mu|} g``."""
    e = 2 * mu.length
    pre = specialize(alt(e), m, n)
    post = specialize(s_d(mu.size), m, n)
    return pre.compose(build_h_mu_tilde(mu, m, n)).compose(post)


def build_h_pair(mu: Partition, nu: Partition, rho: int, m: int, n: int) -> SuperMap:
    """``h_mu (x) h_nu + rho * h_nu (x) h_mu`` on ``S^{2 rho}(Lambda^e V)``, products taken in ``S g``."""
    e = 2 * mu.length
    pre = specialize(compose(symmetrizer(2, rho, e), tensor_power(alt(e), 2)), m, n)
    post = specialize(s_d(mu.size + nu.size), m, n)
    a = build_h_mu_tilde(mu, m, n).tensor(build_h_mu_tilde(nu, m, n))
    b = build_h_mu_tilde(nu, m, n).tensor(build_h_mu_tilde(mu, m, n))
    return pre.compose(a + b.scaled(rho)).compose(post)


def build_g_tilde(k: int, nu: Partition, m: int, n: int) -> SuperMap:
    """``g~_{k,nu}``: ``T^2 V -> T^{2(k+|nu|)} V``, chain of length ``k`` followed by trace factors."""
    space = SuperSpace(m, n)
    traces = [trace_chain(space, part) for part in nu.parts]
    data = {}
    for a, b in space.basis(2):
        i, j, s = _input_in_e_star(space, a, b)
        if k == 0:
            first: Vector = {(): Fraction(1)} if i == j else {}
            # the empty chain is the pairing E^*_{ij} -> delta_ij
        else:
            first = chain(space, i, j, k)
        vec = {key: c * s for key, c in _tensor_vectors([first] + traces).items() if c}
        if vec:
            data[(a, b)] = vec
    return SuperMap(space, 2, 2 * (k + nu.size), data)


def build_g(k: int, nu: Partition, rho: int, m: int, n: int) -> SuperMap:
    """``g_{k,nu}`` restricted to ``S^{2 rho} V`` and symmetrized into ``S^{k+|nu|} g``."""
    if (-1) ** k != rho:
        raise ValueError("g_{k,nu} needs (-1)^k == rho")
    pre = specialize(symmetrizer(2, rho, 1), m, n)
    post = specialize(s_d(k + nu.size), m, n)
    return pre.compose(build_g_tilde(k, nu, m, n)).compose(post)


def kappa_formula(rho: int, w: int, m: int, n: int) -> SuperMap:
    """``sum_nu coeff(nu) * g_{w - |nu|, nu}`` with the ``kappa^(rho, w)`` coefficients."""
    from .classification import kappa_w_coefficients

    out = None
    for nu, c in kappa_w_coefficients(rho, w).items():
        term = build_g(w - nu.size, nu, rho, m, n).scaled(c)
        out = term if out is None else out + term
    return out


# -- deformation maps after specialization ------------------------------------------------------


def kappa_morphism(kappa: DeformationMap, degree: int) -> Morphism:
    """``sum c * f(x^rho(graph, partition))`` over the degree-``degree`` terms, restricted to ``S^{2 rho} W``."""
    e = kappa.e
    total = Morphism.zero(2 * e, 2 * degree)
    for (g, lam), c in kappa.terms.items():
        if g.size + lam.size == degree:
            total = total + sym_basis_morphism(g, lam, kappa.rho) * c
    pre = compose(symmetrizer(2, kappa.rho, e), tensor_power(alt(e), 2))
    return compose(pre, total)


def specialize_kappa(kappa: DeformationMap, m: int, n: int) -> dict[int, SuperMap]:
    return {d: specialize(kappa_morphism(kappa, d), m, n) for d in kappa.degrees()}


def specialized_jacobi(kappa: DeformationMap, m: int, n: int) -> dict[int, SuperMap]:
    """Top ``Ug``-degree part of the cyclic Jacobi sum, per degree ``d >= 1``.

    For ``u, v, w`` in ``S^{3 rho} W`` the commutator of ``kappa_d(u, v)`` with
    ``w`` has leading part in ``S^{d-1} g (x) W`` where one tensor factor of
    ``kappa_d(u, v)`` acts on ``w``.  The last factor is used; by symmetry of
    ``kappa_d(u, v)`` this is ``1/d`` of the sum over all factors.
    """
    e = kappa.e
    space = SuperSpace(m, n)
    restriction = specialize(compose(symmetrizer(3, kappa.rho, e), tensor_power(alt(e), 3)), m, n)
    out = {}
    for d in kappa.degrees():
        if d == 0:
            continue
        k_map = specialize(kappa_morphism(kappa, d), m, n)
        body = restriction.compose(k_map.tensor(identity_map(space, e)))
        act = identity_map(space, 2 * d - 2).tensor(action_map(space, e))
        out[d] = body.compose(act)
    return out


def equivariance_defect(kappa: DeformationMap, m: int, n: int, degree: int, samples: Iterable[tuple[int, int]]) -> bool:
    """Whether ``F(kappa_d)`` commutes with the action of the Lie elements ``lie_element(a, b)`` for all samples."""
    space = SuperSpace(m, n)
    e = kappa.e
    k_map = specialize(kappa_morphism(kappa, degree), m, n)
    act_in = action_map(space, 2 * e)
    act_out = action_map(space, 2 * degree)
    for a, b in samples:
        x = lie_element(space, a, b)
        for idx in space.basis(2 * e):
            vec = {key + idx: c for key, c in x.items()}
            left = k_map.apply(act_in.apply(vec))
            mid = {key + o: c * d for o, d in k_map.image(idx).items() for key, c in x.items()}
            right = act_out.apply(mid)
            if left != right:
                return True
    return False


# -- verification of the trace form and the bracket ------------------------------------------


@dataclass
class FormLieReport:
    m: int
    n: int
    form_scalar: Fraction | None
    lie_scalar: Fraction | None
    lie_trivial: bool = False

    @property
    def ok(self) -> bool:
        return self.form_scalar is not None and (self.lie_scalar is not None or self.lie_trivial)

    def to_json(self) -> dict:
        def f(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "m": self.m,
            "n": self.n,
            "form_scalar": f(self.form_scalar),
            "lie_scalar": f(self.lie_scalar),
            "lie_trivial": self.lie_trivial,
            "ok": self.ok,
        }


def _sympy_fraction(x) -> Fraction:
    num, den = sympy.fraction(sympy.nsimplify(x))
    return Fraction(int(num), int(den))


def form_oracle(m: int, n: int) -> SuperMap:
    """``(X, Y) -> str(XY)`` on ``g (x) g`` with ``g`` the image of ``alt_2``, inputs symmetrized."""
    space = SuperSpace(m, n)
    data = {}
    for idx in space.basis(4):
        a, b, c, d = idx
        X, Y = matrix_of(space, lie_element(space, a, b)), matrix_of(space, lie_element(space, c, d))
        px = (space.parity(a) + space.parity(b)) % 2
        py = (space.parity(c) + space.parity(d)) % 2
        val = supertrace(space, X * Y) + (-1) ** (px * py) * supertrace(space, Y * X)
        if val != 0:
            data[idx] = {(): _sympy_fraction(val)}
    return SuperMap(space, 4, 0, data)


def lie_oracle(m: int, n: int) -> SuperMap:
    """``(X, Y) -> [X, Y]`` (supercommutator), inputs antisymmetrized, output as a tensor in ``V (x) V``."""
    space = SuperSpace(m, n)
    data = {}
    for idx in space.basis(4):
        a, b, c, d = idx
        X, Y = matrix_of(space, lie_element(space, a, b)), matrix_of(space, lie_element(space, c, d))
        px = (space.parity(a) + space.parity(b)) % 2
        py = (space.parity(c) + space.parity(d)) % 2
        br = X * Y - (-1) ** (px * py) * Y * X
        # antisymmetrize the inputs: [X, Y] - (-1)^{|X||Y|} [Y, X] = 2 [X, Y]
        vec = tensor_of(space, 2 * br)
        if vec:
            data[idx] = vec
    return SuperMap(space, 4, 2, data)


def verify_form_and_lie(m: int, n: int) -> FormLieReport:
    from .classification import build_special

    form = specialize(kappa_morphism(build_special("form"), 0), m, n)
    lie = specialize(kappa_morphism(build_special("lie"), 1), m, n)
    oracle = lie_oracle(m, n)
    # an abelian algebra (so_2) has a zero bracket on both sides
    trivial = lie.is_zero() and oracle.is_zero()
    return FormLieReport(m, n, proportionality(form, form_oracle(m, n)), proportionality(lie, oracle), trivial)


# -- generating functions ------------------------------------------------------------------------


def lie_matrix(variant: str, m: int, n: int) -> tuple[sympy.Matrix, list[sympy.Symbol]]:
    """A generic element of ``so_m`` (antisymmetric) or ``sp_2n`` (``B^{-1} S`` with ``S`` symmetric)."""
    if variant == "orthogonal":
        if n:
            raise ValueError("the orthogonal variant needs n == 0")
        syms = []
        A = sympy.zeros(m, m)
        for i in range(m):
            for j in range(i + 1, m):
                s = sympy.Symbol(f"a_{i + 1}_{j + 1}")
                syms.append(s)
                A[i, j], A[j, i] = s, -s
        return A, syms
    if variant == "symplectic":
        if m:
            raise ValueError("the symplectic variant needs m == 0")
        space = SuperSpace(0, n)
        B = sympy.zeros(2 * n, 2 * n)
        for (a, b), c in space.form.items():
            B[a, b] = c
        syms = []
        S = sympy.zeros(2 * n, 2 * n)
        for i in range(2 * n):
            for j in range(i, 2 * n):
                s = sympy.Symbol(f"s_{i + 1}_{j + 1}")
                syms.append(s)
                S[i, j] = S[j, i] = s
        # A preserves the form B: A^T B + B A = 0
        return B.inv() * S, syms
    raise ValueError(f"unknown variant {variant!r}")


def _form_matrix(space: SuperSpace) -> sympy.Matrix:
    B = sympy.zeros(space.dim, space.dim)
    for (a, b), c in space.form.items():
        B[a, b] = c
    return B


def generating_coefficient(variant: str, N: int, m: int, n: int, v1: Sequence[int], v2: Sequence[int]) -> sympy.Expr:
    """The ``tau^{2N}`` coefficient of the orthogonal or symplectic generating function, expanded in ``A``."""
    A, _ = lie_matrix(variant, m, n)
    space = SuperSpace(m, n)
    B = _form_matrix(space)
    tau = sympy.Symbol("tau")
    u1, u2 = sympy.Matrix(v1), sympy.Matrix(v2)
    order = 2 * N
    powers = [sympy.eye(A.shape[0])]
    for _ in range(order + 1):
        powers.append(powers[-1] * A)

    def pair(M):
        return (u2.T * B * M * u1)[0, 0]

    if variant == "orthogonal":
        vec = sum(((-1) ** k) * tau ** (2 * k) * pair(powers[2 * k + 1]) for k in range(N + 1))
        log = sum(
            (sympy.Rational((-1) ** k, 2 * k) * tau ** (2 * k) * powers[2 * k].trace() for k in range(1, N + 1)),
            sympy.Integer(0),
        )
    else:
        vec = sum(tau ** (2 * k) * pair(powers[2 * k]) for k in range(N + 1))
        log = -sum((sympy.Rational(1, k) * tau**k * powers[k].trace() for k in range(1, order + 1)), sympy.Integer(0))
    ex = sum((log**ell * sympy.Rational(1, math.factorial(ell)) for ell in range(order + 1)), sympy.Integer(0))
    series = sympy.expand(vec * ex)
    return sympy.expand(series.coeff(tau, order))


def closed_form_coefficient(variant: str, N: int, m: int, n: int, v1: Sequence[int], v2: Sequence[int]) -> sympy.Expr:
    """The combinatorial closed form of :func:`generating_coefficient`."""
    A, _ = lie_matrix(variant, m, n)
    space = SuperSpace(m, n)
    B = _form_matrix(space)
    u1, u2 = sympy.Matrix(v1), sympy.Matrix(v2)

    def pair(M):
        return (u2.T * B * M * u1)[0, 0]

    total = sympy.Integer(0)
    if variant == "orthogonal":
        for size in range(0, 2 * N + 1, 2):
            for nu in partitions(size, even_only=True):
                total += _nu_term(A, nu) * pair(A ** (2 * N + 1 - size))
        total *= (-1) ** N
    else:
        for size in range(0, 2 * N + 1):
            for nu in partitions(size):
                total += (-1) ** nu.length * _nu_term(A, nu) * pair(A ** (2 * N - size))
    return sympy.expand(total)


def _nu_term(A: sympy.Matrix, nu: Partition) -> sympy.Expr:
    # c_nu / (#nu)! = 1 / prod m_nu(.)!
    coeff = sympy.Rational(1, math.prod(math.factorial(c) for c in nu.multiplicities().values()))
    for part in nu.parts:
        coeff *= (A**part).trace() / part
    return coeff


def expand_generating_function(variant: str, N: int, m: int, n: int) -> dict[tuple[int, int], tuple[sympy.Expr, sympy.Expr]]:
    """For each pair of basis vectors ``(v1, v2) = (e_a, e_b)``: the series coefficient and the closed form."""
    space = SuperSpace(m, n)
    out = {}
    for a in range(space.dim):
        for b in range(space.dim):
            v1 = [int(i == a) for i in range(space.dim)]
            v2 = [int(i == b) for i in range(space.dim)]
            out[(a, b)] = (
                generating_coefficient(variant, N, m, n, v1, v2),
                closed_form_coefficient(variant, N, m, n, v1, v2),
            )
    return out


def polynomial_of(space: SuperSpace, vec: Mapping[Index, Fraction], A: sympy.Matrix) -> sympy.Expr:
    """Pair a tensor in ``(V (x) V)^{(x)w}`` with ``A^{(x)w}`` through ``X -> str(X A)`` on each factor."""
    total = sympy.Integer(0)
    cache: dict[tuple[int, int], sympy.Expr] = {}

    def pairing(a: int, b: int) -> sympy.Expr:
        if (a, b) not in cache:
            M = matrix_of(space, {(a, b): Fraction(1)})
            cache[(a, b)] = supertrace(space, M * A)
        return cache[(a, b)]

    for idx, c in vec.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for r in range(0, len(idx), 2):
            term *= pairing(idx[r], idx[r + 1])
        total += term
    return sympy.expand(total)


@dataclass
class GeneratingReport:
    variant: str
    N: int
    m: int
    n: int
    closed_form_ok: bool
    scalar: Fraction | None

    @property
    def ok(self) -> bool:
        return self.closed_form_ok and self.scalar is not None

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "N": self.N,
            "m": self.m,
            "n": self.n,
            "closed_form_ok": self.closed_form_ok,
            "scalar": None if self.scalar is None else f"{self.scalar.numerator}/{self.scalar.denominator}",
            "ok": self.ok,
        }


def compare_generating_function(variant: str, N: int, m: int, n: int) -> GeneratingReport:
    """Series vs closed form, and closed form vs ``F(kappa^(rho, w))`` paired with ``A``, up to one scalar.

    Orthogonal: ``rho = -1, w = 2N + 1``.  Symplectic: ``rho = +1, w = 2N``.
    """
    from .classification import build_kappa_w

    table = expand_generating_function(variant, N, m, n)
    closed_ok = all(sympy.expand(a - b) == 0 for a, b in table.values())
    rho, w = (-1, 2 * N + 1) if variant == "orthogonal" else (1, 2 * N)
    space = SuperSpace(m, n)
    A, syms = lie_matrix(variant, m, n)
    k_map = specialize(kappa_morphism(build_kappa_w(rho, w), w), m, n)
    scalar = None
    consistent = True
    for (a, b), (series, _) in table.items():
        poly = polynomial_of(space, k_map.image((a, b)), A)
        series = sympy.expand(series)
        if series == 0 and poly == 0:
            continue
        if series == 0 or poly == 0:
            consistent = False
            break
        ratio = sympy.cancel(poly / series)
        if not ratio.is_number:
            consistent = False
            break
        r = _sympy_fraction(ratio)
        if scalar is None:
            scalar = r
        elif r != scalar:
            consistent = False
            break
    return GeneratingReport(variant, N, m, n, closed_ok, scalar if consistent else None)


__all__ = [
    "Factorization",
    "FormLieReport",
    "GeneratingReport",
    "SuperMap",
    "SuperSpace",
    "action_map",
    "are_proportional",
    "build_g",
    "build_g_tilde",
    "build_h_mu",
    "build_h_mu_tilde",
    "build_h_pair",
    "cap_map",
    "chain",
    "closed_form_coefficient",
    "compare_generating_function",
    "cup_map",
    "equivariance_defect",
    "expand_generating_function",
    "factorization_morphism",
    "factorize",
    "form_oracle",
    "generating_coefficient",
    "identity_map",
    "kappa_formula",
    "kappa_morphism",
    "koszul_sign",
    "lie_element",
    "lie_matrix",
    "lie_oracle",
    "matrix_of",
    "permutation_map",
    "polynomial_of",
    "proportionality",
    "specialize",
    "specialize_diagram",
    "specialize_kappa",
    "specialized_jacobi",
    "supertrace",
    "trace_chain",
    "verify_form_and_lie",
    "x_star",
]
