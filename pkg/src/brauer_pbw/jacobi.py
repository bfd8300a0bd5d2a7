"""The reduced Jacobi operator ``omega`` and its pseudograph description.

Two independent routes are provided:

* :func:`omega_direct` expands everything into arc diagrams: it builds
  ``x(graph, partition)``, applies the operators ``C^{+/-}_k``, post-composes
  with ``s_{d-1} (x) cyc_e`` and pre-composes with the symmetrizer onto
  ``S^{3 rho}(Lambda^e V)``.
* :func:`omega_graphical` works purely on pseudographs via the edge-splitting
  and cycle-opening modifications and returns the result in the basis
  ``y_d(graph4, partition)`` indexed by four-vertex graphs.

Four-vertex graphs describe morphisms ``T^3 W -> T^{2d-2} V (x) W`` where the
fourth block of ``e`` points has been bent down to the right of the lower
points, keeping its left-to-right order.  ``y_d`` includes the projection of
that block onto ``Lambda^e V`` so that it lies in ``Hom(S^{3 rho} W, Ug (x) W)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .combinatorics import (
    Chain,
    Listing,
    Partition,
    Pseudograph,
    ShapeError,
    canonical_listing,
    diagram_from_listing,
    listing_sign,
    orbit_coordinates,
)
from .diagram_core import (
    ArcDiagram,
    Morphism,
    alt,
    block_permutation,
    compose,
    compose_all,
    cup,
    cyc,
    identity,
    permutation_diagram,
    permutation_sign,
    s_d,
    symmetrizer,
    tensor,
    tensor_all,
    tensor_power,
)

Key = tuple[Pseudograph, Partition]


def _check_rho(rho: int) -> None:
    if rho not in (1, -1):
        raise ValueError(f"rho must be +1 or -1, got {rho}")


# -- the C operator ------------------------------------------------------------------


def c_operator(x: ArcDiagram | Morphism, k: int, r: int, e: int) -> Morphism:
    """``C^r_{k,d}(x)``: append ``e`` strands, move lower pair ``k`` to the end, cup it off.

    The moved pair's right point (left point if ``r == -1``) is joined to the
    first new strand; the other point becomes the first point of the output
    block of ``e`` points.
    """
    x = x if isinstance(x, Morphism) else Morphism.from_diagram(x)
    if x.lower % 2:
        raise ShapeError("the C operator needs an even number of lower points")
    d = x.lower // 2
    if not 1 <= k <= d:
        raise ValueError(f"pair index k={k} out of range 1..{d}")
    _check_rho(r)
    # the cycle (d, d-1, ..., k) on lower pairs: pair k goes last, later pairs move down
    rotation = list(range(1, k)) + [d] + list(range(k, d))
    steps = [tensor(x, identity(e)), tensor(block_permutation(rotation, 2), identity(e))]
    if r == -1:
        steps.append(tensor_all(identity(2 * d - 2), permutation_diagram([2, 1]), identity(e)))
    steps.append(tensor_all(identity(2 * d - 1), cup(), identity(e - 1)))
    return compose_all(*steps)


@lru_cache(maxsize=None)
def restriction(e: int, rho: int) -> Morphism:
    """Pre-composition onto ``S^{3 rho}(Lambda^e V)``: the signed block symmetrizer, then ``alt_e`` on each block.

    No normalization factor is divided out.
    """
    return compose(symmetrizer(3, rho, e), tensor_power(alt(e), 3))


@lru_cache(maxsize=None)
def _post_cyc(d: int, e: int) -> Morphism:
    return tensor(s_d(d - 1), cyc(e))


@lru_cache(maxsize=None)
def _post_alt(d: int, e: int) -> Morphism:
    return tensor(s_d(d - 1), alt(e))


def apply_I(y: Morphism, d: int, e: int, rho: int) -> Morphism:
    """``(s_{d-1} (x) cyc_e) o y`` restricted to ``S^{3 rho} W``."""
    return compose(compose(restriction(e, rho), y), _post_cyc(d, e))


# -- the direct route ---------------------------------------------------------------


def x_diagram(graph: Pseudograph, partition: Partition) -> ArcDiagram:
    from .combinatorics import build_x

    return build_x(graph, partition)


def c_terms(graph: Pseudograph, partition: Partition) -> Morphism:
    """``sum_k C^+_k(x) - C^-_k(x)`` for ``x = x(graph, partition)``."""
    e = graph.valence
    x = x_diagram(graph, partition)
    d = x.lower // 2
    total = Morphism.zero(x.upper + e, 2 * d - 2 + e)
    for k in range(1, d + 1):
        total = total + c_operator(x, k, 1, e) - c_operator(x, k, -1, e)
    return total


def omega_direct(graph: Pseudograph, partition: Partition, rho: int) -> Morphism:
    """``omega(x(graph, partition))`` as an explicit combination of arc diagrams."""
    _check_rho(rho)
    if graph.vertices != 2:
        raise ShapeError("omega is defined on two-vertex graphs")
    d = graph.size + partition.size
    if d == 0:
        raise ValueError("omega needs degree d >= 1")
    return apply_I(c_terms(graph, partition), d, graph.valence, rho)


# -- four-vertex graphs ---------------------------------------------------------------


def undualize(z: ArcDiagram, e: int) -> ArcDiagram:
    """Turn ``3e -> 2m + e`` into ``4e -> 2m`` by raising the last ``e`` lower points as block 4."""
    if z.upper != 3 * e or (z.lower - e) % 2 or z.lower < e:
        raise ShapeError(f"expected a {3 * e} -> 2m+{e} diagram, got {z.upper}->{z.lower}")
    m2 = z.lower - e
    perm = list(range(1, 3 * e + 1))
    perm += [4 * e + i for i in range(1, m2 + 1)]
    perm += [3 * e + s for s in range(1, e + 1)]
    mate = [0] * z.size
    for i, j in enumerate(z.mate, 1):
        mate[perm[i - 1] - 1] = perm[j - 1]
    return ArcDiagram.from_mate(4 * e, m2, mate)


def dualize(x: ArcDiagram, e: int) -> ArcDiagram:
    """Inverse of :func:`undualize`: bend block 4 down to the right of the lower points."""
    if x.upper != 4 * e:
        raise ShapeError(f"expected {4 * e} upper points, got {x.upper}")
    m2 = x.lower
    perm = list(range(1, 3 * e + 1))
    perm += [3 * e + m2 + s for s in range(1, e + 1)]
    perm += [3 * e + i for i in range(1, m2 + 1)]
    mate = [0] * x.size
    for i, j in enumerate(x.mate, 1):
        mate[perm[i - 1] - 1] = perm[j - 1]
    return ArcDiagram.from_mate(3 * e, m2 + e, mate)


def y_diagram(graph4: Pseudograph, partition: Partition) -> ArcDiagram:
    return dualize(diagram_from_listing(canonical_listing(graph4), partition), graph4.valence)


def y_morphism(graph4: Pseudograph, partition: Partition, rho: int) -> Morphism:
    """``y_d(graph4, partition)`` expanded into arc diagrams.

    The output block is first projected onto ``Lambda^e V`` (``alt_e / e!``),
    so ``cyc_e`` acts as ``-e`` and ``y_d = -1/(e-1)! (s_{d-1} (x) alt_e) o x o R``.
    """
    e = graph4.valence
    d = graph4.size + partition.size + 1
    z = Morphism.from_diagram(y_diagram(graph4, partition))
    body = compose(compose(restriction(e, rho), z), _post_alt(d, e))
    return body * Fraction(-1, math.factorial(e - 1))


def _s3_perms() -> list[tuple[tuple[int, ...], int]]:
    out = []
    for sigma in itertools.permutations((1, 2, 3)):
        out.append((sigma + (4,), permutation_sign(sigma)))
    return out


S3 = _s3_perms()


def intrinsically_zero(graph: Pseudograph, partition: Partition) -> bool:
    """Even-labelled loops and odd parts make the symmetrization vanish."""
    return not graph.in_gamma() or not partition.is_even_parts()


@lru_cache(maxsize=None)
def canonical_class(graph4: Pseudograph, partition: Partition, rho: int) -> tuple[Pseudograph, int]:
    """Representative of ``graph4`` modulo ``S_3`` on vertices 1-3 and the sign relating them.

    ``y_d(graph4) = sign * y_d(rep)``; ``sign == 0`` when ``y_d(graph4)`` vanishes.
    """
    if intrinsically_zero(graph4, partition):
        return graph4, 0
    images = [(graph4.relabel(perm), perm, sgn) for perm, sgn in S3]
    rep = min((g for g, _, _ in images), key=lambda g: g.edges)
    rep_listing = canonical_listing(rep)
    # y(rep) vanishes if some sigma fixes rep with total sign -1
    for perm, sgn in S3:
        if rep.relabel(perm) == rep:
            s = (sgn if rho == -1 else 1) * listing_sign(rep_listing.relabel(perm), rep_listing)
            if s == -1:
                return rep, 0
    own = canonical_listing(graph4)
    for g, perm, sgn in images:
        if g == rep:
            # y(sigma L) = rho^sigma y(L), and sigma L is a listing of rep
            s = (sgn if rho == -1 else 1) * listing_sign(own.relabel(perm), rep_listing)
            return rep, s
    raise AssertionError("unreachable")


@dataclass
class OmegaResult:
    """A combination of ``y_d(graph4, partition)`` reduced modulo the ``S_3`` symmetry."""

    e: int
    rho: int
    d: int
    terms: dict[Key, Fraction] = field(default_factory=dict)

    def add_listing(self, listing: Listing, partition: Partition, coeff: Fraction | int) -> None:
        """Add ``coeff * y_d`` of the diagram built from ``listing``."""
        graph4 = listing.graph()
        if intrinsically_zero(graph4, partition):
            return
        sign = listing_sign(listing, canonical_listing(graph4))
        self.add(graph4, partition, coeff * sign)

    def add(self, graph4: Pseudograph, partition: Partition, coeff: Fraction | int) -> None:
        rep, sign = canonical_class(graph4, partition, self.rho)
        if sign == 0 or coeff == 0:
            return
        key = (rep, partition)
        value = self.terms.get(key, Fraction(0)) + Fraction(coeff) * sign
        if value:
            self.terms[key] = value
        else:
            self.terms.pop(key, None)

    def __add__(self, other: OmegaResult) -> OmegaResult:
        out = OmegaResult(self.e, self.rho, self.d, dict(self.terms))
        for (g, lam), c in other.terms.items():
            out.add(g, lam, c)
        return out

    def scaled(self, c: Fraction | int) -> OmegaResult:
        return OmegaResult(self.e, self.rho, self.d, {k: v * c for k, v in self.terms.items() if v * c})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, graph4: Pseudograph, partition: Partition) -> Fraction:
        return y_coefficient(graph4, partition, self)

    def expand(self) -> Morphism:
        """The diagram expansion ``sum c * y_d(graph4, partition)``."""
        total = Morphism.zero(3 * self.e, 2 * (self.d - 1) + self.e)
        for (g, lam), c in sorted(self.terms.items(), key=_term_order):
            total = total + y_morphism(g, lam, self.rho) * c
        return total

    def to_json(self) -> dict:
        terms = []
        for (g, lam), c in sorted(self.terms.items(), key=_term_order):
            terms.append({"graph": g.to_json(), "partition": lam.to_json(), "coeff": _frac_str(c)})
        return {"degree": self.d, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping, e: int, rho: int) -> OmegaResult:
        out = cls(e, rho, int(data["degree"]))
        for t in data["terms"]:
            out.terms[(Pseudograph.from_json(t["graph"]), Partition.from_json(t["partition"]))] = Fraction(t["coeff"])
        return out


def _term_order(item):
    (g, lam), _ = item
    return (g.edges, tuple(-x for x in lam.parts))


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def y_coefficient(graph4: Pseudograph, partition: Partition, result: OmegaResult) -> Fraction:
    """Coefficient of ``y_d(graph4, partition)`` in ``result``, with the ``S_3`` sign applied."""
    if graph4.size + partition.size != result.d - 1:
        return Fraction(0)
    rep, sign = canonical_class(graph4, partition, result.rho)
    if sign == 0:
        return Fraction(0)
    # result = c * y(rep) = c * sign * y(graph4)
    return result.terms.get((rep, partition), Fraction(0)) * sign


# -- graph modifications ----------------------------------------------------------------


def _split_listing(listing: Listing, index: int, k: int) -> Listing:
    """The listing of the edge split ``(index, k)`` (``k < 0`` for the mirrored split).

    The split edge keeps its slots; the pieces end at slot 1 of blocks 3 and 4,
    and slots ``2..e`` of blocks 3 and 4 are joined by unlabelled edges.
    """
    e = listing.valence
    c = listing.chains[index - 1]
    m = abs(k)
    if not 1 <= m <= c.label:
        raise ValueError(f"split position {k} out of range for label {c.label}")
    near, far = (4, 3) if k > 0 else (3, 4)
    chains = list(listing.chains)
    chains[index - 1] = Chain(c.start, c.start_slot, near, 1, m - 1)
    chains.append(Chain(c.end, c.end_slot, far, 1, c.label - m))
    chains.extend(Chain(3, s, 4, s, 0) for s in range(2, e + 1))
    return Listing(4, e, tuple(chains))


def _open_listing(listing: Listing, part: int) -> Listing:
    e = listing.valence
    if part < 1:
        raise ValueError("an opened cycle needs a positive length")
    chains = list(listing.chains)
    chains.append(Chain(3, 1, 4, 1, part - 1))
    chains.extend(Chain(3, s, 4, s, 0) for s in range(2, e + 1))
    return Listing(4, e, tuple(chains))


def _lift(listing: Listing) -> Listing:
    return Listing(4, listing.valence, listing.chains)


def graph_modify(graph: Pseudograph, kind: tuple) -> Pseudograph:
    """``("split", i, k)`` for the edge split (``k < 0`` mirrored) or ``("open", l)``.

    ``i`` is the 1-based index of the edge in the sorted edge list.
    """
    if graph.vertices != 2:
        raise ShapeError("modifications are defined for two-vertex graphs")
    listing = _lift(canonical_listing(graph))
    if kind[0] == "split":
        _, i, k = kind
        if not 1 <= i <= graph.num_edges:
            raise ValueError(f"edge index {i} out of range")
        if k == 0:
            raise ValueError("split position must be non-zero")
        return _split_listing(listing, i, k).graph()
    if kind[0] == "open":
        return _open_listing(listing, kind[1]).graph()
    raise ValueError(f"unknown modification {kind!r}")


def transposed_listing(graph: Pseudograph) -> Listing:
    """The canonical listing of ``graph`` with vertices 1 and 2 swapped, re-oriented from the smaller vertex.

    Edge order and slots are kept, so edge ``i`` of the result is the image of edge ``i``.
    """
    base = canonical_listing(graph).relabel([2, 1])
    chains = []
    for c in base.chains:
        chains.append(c.reversed() if c.start > c.end else c)
    return Listing(2, graph.valence, tuple(chains))


def graphical_terms(graph: Pseudograph, partition: Partition, rho: int) -> list[tuple[Listing, Partition, int]]:
    """The unreduced terms ``(listing, partition, coeff)`` of :func:`omega_graphical`.

    Each edge joining vertices 1 and 2, with label ``L`` and split position
    ``m``, contributes ``(-1)^(L+m)`` times the split of the graph and
    ``rho * sgn * (-1)^(L+m)`` times the split of the transposed graph.  Each
    part ``l`` of the partition, counted with multiplicity, contributes
    ``2 l`` times the opened cycle.

    A loop with label ``L`` contributes ``(-1)^(L+m)`` times the difference of
    its split ``m`` and its mirrored split ``-m``.  The two splits give the same
    graph as the mirrored split ``L + 1 - m`` but with the two loop ends in
    swapped slots of their vertex, so they add up instead of cancelling.
    """
    _check_rho(rho)
    if graph.vertices != 2:
        raise ShapeError("omega is defined on two-vertex graphs")
    if graph.size + partition.size == 0:
        raise ValueError("omega needs degree d >= 1")
    listing = _lift(canonical_listing(graph))
    t_listing = _lift(transposed_listing(graph))
    sgn = graph.sign()
    terms: list[tuple[Listing, Partition, int]] = []
    for i, (a, b, lab) in enumerate(graph.edges, 1):
        for m in range(1, lab + 1):
            coeff = (-1) ** (lab + m)
            terms.append((_split_listing(listing, i, m), partition, coeff))
            if a == b:
                terms.append((_split_listing(listing, i, -m), partition, -coeff))
            else:
                terms.append((_split_listing(t_listing, i, m), partition, rho * sgn * coeff))
    for part in partition.parts:
        terms.append((_open_listing(listing, part), partition.remove(part), 2 * part))
    return terms


def raw_coefficient(terms: Iterable[tuple[Listing, Partition, int]], graph4: Pseudograph, partition: Partition) -> int:
    """Total coefficient of ``graph4`` among unreduced terms, before any vanishing or ``S_3`` identification."""
    target = canonical_listing(graph4)
    total = 0
    for listing, lam, c in terms:
        if lam == partition and listing.graph() == graph4:
            total += c * listing_sign(listing, target)
    return total


def omega_graphical(graph: Pseudograph, partition: Partition, rho: int) -> OmegaResult:
    """``omega(x(graph, partition))`` in the reduced ``y_d`` basis; see :func:`graphical_terms`."""
    out = OmegaResult(graph.valence, rho, graph.size + partition.size)
    for listing, lam, c in graphical_terms(graph, partition, rho):
        out.add_listing(listing, lam, c)
    return out


def loop_terms(graph: Pseudograph, partition: Partition, rho: int) -> OmegaResult:
    """The part of :func:`omega_graphical` coming from loops alone."""
    e = graph.valence
    out = OmegaResult(e, rho, graph.size + partition.size)
    listing = _lift(canonical_listing(graph))
    for i, (a, b, lab) in enumerate(graph.edges, 1):
        if a != b:
            continue
        for m in range(1, lab + 1):
            coeff = (-1) ** (lab + m)
            out.add_listing(_split_listing(listing, i, m), partition, coeff)
            out.add_listing(_split_listing(listing, i, -m), partition, -coeff)
    return out


def omega_sym_graphical(graph: Pseudograph, partition: Partition, rho: int) -> OmegaResult:
    """The simplified form for symmetric graphs: twice the splits of the graph plus the openings.

    Loop terms are not affected by the symmetry and are added once.
    """
    if graph.transpose() != graph or graph.sign() != rho:
        raise ValueError("the simplified form needs graph == transpose and sgn == rho")
    e = graph.valence
    d = graph.size + partition.size
    out = OmegaResult(e, rho, d)
    listing = _lift(canonical_listing(graph))
    for i, (a, b, lab) in enumerate(graph.edges, 1):
        if a == b:
            continue
        for m in range(1, lab + 1):
            out.add_listing(_split_listing(listing, i, m), partition, 2 * (-1) ** (lab + m))
    for part in partition.parts:
        out.add_listing(_open_listing(listing, part), partition.remove(part), 2 * part)
    return out + loop_terms(graph, partition, rho)


def omega_reduced_direct(graph: Pseudograph, partition: Partition, rho: int) -> OmegaResult:
    """``omega`` from the C operator, reading each resulting diagram off in orbit coordinates.

    This follows the direct route up to the point where the symmetrizers would
    be expanded, and instead identifies each diagram with ``+-y_d`` of a
    four-vertex graph.  It scales to degrees where full expansion is infeasible.
    """
    _check_rho(rho)
    e = graph.valence
    d = graph.size + partition.size
    out = OmegaResult(e, rho, d)
    for z, c in c_terms(graph, partition):
        g4, lam, sign = orbit_coordinates(undualize(z, e), 4, e, d - 1)
        out.add(g4, lam, c.constant_term() * sign)
    return out


# -- deformation maps ----------------------------------------------------------------------


@dataclass
class DeformationMap:
    """``kappa = sum c * x^rho(graph, partition)`` with two-vertex graphs of valence ``e``."""

    e: int
    rho: int
    terms: dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_rho(self.rho)
        for g, lam in self.terms:
            if g.vertices != 2 or g.valence != self.e:
                raise ShapeError(f"graph {g} is not a two-vertex graph of valence {self.e}")

    def degrees(self) -> list[int]:
        return sorted({g.size + lam.size for g, lam in self.terms})

    def degree_part(self, d: int) -> DeformationMap:
        return DeformationMap(
            self.e, self.rho, {k: v for k, v in self.terms.items() if k[0].size + k[1].size == d}
        )

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "rho": self.rho,
            "terms": [
                {"graph": g.to_json(), "partition": lam.to_json(), "coeff": _frac_str(c)}
                for (g, lam), c in sorted(self.terms.items(), key=_term_order)
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> DeformationMap:
        terms = {}
        for t in data["terms"]:
            terms[(Pseudograph.from_json(t["graph"]), Partition.from_json(t["partition"]))] = Fraction(t["coeff"])
        return cls(int(data["e"]), int(data["rho"]), terms)


def omega_of_sym(graph: Pseudograph, partition: Partition, rho: int) -> OmegaResult:
    """``omega(x^rho(graph, partition)) = omega(x(graph)) + rho sgn(graph) omega(x(graph^t))``."""
    first = omega_graphical(graph, partition, rho)
    t = graph.transpose()
    return first + omega_graphical(t, partition, rho).scaled(rho * graph.sign())


def jacobi_residual(kappa: DeformationMap, direct: bool = False) -> dict[int, OmegaResult]:
    """Per degree ``d >= 1``, the combination of ``omega`` over the degree-``d`` terms of ``kappa``.

    ``kappa`` defines a PBW deformation iff every residual is zero.  With
    ``direct`` the residual is computed through :func:`omega_reduced_direct`.
    """
    out: dict[int, OmegaResult] = {}
    fn = omega_reduced_direct if direct else omega_graphical
    for (g, lam), c in kappa.terms.items():
        d = g.size + lam.size
        if d == 0:
            continue  # no condition on the degree-zero part
        res = out.setdefault(d, OmegaResult(kappa.e, kappa.rho, d))
        part = fn(g, lam, kappa.rho) + fn(g.transpose(), lam, kappa.rho).scaled(kappa.rho * g.sign())
        out[d] = res + part.scaled(c)
    return out
