"""Partitions, edge-labelled pseudographs and the orbit calculus of ``S_e^p x (S_2 wr S_d)``.

Arc diagrams with ``p*e`` upper and ``2d`` lower points carry an action of
``G = S_e^p x (S_2 wr S_d)``: the ``k``-th copy of ``S_e`` permutes the upper
block ``B_k``, the ``S_2`` factors swap the two points of a lower pair
``(2r-1, 2r)`` and ``S_d`` permutes the lower pairs.  Orbits are classified by
the arc sequence datum, and canonical orbit representatives ``x(graph,
partition)`` are built from an e-valent pseudograph (one vertex per upper
block, one edge per chain of arcs joining upper points) and a partition (one
part per closed chain).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .diagram_core import (
    ArcDiagram,
    Morphism,
    PolyT,
    ShapeError,
    permutation_sign,
)


# -- partitions ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(x) for x in self.parts), reverse=True))
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicity(self, part: int) -> int:
        return self.parts.count(part)

    def multiplicities(self) -> Counter:
        return Counter(self.parts)

    def is_even_parts(self) -> bool:
        return all(x % 2 == 0 for x in self.parts)

    def remove(self, part: int) -> Partition:
        parts = list(self.parts)
        parts.remove(part)
        return Partition(tuple(parts))

    def add(self, part: int) -> Partition:
        return Partition(self.parts + (part,))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"Partition{self.parts}"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> Partition:
        return cls(tuple(int(x) for x in data))


def partitions(n: int, max_part: int | None = None, even_only: bool = False) -> Iterator[Partition]:
    """Partitions of ``n`` in lexicographically descending order."""
    if max_part is None:
        max_part = n

    def rec(rest: int, bound: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, bound), 0, -1):
            if even_only and first % 2:
                continue
            for tail in rec(rest - first, first):
                yield (first,) + tail

    for parts in rec(n, max_part):
        yield Partition(parts)


def even_partitions(n: int) -> list[Partition]:
    return list(partitions(n, even_only=True))


# -- pseudographs --------------------------------------------------------------

Edge = tuple[int, int, int]


def _norm_edge(i: int, j: int, label: int) -> Edge:
    return (i, j, label) if i <= j else (j, i, label)


@dataclass(frozen=True)
class Pseudograph:
    """An e-valent pseudograph on vertices ``1..vertices`` with N-labelled edges.

    Edges are triples ``(i, j, label)`` with ``i <= j``; a loop counts twice
    towards the degree of its vertex.  The edge multiset is stored sorted.
    """

    vertices: int
    valence: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        edges = tuple(sorted(_norm_edge(int(i), int(j), int(lab)) for i, j, lab in self.edges))
        object.__setattr__(self, "edges", edges)
        deg = [0] * (self.vertices + 1)
        for i, j, label in edges:
            if not (1 <= i <= self.vertices and 1 <= j <= self.vertices):
                raise ShapeError(f"edge {(i, j, label)} has a vertex outside 1..{self.vertices}")
            if label < 0:
                raise ShapeError(f"negative edge label in {(i, j, label)}")
            deg[i] += 1
            deg[j] += 1
        bad = [v for v in range(1, self.vertices + 1) if deg[v] != self.valence]
        if bad:
            raise ShapeError(f"vertices {bad} do not have degree {self.valence}")

    @property
    def size(self) -> int:
        """Sum of the edge labels."""
        return sum(e[2] for e in self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def multiplicity(self, edge: Edge) -> int:
        return self.edges.count(_norm_edge(*edge))

    def in_gamma(self) -> bool:
        """All loops carry odd labels."""
        return all(lab % 2 == 1 for i, j, lab in self.edges if i == j)

    def relabel(self, perm: Sequence[int]) -> Pseudograph:
        """Rename vertex ``v`` to ``perm[v - 1]``."""
        return Pseudograph(
            self.vertices, self.valence, tuple((perm[i - 1], perm[j - 1], lab) for i, j, lab in self.edges)
        )

    def transpose(self) -> Pseudograph:
        """Swap vertices 1 and 2."""
        perm = [2, 1] + list(range(3, self.vertices + 1))
        return self.relabel(perm)

    def sign(self) -> int:
        """Product of ``(-1)^label`` over the edges joining vertices 1 and 2."""
        s = 1
        for i, j, lab in self.edges:
            if (i, j) == (1, 2) and lab % 2:
                s = -s
        return s

    def without(self, edge: Edge) -> list[Edge]:
        rest = list(self.edges)
        rest.remove(edge)
        return rest

    def __repr__(self) -> str:
        return f"Pseudograph({self.vertices}, {self.valence}, {list(self.edges)})"

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "valence": self.valence, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data) -> Pseudograph:
        edges = []
        for e in data["edges"]:
            if len(e) != 3:
                raise ShapeError(f"edge must be [i, j, label]: {e!r}")
            edges.append(tuple(int(x) for x in e))
        return cls(int(data["vertices"]), int(data["valence"]), tuple(edges))


def sgn_and_transpose(graph: Pseudograph) -> tuple[int, Pseudograph]:
    if graph.vertices != 2:
        raise ShapeError("sign and transpose are defined for two-vertex graphs")
    return graph.sign(), graph.transpose()


def pseudographs(p: int, e: int, size: int, odd_loops: bool = True) -> list[Pseudograph]:
    """All e-valent pseudographs on ``p`` vertices with label sum ``size``, sorted by edge list.

    With ``odd_loops`` only graphs whose loops carry odd labels are returned.
    """
    types = [(i, j) for i in range(1, p + 1) for j in range(i, p + 1)]
    out: list[Pseudograph] = []

    # first choose the underlying multigraph, then distribute the labels
    def shapes(idx: int, deg: list[int]) -> Iterator[list[tuple[int, int]]]:
        if idx == len(types):
            if all(x == e for x in deg[1:]):
                yield []
            return
        i, j = types[idx]
        step = 2 if i == j else 1
        room = min(e - deg[i], e - deg[j]) if i != j else (e - deg[i]) // 2
        for mult in range(room + 1):
            deg[i] += step * mult if i == j else mult
            if i != j:
                deg[j] += mult
            for tail in shapes(idx + 1, deg):
                yield [(i, j)] * mult + tail
            deg[i] -= step * mult if i == j else mult
            if i != j:
                deg[j] -= mult

    def labelings(kinds: list[tuple[int, int]], rest: int, start: int, prev: Edge | None) -> Iterator[list[Edge]]:
        if start == len(kinds):
            if rest == 0:
                yield []
            return
        i, j = kinds[start]
        low = 0
        if prev is not None and prev[:2] == (i, j):
            low = prev[2]  # labels non-decreasing within a type avoids duplicates
        for lab in range(low, rest + 1):
            if odd_loops and i == j and lab % 2 == 0:
                continue
            edge = (i, j, lab)
            for tail in labelings(kinds, rest - lab, start + 1, edge):
                yield [edge] + tail

    for kinds in shapes(0, [0] * (p + 1)):
        for edges in labelings(kinds, size, 0, None):
            out.append(Pseudograph(p, e, tuple(edges)))
    out.sort(key=lambda g: g.edges)
    return out


# -- arc diagrams from graphs ----------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """A chain of arcs from slot ``start_slot`` of block ``start`` to slot ``end_slot`` of block ``end``.

    It passes through ``label`` lower pairs, entering each at its left point.
    """

    start: int
    start_slot: int
    end: int
    end_slot: int
    label: int

    @property
    def kind(self) -> Edge:
        return _norm_edge(self.start, self.end, self.label)

    def reversed(self) -> Chain:
        return Chain(self.end, self.end_slot, self.start, self.start_slot, self.label)


@dataclass(frozen=True)
class Listing:
    """An ordered, oriented listing of the edges of a graph with explicit upper slots."""

    vertices: int
    valence: int
    chains: tuple[Chain, ...]

    def graph(self) -> Pseudograph:
        return Pseudograph(self.vertices, self.valence, tuple(c.kind for c in self.chains))

    def relabel(self, perm: Sequence[int]) -> Listing:
        """Rename blocks by ``perm`` keeping slots and orientation."""
        return Listing(
            self.vertices,
            self.valence,
            tuple(
                Chain(perm[c.start - 1], c.start_slot, perm[c.end - 1], c.end_slot, c.label)
                for c in self.chains
            ),
        )


def canonical_listing(graph: Pseudograph) -> Listing:
    """Edges in sorted order, oriented from the smaller vertex, slots handed out in order."""
    next_slot = [0] * (graph.vertices + 1)
    chains = []
    for i, j, lab in graph.edges:
        next_slot[i] += 1
        si = next_slot[i]
        next_slot[j] += 1
        chains.append(Chain(i, si, j, next_slot[j], lab))
    return Listing(graph.vertices, graph.valence, tuple(chains))


def diagram_from_listing(listing: Listing, partition: Partition) -> ArcDiagram:
    """Arc diagram of a listing: lower pairs are used in chain order, then one cycle per part."""
    p, e = listing.vertices, listing.valence
    k = p * e
    d = sum(c.label for c in listing.chains) + partition.size
    arcs: list[tuple[int, int]] = []
    pair = 0

    def low(r: int, offset: int) -> int:
        return k + 2 * (r - 1) + offset  # offset 1 = left point, 2 = right point

    for c in listing.chains:
        prev = (c.start - 1) * e + c.start_slot
        for _ in range(c.label):
            pair += 1
            arcs.append((prev, low(pair, 1)))
            prev = low(pair, 2)
        arcs.append((prev, (c.end - 1) * e + c.end_slot))
    for part in partition:
        first = pair + 1
        for r in range(first, first + part - 1):
            arcs.append((low(r, 2), low(r + 1, 1)))
        arcs.append((low(first, 1), low(first + part - 1, 2)))
        pair += part
    return ArcDiagram(k, 2 * d, arcs)


def build_x(graph: Pseudograph, partition: Partition, p: int | None = None, e: int | None = None) -> ArcDiagram:
    """The orbit representative ``x(graph, partition)``.

    Edges are processed in sorted order.  An edge ``(i, j, L)`` takes the next
    free upper point of block ``i`` as its start and of block ``j`` as its end,
    and the next ``L`` lower pairs; the chain enters each pair at its left point
    and leaves at its right point.  Each part ``l`` then takes the next ``l``
    pairs and closes them into a cycle.
    """
    p = graph.vertices if p is None else p
    e = graph.valence if e is None else e
    if (graph.vertices, graph.valence) != (p, e):
        raise ShapeError(f"graph has {graph.vertices} vertices of degree {graph.valence}, expected {p}, {e}")
    return diagram_from_listing(canonical_listing(graph), partition)


def listing_sign(first: Listing, second: Listing) -> int:
    """The sign ``s`` with ``f(diagram(first)) = s * f(diagram(second))`` for the symmetrization ``f``.

    Both listings must describe the same graph.  Chains of equal kind are
    matched in order; a chain matched against the opposite orientation flips
    its ``label`` lower pairs.  The result is only meaningful when the
    symmetrization is non-zero.
    """
    if first.graph() != second.graph():
        raise ValueError("listings describe different graphs")
    pool: dict[Edge, list[Chain]] = {}
    for c in second.chains:
        pool.setdefault(c.kind, []).append(c)
    slot_maps: dict[int, dict[int, int]] = {}
    sign = 1
    for c in first.chains:
        target = pool[c.kind].pop(0)
        if (c.start, c.end) != (target.start, target.end):
            target = target.reversed()
            if c.label % 2:
                sign = -sign
        slot_maps.setdefault(c.start, {})[c.start_slot] = target.start_slot
        slot_maps.setdefault(c.end, {})[c.end_slot] = target.end_slot
    for mapping in slot_maps.values():
        perm = [mapping[s] for s in sorted(mapping)]
        sign *= permutation_sign(perm)
    return sign


# -- arc sequence datum --------------------------------------------------------


@dataclass(frozen=True)
class ArcSequenceDatum:
    """Multiset of ``(i, j, k)``: end blocks ``i <= j`` (``0, 0`` if closed) and half the lower-point count."""

    items: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(sorted(self.items)))

    @classmethod
    def of(cls, items: Iterable[tuple[int, int, int]]) -> ArcSequenceDatum:
        return cls(tuple(items))


def _check_shape(x: ArcDiagram, p: int, e: int, d: int) -> None:
    if x.upper != p * e or x.lower != 2 * d:
        raise ShapeError(f"expected a {p * e}->{2 * d} diagram, got {x.upper}->{x.lower}")


def asd(x: ArcDiagram, p: int, e: int, d: int) -> ArcSequenceDatum:
    _check_shape(x, p, e, d)
    k = x.upper
    mate = x.mate
    seen = [False] * (x.size + 1)

    def pair_mate(q: int) -> int:
        r = q - k  # 1-based position among lower points
        return q + 1 if r % 2 else q - 1

    items = []
    for start in range(1, k + 1):
        if seen[start]:
            continue
        seen[start] = True
        q = mate[start - 1]
        pairs = 0
        while q > k:
            q2 = pair_mate(q)
            seen[q] = seen[q2] = True
            pairs += 1
            q = mate[q2 - 1]
        seen[q] = True
        bi, bj = (start - 1) // e + 1, (q - 1) // e + 1
        items.append((min(bi, bj), max(bi, bj), pairs))
    for start in range(k + 1, x.size + 1, 2):
        if seen[start]:
            continue
        pairs = 0
        q = start
        while not seen[q]:
            q2 = pair_mate(q)
            seen[q] = seen[q2] = True
            pairs += 1
            q = mate[q2 - 1]
        items.append((0, 0, pairs))
    return ArcSequenceDatum.of(items)


def orbit_coordinates(x: ArcDiagram, p: int, e: int, d: int) -> tuple[Pseudograph, Partition, int]:
    """Return ``(graph, partition, sign)`` with ``f(x) = sign * f(build_x(graph, partition))``.

    The chains of ``x`` are read off directly and compared with the canonical
    listing, so no symmetrizer is expanded.  ``sign`` is meaningful only when
    the symmetrization of ``x`` is non-zero.
    """
    _check_shape(x, p, e, d)
    k = x.upper
    mate = x.mate
    seen = [False] * (x.size + 1)

    def pair_mate(q: int) -> int:
        return q + 1 if (q - k) % 2 else q - 1

    def is_left(q: int) -> bool:
        return (q - k) % 2 == 1

    chains = []
    flips = 0
    for start in range(1, k + 1):
        if seen[start]:
            continue
        seen[start] = True
        q = mate[start - 1]
        pairs = 0
        while q > k:
            if not is_left(q):
                flips += 1
            q2 = pair_mate(q)
            seen[q] = seen[q2] = True
            pairs += 1
            q = mate[q2 - 1]
        seen[q] = True
        chains.append(Chain((start - 1) // e + 1, (start - 1) % e + 1, (q - 1) // e + 1, (q - 1) % e + 1, pairs))
    parts = []
    for start in range(k + 1, x.size + 1, 2):
        if seen[start]:
            continue
        pairs = 0
        q = start
        while not seen[q]:
            if not is_left(q):
                flips += 1
            q2 = pair_mate(q)
            seen[q] = seen[q2] = True
            pairs += 1
            q = mate[q2 - 1]
        parts.append(pairs)
    listing = Listing(p, e, tuple(chains))
    graph = listing.graph()
    sign = listing_sign(listing, canonical_listing(graph))
    if flips % 2:
        sign = -sign
    return graph, Partition(tuple(parts)), sign


def datum_of(graph: Pseudograph, partition: Partition) -> ArcSequenceDatum:
    """The arc sequence datum that ``build_x(graph, partition)`` must have."""
    return ArcSequenceDatum.of(list(graph.edges) + [(0, 0, part) for part in partition])


# -- the group G_{p,e,d} ------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """``(theta, (tau, sigma))`` in ``S_e^p x (S_2 wr S_d)``.

    ``theta[b]`` permutes the slots of block ``b + 1``; lower point ``o`` of pair
    ``r`` (``o`` in {0, 1}) is sent to point ``o xor tau[r]`` of pair ``sigma(r)``.
    Permutations are 1-based tuples.
    """

    theta: tuple[tuple[int, ...], ...]
    tau: tuple[int, ...]
    sigma: tuple[int, ...]

    @classmethod
    def identity(cls, p: int, e: int, d: int) -> GroupElement:
        return cls(tuple(tuple(range(1, e + 1)) for _ in range(p)), (0,) * d, tuple(range(1, d + 1)))

    @property
    def shape(self) -> tuple[int, int, int]:
        e = len(self.theta[0]) if self.theta else 0
        return len(self.theta), e, len(self.sigma)

    def character(self) -> int:
        s = 1
        for th in self.theta:
            s *= permutation_sign(th)
        return -s if sum(self.tau) % 2 else s

    def __mul__(self, other: GroupElement) -> GroupElement:
        """``(g * h)`` acts as ``h`` first, then ``g``."""
        theta = tuple(tuple(g[h[i] - 1] for i in range(len(h))) for g, h in zip(self.theta, other.theta))
        sigma = tuple(self.sigma[other.sigma[r] - 1] for r in range(len(other.sigma)))
        tau = tuple(other.tau[r] ^ self.tau[other.sigma[r] - 1] for r in range(len(other.sigma)))
        return GroupElement(theta, tau, sigma)

    def point_map(self) -> list[int]:
        p, e, d = self.shape
        out = []
        for b, th in enumerate(self.theta):
            out.extend(b * e + th[s] for s in range(e))
        k = p * e
        for r in range(d):
            for o in range(2):
                out.append(k + 2 * (self.sigma[r] - 1) + (o ^ self.tau[r]) + 1)
        return out


def act(g: GroupElement, x: ArcDiagram) -> ArcDiagram:
    p, e, d = g.shape
    _check_shape(x, p, e, d)
    return x.relabel(g.point_map())


def group_order(p: int, e: int, d: int) -> int:
    return math.factorial(e) ** p * 2**d * math.factorial(d)


def group_elements(p: int, e: int, d: int) -> Iterator[GroupElement]:
    perms_e = list(itertools.permutations(range(1, e + 1)))
    for theta in itertools.product(perms_e, repeat=p):
        for tau in itertools.product((0, 1), repeat=d):
            for sigma in itertools.permutations(range(1, d + 1)):
                yield GroupElement(theta, tau, sigma)


def _generator_maps(p: int, e: int, d: int) -> list[tuple[list[int], int]]:
    """Point maps of a generating set of ``G`` with their character values."""
    n = p * e + 2 * d
    k = p * e
    gens = []
    for b in range(p):
        for s in range(e - 1):
            m = list(range(1, n + 1))
            i = b * e + s
            m[i], m[i + 1] = m[i + 1], m[i]
            gens.append((m, -1))
    if d >= 1:
        m = list(range(1, n + 1))
        m[k], m[k + 1] = m[k + 1], m[k]
        gens.append((m, -1))
    for r in range(d - 1):
        m = list(range(1, n + 1))
        a = k + 2 * r
        m[a], m[a + 2] = m[a + 2], m[a]
        m[a + 1], m[a + 3] = m[a + 3], m[a + 1]
        gens.append((m, 1))
    return gens


def orbit_with_signs(x: ArcDiagram, p: int, e: int, d: int) -> tuple[dict[ArcDiagram, int], bool]:
    """The orbit of ``x`` with the character value of some element reaching each point.

    The flag is ``False`` when two elements reaching the same diagram have
    different character values, i.e. the character is non-trivial on the stabilizer.
    """
    _check_shape(x, p, e, d)
    gens = _generator_maps(p, e, d)
    signs = {x: 1}
    stack = [x]
    consistent = True
    while stack:
        y = stack.pop()
        sy = signs[y]
        for m, chi in gens:
            z = y.relabel(m)
            sz = sy * chi
            prev = signs.get(z)
            if prev is None:
                signs[z] = sz
                stack.append(z)
            elif prev != sz:
                consistent = False
    return signs, consistent


def symmetrize(x: ArcDiagram, p: int, e: int, d: int, naive: bool = False) -> Morphism:
    """``sum over g in G of chi(g) g.x``.

    The default walks the orbit of ``x``; ``naive=True`` sums over every group
    element and is meant for cross-checking on small inputs.
    """
    _check_shape(x, p, e, d)
    if naive:
        acc: dict[ArcDiagram, int] = {}
        for g in group_elements(p, e, d):
            y = act(g, x)
            acc[y] = acc.get(y, 0) + g.character()
        return Morphism(x.upper, x.lower, {y: PolyT.const(c) for y, c in acc.items()})
    signs, consistent = orbit_with_signs(x, p, e, d)
    if not consistent:
        return Morphism.zero(x.upper, x.lower)
    stab = group_order(p, e, d) // len(signs)
    return Morphism._raw(x.upper, x.lower, {y: PolyT.const(stab * s) for y, s in signs.items()})


def stabilizer_order(graph: Pseudograph, partition: Partition) -> int:
    order = 1
    for (i, j, lab), m in Counter(graph.edges).items():
        order *= (2**m if i == j else 1) * math.factorial(m)
    for part, m in partition.multiplicities().items():
        order *= (2 * part) ** m * math.factorial(m)
    return order


def brute_force_stabilizer(x: ArcDiagram, p: int, e: int, d: int) -> tuple[int, bool]:
    """Order of the stabilizer of ``x`` and whether the character is trivial on it."""
    order, trivial = 0, True
    for g in group_elements(p, e, d):
        if act(g, x) == x:
            order += 1
            if g.character() != 1:
                trivial = False
    return order, trivial


# -- bases -------------------------------------------------------------------------


def enumerate_basis(p: int, e: int, d: int) -> list[tuple[Pseudograph, Partition]]:
    """Pairs (graph with odd loops, even-part partition) with total size ``d``."""
    out = []
    for gsize in range(d + 1):
        rest = d - gsize
        parts = even_partitions(rest)
        if not parts:
            continue
        for graph in pseudographs(p, e, gsize):
            out.extend((graph, lam) for lam in parts)
    out.sort(key=lambda gl: (gl[0].edges, tuple(-x for x in gl[1].parts), -len(gl[1].parts)))
    return out


def class_representative(graph: Pseudograph) -> Pseudograph:
    """The lexicographically smaller of ``graph`` and its transpose."""
    t = graph.transpose()
    return min(graph, t, key=lambda g: g.edges)


def enumerate_sym_basis(e: int, d: int, rho: int) -> list[tuple[Pseudograph, Partition]]:
    """Representatives ``(graph, partition)`` of the basis ``x^rho(graph, partition)``."""
    if rho not in (1, -1):
        raise ValueError("rho must be +1 or -1")
    out = []
    for graph, lam in enumerate_basis(2, e, d):
        if class_representative(graph) != graph:
            continue
        t = graph.transpose()
        if t != graph or graph.sign() == rho:
            out.append((graph, lam))
    return out


def basis_morphism(graph: Pseudograph, partition: Partition) -> Morphism:
    """The symmetrization of ``x(graph, partition)``."""
    p, e = graph.vertices, graph.valence
    d = graph.size + partition.size
    return symmetrize(build_x(graph, partition), p, e, d)


def sym_basis_morphism(graph: Pseudograph, partition: Partition, rho: int) -> Morphism:
    """``f(x(graph, partition)) + rho * sgn(graph) * f(x(graph^t, partition))``."""
    sign, t = sgn_and_transpose(graph)
    return basis_morphism(graph, partition) + basis_morphism(t, partition) * (rho * sign)
