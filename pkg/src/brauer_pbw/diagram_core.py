"""Exact arithmetic in the Brauer category.

Points of an arc diagram with ``k`` upper and ``l`` lower points are numbered
``1..k`` (upper, left to right) followed by ``k+1..k+l`` (lower, left to
right).  ``compose(f, g)`` stacks ``f`` on top of ``g``, so ``f`` is applied
first.  With this convention the permutation diagrams satisfy
``compose(permutation_diagram(s), permutation_diagram(t)) ==
permutation_diagram(t o s)``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction | int


class ShapeError(ValueError):
    """Raised when morphisms of incompatible shapes are combined."""


def _frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PolyT:
    """A polynomial in the loop parameter ``t`` with exact rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = hash(self.coeffs)

    @classmethod
    def const(cls, c: Rational) -> PolyT:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Rational = 1) -> PolyT:
        return cls([0] * degree + [c])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyT):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyT.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: PolyT | Rational) -> PolyT:
        if not isinstance(other, PolyT):
            other = PolyT.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return PolyT([x + y for x, y in itertools.zip_longest(a, b, fillvalue=0)])

    __radd__ = __add__

    def __neg__(self) -> PolyT:
        return PolyT([-c for c in self.coeffs])

    def __sub__(self, other: PolyT | Rational) -> PolyT:
        return self + (-other)

    def __rsub__(self, other: PolyT | Rational) -> PolyT:
        return (-self) + other

    def __mul__(self, other: PolyT | Rational) -> PolyT:
        if not isinstance(other, PolyT):
            c = _frac(other)
            return PolyT([c * x for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return PolyT()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return PolyT(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> PolyT:
        c = _frac(other)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return PolyT([x / c for x in self.coeffs])

    def shift(self, k: int) -> PolyT:
        """Multiply by ``t**k``."""
        if not self.coeffs or k == 0:
            return self
        return PolyT([0] * k + list(self.coeffs))

    def __call__(self, t: Rational) -> Fraction:
        t = _frac(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)


ONE = PolyT.const(1)


class ArcDiagram:
    """A perfect matching on ``upper + lower`` points.

    Stored as the tuple ``mate`` where ``mate[i - 1]`` is the partner of point
    ``i``; this determines the matching uniquely, so equality and hashing use it.
    """

    __slots__ = ("upper", "lower", "mate", "_hash", "__dict__")

    def __init__(self, upper: int, lower: int, arcs: Iterable[Sequence[int]]):
        n = upper + lower
        if upper < 0 or lower < 0:
            raise ShapeError("point counts must be non-negative")
        if n % 2:
            raise ShapeError(f"odd number of points: {upper}+{lower}")
        mate = [0] * n
        for a, b in arcs:
            if not (1 <= a <= n and 1 <= b <= n) or a == b:
                raise ShapeError(f"invalid arc ({a}, {b}) for {upper}+{lower} points")
            if mate[a - 1] or mate[b - 1]:
                raise ShapeError(f"point used twice in arc ({a}, {b})")
            mate[a - 1] = b
            mate[b - 1] = a
        if 0 in mate:
            raise ShapeError("arcs do not cover every point")
        self.upper = upper
        self.lower = lower
        self.mate: tuple[int, ...] = tuple(mate)
        self._hash = hash((upper, lower, self.mate))

    @classmethod
    def from_mate(cls, upper: int, lower: int, mate: Sequence[int]) -> ArcDiagram:
        """Build from a partner list without validation (internal fast path)."""
        obj = cls.__new__(cls)
        obj.upper = upper
        obj.lower = lower
        obj.mate = tuple(mate)
        obj._hash = hash((upper, lower, obj.mate))
        return obj

    @property
    def size(self) -> int:
        return self.upper + self.lower

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.mate, 1) if i < j)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ArcDiagram):
            return NotImplemented
        return self.upper == other.upper and self.lower == other.lower and self.mate == other.mate

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: ArcDiagram) -> bool:
        return (self.upper, self.lower, self.arcs) < (other.upper, other.lower, other.arcs)

    def __repr__(self) -> str:
        return f"ArcDiagram({self.upper}, {self.lower}, {list(self.arcs)})"

    def relabel(self, perm: Sequence[int]) -> ArcDiagram:
        """Move point ``i`` to position ``perm[i - 1]`` (upper stays upper, lower stays lower)."""
        mate = [0] * len(self.mate)
        for i, j in enumerate(self.mate, 1):
            mate[perm[i - 1] - 1] = perm[j - 1]
        return ArcDiagram.from_mate(self.upper, self.lower, mate)

    def to_json(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_json(cls, data: Mapping) -> ArcDiagram:
        arcs = data["arcs"]
        for a in arcs:
            if len(a) != 2:
                raise ShapeError(f"arc must have two end points: {a!r}")
        return cls(int(data["upper"]), int(data["lower"]), [tuple(int(x) for x in a) for a in arcs])


def compose_diagrams(f: ArcDiagram, g: ArcDiagram) -> tuple[ArcDiagram, int]:
    """Stack ``f`` on top of ``g``; return the resulting diagram and the number of closed loops."""
    if f.lower != g.upper:
        raise ShapeError(f"cannot compose {f.upper}->{f.lower} with {g.upper}->{g.lower}")
    k, mid, m = f.upper, f.lower, g.lower
    fm, gm = f.mate, g.mate
    # free points of the result: f upper 1..k and g lower (numbered k+1..k+m in the result)
    mate = [0] * (k + m)
    seen_mid = [False] * (mid + 1)

    def trace(in_f: bool, point: int) -> int:
        # start at a free point, return the free point at the other end (result numbering)
        while True:
            if in_f:
                q = fm[point - 1]
                if q <= k:
                    return q
                j = q - k
                seen_mid[j] = True
                in_f, point = False, j
            else:
                q = gm[point - 1]
                if q > mid:
                    return k + (q - mid)
                seen_mid[q] = True
                in_f, point = True, k + q

    for i in range(1, k + 1):
        if not mate[i - 1]:
            j = trace(True, i)
            mate[i - 1] = j
            mate[j - 1] = i
    for i in range(mid + 1, mid + m + 1):
        r = k + (i - mid)
        if not mate[r - 1]:
            j = trace(False, i)
            mate[r - 1] = j
            mate[j - 1] = r
    loops = 0
    for j in range(1, mid + 1):
        if seen_mid[j]:
            continue
        loops += 1
        point = j
        while True:
            seen_mid[point] = True
            q = gm[point - 1]  # g partner, also a middle point
            seen_mid[q] = True
            nxt = fm[k + q - 1] - k  # f partner of that middle point
            if nxt == j:
                break
            point = nxt
    return ArcDiagram.from_mate(k, m, mate), loops


def tensor_diagrams(f: ArcDiagram, g: ArcDiagram) -> ArcDiagram:
    k1, l1, k2, l2 = f.upper, f.lower, g.upper, g.lower
    k = k1 + k2

    def pf(p: int) -> int:
        return p if p <= k1 else p + k2

    def pg(p: int) -> int:
        return p + k1 if p <= k2 else p + k1 + l1

    mate = [0] * (k + l1 + l2)
    for i, j in enumerate(f.mate, 1):
        mate[pf(i) - 1] = pf(j)
    for i, j in enumerate(g.mate, 1):
        mate[pg(i) - 1] = pg(j)
    return ArcDiagram.from_mate(k, l1 + l2, mate)


class Morphism:
    """A Q[t]-linear combination of arc diagrams of a fixed shape ``upper -> lower``."""

    __slots__ = ("upper", "lower", "terms")

    def __init__(self, upper: int, lower: int, terms: Mapping[ArcDiagram, PolyT] | None = None):
        self.upper = upper
        self.lower = lower
        clean: dict[ArcDiagram, PolyT] = {}
        for d, c in (terms or {}).items():
            if (d.upper, d.lower) != (upper, lower):
                raise ShapeError(f"diagram {d.upper}->{d.lower} in morphism {upper}->{lower}")
            if not isinstance(c, PolyT):
                c = PolyT.const(c)
            if not c.is_zero():
                clean[d] = c
        self.terms: dict[ArcDiagram, PolyT] = clean

    @classmethod
    def _raw(cls, upper: int, lower: int, terms: dict[ArcDiagram, PolyT]) -> Morphism:
        obj = cls.__new__(cls)
        obj.upper, obj.lower = upper, lower
        obj.terms = {d: c for d, c in terms.items() if c.coeffs}
        return obj

    @classmethod
    def from_diagram(cls, d: ArcDiagram, coeff: PolyT | Rational = 1) -> Morphism:
        return cls(d.upper, d.lower, {d: coeff if isinstance(coeff, PolyT) else PolyT.const(coeff)})

    @classmethod
    def zero(cls, upper: int, lower: int) -> Morphism:
        return cls._raw(upper, lower, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[ArcDiagram, PolyT]]:
        return iter(self.terms.items())

    def coefficient(self, d: ArcDiagram) -> PolyT:
        return self.terms.get(d, PolyT())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.upper, self.lower) == (other.upper, other.lower) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.upper, self.lower, frozenset(self.terms.items())))

    def _check_same_shape(self, other: Morphism) -> None:
        if (self.upper, self.lower) != (other.upper, other.lower):
            raise ShapeError(
                f"shape mismatch: {self.upper}->{self.lower} vs {other.upper}->{other.lower}"
            )

    def __add__(self, other: Morphism) -> Morphism:
        self._check_same_shape(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return Morphism._raw(self.upper, self.lower, out)

    def __neg__(self) -> Morphism:
        return Morphism._raw(self.upper, self.lower, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: Morphism) -> Morphism:
        return self + (-other)

    def __mul__(self, scalar: PolyT | Rational) -> Morphism:
        return Morphism._raw(self.upper, self.lower, {d: c * scalar for d, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Rational) -> Morphism:
        return Morphism._raw(self.upper, self.lower, {d: c / scalar for d, c in self.terms.items()})

    def relabel(self, perm: Sequence[int]) -> Morphism:
        return Morphism._raw(self.upper, self.lower, {d.relabel(perm): c for d, c in self.terms.items()})

    def __repr__(self) -> str:
        body = ", ".join(f"{c!r}: {list(d.arcs)}" for d, c in sorted(self.terms.items()))
        return f"Morphism({self.upper}->{self.lower}; {body})"

    def to_json(self) -> dict:
        terms = []
        for d in sorted(self.terms):
            coeff = [[str(c.numerator), str(c.denominator)] for c in self.terms[d].coeffs]
            terms.append({"coeff": coeff, "diagram": d.to_json()})
        return {"upper": self.upper, "lower": self.lower, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> Morphism:
        upper, lower = int(data["upper"]), int(data["lower"])
        out: dict[ArcDiagram, PolyT] = {}
        for term in data["terms"]:
            d = ArcDiagram.from_json(term["diagram"])
            c = PolyT(Fraction(int(num), int(den)) for num, den in term["coeff"])
            out[d] = out[d] + c if d in out else c
        return cls(upper, lower, out)


def as_morphism(x: ArcDiagram | Morphism) -> Morphism:
    return x if isinstance(x, Morphism) else Morphism.from_diagram(x)


def compose(f: ArcDiagram | Morphism, g: ArcDiagram | Morphism) -> Morphism:
    """Apply ``f`` first, then ``g`` (``f`` is stacked on top of ``g``)."""
    f, g = as_morphism(f), as_morphism(g)
    if f.lower != g.upper:
        raise ShapeError(f"cannot compose {f.upper}->{f.lower} with {g.upper}->{g.lower}")
    out: dict[ArcDiagram, PolyT] = {}
    for df, cf in f.terms.items():
        for dg, cg in g.terms.items():
            d, loops = compose_diagrams(df, dg)
            c = (cf * cg).shift(loops)
            prev = out.get(d)
            out[d] = c if prev is None else prev + c
    return Morphism._raw(f.upper, g.lower, out)


def compose_all(*fs: ArcDiagram | Morphism) -> Morphism:
    """``compose_all(a, b, c)`` applies ``a``, then ``b``, then ``c``."""
    return reduce(compose, fs[1:], as_morphism(fs[0]))


def tensor(f: ArcDiagram | Morphism, g: ArcDiagram | Morphism) -> Morphism:
    f, g = as_morphism(f), as_morphism(g)
    out: dict[ArcDiagram, PolyT] = {}
    for df, cf in f.terms.items():
        for dg, cg in g.terms.items():
            d = tensor_diagrams(df, dg)
            c = cf * cg
            prev = out.get(d)
            out[d] = c if prev is None else prev + c
    return Morphism._raw(f.upper + g.upper, f.lower + g.lower, out)


def tensor_all(*fs: ArcDiagram | Morphism) -> Morphism:
    if not fs:
        return Morphism.from_diagram(empty_diagram())
    return reduce(tensor, fs[1:], as_morphism(fs[0]))


def tensor_power(f: ArcDiagram | Morphism, n: int) -> Morphism:
    return tensor_all(*([f] * n))


# -- elementary diagrams -------------------------------------------------------


def empty_diagram() -> ArcDiagram:
    return ArcDiagram(0, 0, [])


def identity(n: int) -> ArcDiagram:
    return ArcDiagram(n, n, [(i, n + i) for i in range(1, n + 1)])


def cup() -> ArcDiagram:
    """The evaluation ``V (x) V -> 1``: two upper points joined."""
    return ArcDiagram(2, 0, [(1, 2)])


def cap() -> ArcDiagram:
    """The coevaluation ``1 -> V (x) V``: two lower points joined."""
    return ArcDiagram(0, 2, [(1, 2)])


def cross() -> ArcDiagram:
    return ArcDiagram(2, 2, [(1, 4), (2, 3)])


def permutation_diagram(sigma: Sequence[int]) -> ArcDiagram:
    """Upper point ``i`` joined to lower point ``sigma(i)``; ``sigma`` is 1-based, given as a list."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {list(sigma)}")
    return ArcDiagram(n, n, [(i, n + s) for i, s in enumerate(sigma, 1)])


def block_permutation_map(sigma: Sequence[int], m: int) -> list[int]:
    """The permutation of ``m * len(sigma)`` points moving block ``k`` to block ``sigma(k)``."""
    out = []
    for s in sigma:
        base = m * (s - 1)
        out.extend(base + i for i in range(1, m + 1))
    return out


def block_permutation(sigma: Sequence[int], m: int) -> ArcDiagram:
    return permutation_diagram(block_permutation_map(sigma, m))


def permutation_sign(sigma: Sequence[int]) -> int:
    seen = [False] * len(sigma)
    sign = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def symmetrizer(n: int, sign: int, m: int = 1) -> Morphism:
    """``sum over S_n of sign**sgn(s) * s^(m)``, acting on ``n`` blocks of ``m`` strands."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out: dict[ArcDiagram, PolyT] = {}
    for sigma in itertools.permutations(range(1, n + 1)):
        c = 1 if sign == 1 else permutation_sign(sigma)
        out[block_permutation(sigma, m)] = PolyT.const(c)
    return Morphism._raw(n * m, n * m, out)


def alt(n: int) -> Morphism:
    return symmetrizer(n, -1, 1)


def braiding_map(k: int, l: int) -> list[int]:
    """The permutation ``i -> i + l`` (``i <= k``), ``i -> i - k`` otherwise."""
    return [i + l for i in range(1, k + 1)] + [i - k for i in range(k + 1, k + l + 1)]


def cyc(e: int) -> Morphism:
    """``sum_{i=1}^e (-1)^i c_{1,i-1} (x) id_{e-i}``."""
    if e < 1:
        raise ValueError("cyc needs e >= 1")
    out: dict[ArcDiagram, PolyT] = {}
    for i in range(1, e + 1):
        perm = braiding_map(1, i - 1) + list(range(i + 1, e + 1))
        d = permutation_diagram(perm)
        c = PolyT.const((-1) ** i)
        out[d] = out[d] + c if d in out else c
    return Morphism._raw(e, e, out)


def s_d(d: int) -> Morphism:
    """Symmetrizer onto ``S^d(Lambda^2 V)``: block symmetrizer applied after ``alt_2^{(x)d}``."""
    if d < 0:
        raise ValueError("d must be non-negative")
    if d == 0:
        return Morphism.from_diagram(empty_diagram())
    return compose(tensor_power(alt(2), d), symmetrizer(d, 1, 2))


def s_d_reversed(d: int) -> Morphism:
    """The same morphism as :func:`s_d` computed with the factors in the other order."""
    if d == 0:
        return Morphism.from_diagram(empty_diagram())
    return compose(symmetrizer(d, 1, 2), tensor_power(alt(2), d))


def all_diagrams(upper: int, lower: int) -> Iterator[ArcDiagram]:
    """Every arc diagram with the given numbers of points, in a fixed order."""
    if (upper + lower) % 2:
        return

    def matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
        if not points:
            yield []
            return
        first, rest = points[0], points[1:]
        for i, q in enumerate(rest):
            for tail in matchings(rest[:i] + rest[i + 1 :]):
                yield [(first, q)] + tail

    for arcs in matchings(list(range(1, upper + lower + 1))):
        yield ArcDiagram(upper, lower, arcs)


def random_diagram(upper: int, lower: int, rng: random.Random) -> ArcDiagram:
    """A uniformly random perfect matching on ``upper + lower`` points."""
    if (upper + lower) % 2:
        raise ShapeError(f"no arc diagram with {upper} + {lower} points")
    points = list(range(1, upper + lower + 1))
    rng.shuffle(points)
    return ArcDiagram(upper, lower, [points[i : i + 2] for i in range(0, len(points), 2)])


def morphisms_rank(morphisms: Sequence[Morphism]) -> int:
    """Rank of the given morphisms over Q, as vectors in the free (diagram, t-power) basis."""
    from .linalg import rank

    index: dict[tuple[ArcDiagram, int], int] = {}
    columns = []
    for f in morphisms:
        col = {}
        for d, c in f.terms.items():
            for power, x in enumerate(c.coeffs):
                if x:
                    col[index.setdefault((d, power), len(index))] = x
        columns.append(col)
    return rank(columns)
