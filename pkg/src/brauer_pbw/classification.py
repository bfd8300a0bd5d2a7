"""Interpolating PBW deformation families and the linear-system audit.

The families are

* ``kappa_w`` (``e = 1``): the partition-corrected maps ``kappa^(rho, w)``,
* ``form`` (``e = 2, rho = +1``) and ``lie`` (``e = 2, rho = -1``),
* ``mu_nu`` (``e`` even): ``x^rho`` of the graph with loops labelled by
  ``mu`` at vertex 1 and by ``nu`` at vertex 2.

:func:`classify` lists the families up to a degree bound.  :func:`audit`
solves ``omega = 0`` over the full symmetrized basis in each degree and
compares the solution space with the span of the listed families.  Degree 0
carries no condition, so every degree-0 element counts as a solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .combinatorics import (
    Partition,
    Pseudograph,
    ShapeError,
    class_representative,
    enumerate_sym_basis,
    partitions,
)
from .jacobi import DeformationMap, jacobi_residual, omega_of_sym

KINDS = ("kappa_w", "form", "lie", "mu_nu")

Key = tuple[Pseudograph, Partition]


class FamilyError(ValueError):
    """A family was requested with inconsistent parameters."""


def _check_rho(rho: int) -> None:
    if rho not in (1, -1):
        raise FamilyError(f"rho must be +1 or -1, got {rho}")


# -- the families -------------------------------------------------------------------------


def kappa_w_coefficients(rho: int, w: int) -> dict[Partition, Fraction]:
    """Coefficient of ``x^rho_{w - |nu|, nu}`` in ``kappa^(rho, w)``, by the closed product formula."""
    _check_rho(rho)
    if w < 0 or (-1) ** w != rho:
        raise FamilyError(f"kappa^(rho, w) needs (-1)^w == rho, got rho={rho}, w={w}")
    out = {}
    for size in range(0, w + 1, 2):
        for nu in partitions(size, even_only=True):
            denom = math.prod(nu.parts) * math.prod(math.factorial(m) for m in nu.multiplicities().values())
            out[nu] = Fraction((-rho) ** nu.length, denom)
    return out


def kappa_w_recursive(rho: int, w: int) -> dict[Partition, Fraction]:
    """The same coefficients from the two-term recursion.

    ``m_lam(l) * l * alpha[M, lam] = -rho * alpha[M + l, lam - l]`` for every part
    ``l`` of ``lam``, started from ``alpha[w, ()] = 1`` and always removing the
    largest part.
    """
    _check_rho(rho)
    if w < 0 or (-1) ** w != rho:
        raise FamilyError(f"kappa^(rho, w) needs (-1)^w == rho, got rho={rho}, w={w}")
    alpha: dict[Partition, Fraction] = {Partition(): Fraction(1)}
    for size in range(2, w + 1, 2):
        for lam in partitions(size, even_only=True):
            part = lam.parts[0]
            alpha[lam] = -rho * alpha[lam.remove(part)] / (lam.multiplicity(part) * part)
    return alpha


def _edge_graph(label: int) -> Pseudograph:
    return Pseudograph(2, 1, ((1, 2, label),))


def build_kappa_w(rho: int, w: int) -> DeformationMap:
    coeffs = kappa_w_coefficients(rho, w)
    return DeformationMap(1, rho, {(_edge_graph(w - nu.size), nu): c for nu, c in coeffs.items()})


GAMMA_FORM = Pseudograph(2, 2, ((1, 2, 0), (1, 2, 0)))
GAMMA_LIE = Pseudograph(2, 2, ((1, 2, 0), (1, 2, 1)))


def build_special(kind: str) -> DeformationMap:
    if kind == "form":
        return DeformationMap(2, 1, {(GAMMA_FORM, Partition()): Fraction(1)})
    if kind == "lie":
        return DeformationMap(2, -1, {(GAMMA_LIE, Partition()): Fraction(1)})
    raise FamilyError(f"unknown special family {kind!r}")


def _lex_less(mu: Partition, nu: Partition) -> bool:
    return mu.parts < nu.parts


def in_q(mu: Partition, nu: Partition, rho: int) -> bool:
    """Membership of ``(mu, nu)`` in ``Q^rho_l`` with ``l = #mu``, lexicographic order on parts."""
    if mu.length != nu.length or mu.length == 0:
        return False
    return _lex_less(mu, nu) or (mu == nu and rho == 1)


def loop_graph(mu: Partition, nu: Partition) -> Pseudograph:
    edges = [(1, 1, a) for a in mu.parts] + [(2, 2, b) for b in nu.parts]
    return Pseudograph(2, 2 * mu.length, tuple(sorted(edges)))


def build_mu_nu(e: int, rho: int, mu: Partition, nu: Partition) -> DeformationMap:
    _check_rho(rho)
    if e % 2 or e == 0:
        raise FamilyError(f"loop families need an even positive e, got {e}")
    if mu.length != e // 2 or nu.length != e // 2:
        raise FamilyError(f"mu and nu need exactly {e // 2} parts each")
    if any(a % 2 == 0 for a in mu.parts + nu.parts):
        raise FamilyError("loop labels must be odd")
    if not in_q(mu, nu, rho):
        raise FamilyError(f"({mu}, {nu}) is not in Q^{rho:+d}")
    return DeformationMap(e, rho, {(loop_graph(mu, nu), Partition()): Fraction(1)})


def q_pairs(ell: int, rho: int, size: int) -> list[tuple[Partition, Partition]]:
    """All ``(mu, nu)`` in ``Q^rho_ell`` with odd parts and ``|mu| + |nu| == size``."""
    out = []
    for a in range(ell, size - ell + 1):
        for mu in partitions(a):
            if mu.length != ell or any(x % 2 == 0 for x in mu.parts):
                continue
            for nu in partitions(size - a):
                if nu.length != ell or any(x % 2 == 0 for x in nu.parts):
                    continue
                if in_q(mu, nu, rho):
                    out.append((mu, nu))
    return sorted(out, key=lambda pair: (pair[0].parts, pair[1].parts))


@dataclass(frozen=True)
class DeformationFamily:
    e: int
    rho: int
    kind: str
    params: tuple = ()

    def __post_init__(self) -> None:
        _check_rho(self.rho)
        if self.kind not in KINDS:
            raise FamilyError(f"unknown family kind {self.kind!r}")
        if self.kind == "kappa_w":
            (w,) = self.params
            if self.e != 1 or (-1) ** w != self.rho or w < 0:
                raise FamilyError("kappa_w needs e = 1 and (-1)^w = rho")
        elif self.kind == "form" and (self.e, self.rho) != (2, 1):
            raise FamilyError("the form family lives at e = 2, rho = +1")
        elif self.kind == "lie" and (self.e, self.rho) != (2, -1):
            raise FamilyError("the Lie family lives at e = 2, rho = -1")
        elif self.kind == "mu_nu":
            mu, nu = self.params
            build_mu_nu(self.e, self.rho, mu, nu)

    def build(self) -> DeformationMap:
        if self.kind == "kappa_w":
            return build_kappa_w(self.rho, self.params[0])
        if self.kind in ("form", "lie"):
            return build_special(self.kind)
        return build_mu_nu(self.e, self.rho, *self.params)

    @property
    def degree(self) -> int:
        if self.kind == "kappa_w":
            return self.params[0]
        if self.kind == "form":
            return 0
        if self.kind == "lie":
            return 1
        mu, nu = self.params
        return mu.size + nu.size

    @property
    def name(self) -> str:
        if self.kind == "kappa_w":
            return f"kappa({self.rho:+d},{self.params[0]})"
        if self.kind in ("form", "lie"):
            return f"kappa_{self.kind}"
        mu, nu = self.params
        return f"x{'+' if self.rho == 1 else '-'}(mu={list(mu.parts)},nu={list(nu.parts)})"

    def to_json(self) -> dict:
        params: list = []
        if self.kind == "kappa_w":
            params = [self.params[0]]
        elif self.kind == "mu_nu":
            params = [self.params[0].to_json(), self.params[1].to_json()]
        return {"e": self.e, "rho": self.rho, "kind": self.kind, "params": params, "degree": self.degree, "name": self.name}

    @classmethod
    def from_json(cls, data: Mapping) -> DeformationFamily:
        kind = data["kind"]
        raw = data.get("params", [])
        if kind == "kappa_w":
            params: tuple = (int(raw[0]),)
        elif kind == "mu_nu":
            params = (Partition.from_json(raw[0]), Partition.from_json(raw[1]))
        else:
            params = ()
        return cls(int(data["e"]), int(data["rho"]), kind, params)


def classify(e: int, rho: int, d_max: int) -> list[DeformationFamily]:
    """The listed families of degree at most ``d_max``, lowest degree first."""
    _check_rho(rho)
    if e < 1:
        raise FamilyError("e must be positive")
    if d_max < 0:
        raise FamilyError("d_max must be non-negative")
    out: list[DeformationFamily] = []
    if e == 1:
        for w in range(0, d_max + 1):
            if (-1) ** w == rho:
                out.append(DeformationFamily(1, rho, "kappa_w", (w,)))
        return out
    if e == 2:
        out.append(DeformationFamily(2, rho, "form" if rho == 1 else "lie"))
    if e % 2 == 0:
        for size in range(e, d_max + 1):
            for mu, nu in q_pairs(e // 2, rho, size):
                out.append(DeformationFamily(e, rho, "mu_nu", (mu, nu)))
    return [f for f in out if f.degree <= d_max]


# -- the linear-system audit ------------------------------------------------------------------


def normalize(kappa: DeformationMap) -> dict[Key, Fraction]:
    """Coordinates of ``kappa`` in the basis of class representatives.

    ``x^rho(g^t, lam) = rho * sgn(g) * x^rho(g, lam)``.
    """
    out: dict[Key, Fraction] = {}
    for (g, lam), c in kappa.terms.items():
        rep = class_representative(g)
        if rep != g:
            c = c * kappa.rho * g.sign()
        if rep == rep.transpose() and rep.sign() != kappa.rho:
            continue  # x^rho vanishes on this class
        out[(rep, lam)] = out.get((rep, lam), Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def data_solution_candidate(graph: Pseudograph, partition: Partition) -> bool:
    """Whether ``(graph, partition)`` survives the coefficient rules that discard split edges and opened cycles."""
    e = graph.valence
    if e == 1:
        return True
    between = [lab for a, b, lab in graph.edges if a != b]
    if e == 2:
        return all(lab <= 1 for lab in between) and partition.size == 0
    return not between and partition.size == 0


def _omega_column(graph: Pseudograph, partition: Partition, rho: int) -> dict:
    res = omega_of_sym(graph, partition, rho)
    return dict(res.terms)


def kernel_basis(e: int, rho: int, d: int, candidates_only: bool = False) -> list[DeformationMap]:
    """A basis of the degree-``d`` solutions of ``omega = 0`` (everything when ``d == 0``)."""
    basis = enumerate_sym_basis(e, d, rho)
    if candidates_only:
        basis = [(g, lam) for g, lam in basis if data_solution_candidate(g, lam)]
    if not basis:
        return []
    if d == 0:
        return [DeformationMap(e, rho, {key: Fraction(1)}) for key in basis]
    columns = [_omega_column(g, lam, rho) for g, lam in basis]
    out = []
    for vec in linalg.kernel(columns):
        out.append(DeformationMap(e, rho, {key: c for key, c in zip(basis, vec) if c}))
    return out


@dataclass
class DegreeReport:
    degree: int
    basis_size: int
    kernel_dim: int
    candidate_kernel_dim: int
    family_dim: int
    families_in_kernel: bool
    kernel_in_families: bool
    failing_families: list[str] = field(default_factory=list)

    @property
    def free(self) -> bool:
        """Degree 0 carries no condition."""
        return self.degree == 0

    @property
    def matches(self) -> bool:
        """Kernel and family span coincide."""
        return self.families_in_kernel and self.kernel_in_families and self.kernel_dim == self.family_dim

    @property
    def ok(self) -> bool:
        """Degree 0 is not part of the linear system, so only positive degrees must match."""
        return self.free or self.matches

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis_size": self.basis_size,
            "kernel_dim": self.kernel_dim,
            "candidate_kernel_dim": self.candidate_kernel_dim,
            "family_dim": self.family_dim,
            "families_in_kernel": self.families_in_kernel,
            "kernel_in_families": self.kernel_in_families,
            "failing_families": list(self.failing_families),
            "free": self.free,
            "matches": self.matches,
            "ok": self.ok,
        }


@dataclass
class AuditReport:
    e: int
    rho: int
    d_max: int
    degrees: list[DegreeReport]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.degrees)

    @property
    def kernel_dim(self) -> int:
        return sum(r.kernel_dim for r in self.degrees)

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "rho": self.rho,
            "d_max": self.d_max,
            "kernel_dim": self.kernel_dim,
            "ok": self.ok,
            "degrees": [r.to_json() for r in self.degrees],
        }


def _rank(vectors: Iterable[Mapping[Key, Fraction]]) -> int:
    return linalg.rank(list(vectors))


def audit(e: int, rho: int, d_max: int) -> AuditReport:
    """Compare the solution space of ``omega = 0`` with the span of :func:`classify` degree by degree."""
    families = classify(e, rho, d_max)
    reports = []
    for d in range(0, d_max + 1):
        basis = enumerate_sym_basis(e, d, rho)
        kernel = [normalize(k) for k in kernel_basis(e, rho, d)]
        cand = kernel_basis(e, rho, d, candidates_only=True)
        fams = [f for f in families if f.degree == d]
        fam_vecs = [normalize(f.build()) for f in fams]
        k_dim = _rank(kernel)
        f_dim = _rank(fam_vecs)
        joint = _rank(kernel + fam_vecs)
        failing = []
        for f in fams:
            if d > 0 and not all(r.is_zero() for r in jacobi_residual(f.build()).values()):
                failing.append(f.name)
        reports.append(
            DegreeReport(
                degree=d,
                basis_size=len(basis),
                kernel_dim=k_dim,
                candidate_kernel_dim=len(cand),
                family_dim=f_dim,
                families_in_kernel=joint == k_dim,
                kernel_in_families=joint == f_dim,
                failing_families=failing,
            )
        )
    return AuditReport(e, rho, d_max, reports)


def is_pbw(kappa: DeformationMap) -> bool:
    """Whether every residual of ``kappa`` in positive degree vanishes."""
    return all(r.is_zero() for r in jacobi_residual(kappa).values())


__all__ = [
    "AuditReport",
    "DegreeReport",
    "DeformationFamily",
    "FamilyError",
    "GAMMA_FORM",
    "GAMMA_LIE",
    "ShapeError",
    "audit",
    "build_kappa_w",
    "build_mu_nu",
    "build_special",
    "classify",
    "data_solution_candidate",
    "in_q",
    "is_pbw",
    "kappa_w_coefficients",
    "kappa_w_recursive",
    "kernel_basis",
    "loop_graph",
    "normalize",
    "q_pairs",
]
