"""Exact linear algebra over Q for sparse column vectors.

A column is a mapping ``row index -> Fraction``.  The heavy lifting is done by
sympy's ``DomainMatrix`` over ``QQ``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _matrix(columns: Sequence[Mapping[Hashable, Fraction]]) -> DomainMatrix:
    index: dict[Hashable, int] = {}
    rows: dict[int, dict[int, object]] = {}
    for j, col in enumerate(columns):
        for key, x in col.items():
            if x:
                i = index.setdefault(key, len(index))
                rows.setdefault(i, {})[j] = QQ(x.numerator, x.denominator) if isinstance(x, Fraction) else QQ(x)
    return DomainMatrix(rows, (max(len(index), 1), len(columns)), QQ)


def rank(columns: Sequence[Mapping[Hashable, Fraction]]) -> int:
    if not columns:
        return 0
    return _matrix(columns).rank()


def kernel(columns: Sequence[Mapping[Hashable, Fraction]]) -> list[list[Fraction]]:
    """Basis of ``{c : sum_j c_j * columns[j] == 0}`` in reduced echelon form."""
    if not columns:
        return []
    ns = _matrix(columns).nullspace().to_Matrix()
    out = []
    for r in range(ns.rows):
        out.append([Fraction(int(x.p), int(x.q)) for x in ns.row(r)])
    return out
