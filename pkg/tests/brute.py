"""Brute-force oracles shared by the test modules."""

from brauer_pbw.combinatorics import act, asd, group_elements
from brauer_pbw.diagram_core import all_diagrams


def brute_orbits(p, e, d):
    """Orbits of the full group on every arc diagram, as a list of frozensets."""
    elements = list(group_elements(p, e, d))
    seen = set()
    orbits = []
    for x in all_diagrams(p * e, 2 * d):
        if x in seen:
            continue
        orbit = frozenset(act(g, x) for g in elements)
        seen |= orbit
        orbits.append(orbit)
    return orbits


def asd_classes(p, e, d):
    classes = {}
    for x in all_diagrams(p * e, 2 * d):
        classes.setdefault(asd(x, p, e, d), set()).add(x)
    return [frozenset(c) for c in classes.values()]


def small_shapes(max_pe=4, max_d=3):
    """Shapes ``(p, e, d)`` with ``p * e <= max_pe`` and ``d <= max_d`` that admit arc diagrams."""
    for p in range(1, max_pe + 1):
        for e in range(1, max_pe // p + 1):
            if (p * e) % 2:
                continue
            for d in range(max_d + 1):
                yield p, e, d
