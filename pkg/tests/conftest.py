import random

from hypothesis import strategies as st

from brauer_pbw.diagram_core import random_diagram


@st.composite
def diagrams(draw, upper=None, lower=None, max_points=8):
    """Random arc diagrams with at most ``max_points`` points."""
    if upper is None:
        upper = draw(st.integers(0, max_points))
    if lower is None:
        room = max_points - upper
        lower = draw(st.integers(0, max(room, 0)).filter(lambda l: (l + upper) % 2 == 0))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_diagram(upper, lower, random.Random(seed))


def sizes_with_parity(draw, first, max_points=8):
    return draw(st.integers(0, max_points - first).filter(lambda l: (l + first) % 2 == 0))
