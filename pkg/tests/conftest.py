import random

import pytest
from hypothesis import strategies as st

from weylext.combinatorics import Partition, SkewShape


@st.composite
def partitions_st(draw, min_degree=1, max_degree=6, max_parts=None):
    d = draw(st.integers(min_value=min_degree, max_value=max_degree))
    parts = []
    left = d
    while left:
        cap = min(left, parts[-1] if parts else left)
        if max_parts is not None and len(parts) == max_parts - 1:
            if left > cap:
                break
            parts.append(left)
            left = 0
            break
        x = draw(st.integers(min_value=1, max_value=cap))
        parts.append(x)
        left -= x
    if left:
        # could not fit under max_parts; top up the first row
        parts[0] += left
    return Partition(tuple(parts))


@st.composite
def skew_shapes_st(draw, max_degree=5, max_rows=3):
    outer = draw(partitions_st(max_degree=max_degree + 2, max_parts=max_rows))
    inner = []
    for i, x in enumerate(outer.parts[:-1]):
        cap = min(x, inner[-1] if inner else x)
        inner.append(draw(st.integers(min_value=0, max_value=cap)))
    shape = SkewShape(outer, Partition(tuple(inner)))
    if shape.degree == 0 or shape.degree > max_degree:
        return SkewShape(outer if outer.degree <= max_degree else Partition((max_degree,)))
    return shape


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, bound=9):
    m = draw(st.integers(min_value=1, max_value=max_rows))
    n = draw(st.integers(min_value=1, max_value=max_cols))
    return [[draw(st.integers(min_value=-bound, max_value=bound)) for _ in range(n)] for _ in range(m)]


def random_matrix(rng: random.Random, max_size=12, bound=9):
    m, n = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """Records one pass/fail line per acceptance criterion; echoed in the terminal summary."""
    lines = request.config.stash.setdefault(ACCEPTANCE, {})

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
        lines[number] = line
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
