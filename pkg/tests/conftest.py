from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from hopfcorad.exactla import GF, QQ, Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELDS = [QQ, GF(2), GF(3), GF(5)]


@st.composite
def matrices(draw, field=None, max_rows=6, max_cols=6):
    f = field or draw(st.sampled_from(FIELDS))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    dense = [[draw(st.integers(-3, 3)) for _ in range(c)] for _ in range(r)]
    return Matrix.from_dense(dense, f, cols=c) if r else Matrix(0, c, f)


def frac(x):
    return Fraction(x)


CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(f"CRITERION {k}: {CRITERIA[k]}")
