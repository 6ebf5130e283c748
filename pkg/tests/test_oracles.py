import pytest

from oracles import chart_dimension

from confspace.confmod import build_space, s1xd3_spec
from confspace.whprod import build_N


@pytest.mark.parametrize("window,bound", [(1, 2), (1, 3), (2, 4), (2, 5)])
def test_chart_dimension_matches_oracle(window, bound):
    n = build_N(build_space(s1xd3_spec(window), "pi5C3"))
    assert n.chart_dim == chart_dimension(window, bound)


def test_window_three_matches_oracle():
    n = build_N(build_space(s1xd3_spec(3), "pi5C3"))
    assert n.chart_dim == chart_dimension(3, 6) == 27
