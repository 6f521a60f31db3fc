import math

import numpy as np
import pytest
from scipy import stats

from infoconv.errors import UndefinedCorrelationError
from infoconv.stats import pearson, pearson_or_none


def test_small_example_by_hand():
    # Centered: dx = (-1.5, -.5, .5, 1.5), dy = (-.75, -1.75, .25, 2.25).
    r, p = pearson([1, 2, 3, 4], [2, 1, 3, 5])
    assert r == pytest.approx(5.5 / math.sqrt(5 * 8.75), abs=1e-15)
    t = r * math.sqrt(2 / (1 - r * r))
    # Two-sided p for 2 degrees of freedom has a closed form.
    assert p == pytest.approx(1 - t / math.sqrt(2 + t * t), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("n", [3, 10, 200])
def test_matches_scipy(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n)
    y = 0.3 * x + rng.standard_normal(n)
    ref = stats.pearsonr(x, y)
    r, p = pearson(x, y)
    assert r == pytest.approx(ref.statistic, abs=1e-12)
    assert p == pytest.approx(ref.pvalue, rel=1e-9, abs=1e-15)


def test_perfect_correlation():
    assert pearson([1, 2, 3], [2, 4, 6]) == (1.0, 0.0)
    r, p = pearson([1, 2, 3], [3, 2, 1])
    assert r == -1.0 and p == 0.0


@pytest.mark.parametrize("xs, ys", [
    ([1, 2], [1, 2]),
    ([1, 2, 3], [1, 2]),
    ([1, 1, 1], [1, 2, 3]),
    ([1, 2, 3], [5, 5, 5]),
])
def test_undefined(xs, ys):
    with pytest.raises(UndefinedCorrelationError):
        pearson(xs, ys)
    assert pearson_or_none(xs, ys) == (None, None)
