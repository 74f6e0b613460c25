import numpy as np
import pytest

from intdim import ActivationMatrix


def naive_two_nearest(data):
    """Independent O(N^2) oracle: direct-subtraction distances, ties to
    the lower index. Returns (r1, r2, nn1, nn2) with positional indices.
    """
    data = np.asarray(data, dtype=np.float64)
    n = data.shape[0]
    r1 = np.empty(n)
    r2 = np.empty(n)
    nn1 = np.empty(n, dtype=np.int64)
    nn2 = np.empty(n, dtype=np.int64)
    for i in range(n):
        diff = data - data[i]
        d = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        d[i] = np.inf
        order = np.lexsort((np.arange(n), d))
        nn1[i], nn2[i] = order[0], order[1]
        r1[i], r2[i] = d[order[0]], d[order[1]]
    return r1, r2, nn1, nn2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def matrix(arr):
    return ActivationMatrix(np.asarray(arr, dtype=np.float64))
