import numpy as np


def as_float_array(x):
    return np.asarray(x, dtype=float)


def unwrap(a):
    """Return a Python float for 0-d results, the array otherwise."""
    a = np.asarray(a)
    if a.ndim == 0:
        return float(a)
    return a


def format_extended(x: float) -> str:
    """Serialize an extended real with explicit signed infinities."""
    if x == np.inf:
        return "+inf"
    if x == -np.inf:
        return "-inf"
    return repr(float(x))
