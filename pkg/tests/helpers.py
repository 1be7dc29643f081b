"""Shared test utilities."""

from ptosc import make_params


def random_params(rng):
    """A random valid parameter draw: either diagonal ordering, eta in
    [0, 0.99], momentum in [0, 2]."""
    lo, hi = sorted(rng.uniform(0.2, 5.0, size=2))
    while hi - lo < 1e-3:
        lo, hi = sorted(rng.uniform(0.2, 5.0, size=2))
    m1, m2 = (hi, lo) if rng.random() < 0.5 else (lo, hi)
    eta = rng.uniform(0.0, 0.99)
    return make_params(m1, m2, 0.5 * eta * (hi - lo), rng.uniform(0.0, 2.0))
