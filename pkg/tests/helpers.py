"""Independent oracles shared by unit and acceptance tests.

Everything here works from the model definition (membership indicators
Z_i ~ Bernoulli(r), edge probability W_i W_j ((a-b) Z_i Z_j + b)/n)
without touching the closed-form coefficient implementations.
"""

import itertools
import math

import numpy as np


def ring_edge_product(z, d, b, n):
    """prod over ring edges of ((a-b) z_i z_j + b)/n for one z pattern."""
    k = len(z)
    prod = 1.0
    for i in range(k):
        j = (i + 1) % k
        prod *= (d * z[i] * z[j] + b) / n
    return prod


def pattern_table(k_cycle, params):
    """All 2^k membership patterns with probabilities and edge products."""
    d, b, r, n = params.a - params.b, params.b, params.r, params.n
    probs, values = [], []
    for z in itertools.product((0, 1), repeat=k_cycle):
        pz = 1.0
        for zi in z:
            pz *= r if zi else (1.0 - r)
        probs.append(pz)
        values.append(ring_edge_product(z, d, b, n))
    return np.array(probs), np.array(values)


def enum_cycle_coefficient(k_cycle, params):
    """Exact E[prod of ring edge probabilities] by full enumeration over Z."""
    probs, values = pattern_table(k_cycle, params)
    return float(probs @ values)


def mc_cycle_coefficient(k_cycle, params, n_draws, rng):
    """Monte Carlo mean of the ring edge product over n_draws iid Z vectors.

    The draws are aggregated through their sufficient statistic: a
    multinomial count over the 2^k membership patterns, which is
    distributionally identical to averaging n_draws individual samples
    and allows billions of draws.
    """
    probs, values = pattern_table(k_cycle, params)
    counts = rng.multinomial(n_draws, probs)
    return float(counts @ values) / n_draws


def agrees_to_sigfigs(x, y, figs=3):
    """|x - y| within half a unit in y's figs-th significant digit."""
    if y == 0:
        return x == 0
    exponent = math.floor(math.log10(abs(y)))
    return abs(x - y) <= 0.5 * 10.0 ** (exponent - figs + 1)
