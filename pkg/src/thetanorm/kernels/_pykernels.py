"""Numpy fallback for the batch kernels; same contract as the compiled module.

All functions take integer rank arrays of shape (n, t) and return int64
arrays. Theta values are returned scaled (30*Theta or 120*Theta) so the
results stay integral.
"""

import itertools

import numpy as np

# the six bracketed products of the reduced formula, one rotation:
# (sign, x-triple, y-triple) in terms of tau(0..4)
REDUCED_TERMS = (
    (+1, (0, 1, 2), (0, 3, 4)),
    (+1, (0, 3, 4), (0, 1, 2)),
    (-1, (0, 1, 3), (0, 2, 4)),
    (-1, (0, 2, 4), (0, 1, 3)),
    (+1, (0, 1, 4), (0, 2, 3)),
    (+1, (0, 2, 3), (0, 1, 4)),
)


def _sign(p):
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


PERMS5 = np.array(list(itertools.permutations(range(5))), dtype=np.int64)
PERM_SIGNS5 = np.array([_sign(p) for p in PERMS5], dtype=np.int64)


def _or(a, b, c):
    s = (b - a) * (c - b) * (c - a)
    return np.sign(s)


def orientation(a, b, c):
    return int(np.sign((b - a) * (c - b) * (c - a)))


def _theta30_cols(X, Y, cols, terms=REDUCED_TERMS):
    total = np.zeros(X.shape[0], dtype=np.int64)
    for k in range(5):
        tau = [cols[(i + k) % 5] for i in range(5)]
        for s, xt, yt in terms:
            ox = _or(X[:, tau[xt[0]]], X[:, tau[xt[1]]], X[:, tau[xt[2]]])
            oy = _or(Y[:, tau[yt[0]]], Y[:, tau[yt[1]]], Y[:, tau[yt[2]]])
            total += s * ox * oy
    return total


def theta30_batch(X, Y, terms=REDUCED_TERMS):
    """30 * Theta; ``terms`` replaces the bracketed products (used by fault injection)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    return _theta30_cols(X, Y, list(range(5)), terms)


def theta120_batch(X, Y):
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    total = np.zeros(X.shape[0], dtype=np.int64)
    for p, s in zip(PERMS5, PERM_SIGNS5):
        ox = _or(X[:, p[0]], X[:, p[1]], X[:, p[2]])
        oy = _or(Y[:, p[2]], Y[:, p[3]], Y[:, p[4]])
        total += s * ox * oy
    return total


def dtheta30_batch(X, Y):
    """30 * (delta Theta) on 6-tuples, faces evaluated straight from the ranks."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    total = np.zeros(X.shape[0], dtype=np.int64)
    for i in range(6):
        cols = [c for c in range(6) if c != i]
        v = _theta30_cols(X, Y, cols)
        total += v if i % 2 == 0 else -v
    return total
