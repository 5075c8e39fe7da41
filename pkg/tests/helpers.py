"""Shared helpers for the test suite."""

import math

import numpy as np


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_xy(rng):
    t = rng.uniform(0.0, 2.0 * math.pi)
    return np.array([math.cos(t), math.sin(t), 0.0])


def random_hermitian(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return m + m.conj().T


def max_abs(array):
    return float(np.max(np.abs(array)))
