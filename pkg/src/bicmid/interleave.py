"""Seeded pseudorandom bit interleaver and its inverse."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0..length-1} with its inverse; regenerable from seed."""

    forward: np.ndarray
    inverse: np.ndarray
    seed: int


def build_permutation(length: int, seed: int) -> Permutation:
    """Fisher-Yates shuffle of the identity, driven by PCG64(seed)."""
    if length < 1:
        raise ValueError("permutation length must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    forward = np.arange(length, dtype=np.int64)
    for i in range(length - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        forward[i], forward[j] = forward[j], forward[i]
    inverse = np.argsort(forward)
    return Permutation(forward=forward, inverse=inverse, seed=seed)


def interleave(x: np.ndarray, perm: Permutation) -> np.ndarray:
    """Gather convention: y[i] = x[forward[i]]."""
    x = np.asarray(x)
    if x.shape[0] != perm.forward.shape[0]:
        raise ValueError("vector length does not match permutation length")
    return x[perm.forward]


def deinterleave(x: np.ndarray, perm: Permutation) -> np.ndarray:
    """Inverse map, y[i] = x[inverse[i]]; undoes interleave exactly."""
    x = np.asarray(x)
    if x.shape[0] != perm.inverse.shape[0]:
        raise ValueError("vector length does not match permutation length")
    return x[perm.inverse]
