"""8-PSK set-partitioning mapper, complex AWGN channel, and soft demapper."""

import math
from dataclasses import dataclass

import numpy as np

from . import infogeo, kernels


@dataclass(frozen=True)
class LabeledConstellation:
    """Unit-energy points with distinct m-bit labels and the per-bit subsets.

    subsets[i, b] lists the point indices whose label bit i equals b.
    """

    points: np.ndarray  # complex128 (M,)
    labels: np.ndarray  # int64 (M, m)
    subsets: np.ndarray  # int64 (m, 2, M // 2)

    @property
    def bits_per_symbol(self) -> int:
        return self.labels.shape[1]


def build_8psk_sp() -> LabeledConstellation:
    """8-PSK with natural binary labels on consecutive points.

    Point k sits at exp(2j*pi*k/8) and carries the 3-bit label of k,
    most significant bit first. Each label bit then halves the set with
    doubling minimum distance (2sin(pi/8), sqrt(2), 2), which is the
    set-partitioning chain.
    """
    k = np.arange(8)
    points = np.exp(2j * np.pi * k / 8).astype(np.complex128)
    labels = np.stack([(k >> 2) & 1, (k >> 1) & 1, k & 1], axis=1).astype(np.int64)
    subsets = np.empty((3, 2, 4), dtype=np.int64)
    for i in range(3):
        for b in range(2):
            subsets[i, b] = np.nonzero(labels[:, i] == b)[0]
    return LabeledConstellation(points=points, labels=labels, subsets=subsets)


@dataclass(frozen=True)
class ChannelParams:
    """Complex AWGN channel, sigma2 per real dimension, unit symbol energy."""

    sigma2: float
    ebno_db: float
    code_rate: float
    bits_per_symbol: int

    def __post_init__(self):
        if self.sigma2 <= 0.0:
            raise ValueError("sigma2 must be positive")
        implied = 1.0 / (
            2.0
            * self.code_rate
            * self.bits_per_symbol
            * 10.0 ** (self.ebno_db / 10.0)
        )
        if not math.isclose(self.sigma2, implied, rel_tol=1e-9):
            raise ValueError("sigma2 inconsistent with ebno_db at this rate")

    @classmethod
    def from_ebno_db(cls, ebno_db, code_rate=1.0 / 3.0, bits_per_symbol=3):
        sigma2 = 1.0 / (2.0 * code_rate * bits_per_symbol * 10.0 ** (ebno_db / 10.0))
        return cls(
            sigma2=sigma2,
            ebno_db=float(ebno_db),
            code_rate=code_rate,
            bits_per_symbol=bits_per_symbol,
        )

    @classmethod
    def from_sigma2(cls, sigma2, code_rate=1.0 / 3.0, bits_per_symbol=3):
        ebno_db = 10.0 * math.log10(1.0 / (2.0 * code_rate * bits_per_symbol * sigma2))
        return cls(
            sigma2=float(sigma2),
            ebno_db=ebno_db,
            code_rate=code_rate,
            bits_per_symbol=bits_per_symbol,
        )


@dataclass(frozen=True)
class ReceivedFrame:
    samples: np.ndarray  # complex128 (L_c / m,)


def map_symbols(bits, constellation: LabeledConstellation) -> np.ndarray:
    """Group m consecutive bits (label order, MSB first) into one symbol."""
    bits = np.asarray(bits, dtype=np.int64)
    m = constellation.bits_per_symbol
    if bits.ndim != 1 or bits.shape[0] % m != 0:
        raise ValueError(f"bit count must be a multiple of {m}")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bits must be binary")
    weights = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    idx = bits.reshape(-1, m) @ weights
    return constellation.points[idx]


def transmit(symbols, ch: ChannelParams, seed) -> ReceivedFrame:
    """y = s + n with independent real/imag noise of variance sigma2 each.

    seed may be an integer or a numpy Generator; identical seeds give
    identical noise.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((symbols.shape[0], 2))
    noise = math.sqrt(ch.sigma2) * (z[:, 0] + 1j * z[:, 1])
    return ReceivedFrame(samples=symbols + noise)


def demap(y, prior, constellation: LabeledConstellation, ch: ChannelParams):
    """Soft demapping of every bit of every symbol.

    prior: marginals over the interleaved bits, length m * len(y).
    Returns (extrinsic, app) marginals. The extrinsic for bit i sums point
    likelihoods weighted by the other bits' priors only; the APP adds the
    own-bit prior factor. Per-symbol sums run in log domain over all
    constellation points.
    """
    samples = y.samples if isinstance(y, ReceivedFrame) else np.asarray(y)
    samples = np.asarray(samples, dtype=np.complex128)
    prior = np.asarray(prior, dtype=np.float64)
    m = constellation.bits_per_symbol
    if prior.shape[0] != samples.shape[0] * m:
        raise ValueError("prior length must be bits_per_symbol * symbol count")

    prior_llr = infogeo.logit(infogeo.clamp_marginals(prior))
    ext_llr, app_llr = kernels.demap_llrs(
        np.ascontiguousarray(samples.real),
        np.ascontiguousarray(samples.imag),
        np.ascontiguousarray(prior_llr),
        np.ascontiguousarray(constellation.points.real),
        np.ascontiguousarray(constellation.points.imag),
        constellation.labels,
        1.0 / (2.0 * ch.sigma2),
    )
    return infogeo.sigmoid(ext_llr), infogeo.sigmoid(app_llr)
