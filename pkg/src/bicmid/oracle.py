"""Brute-force reference implementations for tests.

Everything here runs in the linear probability domain with compensated
summation and its own literal shift-register encoder, deliberately sharing
no arithmetic with the log-domain production paths it checks. Exponential
in info length by design; tiny frames only.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import codec, infogeo, interleave, modem

MAX_ORACLE_INFO_LEN = 6


@dataclass(frozen=True)
class TinyFrameSpec:
    """A frame small enough for exhaustive codeword enumeration."""

    info_len: int
    seed: int
    ebno_db: float


@dataclass(frozen=True)
class TinyFrame:
    spec: TinyFrameSpec
    info_bits: np.ndarray
    y: modem.ReceivedFrame
    code: codec.CodeConfig
    trellis: codec.TrellisSpec
    constellation: modem.LabeledConstellation
    chan: modem.ChannelParams
    perm: interleave.Permutation


def _reference_encode(info_bits, generator):
    # plain shift-register simulation: sum of tap products mod 2, zero tail
    memory = len(generator[0]) - 1
    history = [0] * memory
    out = []
    for u in list(info_bits) + [0] * memory:
        reg = [int(u)] + history
        for row in generator:
            out.append(sum(t * b for t, b in zip(row, reg)) % 2)
        history = [int(u)] + history[:-1]
    return np.array(out, dtype=np.int64)


def enumerate_codewords(code: codec.CodeConfig, info_len: int):
    """All 2^info_len (info word, codeword) pairs of the zero-tailed code."""
    if info_len > MAX_ORACLE_INFO_LEN:
        raise ValueError(f"info length {info_len} too large for enumeration")
    if info_len < 1:
        raise ValueError("info length must be >= 1")
    words = np.array(
        [[(w >> k) & 1 for k in range(info_len)] for w in range(2**info_len)],
        dtype=np.int64,
    )
    codewords = np.stack([_reference_encode(w, code.generator) for w in words])
    return words, codewords


def exhaustive_siso(prior, code: codec.CodeConfig):
    """Literal sum over every codeword: for bit l and value b, add the
    product of the other bits' prior factors over codewords with c_l = b.

    Returns (extrinsic, app) marginals. Compensated sums keep the
    normalization sharp; runtime is exponential in info length.
    """
    prior = np.asarray(prior, dtype=np.float64)
    n_out = len(code.generator)
    memory = len(code.generator[0]) - 1
    if prior.shape[0] % n_out != 0:
        raise ValueError("prior length must be a multiple of n_out")
    info_len = prior.shape[0] // n_out - memory
    _, codewords = enumerate_codewords(code, info_len)

    length = prior.shape[0]
    factors = np.where(codewords == 1, prior[None, :], 1.0 - prior[None, :])
    ext = np.empty(length)
    app = np.empty(length)
    full = factors.prod(axis=1)
    for l in range(length):
        keep = [j for j in range(length) if j != l]
        partial = factors[:, keep].prod(axis=1)
        on = codewords[:, l] == 1
        e1 = math.fsum(partial[on])
        e0 = math.fsum(partial[~on])
        a1 = math.fsum(full[on])
        a0 = math.fsum(full[~on])
        ext[l] = e1 / (e1 + e0)
        app[l] = a1 / (a1 + a0)
    return ext, app


def exhaustive_info_app(prior, code: codec.CodeConfig):
    """Per-information-bit APPs by the same exhaustive sum; test plumbing."""
    prior = np.asarray(prior, dtype=np.float64)
    n_out = len(code.generator)
    memory = len(code.generator[0]) - 1
    info_len = prior.shape[0] // n_out - memory
    words, codewords = enumerate_codewords(code, info_len)
    factors = np.where(codewords == 1, prior[None, :], 1.0 - prior[None, :])
    full = factors.prod(axis=1)
    app = np.empty(info_len)
    for l in range(info_len):
        on = words[:, l] == 1
        a1 = math.fsum(full[on])
        a0 = math.fsum(full[~on])
        app[l] = a1 / (a1 + a0)
    return app


def exhaustive_demap(y, prior, constellation: modem.LabeledConstellation, ch):
    """Straight per-symbol sums over the constellation, linear domain.

    The common factor exp(-d_min^2 / (2 sigma2)) is pulled out of every
    term so the exponentials stay representable; it cancels in the per-bit
    normalization. Returns (extrinsic, app) marginals.
    """
    samples = y.samples if isinstance(y, modem.ReceivedFrame) else np.asarray(y)
    samples = np.asarray(samples, dtype=np.complex128)
    prior = np.asarray(prior, dtype=np.float64)
    labels = constellation.labels
    points = constellation.points
    m = constellation.bits_per_symbol
    M = points.shape[0]

    ext = np.empty(samples.shape[0] * m)
    app = np.empty(samples.shape[0] * m)
    for k in range(samples.shape[0]):
        d2 = np.abs(samples[k] - points) ** 2
        like = np.exp(-(d2 - d2.min()) / (2.0 * ch.sigma2))
        for i in range(m):
            terms_ext = np.empty(M)
            terms_app = np.empty(M)
            for s in range(M):
                prod = 1.0
                for j in range(m):
                    pj = prior[k * m + j]
                    if j == i:
                        continue
                    prod *= pj if labels[s, j] == 1 else 1.0 - pj
                terms_ext[s] = like[s] * prod
                pi = prior[k * m + i]
                own = pi if labels[s, i] == 1 else 1.0 - pi
                terms_app[s] = like[s] * prod * own
            on = labels[:, i] == 1
            e1 = math.fsum(terms_ext[on])
            e0 = math.fsum(terms_ext[~on])
            a1 = math.fsum(terms_app[on])
            a0 = math.fsum(terms_app[~on])
            ext[k * m + i] = e1 / (e1 + e0)
            app[k * m + i] = a1 / (a1 + a0)
    return ext, app


def fixed_point_residuals(state, y, code, constellation, ch, perm):
    """Per-bit divergence of each sub-block's exhaustive APP from the
    marginals the state currently realizes.

    r_map compares the demapper APP at priors sigmoid(lam1) against
    sigmoid(lam1 + lam2); r_dec does the same for the decoder APP at
    priors sigmoid(lam2). Both are zero exactly at a joint fixed point.
    """
    current = infogeo.sigmoid(state.lam1 + state.lam2)
    length = current.shape[0]

    _, app_m = exhaustive_demap(y, infogeo.sigmoid(state.lam1), constellation, ch)
    prior_c = interleave.deinterleave(infogeo.sigmoid(state.lam2), perm)
    _, app_c = exhaustive_siso(prior_c, code)
    app_d = interleave.interleave(app_c, perm)

    r_map = infogeo.fermi_dirac_divergence(app_m, current) / length
    r_dec = infogeo.fermi_dirac_divergence(app_d, current) / length
    return r_map, r_dec


def build_tiny_frame(spec: TinyFrameSpec) -> TinyFrame:
    """Assemble one exhaustively checkable frame through the real pipeline."""
    code = codec.CodeConfig()
    trellis = codec.build_trellis(code)
    constellation = modem.build_8psk_sp()
    chan = modem.ChannelParams.from_ebno_db(spec.ebno_db)
    coded_len = (spec.info_len + trellis.memory) * trellis.n_out
    perm = interleave.build_permutation(coded_len, spec.seed)
    rng = np.random.default_rng(spec.seed)
    info_bits = rng.integers(0, 2, spec.info_len, dtype=np.int64)
    coded = codec.encode(info_bits, trellis)
    d = interleave.interleave(coded, perm)
    symbols = modem.map_symbols(d, constellation)
    y = modem.transmit(symbols, chan, rng)
    return TinyFrame(
        spec=spec,
        info_bits=info_bits,
        y=y,
        code=code,
        trellis=trellis,
        constellation=constellation,
        chan=chan,
        perm=perm,
    )
