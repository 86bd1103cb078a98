"""Feedforward convolutional code: trellis construction, zero-tail encoder,
and the exact log-MAP SISO decoder."""

from dataclasses import dataclass

import numpy as np

from . import infogeo, kernels

# one row per output bit; taps ordered [current input, delay 1, delay 2]
DEFAULT_GENERATOR = ((1, 1, 1), (0, 0, 1), (1, 0, 0))


@dataclass(frozen=True)
class CodeConfig:
    generator: tuple = DEFAULT_GENERATOR
    termination: str = "zero-tail"


@dataclass(frozen=True)
class TrellisSpec:
    """Dense transition tables for a rate-1/n_out feedforward code.

    State packs the register little-endian: bit k holds the input from
    k+1 steps ago, so next_state = ((s << 1) | u) masked to `memory` bits.
    """

    num_states: int
    memory: int
    n_out: int
    next_state: np.ndarray  # int64 (S, 2)
    out_bits: np.ndarray  # float64 (S, 2, n_out), entries 0.0/1.0


def build_trellis(cfg: CodeConfig) -> TrellisSpec:
    gen = tuple(tuple(int(t) for t in row) for row in cfg.generator)
    if len(gen) == 0:
        raise ValueError("generator must have at least one row")
    width = len(gen[0])
    for row in gen:
        if len(row) != width:
            raise ValueError("generator rows must share one length")
        if any(t not in (0, 1) for t in row):
            raise ValueError("generator taps must be 0 or 1")
        if not any(row):
            raise ValueError("generator rows must be nonzero")
    if cfg.termination != "zero-tail":
        raise ValueError(f"unsupported termination {cfg.termination!r}")

    memory = width - 1
    n_out = len(gen)
    num_states = 1 << memory
    mask = num_states - 1
    next_state = np.empty((num_states, 2), dtype=np.int64)
    out_bits = np.empty((num_states, 2, n_out), dtype=np.float64)
    for s in range(num_states):
        for u in range(2):
            # register contents seen by the taps: [u_t, u_{t-1}, ..., u_{t-memory}]
            reg = [u] + [(s >> k) & 1 for k in range(memory)]
            for r, row in enumerate(gen):
                acc = 0
                for tap, bit in zip(row, reg):
                    acc ^= tap & bit
                out_bits[s, u, r] = float(acc)
            next_state[s, u] = ((s << 1) | u) & mask
    return TrellisSpec(
        num_states=num_states,
        memory=memory,
        n_out=n_out,
        next_state=next_state,
        out_bits=out_bits,
    )


def encode(info_bits, trellis: TrellisSpec) -> np.ndarray:
    """Walk the trellis from state 0 and append `memory` zero tail bits.

    Returns the coded sequence of length (len(info) + memory) * n_out;
    the tail drives the register back to state 0.
    """
    info = np.asarray(info_bits, dtype=np.int64)
    if info.ndim != 1 or info.shape[0] == 0:
        raise ValueError("info_bits must be a nonempty 1-d bit sequence")
    if np.any((info != 0) & (info != 1)):
        raise ValueError("info_bits must be binary")
    inputs = np.concatenate([info, np.zeros(trellis.memory, dtype=np.int64)])
    out = np.empty(inputs.shape[0] * trellis.n_out, dtype=np.int64)
    s = 0
    for t, u in enumerate(inputs):
        out[t * trellis.n_out : (t + 1) * trellis.n_out] = trellis.out_bits[
            s, u
        ].astype(np.int64)
        s = int(trellis.next_state[s, u])
    if s != 0:
        raise AssertionError("zero tail must terminate in state 0")
    return out


def siso_decode(prior, trellis: TrellisSpec):
    """Exact log-MAP decoding of one terminated frame.

    prior: coded-bit marginals of length T * n_out, T = info length + memory.
    Returns (extrinsic, app, info_app), all as marginals: per-coded-bit
    extrinsic (APP with the own prior factored out), per-coded-bit APP, and
    per-information-bit APP for hard decisions. Both trellis recursions are
    anchored at state 0, which encodes the zero-tail termination.
    """
    prior = np.asarray(prior, dtype=np.float64)
    if prior.ndim != 1:
        raise ValueError("prior must be 1-d")
    if prior.shape[0] == 0 or prior.shape[0] % trellis.n_out != 0:
        raise ValueError("prior length must be a positive multiple of n_out")
    if not np.all(np.isfinite(prior)):
        raise ValueError("prior must be finite")
    stages = prior.shape[0] // trellis.n_out
    if stages <= trellis.memory:
        raise ValueError("frame has no information stages")

    prior_llr = infogeo.logit(infogeo.clamp_marginals(prior))
    app_llr, info_llr = kernels.bcjr_llrs(
        np.ascontiguousarray(prior_llr), trellis.next_state, trellis.out_bits
    )
    ext = infogeo.sigmoid(app_llr - prior_llr)
    app = infogeo.sigmoid(app_llr)
    info_app = infogeo.sigmoid(info_llr[: stages - trellis.memory])
    return ext, app, info_app
