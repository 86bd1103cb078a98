"""Bernoulli marginal/LLR conversions, the Fermi-Dirac divergence, and the
entropy-penalty map f_eta used by the minimum-entropy schedule.

All functions operate elementwise on float64 vectors. Marginals are kept in
[EPS_CLIP, 1 - EPS_CLIP] and log-odds in [-LLR_MAX, LLR_MAX] so that every
divergence and logit stays finite.
"""

import numpy as np

from . import kernels

EPS_CLIP = 1e-12
LLR_MAX = float(np.log((1.0 - EPS_CLIP) / EPS_CLIP))  # about 27.631


def clamp_marginals(p: np.ndarray) -> np.ndarray:
    return np.clip(p, EPS_CLIP, 1.0 - EPS_CLIP)


def clamp_llrs(lam: np.ndarray) -> np.ndarray:
    return np.clip(lam, -LLR_MAX, LLR_MAX)


def sigmoid(lam) -> np.ndarray:
    """Log-odds to marginals, exp(lam)/(1+exp(lam)), clamped.

    Split by sign so the exponential never overflows; clamping absorbs
    the saturated tails.
    """
    lam = np.asarray(lam, dtype=np.float64)
    out = np.empty_like(lam)
    pos = lam >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-lam[pos]))
    e = np.exp(lam[~pos])
    out[~pos] = e / (1.0 + e)
    return clamp_marginals(out)


def logit(p) -> np.ndarray:
    """Marginals to log-odds ln(p/(1-p)), clamped to [-LLR_MAX, LLR_MAX].

    Entries exactly 0 or 1 are rejected; callers clamp first. The log1p
    form keeps full precision next to 1.
    """
    p = np.asarray(p, dtype=np.float64)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("logit requires probabilities strictly inside (0, 1)")
    return clamp_llrs(np.log(p) - np.log1p(-p))


def fermi_dirac_divergence(p, q) -> float:
    """sum_n p ln(p/q) + (1-p) ln((1-p)/(1-q)), the Bregman divergence of
    the Fermi-Dirac entropy. Asymmetric in (p, q); zero iff p == q."""
    p = clamp_marginals(np.asarray(p, dtype=np.float64))
    q = clamp_marginals(np.asarray(q, dtype=np.float64))
    if p.shape != q.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {q.shape}")
    terms = p * (np.log(p) - np.log(q)) + (1.0 - p) * (np.log1p(-p) - np.log1p(-q))
    return float(np.sum(terms))


def symmetrized_divergence(p, q) -> float:
    """D(p, q) + D(q, p); enters the proximal weight bound."""
    return fermi_dirac_divergence(p, q) + fermi_dirac_divergence(q, p)


def bitwise_entropy(p) -> float:
    """Total binary entropy of the marginal vector, in bits.

    Exactly len(p) at the all-0.5 vector; near zero when every bit is
    saturated at the clamp boundaries.
    """
    p = clamp_marginals(np.asarray(p, dtype=np.float64))
    return float(-np.sum(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p)))


def _check_eta(eta):
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must satisfy 0 <= eta < 1, got {eta!r}")


def f_eta(p, eta: float) -> np.ndarray:
    """Entropy-distortion map f_eta(p) = p - eta*p*(1-p)*ln(p/(1-p)).

    Strictly increasing on [0, 1] for eta < 1 (derivative >= 1 - eta),
    fixes 0.5 exactly, and pulls confident marginals toward 0.5 so that
    its inverse pushes them away.
    """
    _check_eta(eta)
    p = clamp_marginals(np.asarray(p, dtype=np.float64))
    # log(p) - log1p(-p) is exactly zero at p = 0.5
    return p - eta * p * (1.0 - p) * (np.log(p) - np.log1p(-p))


def invert_f_eta(target, eta: float) -> np.ndarray:
    """Unique p with f_eta(p) = target, by bracketed bisection per element.

    Monotonicity of f_eta guarantees the [0, 1] bracket; the result is
    clamped back into the valid marginal range.
    """
    _check_eta(eta)
    target = np.asarray(target, dtype=np.float64)
    out = kernels.invert_distortion(np.ascontiguousarray(target), float(eta))
    if eta == 0.0:
        return out  # exact identity, keep it bit-for-bit
    return clamp_marginals(out)
