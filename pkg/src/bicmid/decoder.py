"""Iterative demapper/decoder schedules.

Three variants share one half-step skeleton and differ only in how the
demapper (resp. decoder) APP is turned into the next target marginals:

  classical  target = APP, the plain fixed-point sweep
  hpp        target = (APP + mu * current) / (1 + mu), a proximal mix whose
             weight comes from mu_bound and keeps a running criterion
             non-increasing across the half-steps
  hmea       target = f_eta^{-1}(APP), sharpening marginals away from 0.5

State lives in the interleaved domain: lam1 carries decoder-to-demapper
extrinsics, lam2 demapper-to-decoder. Each half-step attains its target
marginals exactly; that vector is kept as the anchor for the next proximal
penalty and for the criterion records, while the clamped LLR pair feeds the
sub-block priors. The two views agree wherever the +-LLR_MAX clamp is
inactive; bookkeeping on the anchor chain keeps the recorded criterion
telescoping instead of picking up clamp round-off at saturated bits.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import codec, infogeo, interleave, modem

VARIANTS = ("classical", "hpp", "hmea")


@dataclass(frozen=True)
class DecoderConfig:
    variant: str = "classical"
    max_iters: int = 30
    tol: float = 1e-3  # per-bit divergence threshold
    eta_m: float = 0.05
    eta_c: float = 0.05
    mu_cap: float = 10.0
    safety_factor: float = 0.9
    # diagnostic: when set, pins both proximal weights instead of mu_bound;
    # mu_override=0.0 reduces hpp to the classical schedule bit-for-bit
    mu_override: float | None = None

    def validate(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        for name, eta in (("eta-m", self.eta_m), ("eta-c", self.eta_c)):
            if not 0.0 <= eta < 1.0:
                raise ValueError(f"{name} must satisfy 0 <= eta < 1, got {eta!r}")
        if not self.mu_cap > 0.0:
            raise ValueError("mu-cap must be positive")
        if not 0.0 < self.safety_factor <= 1.0:
            raise ValueError("safety-factor must lie in (0, 1]")
        if self.mu_override is not None:
            if not (math.isfinite(self.mu_override) and self.mu_override >= 0.0):
                raise ValueError("mu_override must be finite and >= 0")
        return self


@dataclass
class IterationState:
    """One frame's exchange state after `iteration` full sweeps."""

    lam1: np.ndarray
    lam2: np.ndarray
    app_map: np.ndarray
    app_dec: np.ndarray
    # marginals attained by the most recent half-step; equals
    # sigmoid(lam1 + lam2) wherever the LLR clamp did not bind
    anchor: np.ndarray
    info_app: np.ndarray | None
    iteration: int
    j_map: float = 0.0
    j_dec: float = 0.0
    mu_m: float = 0.0
    mu_c: float = 0.0


@dataclass
class FrameTrace:
    iterations: int
    converged: bool
    divergence: np.ndarray  # per-iteration per-bit D(app_map, app_dec)
    j_map: np.ndarray
    j_dec: np.ndarray
    entropy: np.ndarray  # bits, of the marginals attained by each sweep
    mu_m: np.ndarray
    mu_c: np.ndarray
    decisions: np.ndarray  # hard info-bit decisions from the final SISO pass


def initial_state(length: int) -> IterationState:
    """lam1 = lam2 = 0: every bit equally likely before the first sweep."""
    half = np.full(length, 0.5)
    return IterationState(
        lam1=np.zeros(length),
        lam2=np.zeros(length),
        app_map=half.copy(),
        app_dec=half.copy(),
        anchor=half,
        info_app=None,
        iteration=0,
    )


def mu_bound(app_other, app_self, current, safety_factor=0.9, mu_cap=10.0):
    """Largest proximal weight keeping the criterion chain monotone.

    safety_factor * D(app_other, current) / (Dsym - D(app_other, current))
    with Dsym the symmetrized divergence between the fresh own-side APP and
    the current marginals. A non-positive denominator means any weight
    preserves the chain, so the cap is returned.
    """
    num = infogeo.fermi_dirac_divergence(app_other, current)
    den = infogeo.symmetrized_divergence(app_self, current) - num
    if den <= 0.0:
        return mu_cap
    return min(max(safety_factor * num / den, 0.0), mu_cap)


def _target(variant, app_self, app_other, current, eta, cfg):
    """Next target marginals and the proximal weight used (0 outside hpp)."""
    if variant == "classical":
        return app_self, 0.0
    if variant == "hpp":
        if cfg.mu_override is not None:
            mu = cfg.mu_override
        else:
            mu = mu_bound(app_other, app_self, current, cfg.safety_factor, cfg.mu_cap)
        return (app_self + mu * current) / (1.0 + mu), mu
    return infogeo.invert_f_eta(app_self, eta), 0.0


def _step(state, y, constellation, chan, trellis, perm, cfg):
    lam1 = state.lam1
    lam2 = state.lam2

    # demapper half: solve for lam2 against the fresh demapper APP
    _, app_map = modem.demap(y, infogeo.sigmoid(lam1), constellation, chan)
    current = state.anchor
    target, mu_m = _target(cfg.variant, app_map, state.app_dec, current, cfg.eta_m, cfg)
    j_map = infogeo.fermi_dirac_divergence(
        app_map, target
    ) + mu_m * infogeo.fermi_dirac_divergence(current, target)
    lam2_new = infogeo.clamp_llrs(infogeo.logit(target) - lam1)

    # decoder half: penalty anchored at the demapper half's target
    prior_c = interleave.deinterleave(infogeo.sigmoid(lam2_new), perm)
    _, app_c, info_app = codec.siso_decode(prior_c, trellis)
    app_dec = interleave.interleave(app_c, perm)
    target2, mu_c = _target(cfg.variant, app_dec, app_map, target, cfg.eta_c, cfg)
    j_dec = infogeo.fermi_dirac_divergence(
        app_dec, target2
    ) + mu_c * infogeo.fermi_dirac_divergence(target, target2)
    lam1_new = infogeo.clamp_llrs(infogeo.logit(target2) - lam2_new)

    return IterationState(
        lam1=lam1_new,
        lam2=lam2_new,
        app_map=app_map,
        app_dec=app_dec,
        anchor=target2,
        info_app=info_app,
        iteration=state.iteration + 1,
        j_map=j_map,
        j_dec=j_dec,
        mu_m=mu_m,
        mu_c=mu_c,
    )


def classical_step(state, y, constellation, chan, trellis, perm):
    """One full classical sweep: lam2 from the demapper APP, then lam1
    from the SISO APP, each with the partner extrinsic subtracted."""
    return _step(state, y, constellation, chan, trellis, perm, _CLASSICAL_CFG)


def hpp_step(state, y, constellation, chan, trellis, perm, cfg: DecoderConfig):
    if cfg.variant != "hpp":
        cfg = replace(cfg, variant="hpp")
    return _step(state, y, constellation, chan, trellis, perm, cfg)


def hmea_step(state, y, constellation, chan, trellis, perm, cfg: DecoderConfig):
    if cfg.variant != "hmea":
        cfg = replace(cfg, variant="hmea")
    return _step(state, y, constellation, chan, trellis, perm, cfg)


_CLASSICAL_CFG = DecoderConfig(variant="classical")


def run_frame(y, cfg: DecoderConfig, constellation, chan, trellis, perm) -> FrameTrace:
    """Iterate the selected variant from the all-uniform state.

    Stops once the per-bit divergence between the two sub-block APPs drops
    below cfg.tol, or after cfg.max_iters sweeps; non-convergence is a
    recorded outcome, not an error. Hard decisions come from the final
    SISO pass.
    """
    cfg.validate()
    samples = y.samples if isinstance(y, modem.ReceivedFrame) else np.asarray(y)
    length = samples.shape[0] * constellation.bits_per_symbol
    if perm.forward.shape[0] != length:
        raise ValueError("permutation length does not match the frame")
    if length % trellis.n_out != 0 or length // trellis.n_out <= trellis.memory:
        raise ValueError("frame length inconsistent with the trellis")

    state = initial_state(length)
    div_hist = []
    j_map_hist = []
    j_dec_hist = []
    ent_hist = []
    mu_m_hist = []
    mu_c_hist = []
    converged = False
    while state.iteration < cfg.max_iters:
        state = _step(state, y, constellation, chan, trellis, perm, cfg)
        div = (
            infogeo.fermi_dirac_divergence(state.app_map, state.app_dec) / length
        )
        div_hist.append(div)
        j_map_hist.append(state.j_map)
        j_dec_hist.append(state.j_dec)
        ent_hist.append(infogeo.bitwise_entropy(state.anchor))
        mu_m_hist.append(state.mu_m)
        mu_c_hist.append(state.mu_c)
        if div < cfg.tol:
            converged = True
            break

    decisions = (state.info_app > 0.5).astype(np.int64)
    return FrameTrace(
        iterations=state.iteration,
        converged=converged,
        divergence=np.array(div_hist),
        j_map=np.array(j_map_hist),
        j_dec=np.array(j_dec_hist),
        entropy=np.array(ent_hist),
        mu_m=np.array(mu_m_hist),
        mu_c=np.array(mu_c_hist),
        decisions=decisions,
    )
