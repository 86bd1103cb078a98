"""Pure-numpy reference implementations of the hot kernels.

Same signatures and conventions as the numba backend: LLRs are natural-log
odds ln(p1/p0), trellis tables are dense arrays, all floats are float64.
"""

import numpy as np


def bcjr_llrs(prior_llr, next_state, out_bits):
    """Exact log-MAP forward-backward pass over a terminated trellis.

    prior_llr: per-coded-bit prior LLRs, length T*n_out.
    next_state: int64 (S, 2) table, next_state[s, u].
    out_bits: float64 (S, 2, n_out) coded bits emitted on each transition.

    Returns (app_llr, info_llr): posterior log-odds for every coded bit
    (length T*n_out) and for the input bit of every stage (length T).
    Both recursions are anchored at state 0, so the tail stages of a
    zero-terminated frame are handled without special cases.
    """
    S, _, n_out = out_bits.shape
    T = prior_llr.shape[0] // n_out
    if T * n_out != prior_llr.shape[0]:
        raise ValueError("prior length must be a multiple of n_out")

    pri = prior_llr.reshape(T, n_out)
    gamma = (pri @ out_bits.reshape(S * 2, n_out).T).reshape(T, S, 2)

    # two incoming transitions per state (invertible register update)
    inc = [[] for _ in range(S)]
    for s in range(S):
        for u in range(2):
            inc[next_state[s, u]].append((s, u))
    inc_s = np.array([[p[0] for p in pairs] for pairs in inc], dtype=np.int64)
    inc_u = np.array([[p[1] for p in pairs] for pairs in inc], dtype=np.int64)

    neg = -np.inf
    alpha = np.full((T + 1, S), neg)
    alpha[0, 0] = 0.0
    for t in range(T):
        cand = alpha[t, inc_s] + gamma[t, inc_s, inc_u]
        a = np.logaddexp(cand[:, 0], cand[:, 1])
        alpha[t + 1] = a - a.max()

    beta = np.full((T + 1, S), neg)
    beta[T, 0] = 0.0
    for t in range(T - 1, -1, -1):
        cand = beta[t + 1, next_state] + gamma[t]
        b = np.logaddexp(cand[:, 0], cand[:, 1])
        beta[t] = b - b.max()

    w = alpha[:T, :, None] + gamma + beta[1:][:, next_state]

    info_llr = np.logaddexp.reduce(w[:, :, 1], axis=1) - np.logaddexp.reduce(
        w[:, :, 0], axis=1
    )

    wf = w.reshape(T, S * 2)
    ob = out_bits.reshape(S * 2, n_out)
    app_llr = np.empty(T * n_out)
    for j in range(n_out):
        on = ob[:, j] > 0.5
        num = np.logaddexp.reduce(wf[:, on], axis=1)
        den = np.logaddexp.reduce(wf[:, ~on], axis=1)
        app_llr[j::n_out] = num - den
    return app_llr, info_llr


def demap_llrs(y_re, y_im, prior_llr, pts_re, pts_im, labels, inv_two_sigma2):
    """Per-symbol soft demapping over all constellation points.

    Returns (ext_llr, app_llr) for the m bits of each received sample.
    The extrinsic sums are built from prior terms that skip bit i entirely,
    so ext(i) is exactly independent of prior(i), not just up to rounding.
    """
    N = y_re.shape[0]
    M, m = labels.shape
    dr = y_re[:, None] - pts_re[None, :]
    di = y_im[:, None] - pts_im[None, :]
    base = -(dr * dr + di * di) * inv_two_sigma2
    pri = prior_llr.reshape(N, m)
    lab = labels.astype(np.float64)
    full = base + pri @ lab.T

    ext = np.empty(N * m)
    app = np.empty(N * m)
    for i in range(m):
        others = [j for j in range(m) if j != i]
        partial = base + pri[:, others] @ lab[:, others].T
        on = labels[:, i] == 1
        app[i::m] = np.logaddexp.reduce(full[:, on], axis=1) - np.logaddexp.reduce(
            full[:, ~on], axis=1
        )
        ext[i::m] = np.logaddexp.reduce(partial[:, on], axis=1) - np.logaddexp.reduce(
            partial[:, ~on], axis=1
        )
    return ext, app


def invert_distortion(target, eta):
    """Solve f_eta(p) = target per element by bisection on [0, 1].

    f_eta(p) = p - eta*p*(1-p)*ln(p/(1-p)) is strictly increasing for
    eta < 1, so the bracket never fails. eta == 0 returns the target
    unchanged (bit-exact identity, relied on by the reduction tests).
    """
    target = np.asarray(target, dtype=np.float64)
    if eta == 0.0:
        return target.copy()
    lo = np.zeros_like(target)
    hi = np.ones_like(target)
    for _ in range(53):
        mid = 0.5 * (lo + hi)
        f = mid - eta * mid * (1.0 - mid) * np.log(mid / (1.0 - mid))
        below = f < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    # the symmetric point is a fixed point of the forward map; pin it
    # so exactly-0.5 targets invert without the final-ulp bracket gap
    return np.where(target == 0.5, 0.5, 0.5 * (lo + hi))
