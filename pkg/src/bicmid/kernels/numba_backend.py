"""Numba-compiled implementations of the hot kernels.

fastmath stays off: the -inf guards in max-star and reproducibility of the
Monte Carlo traces both need strict IEEE semantics.
"""

import numpy as np
from numba import njit

NEG = -np.inf


@njit(cache=True)
def _max_star(a, b):
    # exact log(exp(a) + exp(b)); the -inf guard avoids inf - inf = nan
    if a < b:
        a, b = b, a
    if b == NEG:
        return a
    return a + np.log1p(np.exp(b - a))


@njit(cache=True)
def bcjr_llrs(prior_llr, next_state, out_bits):
    """Exact log-MAP forward-backward pass over a terminated trellis.

    Same contract as numpy_backend.bcjr_llrs; see there for the details.
    """
    S = out_bits.shape[0]
    n_out = out_bits.shape[2]
    T = prior_llr.shape[0] // n_out
    if T * n_out != prior_llr.shape[0]:
        raise ValueError("prior length must be a multiple of n_out")

    gamma = np.empty((T, S, 2))
    for t in range(T):
        for s in range(S):
            for u in range(2):
                acc = 0.0
                for j in range(n_out):
                    acc += out_bits[s, u, j] * prior_llr[t * n_out + j]
                gamma[t, s, u] = acc

    alpha = np.full((T + 1, S), NEG)
    alpha[0, 0] = 0.0
    for t in range(T):
        for s in range(S):
            a = alpha[t, s]
            if a == NEG:
                continue
            for u in range(2):
                ns = next_state[s, u]
                alpha[t + 1, ns] = _max_star(alpha[t + 1, ns], a + gamma[t, s, u])
        m = alpha[t + 1, 0]
        for s in range(1, S):
            if alpha[t + 1, s] > m:
                m = alpha[t + 1, s]
        for s in range(S):
            alpha[t + 1, s] -= m

    beta = np.full((T + 1, S), NEG)
    beta[T, 0] = 0.0
    for t in range(T - 1, -1, -1):
        for s in range(S):
            acc = NEG
            for u in range(2):
                b = beta[t + 1, next_state[s, u]]
                if b == NEG:
                    continue
                acc = _max_star(acc, b + gamma[t, s, u])
            beta[t, s] = acc
        m = beta[t, 0]
        for s in range(1, S):
            if beta[t, s] > m:
                m = beta[t, s]
        for s in range(S):
            beta[t, s] -= m

    app_llr = np.empty(T * n_out)
    info_llr = np.empty(T)
    num = np.empty(n_out)
    den = np.empty(n_out)
    for t in range(T):
        num_info = NEG
        den_info = NEG
        for j in range(n_out):
            num[j] = NEG
            den[j] = NEG
        for s in range(S):
            a = alpha[t, s]
            if a == NEG:
                continue
            for u in range(2):
                b = beta[t + 1, next_state[s, u]]
                if b == NEG:
                    continue
                w = a + gamma[t, s, u] + b
                if u == 1:
                    num_info = _max_star(num_info, w)
                else:
                    den_info = _max_star(den_info, w)
                for j in range(n_out):
                    if out_bits[s, u, j] > 0.5:
                        num[j] = _max_star(num[j], w)
                    else:
                        den[j] = _max_star(den[j], w)
        info_llr[t] = num_info - den_info
        for j in range(n_out):
            app_llr[t * n_out + j] = num[j] - den[j]
    return app_llr, info_llr


@njit(cache=True)
def demap_llrs(y_re, y_im, prior_llr, pts_re, pts_im, labels, inv_two_sigma2):
    """Per-symbol soft demapping; same contract as the numpy backend.

    Extrinsic prior sums are rebuilt per bit without the own-bit term, so
    ext(i) carries no floating-point trace of prior(i).
    """
    N = y_re.shape[0]
    M = labels.shape[0]
    m = labels.shape[1]
    ext = np.empty(N * m)
    app = np.empty(N * m)
    base = np.empty(M)
    for k in range(N):
        for s in range(M):
            dr = y_re[k] - pts_re[s]
            di = y_im[k] - pts_im[s]
            base[s] = -(dr * dr + di * di) * inv_two_sigma2
        for i in range(m):
            n_ext = NEG
            d_ext = NEG
            n_app = NEG
            d_app = NEG
            for s in range(M):
                q = 0.0
                for j in range(m):
                    if j != i and labels[s, j] == 1:
                        q += prior_llr[k * m + j]
                te = base[s] + q
                if labels[s, i] == 1:
                    ta = te + prior_llr[k * m + i]
                    n_ext = _max_star(n_ext, te)
                    n_app = _max_star(n_app, ta)
                else:
                    # label bit 0: the own-prior term is zero, app = ext sum
                    d_ext = _max_star(d_ext, te)
                    d_app = _max_star(d_app, te)
            ext[k * m + i] = n_ext - d_ext
            app[k * m + i] = n_app - d_app
    return ext, app


@njit(cache=True)
def invert_distortion(target, eta):
    """Solve f_eta(p) = target per element by bisection on [0, 1].

    53 halvings shrink the bracket to one ulp of the unit interval;
    midpoints stay strictly inside (0, 1) so the log never sees an
    endpoint. eta == 0 copies the target bit-exactly, and a target of
    exactly 0.5 returns exactly 0.5 (the symmetric point is a fixed
    point of the forward map).
    """
    n = target.shape[0]
    out = np.empty(n)
    if eta == 0.0:
        for i in range(n):
            out[i] = target[i]
        return out
    for i in range(n):
        t = target[i]
        if t == 0.5:
            out[i] = 0.5
            continue
        lo = 0.0
        hi = 1.0
        for _ in range(53):
            mid = 0.5 * (lo + hi)
            f = mid - eta * mid * (1.0 - mid) * np.log(mid / (1.0 - mid))
            if f < t:
                lo = mid
            else:
                hi = mid
        out[i] = 0.5 * (lo + hi)
    return out
