"""Acceptance suite: eleven numbered criteria, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print; without -s pytest still shows one PASSED/FAILED row per criterion
and replays the line on failure. Statistical checks use fixed seeds, so
every number here is reproducible.
"""

import dataclasses
from types import SimpleNamespace

import numpy as np

from bicmid import codec, decoder, harness, infogeo, interleave, modem, oracle


def _report(num, label, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num:02d}: {label}"
    if detail:
        line += f" [{detail}]"
    print(line)
    assert ok, line


def test_criterion_01_siso_matches_exhaustive_reference(trellis):
    rng = np.random.default_rng(101)
    code = codec.CodeConfig()
    worst = 0.0
    for info_len in range(2, 7):
        length = (info_len + trellis.memory) * trellis.n_out
        for _ in range(100):
            prior = rng.uniform(0.02, 0.98, length)
            ext_p, app_p, _ = codec.siso_decode(prior, trellis)
            ext_o, app_o = oracle.exhaustive_siso(prior, code)
            worst = max(
                worst,
                float(np.max(np.abs(ext_p - ext_o))),
                float(np.max(np.abs(app_p - app_o))),
            )
    _report(
        1,
        "SISO decoder matches the exhaustive reference",
        worst <= 1e-9,
        f"max abs diff {worst:.3e} over 500 prior vectors, info lengths 2-6",
    )


def test_criterion_02_demapper_matches_exhaustive_reference(constellation):
    rng = np.random.default_rng(202)
    worst = 0.0
    for n_symbols in (1, 10):
        for _ in range(100):
            chan = modem.ChannelParams.from_ebno_db(rng.uniform(0.0, 10.0))
            bits = rng.integers(0, 2, 3 * n_symbols, dtype=np.int64)
            symbols = modem.map_symbols(bits, constellation)
            y = modem.transmit(symbols, chan, rng)
            prior = rng.uniform(0.02, 0.98, 3 * n_symbols)
            ext_p, app_p = modem.demap(y, prior, constellation, chan)
            ext_o, app_o = oracle.exhaustive_demap(y, prior, constellation, chan)
            worst = max(
                worst,
                float(np.max(np.abs(ext_p - ext_o))),
                float(np.max(np.abs(app_p - app_o))),
            )
    _report(
        2,
        "demapper matches the exhaustive reference",
        worst <= 1e-12,
        f"max abs diff {worst:.3e} over 200 frames",
    )


def test_criterion_03_half_steps_zero_their_residuals():
    worst_map = 0.0
    worst_dec = 0.0
    for info_len in range(2, 7):
        for seed in range(6):
            tf = oracle.build_tiny_frame(oracle.TinyFrameSpec(info_len, seed, 4.0))
            length = tf.perm.forward.shape[0]
            lam1 = np.zeros(length)
            lam2 = np.zeros(length)
            for _ in range(4):
                _, app_map = modem.demap(
                    tf.y, infogeo.sigmoid(lam1), tf.constellation, tf.chan
                )
                lam2 = infogeo.clamp_llrs(infogeo.logit(app_map) - lam1)
                r_map, _ = oracle.fixed_point_residuals(
                    SimpleNamespace(lam1=lam1, lam2=lam2),
                    tf.y, tf.code, tf.constellation, tf.chan, tf.perm,
                )
                worst_map = max(worst_map, r_map)
                prior_c = interleave.deinterleave(infogeo.sigmoid(lam2), tf.perm)
                _, app_c, _ = codec.siso_decode(prior_c, tf.trellis)
                app_dec = interleave.interleave(app_c, tf.perm)
                lam1 = infogeo.clamp_llrs(infogeo.logit(app_dec) - lam2)
                _, r_dec = oracle.fixed_point_residuals(
                    SimpleNamespace(lam1=lam1, lam2=lam2),
                    tf.y, tf.code, tf.constellation, tf.chan, tf.perm,
                )
                worst_dec = max(worst_dec, r_dec)
    _report(
        3,
        "each classical half-step zeroes its own fixed-point residual",
        worst_map <= 1e-10 and worst_dec <= 1e-10,
        f"worst r_map {worst_map:.3e}, worst r_dec {worst_dec:.3e}"
        " over 30 frames x 4 sweeps",
    )


def test_criterion_04_proximal_criterion_chain_is_monotone():
    cfg = harness.ExperimentConfig(
        ebno_db_list=(3.0, 5.0, 7.0), variant="hpp", frames=17, seed=7
    )
    system = harness.build_system(cfg)
    violations = 0
    checks = 0
    worst = -np.inf
    for point_idx, ebno_db in enumerate(cfg.ebno_db_list):
        for frame_idx in range(cfg.frames):
            trace, _, _ = harness.run_single_frame(
                cfg, ebno_db, point_idx, frame_idx, system
            )
            jm, jd = trace.j_map, trace.j_dec
            gaps = [jm[0] - 1e-9]
            gaps.extend(jd - jm - 1e-9)
            gaps.extend(jm[1:] - jd[:-1] - 1e-9)
            for g in gaps:
                checks += 1
                worst = max(worst, g)
                violations += int(g > 0.0)
    _report(
        4,
        "proximal weight from mu_bound keeps the criterion chain monotone",
        violations == 0,
        f"0 of {checks} inequalities violated, worst margin {worst:.3e}"
        if violations == 0
        else f"{violations} of {checks} inequalities violated",
    )


def test_criterion_05_proximal_and_classical_agree_at_fixed_points():
    base = harness.ExperimentConfig(ebno_db_list=(5.0,), frames=200, seed=5)
    cfg_c = dataclasses.replace(base, variant="classical")
    cfg_h = dataclasses.replace(base, variant="hpp")
    system = harness.build_system(base)
    err_c = err_h = 0
    joint = 0
    mismatched = 0
    for frame_idx in range(base.frames):
        tc, _, ec = harness.run_single_frame(cfg_c, 5.0, 0, frame_idx, system)
        th, _, eh = harness.run_single_frame(cfg_h, 5.0, 0, frame_idx, system)
        err_c += ec
        err_h += eh
        if tc.converged and th.converged:
            joint += 1
            mismatched += int(not np.array_equal(tc.decisions, th.decisions))
    bits = base.frames * base.info_len
    ber_c, ber_h = err_c / bits, err_h / bits
    se = np.sqrt(ber_c * (1 - ber_c) / bits + ber_h * (1 - ber_h) / bits)
    ok = joint >= 1 and mismatched == 0 and abs(ber_c - ber_h) < 2 * se + 1e-15
    _report(
        5,
        "proximal and classical schedules agree where both converge",
        ok,
        f"{joint}/200 jointly converged, {mismatched} decision mismatches,"
        f" BER {ber_c:.4e} vs {ber_h:.4e}",
    )


def test_criterion_06_entropy_schedule_does_not_lose_ber_or_iterations():
    base = harness.ExperimentConfig(ebno_db_list=(5.0,), frames=500, seed=5)
    row_c = harness.run_experiment(dataclasses.replace(base, variant="classical"))[0]
    row_h = harness.run_experiment(dataclasses.replace(base, variant="hmea"))[0]
    se = np.sqrt(row_c.ber * (1 - row_c.ber) / row_c.bits)
    ok = (
        row_h.ber <= row_c.ber + 2 * se
        and row_h.mean_iters <= row_c.mean_iters + 0.5
    )
    _report(
        6,
        "entropy-sharpened schedule keeps BER and iteration count",
        ok,
        f"BER {row_h.ber:.4e} vs {row_c.ber:.4e} (2se {2 * se:.1e}),"
        f" iters {row_h.mean_iters:.3f} vs {row_c.mean_iters:.3f}",
    )


def test_criterion_07_distortion_map_is_a_bijection():
    grid = np.linspace(1e-6, 1.0 - 1e-6, 10_000)
    worst_round = 0.0
    monotone = True
    for eta in (0.01, 0.05, 0.5, 0.99):
        fwd = infogeo.f_eta(grid, eta)
        monotone = monotone and bool(np.all(np.diff(fwd) > 0.0))
        back = infogeo.invert_f_eta(fwd, eta)
        worst_round = max(worst_round, float(np.max(np.abs(back - grid))))
    center_exact = infogeo.f_eta(np.array([0.5]), 0.99)[0] == 0.5
    ok = monotone and worst_round <= 1e-10 and center_exact
    _report(
        7,
        "marginal distortion map is monotone and invertible",
        ok,
        f"monotone on 1e4-point grids, roundtrip {worst_round:.3e},"
        " f(0.5) == 0.5 exactly",
    )


def test_criterion_08_divergence_axioms():
    rng = np.random.default_rng(808)
    worst_neg = np.inf
    worst_ident = 0.0
    worst_convex = -np.inf
    asym_witnesses = 0
    for _ in range(1000):
        n = int(rng.integers(1, 65))
        p = rng.uniform(1e-6, 1.0 - 1e-6, n)
        q = rng.uniform(1e-6, 1.0 - 1e-6, n)
        r = rng.uniform(1e-6, 1.0 - 1e-6, n)
        t = float(rng.uniform())
        dpq = infogeo.fermi_dirac_divergence(p, q)
        worst_neg = min(worst_neg, dpq)
        worst_ident = max(worst_ident, infogeo.fermi_dirac_divergence(p, p))
        mix = infogeo.fermi_dirac_divergence(p, t * q + (1 - t) * r)
        bound = t * dpq + (1 - t) * infogeo.fermi_dirac_divergence(p, r)
        worst_convex = max(worst_convex, mix - bound)
        if abs(dpq - infogeo.fermi_dirac_divergence(q, p)) > 1e-12:
            asym_witnesses += 1
    ok = (
        worst_neg >= -1e-12
        and worst_ident <= 1e-12
        and worst_convex <= 1e-12
        and asym_witnesses >= 1
    )
    _report(
        8,
        "divergence axioms hold on 1000 random pairs",
        ok,
        f"min D {worst_neg:.3e}, max D(p,p) {worst_ident:.3e},"
        f" convexity slack {worst_convex:.3e}, {asym_witnesses} asymmetry witnesses",
    )


def test_criterion_09_reduction_identities():
    base = harness.ExperimentConfig(ebno_db_list=(4.0,), frames=10, seed=3)
    cfg_c = dataclasses.replace(base, variant="classical")
    cfg_p = dataclasses.replace(base, variant="hpp", mu_override=0.0)
    cfg_e = dataclasses.replace(base, variant="hmea", eta_m=0.0, eta_c=0.0)
    system = harness.build_system(base)
    identical = True
    for frame_idx in range(base.frames):
        tc, _, _ = harness.run_single_frame(cfg_c, 4.0, 0, frame_idx, system)
        tp, _, _ = harness.run_single_frame(cfg_p, 4.0, 0, frame_idx, system)
        te, _, _ = harness.run_single_frame(cfg_e, 4.0, 0, frame_idx, system)
        for other in (tp, te):
            identical = identical and tc.iterations == other.iterations
            identical = identical and tc.converged == other.converged
            for field in ("divergence", "j_map", "j_dec", "entropy", "mu_m", "mu_c", "decisions"):
                identical = identical and np.array_equal(
                    getattr(tc, field), getattr(other, field)
                )
    _report(
        9,
        "hpp with mu=0 and hmea with eta=0 reproduce classical bit-for-bit",
        identical,
        "10 shared frames, all trace fields compared",
    )


def test_criterion_10_stopping_rule_contract():
    cfg = harness.ExperimentConfig(ebno_db_list=(2.0, 5.0, 8.0), frames=5, seed=6)
    system = harness.build_system(cfg)
    ok = True
    seen_converged = 0
    seen_capped = 0
    for point_idx, ebno_db in enumerate(cfg.ebno_db_list):
        for frame_idx in range(cfg.frames):
            trace, _, _ = harness.run_single_frame(
                cfg, ebno_db, point_idx, frame_idx, system
            )
            ok = ok and trace.iterations <= cfg.max_iters
            if trace.converged:
                seen_converged += 1
                ok = ok and trace.divergence[-1] < cfg.tol
            else:
                seen_capped += 1
                ok = ok and trace.iterations == cfg.max_iters
    _report(
        10,
        "stopping rule: divergence below 1e-3 or the 30-iteration cap",
        ok,
        f"{seen_converged} converged frames, {seen_capped} capped frames",
    )


def test_criterion_11_experiment_reruns_are_byte_identical(tmp_path):
    def masked(path):
        lines = path.read_text().splitlines()
        head, rows = lines[0], lines[1:]
        return [head] + [",".join(r.split(",")[:-1] + ["X"]) for r in rows]

    p1, p2 = tmp_path / "run1.csv", tmp_path / "run2.csv"
    harness.run_experiment(harness.ExperimentConfig(out_path=str(p1)))
    harness.run_experiment(harness.ExperimentConfig(out_path=str(p2)))
    m1, m2 = masked(p1), masked(p2)
    ok = m1 == m2 and len(m1) == 1 + len(harness.DEFAULT_EBNO_SWEEP)
    _report(
        11,
        "default experiment reruns byte-identical up to wall time",
        ok,
        f"{len(m1) - 1} CSV rows compared",
    )
