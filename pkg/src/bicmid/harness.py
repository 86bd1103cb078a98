"""Monte Carlo BER/iteration-count experiment runner.

Per-frame randomness is derived counter-style from the master seed via
SeedSequence(seed, spawn_key=(point_index, frame_index)), so results are
bit-for-bit identical no matter how frames are scheduled across workers.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import codec, decoder, interleave, modem

DEFAULT_EBNO_SWEEP = (2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0)

CSV_HEADER = "ebno_db,variant,frames,bits,bit_errors,ber,mean_iters,frame_errors,wall_s"


@dataclass(frozen=True)
class ExperimentConfig:
    ebno_db_list: tuple = DEFAULT_EBNO_SWEEP
    variant: str = "classical"
    frames: int = 10
    info_len: int = 1998  # (1998 + 2 tail) * 3 coded bits = 6000
    seed: int = 0
    max_iters: int = 30
    tol: float = 1e-3
    eta_m: float = 0.05
    eta_c: float = 0.05
    safety_factor: float = 0.9
    mu_cap: float = 10.0
    mu_override: float | None = None
    workers: int = 1
    out_path: str | None = None

    def decoder_config(self) -> decoder.DecoderConfig:
        return decoder.DecoderConfig(
            variant=self.variant,
            max_iters=self.max_iters,
            tol=self.tol,
            eta_m=self.eta_m,
            eta_c=self.eta_c,
            mu_cap=self.mu_cap,
            safety_factor=self.safety_factor,
            mu_override=self.mu_override,
        )

    def validate(self):
        if len(self.ebno_db_list) == 0:
            raise ValueError("ebno list must be nonempty")
        if self.frames < 1:
            raise ValueError("frames must be >= 1")
        if self.info_len < 1:
            raise ValueError("info-len must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        self.decoder_config().validate()
        return self


@dataclass(frozen=True)
class ResultRow:
    ebno_db: float
    variant: str
    frames: int
    bits: int
    bit_errors: int
    ber: float
    mean_iters: float
    frame_errors: int
    wall_s: float


@dataclass(frozen=True)
class System:
    """Immutable components shared by every frame of an experiment."""

    trellis: codec.TrellisSpec
    constellation: modem.LabeledConstellation
    perm: interleave.Permutation


def build_system(cfg: ExperimentConfig) -> System:
    trellis = codec.build_trellis(codec.CodeConfig())
    constellation = modem.build_8psk_sp()
    coded_len = (cfg.info_len + trellis.memory) * trellis.n_out
    if coded_len % constellation.bits_per_symbol != 0:
        raise ValueError("coded length must be a multiple of bits per symbol")
    perm = interleave.build_permutation(coded_len, cfg.seed)
    return System(trellis=trellis, constellation=constellation, perm=perm)


def frame_rng(seed: int, point_idx: int, frame_idx: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(point_idx, frame_idx))
    return np.random.default_rng(ss)


def run_single_frame(cfg: ExperimentConfig, ebno_db, point_idx, frame_idx, system=None):
    """Simulate one frame; returns (trace, info_bits, bit_errors).

    Exposed so tests can inspect full per-iteration traces with exactly
    the randomness the experiment loop would use.
    """
    if system is None:
        system = build_system(cfg)
    chan = modem.ChannelParams.from_ebno_db(ebno_db)
    rng = frame_rng(cfg.seed, point_idx, frame_idx)
    info = rng.integers(0, 2, cfg.info_len, dtype=np.int64)
    coded = codec.encode(info, system.trellis)
    d = interleave.interleave(coded, system.perm)
    symbols = modem.map_symbols(d, system.constellation)
    y = modem.transmit(symbols, chan, rng)
    trace = decoder.run_frame(
        y, cfg.decoder_config(), system.constellation, chan, system.trellis, system.perm
    )
    errors = int(np.sum(trace.decisions != info))
    return trace, info, errors


def _run_frame_batch(args):
    cfg_dict, ebno_db, point_idx, frame_indices = args
    cfg = ExperimentConfig(**cfg_dict)
    system = build_system(cfg)
    bit_errors = 0
    frame_errors = 0
    iter_sum = 0
    for frame_idx in frame_indices:
        trace, _, errors = run_single_frame(cfg, ebno_db, point_idx, frame_idx, system)
        bit_errors += errors
        frame_errors += int(errors > 0)
        iter_sum += trace.iterations
    return bit_errors, frame_errors, iter_sum


def run_experiment(cfg: ExperimentConfig):
    """Run the sweep and return one ResultRow per Eb/N0 point.

    Writes the CSV as well when cfg.out_path is set. Frame outcomes are
    aggregated with integer sums, so worker count never changes results.
    """
    cfg.validate()
    system = build_system(cfg)
    rows = []
    for point_idx, ebno_db in enumerate(cfg.ebno_db_list):
        t0 = time.perf_counter()
        all_frames = list(range(cfg.frames))
        if cfg.workers == 1:
            bit_errors = 0
            frame_errors = 0
            iter_sum = 0
            for frame_idx in all_frames:
                trace, _, errors = run_single_frame(
                    cfg, ebno_db, point_idx, frame_idx, system
                )
                bit_errors += errors
                frame_errors += int(errors > 0)
                iter_sum += trace.iterations
        else:
            chunks = [
                all_frames[w :: cfg.workers]
                for w in range(cfg.workers)
                if all_frames[w :: cfg.workers]
            ]
            payloads = [(asdict(cfg), ebno_db, point_idx, chunk) for chunk in chunks]
            with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
                batches = list(pool.map(_run_frame_batch, payloads))
            bit_errors = sum(b[0] for b in batches)
            frame_errors = sum(b[1] for b in batches)
            iter_sum = sum(b[2] for b in batches)
        bits = cfg.frames * cfg.info_len
        rows.append(
            ResultRow(
                ebno_db=float(ebno_db),
                variant=cfg.variant,
                frames=cfg.frames,
                bits=bits,
                bit_errors=bit_errors,
                ber=bit_errors / bits,
                mean_iters=iter_sum / cfg.frames,
                frame_errors=frame_errors,
                wall_s=time.perf_counter() - t0,
            )
        )
    if cfg.out_path is not None:
        write_csv(rows, cfg.out_path)
    return rows


def format_row(row: ResultRow) -> str:
    # repr round-trips floats exactly; wall time is display-only precision
    return (
        f"{row.ebno_db!r},{row.variant},{row.frames},{row.bits},"
        f"{row.bit_errors},{row.ber!r},{row.mean_iters!r},"
        f"{row.frame_errors},{row.wall_s:.3f}"
    )


def write_csv(rows, path):
    """Plain CSV, header pinned; refuses to create a file for empty results."""
    rows = list(rows)
    if not rows:
        raise ValueError("no result rows to write")
    lines = [CSV_HEADER] + [format_row(r) for r in rows]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")
