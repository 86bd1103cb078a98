"""Command line front end for the BER experiment harness.

Precedence: built-in defaults, then --config file entries (key=value lines),
then explicit command line flags. Exit codes: 0 success, 1 invalid
configuration, 2 runtime failure.
"""

import argparse
import sys

from .harness import ExperimentConfig, run_experiment


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on error; surface a ConfigError instead so cli_main
    # can map every bad-config path to exit code 1
    def error(self, message):
        raise ConfigError(message)


def _parse_ebno(text: str):
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"bad --ebno list {text!r}: {exc}") from None
    if not values:
        raise ConfigError("ebno list must be nonempty")
    return values


_FIELD_PARSERS = {
    "variant": str,
    "ebno": _parse_ebno,
    "frames": int,
    "seed": int,
    "info_len": int,
    "max_iters": int,
    "tol": float,
    "eta_m": float,
    "eta_c": float,
    "safety_factor": float,
    "mu_cap": float,
    "workers": int,
    "out": str,
}


def _build_parser() -> _Parser:
    p = _Parser(
        prog="bicmid",
        description="Monte Carlo BER sweep for the iterative demapping schedules",
    )
    p.add_argument("--variant", choices=("classical", "hpp", "hmea"))
    p.add_argument("--ebno", help="comma separated Eb/N0 list in dB")
    p.add_argument("--frames", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--info-len", dest="info_len", type=int)
    p.add_argument("--max-iters", dest="max_iters", type=int, help="default 30")
    p.add_argument("--tol", type=float, help="per-bit stopping threshold, default 1e-3")
    p.add_argument("--eta-m", dest="eta_m", type=float, help="default 0.05")
    p.add_argument("--eta-c", dest="eta_c", type=float, help="default 0.05")
    p.add_argument("--safety-factor", dest="safety_factor", type=float)
    p.add_argument("--mu-cap", dest="mu_cap", type=float)
    p.add_argument("--workers", type=int, help="parallel frame workers, default 1")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--config", help="key=value file; command line flags win")
    return p


def _read_config_file(path) -> dict:
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if key not in _FIELD_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _FIELD_PARSERS[key](val.strip())
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def build_config(argv) -> ExperimentConfig:
    args = _build_parser().parse_args(argv)
    merged = {}
    if args.config is not None:
        merged.update(_read_config_file(args.config))
    for key in _FIELD_PARSERS:
        cli_value = getattr(args, key)
        if cli_value is not None:
            merged[key] = _parse_ebno(cli_value) if key == "ebno" else cli_value
    kwargs = {}
    if "ebno" in merged:
        kwargs["ebno_db_list"] = merged.pop("ebno")
    if "out" in merged:
        kwargs["out_path"] = merged.pop("out")
    kwargs.update(merged)
    cfg = ExperimentConfig(**kwargs)
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def _print_table(rows):
    header = (
        f"{'ebno_db':>8} {'variant':>9} {'frames':>7} {'bits':>9} "
        f"{'bit_errors':>11} {'ber':>12} {'mean_iters':>11} "
        f"{'frame_errors':>13} {'wall_s':>8}"
    )
    print(header)
    for r in rows:
        print(
            f"{r.ebno_db:>8.2f} {r.variant:>9} {r.frames:>7} {r.bits:>9} "
            f"{r.bit_errors:>11} {r.ber:>12.4e} {r.mean_iters:>11.3f} "
            f"{r.frame_errors:>13} {r.wall_s:>8.3f}"
        )


def cli_main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = build_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        rows = run_experiment(cfg)
    except Exception as exc:  # noqa: BLE001 - any runtime failure maps to 2
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2
    _print_table(rows)
    if cfg.out_path is not None:
        print(f"wrote {cfg.out_path}")
    return 0


def main():
    sys.exit(cli_main())
