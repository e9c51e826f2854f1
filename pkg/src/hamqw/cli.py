"""Command-line front end.

    hamqw quantum --d 3 --n 2 --walk simple --t 10
    hamqw limit --d 2 --n 2 --walk independent --closed-form
    hamqw verify --suite identities

Exit status: 0 on success, 1 when a verification suite fails, 2 for an
invalid configuration, 3 when a size guard refuses the run.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .classical_walk import (
    WalkWeights,
    brute_force_markov,
    custom_weights,
    eigenvalues,
    spectral_transition,
    walk_metadata,
    weights_for,
)
from .hamming_scheme import HammingParams, PrimalityError, SizeError, build_krawtchouk_table
from .limit_distributions import LIMIT_FORMS, cesaro_average, limit_example
from .quantum_walk_engine import (
    MAX_AMPLITUDES,
    PATHS,
    CoinSpec,
    HypothesisViolated,
    class_position_probabilities,
    wave_vector,
)
from .unit_circle_spectrum import mode_spectrum
from .verification import SUITES, run_suite

MODES = ("classical", "quantum", "limit", "spectrum", "verify")
WALKS = ("simple", "independent", "nonlocal", "mixture", "custom")
EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_SIZE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mode: str
    d: int = 3
    n: int = 2
    walk: str = "simple"
    m: Optional[int] = None
    alpha: Optional[str] = None
    weights: Optional[tuple] = None
    t: Optional[int] = None
    T: Optional[int] = None
    path: str = "auto"
    output: str = "csv"
    closed_form: bool = False
    form: str = "printed"
    suite: str = "all"

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        if data.get("weights") is not None:
            data["weights"] = tuple(data["weights"])
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls.from_dict(json.loads(text))


def _parse_number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a number: {text!r}") from exc


def read_weight_file(path: str) -> tuple:
    """One nonnegative number per line (``0.25`` and ``1/4`` are both accepted)."""
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return tuple(str(_parse_number(ln)) for ln in lines)


def build_weights(cfg: RunConfig) -> WalkWeights:
    params = HammingParams(cfg.d, cfg.n)
    if cfg.walk == "custom":
        if cfg.weights is None:
            raise ConfigError("--walk custom needs --weights FILE")
        return custom_weights([Fraction(w) for w in cfg.weights], params)
    alpha = None if cfg.alpha is None else _parse_number(cfg.alpha)
    return weights_for(cfg.walk, params, m=cfg.m, alpha=alpha)


def _limit_kind(cfg: RunConfig) -> tuple:
    """Map a walk to its named closed-form family: ``(kind, r)``."""
    if cfg.n == 2:
        if cfg.walk in ("simple", "independent"):
            return f"{cfg.walk}_n2", None
        if cfg.walk == "nonlocal" and cfg.m == 2:
            return "nonlocal2_n2", None
        if cfg.walk == "mixture":
            return "mixture_n2", _parse_number(cfg.alpha)
    elif cfg.walk == "independent":
        return "independent_general", None
    elif cfg.walk == "simple" and cfg.n == 3:
        return "simple_n3", None
    raise ConfigError(f"no closed-form limit for walk {cfg.walk!r} with n={cfg.n}; drop --closed-form")


# ---------------------------------------------------------------------------
# runners; each returns (records, metadata)

def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return float(f"{float(x) + 0.0:.15g}")
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def run_classical(cfg: RunConfig):
    weights = build_weights(cfg)
    spectrum = eigenvalues(weights)
    records = []
    for t in range(cfg.t + 1):
        if cfg.path in ("auto", "spectral"):
            dist = spectral_transition(spectrum, t)
        else:
            dist = brute_force_markov(weights, t)
        row = {"t": t}
        row.update({f"mass_{h}": m for h, m in enumerate(dist.class_mass())})
        records.append(row)
    meta = {"path": "bruteforce" if cfg.path in ("bruteforce", "fourier") else "spectral",
            "rho": [float(r) for r in spectrum.rho]}
    meta.update(walk_metadata(spectrum))
    return records, meta


def run_quantum(cfg: RunConfig):
    coin = CoinSpec(build_weights(cfg))
    kappa = build_krawtchouk_table(coin.params).kappa_array()
    probs, used = class_position_probabilities(coin, np.arange(cfg.t + 1), path=cfg.path)
    records = []
    for t in range(cfg.t + 1):
        row = {"t": t, "path": used}
        row.update({f"mass_{h}": m for h, m in enumerate(kappa * probs[t])})
        records.append(row)
    meta = {"path": used}
    if coin.params.size**2 <= MAX_AMPLITUDES:
        final = wave_vector(coin, cfg.t, cfg.path)
        meta.update(final_norm2=final.norm2(), final_max_imag=final.max_imag())
    return records, meta


def run_limit(cfg: RunConfig):
    if cfg.closed_form:
        kind, r = _limit_kind(cfg)
        dist = limit_example(kind, cfg.d, cfg.n, r, form=cfg.form)
        meta = {"kind": kind, "form": cfg.form}
    else:
        T = cfg.T or 2000
        dist = cesaro_average(CoinSpec(build_weights(cfg)), T, path=cfg.path)
        meta = {"T": T}
    meta["provenance"] = dist.provenance
    meta["total"] = dist.total()
    return dist.to_records(), meta


def run_spectrum(cfg: RunConfig):
    weights = build_weights(cfg)
    rho = eigenvalues(weights).rho
    records = []
    for j in range(1, cfg.d + 1):
        spec = mode_spectrum(j, rho[j], cfg.n)
        for i, mu in enumerate(spec.mu):
            records.append({
                "j": j, "rho": float(spec.rho), "root": i,
                "re": float(mu.real), "im": float(mu.imag), "theta": float(spec.theta[i]),
                "c_re": None if spec.c is None else float(spec.c[i].real),
                "c_im": None if spec.c is None else float(spec.c[i].imag),
                "closed_form": spec.expandable,
            })
    return records, {"fallback_classes": sorted({r["j"] for r in records if not r["closed_form"]})}


def run_verify(cfg: RunConfig):
    records = run_suite(cfg.suite, form=cfg.form)
    return records, {"suite": cfg.suite, "passed": all(r["passed"] for r in records)}


RUNNERS = {"classical": run_classical, "quantum": run_quantum, "limit": run_limit,
           "spectrum": run_spectrum, "verify": run_verify}


# ---------------------------------------------------------------------------
# output

def render(cfg: RunConfig, records: list, meta: dict) -> str:
    if cfg.output == "json":
        doc = {"config": cfg.to_dict(), "metadata": _fmt(meta), "records": _fmt(records)}
        return json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    buf = io.StringIO()
    if records:
        fields = list(records[0].keys())
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v) + 0.0:.15g}"
    if isinstance(v, (list, tuple)):
        return ";".join(str(_csv_cell(x)) for x in v)
    return "" if v is None else v


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return _fmt(obj.item())
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def run(cfg: RunConfig, out=None) -> int:
    """Execute one configuration; returns the exit status."""
    out = out or sys.stdout
    try:
        validate(cfg)
        records, meta = RUNNERS[cfg.mode](cfg)
    except SizeError as exc:
        _error("size_guard", exc)
        return EXIT_SIZE
    except (ConfigError, PrimalityError, HypothesisViolated, ValueError, TypeError) as exc:
        _error("invalid_config", exc)
        return EXIT_CONFIG
    out.write(render(cfg, records, meta))
    if cfg.mode == "verify" and not meta["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


def _error(kind: str, exc: Exception) -> None:
    print(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc)}), file=sys.stderr)


def validate(cfg: RunConfig) -> None:
    if cfg.mode not in MODES:
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    if cfg.output not in ("csv", "json"):
        raise ConfigError(f"unknown output {cfg.output!r}")
    if cfg.path not in PATHS + ("auto",):
        raise ConfigError(f"unknown path {cfg.path!r}")
    if cfg.form not in LIMIT_FORMS:
        raise ConfigError(f"unknown form {cfg.form!r}")
    if cfg.mode == "verify":
        if cfg.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {cfg.suite!r}")
        return
    if cfg.walk not in WALKS:
        raise ConfigError(f"unknown walk {cfg.walk!r}")
    if cfg.mode in ("classical", "quantum") and (cfg.t is None or cfg.t < 0):
        raise ConfigError(f"{cfg.mode} needs --t >= 0")
    if cfg.mode == "limit" and cfg.T is not None and cfg.T < 1:
        raise ConfigError("--T must be >= 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamqw", description="Quantum walks on Hamming graphs.")
    sub = parser.add_subparsers(dest="mode", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, default=3)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--walk", choices=WALKS, default="simple")
    common.add_argument("--m", type=int)
    common.add_argument("--alpha", help="coordinate update probability of the mixture walk")
    common.add_argument("--r", help="alias of --alpha for the single-atom mixture")
    common.add_argument("--weights", metavar="FILE", help="class weights, one per line (d+1 lines)")
    common.add_argument("--t", type=int)
    common.add_argument("--T", type=int)
    common.add_argument("--path", choices=PATHS + ("auto",), default="auto")
    common.add_argument("--output", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH")
    for mode in MODES[:-1]:
        p = sub.add_parser(mode, parents=[common])
        if mode == "limit":
            p.add_argument("--closed-form", action="store_true")
            p.add_argument("--form", choices=LIMIT_FORMS, default="printed")
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--form", choices=LIMIT_FORMS, default="printed")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    alpha = args.alpha if args.alpha is not None else args.r
    weights = read_weight_file(args.weights) if args.weights else None
    return RunConfig(
        mode=args.mode, d=args.d, n=args.n, walk=args.walk, m=args.m, alpha=alpha,
        weights=weights, t=args.t, T=args.T, path=args.path, output=args.output,
        closed_form=getattr(args, "closed_form", False), form=getattr(args, "form", "printed"),
        suite=getattr(args, "suite", "all"),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (ConfigError, OSError) as exc:
        _error("invalid_config", exc)
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w", newline="") as fh:
            return run(cfg, fh)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
