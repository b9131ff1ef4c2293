"""Command-line front end.

Commands::

    ulrich gen       --s S [--p P] [--seed N] [--budget B] [--out FILE]
    ulrich certify   (--in FILE | --s S [--seed N] | --s S --seeds A..B) [--out PATH]
                     [--window KMIN KMAX] [--bound D] [--emit {betti,cohomology,hilbert}]
    ulrich cohomology (--in FILE | --s S [--seed N]) [--window KMIN KMAX] [--out FILE]
    ulrich hilbert   (--in FILE | --s S [--seed N]) [--out FILE]
    ulrich selftest  [--s S] [--seed N] [--bound D]

Exit codes: 0 success or passing certificate, 1 failed check or selftest
mismatch, 2 invalid input or parameters, 3 resample budget exhausted.

JSON schemas
------------
Instance::

    {"p": int, "s": int, "seed": int, "F1": str, "F2": str, "A": str, "B": str,
     "F": str, "resamples": int}

Polynomials use the grammar ``3*x^2*y - z^4 + 5``; only ``p``, ``s`` (and
``seed``) are required, missing polynomials are generated from the seed.

Certificate::

    {"verdict": "pass"|"fail", "first_failure": str|null,
     "checks": [{"name": str, "status": "pass"|"fail", "data": {...}}, ...],
     "instance": Instance, "timings_ms": {check: float},
     "betti": Betti, "cohomology": Cohomology}

Betti (of the pushforward of E to P^2)::

    {"entries": [[i, j, beta_ij], ...], "text": str}

where beta_ij counts degree-j generators of the i-th free module.

Cohomology (sheaf cohomology of the pushforward, which equals that of E)::

    {"window": [kmin, kmax], "h0": [...], "h1": [...], "h2": [...], "text": str}

with list position k - kmin holding h^i(E(k)).

Hilbert::

    {"weights": [...], "numerator": {"deg": coeff}, "hilbert_polynomial": [c0, c1, c2],
     "series_text": str}
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .poly import DEFAULT_PRIME, PolynomialSyntaxError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class CliConfig:
    command: str
    p: int = DEFAULT_PRIME
    s: int | None = None
    seed: int = 0
    seeds: tuple | None = None
    input: str | None = None
    output: str | None = None
    window: tuple = (-3, 3)
    bound: int | None = None  # defaults to 3s+2
    budget: int = 100
    emit: str | None = None

    def test_bound(self, s: int) -> int:
        return 3 * s + 2 if self.bound is None else self.bound


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _seed_range(text: str):
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if b < a:
        raise argparse.ArgumentTypeError("empty seed range")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ulrich", description="Ulrich bundles on double planes over F_p")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        sp.add_argument("--p", type=int, default=DEFAULT_PRIME, help="field characteristic")
        sp.add_argument("--s", type=int, help="branch curve degree is 2s")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=100, help="resample budget")
        if instance:
            sp.add_argument("--in", dest="input", help="instance JSON file")
        sp.add_argument("--out", dest="output")

    sp = sub.add_parser("gen", help="generate an instance")
    common(sp, instance=False)

    sp = sub.add_parser("certify", help="build E and run all checks")
    common(sp)
    sp.add_argument("--seeds", type=_seed_range, help="seed range A..B, one certificate file per seed")
    sp.add_argument("--window", type=int, nargs=2, default=(-3, 3), metavar=("KMIN", "KMAX"))
    sp.add_argument("--bound", type=int, help="degree bound for degreewise checks (default 3s+2)")
    sp.add_argument("--emit", choices=("betti", "cohomology", "hilbert"))

    sp = sub.add_parser("cohomology", help="cohomology table of E")
    common(sp)
    sp.add_argument("--window", type=int, nargs=2, default=(-3, 3), metavar=("KMIN", "KMAX"))

    sp = sub.add_parser("hilbert", help="Hilbert data of the modules in the construction")
    common(sp)

    sp = sub.add_parser("selftest", help="oracle suite")
    common(sp, instance=False)
    sp.add_argument("--bound", type=int)
    return ap


def config_from_args(ns) -> CliConfig:
    return CliConfig(
        command=ns.command, p=ns.p, s=ns.s, seed=ns.seed,
        seeds=getattr(ns, "seeds", None), input=getattr(ns, "input", None), output=ns.output,
        window=tuple(getattr(ns, "window", (-3, 3))), bound=getattr(ns, "bound", None),
        budget=ns.budget, emit=getattr(ns, "emit", None),
    )


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_instance(cfg: CliConfig):
    from .pipeline import Instance, InstanceError, ResampleBudgetExhausted, generate_instance
    try:
        if cfg.input is not None:
            try:
                data = json.loads(Path(cfg.input).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise CliError(f"cannot read instance {cfg.input}: {exc}")
            if not isinstance(data, dict) or "s" not in data:
                raise CliError("instance JSON needs at least the key 's'")
            return Instance.from_json(data, cfg.budget)
        if cfg.s is None:
            raise CliError("give --in FILE or --s S")
        return generate_instance(cfg.s, cfg.p, cfg.seed, cfg.budget)
    except (InstanceError, PolynomialSyntaxError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CliError):
            raise
        raise CliError(str(exc))
    except ResampleBudgetExhausted as exc:
        raise CliError(str(exc), EXIT_BUDGET)


def cmd_generate(cfg: CliConfig) -> int:
    if cfg.s is None:
        raise CliError("gen needs --s")
    inst = load_instance(cfg)
    _write(_dump(inst.to_json()), cfg.output)
    print(f"resamples: {inst.resamples}", file=sys.stderr)
    return EXIT_OK


def _certify_one(cfg: CliConfig, inst):
    from .pipeline import certify_instance
    return certify_instance(inst, cfg.window, cfg.bound)


def _emit(cert, what, inst=None):
    from .graded import BettiTable
    if what == "betti" and cert.betti:
        entries = {(i, j): v for i, j, v in cert.betti["entries"]}
        print(BettiTable(entries).render())
    elif what == "cohomology" and cert.cohomology:
        print(cert.cohomology["text"])
    elif what == "hilbert":
        print(_hilbert_text(_hilbert_json(inst)))


def _seed_job(args):
    cfg, seed = args
    from dataclasses import replace
    sub = replace(cfg, seed=seed, seeds=None)
    try:
        inst = load_instance(sub)
    except CliError as exc:
        return seed, None, exc.code, str(exc)
    cert = _certify_one(sub, inst)
    return seed, cert.to_json(), EXIT_OK if cert.verdict == "pass" else EXIT_FAIL, None


def cmd_certify(cfg: CliConfig) -> int:
    if cfg.seeds is not None:
        return _certify_batch(cfg)
    inst = load_instance(cfg)
    cert = _certify_one(cfg, inst)
    _write(_dump(cert.to_json()), cfg.output)
    if cfg.emit:
        _emit(cert, cfg.emit, inst)
    status = "pass" if cert.verdict == "pass" else f"fail (first failure: {cert.first_failure})"
    print(f"verdict: {status}", file=sys.stderr)
    return EXIT_OK if cert.verdict == "pass" else EXIT_FAIL


def _certify_batch(cfg: CliConfig) -> int:
    if cfg.s is None:
        raise CliError("--seeds needs --s")
    a, b = cfg.seeds
    outdir = Path(cfg.output or ".")
    jobs = [(cfg, k) for k in range(a, b + 1)]
    worst = EXIT_OK
    with ProcessPoolExecutor() as pool:
        for seed, cert, code, err in pool.map(_seed_job, jobs):
            if cert is not None:
                path = outdir / f"certificate_s{cfg.s}_seed{seed}.json"
                _write(_dump(cert), str(path))
                print(f"seed {seed}: {cert['verdict']} -> {path}", file=sys.stderr)
            else:
                print(f"seed {seed}: error: {err}", file=sys.stderr)
            worst = max(worst, code)
    return worst


def _candidate(cfg: CliConfig):
    from .double_cover import make_double_cover
    from .pipeline import build_residual_scheme, build_ulrich_module
    inst = load_instance(cfg)
    try:
        dc = make_double_cover(inst.F, inst.s)
    except ValueError as exc:
        raise CliError(str(exc))
    return build_ulrich_module(inst, build_residual_scheme(inst, dc))


def cmd_cohomology(cfg: CliConfig) -> int:
    from .graded import cohomology_table
    cand = _candidate(cfg)
    table = cohomology_table(cand.pushforward, *cfg.window)
    print(table.render())
    if cfg.output:
        _write(_dump(table.to_json()), cfg.output)
    return EXIT_OK


def _hilbert_json(inst):
    from .double_cover import make_double_cover, pushforward_to_p2, r_quotient
    from .graded import GradedModulePresentation, hilbert_data
    from .pipeline import build_residual_scheme, build_ulrich_module
    cand = build_ulrich_module(inst, build_residual_scheme(inst, make_double_cover(inst.F, inst.s)))
    mods = {
        "pushforward_E": cand.pushforward,
        "pushforward_O_X": pushforward_to_p2(r_quotient(cand.ring, ())),
        "pushforward_O_Z": cand.pushforward_OZ,
        "O_Zprime": GradedModulePresentation.quotient(inst.F.ring, [inst.F1, inst.F2]),
    }
    return {k: hilbert_data(m).to_json() for k, m in mods.items()}


def _hilbert_text(data) -> str:
    lines = []
    for k, v in data.items():
        hp = v["hilbert_polynomial"]
        poly = " + ".join(f"({c})*k^{i}" for i, c in reversed(list(enumerate(hp))) if c != "0") or "0"
        lines.append(f"{k}: HP(k) = {poly}; series {v['series_text']}")
    return "\n".join(lines)


def cmd_hilbert(cfg: CliConfig) -> int:
    inst = load_instance(cfg)
    data = _hilbert_json(inst)
    print(_hilbert_text(data))
    if cfg.output:
        _write(_dump(data), cfg.output)
    return EXIT_OK


def cmd_selftest(cfg: CliConfig) -> int:
    from .selftest import run_selftest
    s = cfg.s or 3
    failures = run_selftest(s, cfg.p, cfg.seed, cfg.test_bound(s), log=lambda m: print(m, file=sys.stderr))
    return EXIT_OK if not failures else EXIT_FAIL


COMMANDS = {
    "gen": cmd_generate,
    "certify": cmd_certify,
    "cohomology": cmd_cohomology,
    "hilbert": cmd_hilbert,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
