"""Certify a batch of seeds and print verdicts with per-check timings.

    python3 scripts/run_seeds.py --s 3 4 --seeds 1..5 [--json results.json]
"""
import argparse
import json
import time

from ulrich.pipeline import CHECK_NAMES, certify_instance, generate_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=int, nargs="+", default=[3, 4])
    ap.add_argument("--seeds", default="1..5")
    ap.add_argument("--p", type=int, default=32003)
    ap.add_argument("--json")
    args = ap.parse_args()
    a, b = map(int, args.seeds.split(".."))

    rows = []
    head = f"{'s':>2} {'seed':>4} {'resamp':>6} {'verdict':>7} {'total_s':>8}  " + " ".join(f"{n[:8]:>8}" for n in CHECK_NAMES)
    print(head)
    for s in args.s:
        for seed in range(a, b + 1):
            t0 = time.perf_counter()
            inst = generate_instance(s, args.p, seed)
            cert = certify_instance(inst)
            total = time.perf_counter() - t0
            cells = " ".join(f"{cert.timings_ms[n]:8.1f}" for n in CHECK_NAMES)
            print(f"{s:>2} {seed:>4} {inst.resamples:>6} {cert.verdict:>7} {total:8.2f}  {cells}")
            rows.append({"s": s, "seed": seed, "resamples": inst.resamples, "verdict": cert.verdict,
                         "first_failure": cert.first_failure, "seconds": total, "timings_ms": cert.timings_ms})
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
