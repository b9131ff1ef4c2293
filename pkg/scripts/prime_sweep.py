"""How often does the construction certify over small fields?

For each prime, draw instances at s = 3 and record the verdict and the first
failing check. Generation already resamples until the branch curve is smooth
and the complete intersection is finite, so failures here would be genuine.

    python3 scripts/prime_sweep.py --primes 5 7 11 13 101 32003 --seeds 1..10
"""
import argparse
from collections import Counter

from ulrich.pipeline import InstanceError, ResampleBudgetExhausted, certify_instance, generate_instance


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[5, 7, 11, 13, 101, 32003])
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--seeds", default="1..10")
    args = ap.parse_args()
    a, b = map(int, args.seeds.split(".."))
    print(f"{'p':>6} {'pass':>5} {'fail':>5} {'mean resamples':>15}  first failures")
    for p in args.primes:
        verdicts, failures, resamples = Counter(), Counter(), []
        for seed in range(a, b + 1):
            try:
                inst = generate_instance(args.s, p, seed)
            except (InstanceError, ResampleBudgetExhausted) as exc:
                failures[type(exc).__name__] += 1
                verdicts["fail"] += 1
                continue
            resamples.append(inst.resamples)
            cert = certify_instance(inst)
            verdicts[cert.verdict] += 1
            if cert.first_failure:
                failures[cert.first_failure] += 1
        mean = sum(resamples) / len(resamples) if resamples else float("nan")
        print(f"{p:>6} {verdicts['pass']:>5} {verdicts['fail']:>5} {mean:>15.2f}  {dict(failures) or '-'}")


if __name__ == "__main__":
    main()
