"""Tabulate the dimension identities and Chern data for a range of s.

    python3 scripts/dimension_table.py --s 3 4 5 6 --seed 1
"""
import argparse

from ulrich.pipeline import certify_instance, generate_instance

KEYS = ["h0_P2_IZprime_2s", "h0_X_IZ_2s", "h0_P2_IZprime_s", "h0_P2_pushIZ_s", "h0_P2_pushE", "h1_P2_pushE"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    print(f"{'s':>2} " + " ".join(f"{k:>17}" for k in KEYS) + f" {'c1':>3} {'c2':>4} verdict")
    for s in args.s:
        cert = certify_instance(generate_instance(s, seed=args.seed))
        dims = cert.check("dimension_identities").data
        su = cert.check("special_ulrich").data
        cells = []
        for k in KEYS:
            v, e = dims[k]["value"], dims[k]["expected"]
            cells.append(f"{v:>8} ({'=' if v == e else '!'}{e:>5})")
        print(f"{s:>2} " + " ".join(f"{c:>17}" for c in cells) + f" {su['c1_twist']:>3} {su['c2_length_Z']:>4} {cert.verdict}")


if __name__ == "__main__":
    main()
