#!/usr/bin/env python3
"""Generate a newform snapshot file with PARI/GP (cypari2).

Computes the weight-2 newforms of level 2q^2 whose character is the
quadratic character of conductor q, and writes the characteristic
polynomial of every a_p (p prime, p not dividing 2q, p <= --pmax) for
each Galois conjugacy class, plus the complex embeddings of a_p.

Usage: gen_snapshot.py --q 17 --out data/newforms_q17.json [--pmax 100]
"""

import argparse
import json
import sys
import time

import cypari2

BIG = 2 ** 53


def enc(c):
    c = int(c)
    return str(c) if abs(c) >= BIG else c


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--pmax", type=int, default=100)
    ap.add_argument("--embed-pmax", type=int, default=31,
                    help="store complex embeddings for p up to this bound")
    ap.add_argument("--mem", type=int, default=8 * 10 ** 9)
    args = ap.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(args.mem)
    pari.set_real_precision(60)
    q, level = args.q, 2 * args.q * args.q
    t0 = time.time()
    pari(f"mf = mfinit([{level}, 2, {q}], 0)")
    pari("B = mfeigenbasis(mf); P = mffields(mf)")
    total = int(pari("mfdim(mf)"))
    count = int(pari("#B"))
    primes = [int(p) for p in pari(f"primes([3, {args.pmax}])")
              if int(p) != q]
    print(f"q={q}: dim {total}, {count} classes ({time.time() - t0:.1f}s)",
          file=sys.stderr)

    pari(f"C = vector(#B, i, mfcoefs(B[i], {args.pmax}))")
    classes = []
    for i in range(1, count + 1):
        deg = int(pari(f"poldegree(P[{i}])"))
        if deg > 1:
            pari(f"R = polroots(P[{i}])")
        aps = {}
        for p in primes:
            a = f"C[{i}][{p + 1}]"
            if deg == 1:
                pari(f"cp = 'x - ({a})")
            else:
                pari(f"cp = charpoly(Mod(liftpol({a}), P[{i}]), 'x)")
            coeffs = [enc(c) for c in pari("Vecrev(cp)")]
            entry = {"charpoly": coeffs}
            if p <= args.embed_pmax:
                if deg == 1:
                    vals = [complex(pari(a))]
                else:
                    vals = [complex(v) for v in pari(
                        f"vector({deg}, j, subst(liftpol({a}), variable(P[{i}]), R[j]))")]
                entry["embeddings"] = [[v.real, v.imag] for v in vals]
                scale = max([1.0] + [abs(v) for v in vals])
                entry["err"] = float(f"{scale * 1e-12:.3g}")
            aps[str(p)] = entry
        traces = [int(pari(f"-polcoef(charpoly(Mod(liftpol(C[{i}][{p + 1}]), P[{i}]), 'x), {deg - 1})"))
                  if deg > 1 else int(pari(f"C[{i}][{p + 1}]")) for p in primes[:8]]
        classes.append({"dim": deg, "traces": traces, "ap": aps})

    # Local labels: sorted by dimension then by trace vector, lettered a, b, ...
    classes.sort(key=lambda c: (c["dim"], c["traces"]))
    out = []
    for idx, c in enumerate(classes):
        letters = ""
        n = idx
        while True:
            letters = chr(ord("a") + n % 26) + letters
            n = n // 26 - 1
            if n < 0:
                break
        out.append({"label": f"{level}.2.q{q}.{letters}", "dim": c["dim"],
                    "ap": c["ap"]})
    doc = {"q": q, "level": level, "weight": 2, "char_conductor": q,
           "total_dim": total, "classes": out}
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, separators=(",", ":"))
        fh.write("\n")
    print(f"wrote {args.out} ({time.time() - t0:.1f}s)", file=sys.stderr)


if __name__ == "__main__":
    main()
