"""Compare the compiled kernels with the pure-Python fallback.

Times maximal-clique enumeration on the seeded neighbourhood of (0,0),(1,0)
and batched canonical forms of the resulting sets, checks that both
implementations agree, and prints one row per (kernel, q).

    python3 benchmarks/bench_kernels.py --q 13 17 19
"""
from __future__ import annotations

import argparse
import time

from intpoints import _kernels_py, kernels
from intpoints.field import field_of_order
from intpoints.igraph import integral_adjacency
from intpoints.plane import plane_tables
from intpoints.search import seed_neighbourhood
from intpoints.symmetry import _flatten, classification_group


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[11, 13, 17, 19])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    impls = [("python", _kernels_py)]
    if kernels.IMPLEMENTATION != "python":
        impls.insert(0, (kernels.IMPLEMENTATION, kernels.impl))
    else:
        print("compiled extension not built; timing the fallback only")

    print(f"{'kernel':8} {'q':>3} {'verts':>6} {'cliques':>8} {'bk [s]':>9} {'canon [s]':>10}")
    for q in args.q:
        ctx = field_of_order(q)
        verts = seed_neighbourhood(ctx, ctx.q)
        adj = integral_adjacency(ctx, verts)
        G = classification_group(ctx)
        sub = plane_tables(ctx).sub
        ref = None
        for name, mod in impls:
            t_bk, (cl, done) = best_of(lambda: mod.max_cliques(adj), args.repeat)
            sets = [(0, q, *verts[list(c)].tolist()) for c in cl]
            flat, off = _flatten(sets)
            t_cn, (forms, stab) = best_of(lambda: mod.canon_batch(G.linear, sub, flat, off), args.repeat)
            key = (sorted(cl), forms.tobytes(), stab.tobytes())
            if ref is None:
                ref = key
            elif key != ref:
                raise SystemExit(f"q={q}: {name} disagrees with the reference kernel")
            print(f"{name:8} {q:>3} {len(verts):>6} {len(cl):>8} {t_bk:>9.4f} {t_cn:>10.4f}")


if __name__ == "__main__":
    main()
