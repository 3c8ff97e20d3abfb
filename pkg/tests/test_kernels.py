import itertools

import numpy as np
import pytest

from intpoints import _kernels_py, kernels


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.random((n, n)) < p
    a = np.triu(a, 1)
    return a | a.T


def maximal_cliques_bruteforce(adj):
    n = len(adj)
    cliques = []
    for mask in range(1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        if all(adj[u, v] for u, v in itertools.combinations(vs, 2)):
            cliques.append(frozenset(vs))
    cs = set(cliques)
    out = []
    for c in cs:
        if not any(c | {v} in cs for v in range(n) if v not in c):
            out.append(tuple(sorted(c)))
    return sorted(out)


IMPLS = [_kernels_py] + ([kernels.impl] if kernels.IMPLEMENTATION != "python" else [])


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
@pytest.mark.parametrize("seed", range(6))
def test_max_cliques_against_subset_enumeration(impl, seed):
    adj = random_graph(11, 0.5, seed)
    got, done = impl.max_cliques(adj)
    assert done
    assert sorted(got) == maximal_cliques_bruteforce(adj)


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_floor_and_branch_slices(impl):
    adj = random_graph(40, 0.6, 7)
    full, _ = impl.max_cliques(adj)
    big, _ = impl.max_cliques(adj, floor=6)
    assert sorted(big) == sorted(c for c in full if len(c) >= 6)
    nb = impl.count_top_branches(adj)
    parts = []
    for lo in range(0, nb, 3):
        parts += impl.max_cliques(adj, branches=(lo, min(nb, lo + 3)))[0]
    assert sorted(parts) == sorted(full)


def test_empty_and_edge_cases():
    for impl in IMPLS:
        assert impl.max_cliques(np.zeros((0, 0), dtype=bool)) == ([()], True)
        got, _ = impl.max_cliques(np.zeros((3, 3), dtype=bool))
        assert sorted(got) == [(0,), (1,), (2,)]


def test_deadline_aborts():
    adj = random_graph(120, 0.7, 1)
    for impl in IMPLS:
        _, done = impl.max_cliques(adj, deadline=0.0 + 1e-9)
        assert not done


@pytest.mark.skipif(kernels.IMPLEMENTATION == "python", reason="extension not built")
@pytest.mark.parametrize("seed", range(4))
def test_compiled_matches_fallback(seed):
    adj = random_graph(60, 0.55, 100 + seed)
    a, _ = kernels.impl.max_cliques(adj)
    b, _ = _kernels_py.max_cliques(adj)
    assert sorted(a) == sorted(b)


def _canon_bruteforce(L, sub, pts):
    best, count = None, 0
    for h in range(L.shape[0]):
        img = L[h, pts]
        for a in img:
            key = tuple(sorted(int(sub[x, a]) for x in img))
            if best is None or key < best:
                best, count = key, 1
            elif key == best:
                count += 1
    return best, count


def test_canon_batch_against_loop():
    from intpoints.field import make_field
    from intpoints.plane import plane_tables
    from intpoints.symmetry import h_group
    f = make_field(7)
    G = h_group(f)
    sub = plane_tables(f).sub
    rng = np.random.default_rng(3)
    sets = [sorted(rng.choice(49, size=k, replace=False).tolist()) for k in (1, 2, 3, 5, 8)]
    offsets = np.cumsum([0] + [len(s) for s in sets])
    flat = np.concatenate([np.asarray(s) for s in sets]).astype(np.int32)
    for impl in IMPLS:
        out, stab = impl.canon_batch(G.linear, sub, flat, offsets)
        for i, s in enumerate(sets):
            best, count = _canon_bruteforce(G.linear, sub, s)
            assert tuple(out[offsets[i]:offsets[i + 1]].tolist()) == best
            assert stab[i] == count


def test_forced_fallback_gives_same_census():
    import os
    import subprocess
    import sys
    code = ("from intpoints import KERNELS, classify, field_of_order; "
            "print(KERNELS, classify(field_of_order(13)).table.to_tsv())")
    env = dict(os.environ, INTPOINTS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split(None, 1) == ["python", "13\t30\t6:2\t7:11\t8:8\t9:5\t10:1\t13:3\n"]
