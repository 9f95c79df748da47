import itertools

import numpy as np


def naive_min_b(dense: np.ndarray, a: int, elementary_only: bool = False):
    """Direct per-subset oracle: (min b, first subset attaining it) over all a-subsets."""
    best, arg = None, None
    for S in itertools.combinations(range(dense.shape[1]), a):
        w = dense[:, list(S)].sum(axis=1)
        if elementary_only and w.max(initial=0) > 2:
            continue
        b = int((w % 2).sum())
        if best is None or b < best:
            best, arg = b, S
    return best, arg


def beam_trapping_sets(H, seed: int, size: int, width: int, max_b: int):
    """Grow elementary variable sets from ``seed`` by breadth-limited search.

    Only neighbours through degree-one checks are added and no check may reach
    degree three, so every kept set is elementary.  Returns sorted column lists
    with at most ``max_b`` odd checks.
    """
    rows = H.row_supports()
    colchecks = [[] for _ in range(H.cols)]
    for i, cs in enumerate(rows):
        for c in cs:
            colchecks[c].append(i)
    beam = [(frozenset([seed]), {c: 1 for c in colchecks[seed]})]
    for _ in range(2, size + 1):
        cand = {}
        for S, cnt in beam:
            nbrs = {v for c, k in cnt.items() if k == 1 for v in rows[c] if v not in S}
            for v in nbrs:
                if any(cnt.get(c, 0) >= 2 for c in colchecks[v]):
                    continue
                T = S | {v}
                if T in cand:
                    continue
                c2 = dict(cnt)
                for c in colchecks[v]:
                    c2[c] = c2.get(c, 0) + 1
                cand[T] = (sum(k % 2 for k in c2.values()), c2)
        ranked = sorted(cand.items(), key=lambda kv: (kv[1][0], sorted(kv[0])))[:width]
        beam = [(S, v[1]) for S, v in ranked]
    return [sorted(S) for S, cnt in beam if sum(k % 2 for k in cnt.values()) <= max_b]
