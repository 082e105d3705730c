"""Pure-Python backtracking kernel for injection counting.

Reference implementation of the counting engine. The compiled extension in
_fastcount mirrors this exactly for hosts with at most 64 vertices; this
version works for any host size because masks are plain Python ints.

The kernel walks all edge-preserving injections of an ordered pattern into a
host, with optional per-placement features:

  * required host edges that every counted image must cover,
  * forbidden host edges that no pattern edge may land on,
  * a histogram over how many edges of a marked host edge set are used,
  * a histogram over how many image vertices land in a marked host vertex
    set, with an optional hard ceiling used as a pruning bound,
  * an intersection signature counting image vertices per host piece,
  * a per-pattern-vertex mask restricting where each vertex may land.

All bookkeeping is integral and the walk order is fixed, so results are
deterministic.
"""
from __future__ import annotations


def run(
    f,
    earlier,
    host_adj,
    n,
    root_mask,
    req_masks,
    req_total,
    rem_edges,
    forb_masks,
    class_masks,
    vset_mask,
    vset_bound,
    want_vhist,
    part_of,
    allowed=None,
    max_nodes=0,
):
    """Count injections; returns (total, edge_hist, vertex_hist, signatures).

    Histograms are lists (or None when the mode is off); signatures is a dict
    mapping packed per-piece counts to totals (None when off). max_nodes
    caps search-tree size, 0 means unlimited; the cap raises RuntimeError.
    """
    if f == 0:
        return (1 if req_total == 0 else 0, None, None, None)
    full = (1 << n) - 1
    have_req = req_masks is not None
    have_forb = forb_masks is not None
    have_cls = class_masks is not None
    have_sig = part_of is not None
    have_vset = want_vhist or vset_bound >= 0

    total = 0
    edge_hist = [0] * (rem_edges[0] + len(earlier[0]) + 1) if have_cls else None
    # rem_edges[0] counts edges placed after depth 0; earlier[0] is empty, so
    # this is exactly the pattern edge count plus one slot for zero
    vertex_hist = [0] * (f + 1) if want_vhist else None
    signatures = {} if have_sig else None

    pos = [0] * f
    dcov_st = [0] * f
    dcls_st = [0] * f
    dins_st = [0] * f
    sig_st = [0] * f
    cand = [0] * f
    cand[0] = root_mask & full
    if allowed is not None:
        cand[0] &= allowed[0]
    used = 0
    covered = 0
    clscnt = 0
    inset = 0
    sig = 0
    depth = 0
    nodes = 0
    last = f - 1

    while True:
        m = cand[depth]
        if m == 0:
            depth -= 1
            if depth < 0:
                break
            v = pos[depth]
            used &= ~(1 << v)
            covered -= dcov_st[depth]
            clscnt -= dcls_st[depth]
            inset -= dins_st[depth]
            sig = sig_st[depth]
            continue
        low = m & -m
        cand[depth] = m ^ low
        v = low.bit_length() - 1
        nodes += 1
        if max_nodes and nodes > max_nodes:
            raise RuntimeError(f"search tree exceeded {max_nodes} nodes")

        dcov = 0
        dcls = 0
        if have_req or have_forb or have_cls:
            ok = True
            for j in earlier[depth]:
                w = pos[j]
                if have_forb and forb_masks[v] >> w & 1:
                    ok = False
                    break
                if have_req and req_masks[v] >> w & 1:
                    dcov += 1
                if have_cls and class_masks[v] >> w & 1:
                    dcls += 1
            if not ok:
                continue
            if have_req and covered + dcov + rem_edges[depth] < req_total:
                continue
        din = vset_mask >> v & 1 if have_vset else 0
        if vset_bound >= 0 and inset + din > vset_bound:
            continue

        if depth == last:
            if not have_req or covered + dcov == req_total:
                total += 1
                if have_cls:
                    edge_hist[clscnt + dcls] += 1
                if want_vhist:
                    vertex_hist[inset + din] += 1
                if have_sig:
                    s = sig + (1 << (8 * part_of[v]))
                    signatures[s] = signatures.get(s, 0) + 1
            continue

        pos[depth] = v
        used |= low
        dcov_st[depth] = dcov
        covered += dcov
        dcls_st[depth] = dcls
        clscnt += dcls
        dins_st[depth] = din
        inset += din
        if have_sig:
            sig_st[depth] = sig
            sig += 1 << (8 * part_of[v])
        depth += 1
        m = full & ~used
        if allowed is not None:
            m &= allowed[depth]
        for j in earlier[depth]:
            m &= host_adj[pos[j]]
        cand[depth] = m

    return (total, edge_hist, vertex_hist, signatures)
