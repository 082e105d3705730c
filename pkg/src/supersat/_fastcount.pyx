# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled counting kernel.

Exact mirror of supersat._purecount.run for hosts with at most 64 vertices,
where every adjacency mask fits one machine word. The walk releases the GIL,
so the engine can split the root candidates across threads. See _purecount
for the mode documentation; this module exists purely for speed.
"""

from libc.string cimport memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil

DEF MAXV = 64
DEF MAXE = 2016          # 64 choose 2
DEF SIGSLOTS = 4096


cdef inline int _sig_add(unsigned long long *keys, unsigned long long *vals,
                         unsigned long long key) nogil:
    """Open-addressing insert; key 0 marks an empty slot. Returns 1 when full."""
    cdef unsigned long long h = key * 0x9E3779B97F4A7C15ULL
    cdef int i = <int>(h >> 52) & (SIGSLOTS - 1)
    cdef int probes = 0
    while probes < SIGSLOTS:
        if keys[i] == key:
            vals[i] += 1
            return 0
        if keys[i] == 0:
            keys[i] = key
            vals[i] = 1
            return 0
        i = (i + 1) & (SIGSLOTS - 1)
        probes += 1
    return 1


def run(int f, earlier, host_adj, int n, unsigned long long root_mask,
        req_masks, long long req_total, rem_edges, forb_masks, class_masks,
        unsigned long long vset_mask, int vset_bound, bint want_vhist,
        part_of, allowed=None, long long max_nodes=0):
    cdef unsigned long long hadj[MAXV]
    cdef unsigned long long req[MAXV]
    cdef unsigned long long forb[MAXV]
    cdef unsigned long long cls[MAXV]
    cdef int part[MAXV]
    cdef int ear_flat[MAXE]
    cdef int ear_off[MAXV + 1]
    cdef int rem[MAXV]
    cdef unsigned long long cand[MAXV]
    cdef int pos[MAXV]
    cdef int dcov_st[MAXV]
    cdef int dcls_st[MAXV]
    cdef int dins_st[MAXV]
    cdef unsigned long long sig_st[MAXV]
    cdef unsigned long long ehist[MAXE + 1]
    cdef unsigned long long vhist[MAXV + 1]
    cdef unsigned long long sig_keys[SIGSLOTS]
    cdef unsigned long long sig_vals[SIGSLOTS]
    cdef unsigned long long allow[MAXV]

    if f == 0:
        return (1 if req_total == 0 else 0, None, None, None)
    if f > MAXV or n > MAXV:
        raise ValueError("compiled kernel limited to 64 vertices")

    cdef bint have_req = req_masks is not None
    cdef bint have_forb = forb_masks is not None
    cdef bint have_cls = class_masks is not None
    cdef bint have_sig = part_of is not None
    cdef bint have_vset = want_vhist or vset_bound >= 0

    cdef int i, j, k, e_total
    for i in range(n):
        hadj[i] = host_adj[i]
        req[i] = req_masks[i] if have_req else 0
        forb[i] = forb_masks[i] if have_forb else 0
        cls[i] = class_masks[i] if have_cls else 0
        part[i] = part_of[i] if have_sig else 0
    k = 0
    for i in range(f):
        ear_off[i] = k
        for j in earlier[i]:
            ear_flat[k] = j
            k += 1
        rem[i] = rem_edges[i]
        allow[i] = allowed[i] if allowed is not None else 0xFFFFFFFFFFFFFFFFULL
    ear_off[f] = k
    e_total = rem_edges[0]  # earlier[0] is empty, so this is the edge count
    memset(ehist, 0, sizeof(ehist))
    memset(vhist, 0, sizeof(vhist))
    memset(sig_keys, 0, sizeof(sig_keys))
    memset(sig_vals, 0, sizeof(sig_vals))

    cdef unsigned long long full
    if n == 64:
        full = 0xFFFFFFFFFFFFFFFFULL
    else:
        full = (1ULL << n) - 1
    cdef unsigned long long total = 0, used = 0, sig = 0, low, m
    cdef long long nodes = 0
    cdef int depth = 0, last = f - 1
    cdef int v, w, dcov, dcls, din, ok
    cdef int covered = 0, clscnt = 0, inset = 0
    cdef int err = 0
    cand[0] = root_mask & full & allow[0]

    with nogil:
        while True:
            m = cand[depth]
            if m == 0:
                depth -= 1
                if depth < 0:
                    break
                used &= ~(1ULL << pos[depth])
                covered -= dcov_st[depth]
                clscnt -= dcls_st[depth]
                inset -= dins_st[depth]
                sig = sig_st[depth]
                continue
            low = m & (0 - m)
            cand[depth] = m ^ low
            v = __builtin_ctzll(low)
            nodes += 1
            if max_nodes > 0 and nodes > max_nodes:
                err = 3
                break

            dcov = 0
            dcls = 0
            ok = 1
            if have_req or have_forb or have_cls:
                for i in range(ear_off[depth], ear_off[depth + 1]):
                    w = pos[ear_flat[i]]
                    if have_forb and (forb[v] >> w) & 1:
                        ok = 0
                        break
                    if have_req and (req[v] >> w) & 1:
                        dcov += 1
                    if have_cls and (cls[v] >> w) & 1:
                        dcls += 1
                if ok and have_req and covered + dcov + rem[depth] < req_total:
                    ok = 0
            if not ok:
                continue
            din = 0
            if have_vset:
                din = <int>((vset_mask >> v) & 1)
                if vset_bound >= 0 and inset + din > vset_bound:
                    continue

            if depth == last:
                if (not have_req) or covered + dcov == req_total:
                    if total >= 18446744073709551614ULL:
                        err = 1
                        break
                    total += 1
                    if have_cls:
                        ehist[clscnt + dcls] += 1
                    if want_vhist:
                        vhist[inset + din] += 1
                    if have_sig:
                        if _sig_add(sig_keys, sig_vals,
                                    sig + (1ULL << (8 * part[v]))):
                            err = 2
                            break
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
                sig += 1ULL << (8 * part[v])
            depth += 1
            m = full & ~used & allow[depth]
            for i in range(ear_off[depth], ear_off[depth + 1]):
                m &= hadj[pos[ear_flat[i]]]
            cand[depth] = m

    if err == 1:
        raise OverflowError("injection count exceeded the 64-bit accumulator")
    if err == 2:
        raise RuntimeError("signature table overflow: more than 4096 distinct signatures")
    if err == 3:
        raise RuntimeError(f"search tree exceeded {max_nodes} nodes")

    e_list = [ehist[i] for i in range(e_total + 1)] if have_cls else None
    v_list = [vhist[i] for i in range(f + 1)] if want_vhist else None
    sig_out = None
    if have_sig:
        sig_out = {}
        for i in range(SIGSLOTS):
            if sig_keys[i] != 0:
                sig_out[sig_keys[i]] = sig_vals[i]
    return (int(total), e_list, v_list, sig_out)
