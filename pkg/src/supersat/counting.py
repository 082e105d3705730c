"""Exact subgraph counting.

A copy of a pattern F in a host G is counted as an edge-preserving injection
of V(F) into V(G), divided by the automorphism count of F. For patterns with
no isolated vertices this is the same as counting edge subsets of G that form
a copy of F. Division is always checked: a remainder raises, it is never
truncated away.

Two interchangeable kernels do the walking. The compiled one (Cython, hosts
up to 64 vertices, one machine word per adjacency mask) is used when it was
built and the host fits; the pure-Python one handles everything else. Set
SUPERSAT_PURE=1 to force the pure kernel, SUPERSAT_THREADS=<k> to let the
compiled kernel split the root candidates over k threads. Results are
identical either way, including histogram and classification modes.
"""
from __future__ import annotations

import os
import time
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import _purecount
from .graphs import Edge, Graph, PATTERN_MAX

try:
    from . import _fastcount
except ImportError:  # pragma: no cover - depends on how the package was built
    _fastcount = None

COMPILED_AVAILABLE = _fastcount is not None
_COMPILED_HOST_MAX = 64


def pure_forced() -> bool:
    return os.environ.get("SUPERSAT_PURE", "") == "1"


def thread_count() -> int:
    raw = os.environ.get("SUPERSAT_THREADS", "1")
    k = int(raw)
    if k < 1:
        raise ValueError(f"SUPERSAT_THREADS must be positive, got {raw}")
    return k


def active_backend(host_n: int = 0) -> str:
    """Which kernel a count on a host of the given size would use."""
    if pure_forced() or not COMPILED_AVAILABLE or host_n > _COMPILED_HOST_MAX:
        return "pure"
    return "compiled"


def engine_info() -> dict:
    return {
        "compiled_available": COMPILED_AVAILABLE,
        "backend_default": active_backend(),
        "threads": thread_count(),
    }


# -- placement plans -------------------------------------------------------


@lru_cache(maxsize=512)
def _plan(pattern: Graph) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Vertex order, per-depth earlier neighbours, and remaining-edge counts.

    The order is connectivity greedy: start at a maximum-degree vertex, then
    always place the vertex with the most already-placed neighbours. That
    keeps candidate sets small near the root of the search tree.
    """
    f = pattern.n
    if f > PATTERN_MAX:
        raise ValueError(f"pattern too large: {f} > {PATTERN_MAX} vertices")
    placed: list[int] = []
    placed_set: set[int] = set()
    for _ in range(f):
        best = -1
        best_key = (-1, -1, 0)
        for v in range(f):
            if v in placed_set:
                continue
            into = sum(1 for w in placed if pattern.has_edge(v, w))
            key = (into, pattern.degree(v), -v)
            if key > best_key:
                best, best_key = v, key
        placed.append(best)
        placed_set.add(best)
    earlier = tuple(
        tuple(j for j in range(i) if pattern.has_edge(placed[i], placed[j]))
        for i in range(f)
    )
    e_total = pattern.edge_count
    cum = 0
    rem = []
    for i in range(f):
        cum += len(earlier[i])
        rem.append(e_total - cum)
    return tuple(placed), earlier, tuple(rem)


def _edge_masks(edges: Iterable[Edge] | None, n: int, host: Graph | None = None,
                label: str = "edge") -> tuple[list[int] | None, int]:
    if edges is None:
        return None, 0
    seen = set()
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"invalid {label} ({u},{v})")
        if host is not None and not host.has_edge(u, v):
            raise ValueError(f"{label} ({u},{v}) is not a host edge")
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks, len(seen)


def _vertex_mask(vertices: Iterable[int], n: int) -> int:
    mask = 0
    for v in vertices:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        mask |= 1 << v
    return mask


def _merge(results):
    total = 0
    ehist = None
    vhist = None
    sigs = None
    for t, e, v, s in results:
        total += t
        if e is not None:
            ehist = e if ehist is None else [a + b for a, b in zip(ehist, e)]
        if v is not None:
            vhist = v if vhist is None else [a + b for a, b in zip(vhist, v)]
        if s is not None:
            if sigs is None:
                sigs = dict(s)
            else:
                for k, c in s.items():
                    sigs[k] = sigs.get(k, 0) + c
    return total, ehist, vhist, sigs


def _run(
    pattern: Graph,
    host: Graph,
    required: Iterable[Edge] | None = None,
    forbidden: Iterable[Edge] | None = None,
    class_edges: Iterable[Edge] | None = None,
    vset: Iterable[int] | None = None,
    vset_bound: int = -1,
    want_vhist: bool = False,
    part_of: Sequence[int] | None = None,
    allowed: Sequence[Iterable[int]] | None = None,
    max_nodes: int = 0,
):
    f = pattern.n
    n = host.n
    order, earlier, rem = _plan(pattern)
    req_masks, req_total = _edge_masks(required, n, host, "required edge")
    forb_masks, _ = _edge_masks(forbidden, n, label="forbidden edge")
    if req_masks is not None and forb_masks is not None:
        # required wins on overlap so callers can forbid a blanket set and
        # carve the mandatory edges back out
        for v in range(n):
            forb_masks[v] &= ~req_masks[v]
    cls_masks, _ = _edge_masks(class_edges, n, host, "marked edge")
    vset_mask = _vertex_mask(vset, n) if vset is not None else 0
    if part_of is not None:
        part_of = list(part_of)
        if len(part_of) != n:
            raise ValueError("piece assignment must cover every host vertex")
        if part_of and (min(part_of) < 0 or max(part_of) > 7):
            raise ValueError("at most 8 host pieces are supported")
    allow_masks = None
    if allowed is not None:
        if len(allowed) != f:
            raise ValueError("need one allowed set per pattern vertex")
        # the kernel sees pattern vertices in placement order
        by_vertex = [_vertex_mask(vs, n) for vs in allowed]
        allow_masks = [by_vertex[order[d]] for d in range(f)]

    full = (1 << n) - 1
    args_tail = (
        req_masks, req_total, rem, forb_masks, cls_masks,
        vset_mask, vset_bound, want_vhist, part_of, allow_masks, max_nodes,
    )
    use_pure = pure_forced() or not COMPILED_AVAILABLE or n > _COMPILED_HOST_MAX
    if use_pure:
        return _purecount.run(f, earlier, list(host._adj), n, full, *args_tail)
    workers = thread_count()
    if workers == 1 or f == 0 or n < 2 * workers:
        return _fastcount.run(f, earlier, list(host._adj), n, full, *args_tail)
    # split the depth-0 candidates into contiguous chunks, one per worker;
    # every injection is counted under exactly one root image
    chunk = (n + workers - 1) // workers
    masks = []
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        masks.append(((1 << hi) - 1) ^ ((1 << lo) - 1))
    with ThreadPoolExecutor(max_workers=len(masks)) as pool:
        futures = [
            pool.submit(
                _fastcount.run, f, earlier, list(host._adj), n, m, *args_tail
            )
            for m in masks
        ]
        return _merge(fut.result() for fut in futures)


# -- public counting API ---------------------------------------------------


@lru_cache(maxsize=512)
def automorphism_count(pattern: Graph) -> int:
    """Size of the automorphism group, counted by the injection kernel."""
    total, _, _, _ = _run(pattern, pattern)
    return total


def count_injections(pattern: Graph, host: Graph) -> int:
    """Edge-preserving injections of the pattern into the host."""
    total, _, _, _ = _run(pattern, host)
    return total


def count_injections_restricted(
    pattern: Graph, host: Graph, allowed: Sequence[Iterable[int]]
) -> int:
    """Injections where pattern vertex v may only land in allowed[v].

    Not divided by automorphisms: a restriction is generally not invariant
    under the automorphism group, so callers decide what to divide by.
    """
    total, _, _, _ = _run(pattern, host, allowed=allowed)
    return total


def _to_copies(injections: int, aut: int, what: str = "count") -> int:
    if injections % aut:
        raise ArithmeticError(
            f"{what} {injections} not divisible by automorphism count {aut}"
        )
    return injections // aut


def count_copies(pattern: Graph, host: Graph) -> int:
    """Unlabeled copies of the pattern in the host."""
    return _to_copies(count_injections(pattern, host), automorphism_count(pattern))


def count_copies_with_required(
    pattern: Graph,
    host: Graph,
    required: Iterable[Edge],
    forbidden: Iterable[Edge] = (),
) -> int:
    """Copies whose edge image covers all required host edges and none of the
    forbidden ones. Required edges win when the two sets overlap."""
    total, _, _, _ = _run(pattern, host, required=required, forbidden=forbidden)
    return _to_copies(total, automorphism_count(pattern))


def count_copies_by_edge_usage(
    pattern: Graph, host: Graph, marked: Iterable[Edge]
) -> dict[int, int]:
    """Histogram of copies keyed by how many marked host edges they use."""
    aut = automorphism_count(pattern)
    _, ehist, _, _ = _run(pattern, host, class_edges=marked)
    out = {}
    for k, inj in enumerate(ehist):
        if inj:
            out[k] = _to_copies(inj, aut, f"bucket[{k} marked edges]")
    return out


def count_copies_by_contact(
    pattern: Graph, host: Graph, vertices: Iterable[int]
) -> dict[int, int]:
    """Histogram of copies keyed by image vertices inside the marked set."""
    aut = automorphism_count(pattern)
    _, _, vhist, _ = _run(pattern, host, vset=vertices, want_vhist=True)
    out = {}
    for k, inj in enumerate(vhist):
        if inj:
            out[k] = _to_copies(inj, aut, f"bucket[{k} marked vertices]")
    return out


def count_copies_with_max_contact(
    pattern: Graph, host: Graph, vertices: Iterable[int], max_inside: int
) -> int:
    """Copies with at most max_inside image vertices in the marked set.

    The bound prunes the search as soon as it is exceeded, so verifying that
    no copy avoids a small vertex set is much cheaper than a full count.
    """
    total, _, _, _ = _run(pattern, host, vset=vertices, vset_bound=max_inside)
    return _to_copies(total, automorphism_count(pattern))


@dataclass(frozen=True)
class IntersectionSignature:
    """Where each pattern piece lands: per piece, the host labels it touches
    with vertex counts, zero entries dropped."""

    placement: tuple[tuple[str, tuple[tuple[str, int], ...]], ...]

    def count(self, piece: str, label: str) -> int:
        for name, rows in self.placement:
            if name == piece:
                for lab, c in rows:
                    if lab == label:
                        return c
                return 0
        raise KeyError(piece)

    def labels(self, piece: str) -> tuple[str, ...]:
        for name, rows in self.placement:
            if name == piece:
                return tuple(lab for lab, _ in rows)
        raise KeyError(piece)

    def __str__(self) -> str:
        parts = []
        for name, rows in self.placement:
            inner = " ".join(f"{lab}={c}" for lab, c in rows)
            parts.append(f"{name}: {inner}")
        return "; ".join(parts)


def _piece_index(
    total: int, pieces: Mapping[str, Iterable[int]], what: str
) -> tuple[list[str], list[int]]:
    names = list(pieces)
    owner = [-1] * total
    for idx, name in enumerate(names):
        for v in pieces[name]:
            if not 0 <= v < total:
                raise ValueError(f"{what} piece {name!r}: vertex {v} out of range")
            if owner[v] != -1:
                raise ValueError(f"{what} vertex {v} appears in two pieces")
            owner[v] = idx
    if any(o == -1 for o in owner):
        missing = [v for v, o in enumerate(owner) if o == -1]
        raise ValueError(f"{what} pieces do not cover vertices {missing[:5]}")
    return names, owner


def _iter_injections(pattern: Graph, host: Graph):
    """Yield every edge-preserving injection as a pattern-indexed tuple.

    Python-speed enumeration: meant for classification at desk scale where
    the injection count is modest, not for bare counting.
    """
    f = pattern.n
    if f == 0:
        yield ()
        return
    if f > host.n:
        return
    order, earlier, _ = _plan(pattern)
    adj = [host.adjacency_mask(v) for v in range(host.n)]
    full = (1 << host.n) - 1
    ph = [0] * f

    def walk(d: int, used: int):
        if d == f:
            img = [0] * f
            for i in range(f):
                img[order[i]] = ph[i]
            yield tuple(img)
            return
        c = full & ~used
        for e in earlier[d]:
            c &= adj[ph[e]]
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            ph[d] = v
            yield from walk(d + 1, used | (1 << v))

    yield from walk(0, 0)


def _copy_key(pattern: Graph, img: tuple[int, ...]):
    """Identity of the copy an injection lands on: its edge image plus the
    placement set of isolated pattern vertices."""
    edges = frozenset(
        (img[u], img[v]) if img[u] < img[v] else (img[v], img[u])
        for u, v in pattern.edges()
    )
    isolated = frozenset(
        img[v] for v in range(pattern.n) if pattern.degree(v) == 0
    )
    return edges, isolated


def count_copies_classified(
    pattern: Graph,
    host: Graph,
    host_pieces: Mapping[str, Iterable[int]],
    pattern_pieces: Mapping[str, Iterable[int]] | None = None,
) -> dict[IntersectionSignature, int]:
    """Copies split by where each pattern piece lands among the host pieces.

    Host pieces must partition the host vertex set, at most 8 of them;
    pattern pieces, when given, must partition the pattern vertex set (a
    single piece covering everything otherwise). Buckets count copies and
    sum to the plain copy count. With several pattern pieces the split is
    only well-defined when injections onto the same copy agree about piece
    placement; a disagreement raises instead of misreporting.
    """
    host_names, host_owner = _piece_index(host.n, host_pieces, "host")
    if len(host_names) > 8:
        raise ValueError("at most 8 host pieces are supported")
    if pattern_pieces is None:
        pattern_pieces = {"F": range(pattern.n)}
    pat_names, pat_owner = _piece_index(pattern.n, pattern_pieces, "pattern")

    def build(matrix) -> IntersectionSignature:
        rows = []
        for pi, pname in enumerate(pat_names):
            entries = tuple(
                (host_names[hi], matrix[pi][hi])
                for hi in range(len(host_names))
                if matrix[pi][hi]
            )
            rows.append((pname, entries))
        return IntersectionSignature(placement=tuple(rows))

    if len(pat_names) == 1:
        # a single pattern piece: the kernel's packed per-host-piece counts
        # determine the signature, and buckets divide by Aut because the
        # signature only depends on the image
        aut = automorphism_count(pattern)
        _, _, _, sigs = _run(pattern, host, part_of=host_owner)
        out: dict[IntersectionSignature, int] = {}
        for packed, inj in (sigs or {}).items():
            matrix = [
                [packed >> (8 * hi) & 255 for hi in range(len(host_names))]
            ]
            key = build(matrix)
            out[key] = _to_copies(inj, aut, f"bucket[{key}]")
        return out

    by_copy: dict[object, IntersectionSignature] = {}
    for img in _iter_injections(pattern, host):
        matrix = [[0] * len(host_names) for _ in pat_names]
        for v, hv in enumerate(img):
            matrix[pat_owner[v]][host_owner[hv]] += 1
        sig = build(matrix)
        prev = by_copy.setdefault(_copy_key(pattern, img), sig)
        if prev != sig:
            raise ValueError(
                "piece placement is ambiguous: two injections onto one copy "
                "assign the pieces differently"
            )
    out: dict[IntersectionSignature, int] = {}
    for sig in by_copy.values():
        out[sig] = out.get(sig, 0) + 1
    return out


@dataclass
class CountReport:
    """One counting run, in the shape the command line serializes."""

    pattern_id: str
    host_id: str
    copies: int
    injections: int
    aut: int
    classification: dict[str, int] | None = None
    elapsed: float = 0.0

    def to_json_dict(self) -> dict:
        doc = {
            "schema": 1,
            "pattern": self.pattern_id,
            "host": self.host_id,
            "copies": str(self.copies),
            "injections": str(self.injections),
            "aut": str(self.aut),
            "elapsed_seconds": round(self.elapsed, 6),
            "backend": active_backend(),
        }
        if self.classification is not None:
            doc["classification"] = {
                k: str(v) for k, v in self.classification.items()
            }
        return doc


def count_report(
    pattern: Graph,
    host: Graph,
    pattern_id: str = "pattern",
    host_id: str = "host",
    host_pieces: Mapping[str, Iterable[int]] | None = None,
    pattern_pieces: Mapping[str, Iterable[int]] | None = None,
) -> CountReport:
    start = time.perf_counter()
    aut = automorphism_count(pattern)
    classification = None
    if host_pieces is None:
        inj = count_injections(pattern, host)
    else:
        buckets = count_copies_classified(
            pattern, host, host_pieces, pattern_pieces
        )
        classification = {
            str(sig): c for sig, c in sorted(
                buckets.items(), key=lambda kv: str(kv[0])
            )
        }
        inj = sum(buckets.values()) * aut
    return CountReport(
        pattern_id=pattern_id,
        host_id=host_id,
        copies=inj // aut,
        injections=inj,
        aut=aut,
        classification=classification,
        elapsed=time.perf_counter() - start,
    )
