"""Recursive construction of short rainbow cycles.

Input: n edge families on n vertices, each of size 1 or 2, with p
families of size 1.  Output: a rainbow cycle of length at most
ceil((n + p) / 2), built constructively.

The recursion in brief.  Loops and vertex pairs shared by two families
give cycles of length 1 or 2 outright.  With p = 0 the exact oracle
settles the instance against the published all-size-2 bound ceil(n/2).
Otherwise a size-1 family seeds a greedy subgraph H: starting from the
seed edge, repeatedly adopt a size-2 family whose two edges join a new
vertex x to two distinct H-vertices.  When H is maximal (t adoptions),
contract V(H) to a single vertex h.  The quotient keeps m = n, loses
one size-1 family, and recursing on it yields a cycle that lifts back:
quotient edges pull back to their parent edges, and if the cycle passes
through h, the gap between the two pull-back endpoints inside H is
closed by a rainbow path of length at most floor(t/2) + 1 whose colors
are all internal to H.  The arithmetic floor(t/2) + ceil((n'+p')/2) <=
ceil((n+p)/2) holds at every level, so the lifted cycle meets the bound.

Certificates bubble up through the levels and are re-validated at each
one; the final certificate is checked against the original instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .certificates import RainbowCycleCertificate, validate_rainbow_cycle
from .errors import (
    BoundViolation,
    ClaimViolation,
    GraphInputError,
    SeedNotSingleton,
)
from .families import Edge, RainbowInstance, normalize_edge
from .oracles import assert_all_size2_bound

Collector = list[tuple[RainbowInstance, "GreedySubgraph"]]


@dataclass(frozen=True)
class GreedySubgraph:
    """The greedy subgraph H: a seed edge plus t two-edge attachments.

    Attachment i = (x, a, b, color) joins the new vertex x to the
    existing vertices a != b through the two edges of one size-2
    family.  Edge ids: 0 is the seed edge, attachment i contributes
    ids 1 + 2i (x-a) and 2 + 2i (x-b).  The (x-a, x-b) id pair at x is
    a forbidden turn: a path entering x by one may not leave by the
    other, because both edges carry the same color.
    """

    seed_color: int
    seed_edge: Edge
    attachments: tuple[tuple[int, int, int, int], ...]

    @property
    def t(self) -> int:
        return len(self.attachments)

    @property
    def vertices(self) -> frozenset[int]:
        vs = {self.seed_edge[0], self.seed_edge[1]}
        vs.update(x for x, _, _, _ in self.attachments)
        return frozenset(vs)

    @property
    def colors(self) -> frozenset[int]:
        cs = {self.seed_color}
        cs.update(c for _, _, _, c in self.attachments)
        return frozenset(cs)

    def edges(self) -> list[tuple[Edge, int]]:
        """All edges with colors, indexed by edge id."""
        out = [(self.seed_edge, self.seed_color)]
        for x, a, b, c in self.attachments:
            out.append((normalize_edge((x, a)), c))
            out.append((normalize_edge((x, b)), c))
        return out

    def forbidden_turns(self) -> dict[int, tuple[int, int]]:
        """Per attachment vertex x, the pair of same-color edge ids at x."""
        return {
            x: (1 + 2 * i, 2 + 2 * i)
            for i, (x, _, _, _) in enumerate(self.attachments)
        }


def build_greedy_subgraph(inst: RainbowInstance, seed_color: int) -> GreedySubgraph:
    """Grow H maximally from the given size-1 seed family.

    Preconditions checked: the seed family has size 1 and a non-loop
    edge, and the families are pairwise edge-disjoint.  Each round scans
    unused size-2 families by ascending color and adopts the first whose
    edges join one new vertex to two distinct H-vertices; the scan
    restarts after every adoption, so the result is maximal and
    deterministic.
    """
    if not 0 <= seed_color < inst.m:
        raise GraphInputError(f"seed color {seed_color} out of range")
    seed_fam = inst.families[seed_color]
    if len(seed_fam) != 1:
        raise SeedNotSingleton(f"family {seed_color} has size {len(seed_fam)}")
    seed_edge = seed_fam[0]
    if seed_edge[0] == seed_edge[1]:
        raise GraphInputError("seed edge is a loop")
    seen: set[Edge] = set()
    for fam in inst.families:
        for e in fam:
            if e in seen:
                raise GraphInputError(f"families are not edge-disjoint at {e}")
            seen.add(e)
    vertices = {seed_edge[0], seed_edge[1]}
    used = {seed_color}
    attachments: list[tuple[int, int, int, int]] = []
    while True:
        adopted = False
        for c, fam in enumerate(inst.families):
            if c in used or len(fam) != 2:
                continue
            e1, e2 = fam
            common = set(e1) & set(e2)
            if len(common) != 1:
                continue
            x = common.pop()
            a = e1[0] if e1[1] == x else e1[1]
            b = e2[0] if e2[1] == x else e2[1]
            if x in vertices or a not in vertices or b not in vertices or a == b:
                continue
            attachments.append((x, a, b, c))
            vertices.add(x)
            used.add(c)
            adopted = True
            break
        if not adopted:
            return GreedySubgraph(
                seed_color=seed_color,
                seed_edge=seed_edge,
                attachments=tuple(attachments),
            )


def _brute_shortest_rainbow_path(
    h: GreedySubgraph, u: int, v: int
) -> list[tuple[Edge, int]] | None:
    """Exact shortest simple rainbow path u -> v in H, by DFS over all paths."""
    edges = h.edges()
    incident: dict[int, list[int]] = {w: [] for w in h.vertices}
    for eid, ((a, b), _) in enumerate(edges):
        incident[a].append(eid)
        if a != b:
            incident[b].append(eid)
    best: list[int] | None = None

    def dfs(w: int, used_v: set[int], used_c: set[int], trail: list[int]) -> None:
        nonlocal best
        if w == v:
            if best is None or len(trail) < len(best):
                best = list(trail)
            return
        if best is not None and len(trail) + 1 >= len(best):
            return
        for eid in incident[w]:
            e, c = edges[eid]
            nxt = e[1] if e[0] == w else e[0]
            if nxt in used_v or c in used_c:
                continue
            used_v.add(nxt)
            used_c.add(c)
            trail.append(eid)
            dfs(nxt, used_v, used_c, trail)
            trail.pop()
            used_v.discard(nxt)
            used_c.discard(c)

    dfs(u, {u}, set(), [])
    if best is None:
        return None
    return [edges[eid] for eid in best]


def rainbow_path_in_subgraph(
    h: GreedySubgraph, u: int, v: int
) -> list[tuple[Edge, int]]:
    """A shortest rainbow path from u to v inside H, length <= floor(t/2) + 1.

    Within H, a path repeats a color only by using both edges of one
    attachment, i.e. by taking a forbidden turn at its vertex x.  So a
    shortest walk that never backtracks an edge and never takes a
    forbidden turn is already simple and rainbow; that is found by BFS
    over (vertex, entering edge) states.  The result is re-checked, with
    an exact search as fallback, and a length above floor(t/2) + 1
    raises ClaimViolation: the subgraph would refute the distance bound
    its construction guarantees.
    """
    if u not in h.vertices or v not in h.vertices:
        raise GraphInputError("path endpoints must lie in the subgraph")
    bound = h.t // 2 + 1
    if u == v:
        return []
    edges = h.edges()
    incident: dict[int, list[int]] = {w: [] for w in h.vertices}
    for eid, ((a, b), _) in enumerate(edges):
        incident[a].append(eid)
        if a != b:
            incident[b].append(eid)
    forbidden = h.forbidden_turns()
    start = (u, -1)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int]] = {start: (start, -1)}
    queue = [start]
    goal: tuple[int, int] | None = None
    while queue and goal is None:
        nxt_queue = []
        for state in queue:
            w, ein = state
            pair = forbidden.get(w)
            for eid in incident[w]:
                if eid == ein:
                    continue
                if pair is not None and ein in pair and eid in pair:
                    continue
                e, _ = edges[eid]
                nxt = e[1] if e[0] == w else e[0]
                ns = (nxt, eid)
                if ns in parent:
                    continue
                parent[ns] = (state, eid)
                if nxt == v:
                    goal = ns
                    break
                nxt_queue.append(ns)
            if goal is not None:
                break
        queue = nxt_queue
    path: list[tuple[Edge, int]] | None = None
    if goal is not None:
        ids = []
        st = goal
        while st != start:
            st, eid = parent[st]
            ids.append(eid)
        ids.reverse()
        path = [edges[eid] for eid in ids]
        seq = [u]
        for e, _ in path:
            seq.append(e[1] if e[0] == seq[-1] else e[0])
        colors = [c for _, c in path]
        if len(set(seq)) != len(seq) or len(set(colors)) != len(colors):
            path = None
    if path is None:
        path = _brute_shortest_rainbow_path(h, u, v)
    if path is None or len(path) > bound:
        got = "none" if path is None else str(len(path))
        raise ClaimViolation(
            f"no rainbow path of length <= floor(t/2)+1 = {bound} from {u} to {v} "
            f"(got {got}) in subgraph {h!r}"
        )
    return path


def all_pairs_rainbow_distances(h: GreedySubgraph) -> dict[tuple[int, int], int]:
    """Shortest rainbow-path length for every unordered vertex pair of H."""
    vs = sorted(h.vertices)
    out = {}
    for i, a in enumerate(vs):
        for b in vs[i + 1 :]:
            path = _brute_shortest_rainbow_path(h, a, b)
            if path is None:
                raise ClaimViolation(f"no rainbow path from {a} to {b} in {h!r}")
            out[(a, b)] = len(path)
    return out


@dataclass(frozen=True)
class ContractionMap:
    """Everything needed to undo one contraction of V(H) to h.

    old_to_new maps parent vertices to quotient vertices (V(H) maps to
    h); family_map maps quotient colors to parent colors; parent_edges
    aligns each quotient family's edge list, position by position, with
    the parent edges it came from.
    """

    old_to_new: tuple[int, ...]
    h: int
    family_map: tuple[int, ...]
    parent_edges: tuple[tuple[Edge, ...], ...]


def contract(
    inst: RainbowInstance, h: GreedySubgraph
) -> tuple[RainbowInstance, ContractionMap]:
    """Contract V(H) to one vertex and drop the families H consumed.

    Quotient vertices: parent vertices outside H keep their relative
    order as 0..n'-2, and the contracted vertex h gets index n'-1.
    Loops and repeated pairs created by contraction are kept; family
    sizes are preserved, so the quotient loses exactly one size-1
    family (the seed).
    """
    hv = h.vertices
    outside = [v for v in range(inst.n) if v not in hv]
    new_n = len(outside) + 1
    h_idx = new_n - 1
    old_to_new = [h_idx] * inst.n
    for i, v in enumerate(outside):
        old_to_new[v] = i
    used = h.colors
    fam_map = []
    new_fams: list[list[Edge]] = []
    aligned: list[tuple[Edge, ...]] = []
    for c, fam in enumerate(inst.families):
        if c in used:
            continue
        mapped = sorted(
            (normalize_edge((old_to_new[e[0]], old_to_new[e[1]])), e) for e in fam
        )
        fam_map.append(c)
        new_fams.append([q for q, _ in mapped])
        aligned.append(tuple(orig for _, orig in mapped))
    quotient = RainbowInstance(new_n, new_fams, simple_origin=False)
    cmap = ContractionMap(
        old_to_new=tuple(old_to_new),
        h=h_idx,
        family_map=tuple(fam_map),
        parent_edges=tuple(aligned),
    )
    return quotient, cmap


def shared_edge_cycle(inst: RainbowInstance) -> RainbowCycleCertificate | None:
    """A length-2 cycle from a non-loop vertex pair held by two families."""
    first: dict[Edge, int] = {}
    for c, fam in enumerate(inst.families):
        for e in fam:
            if e[0] == e[1]:
                continue
            if e in first and first[e] != c:
                return RainbowCycleCertificate(steps=((e, first[e]), (e, c)))
            first.setdefault(e, c)
    return None


def _first_loop(inst: RainbowInstance) -> tuple[Edge, int] | None:
    for c, fam in enumerate(inst.families):
        for e in fam:
            if e[0] == e[1]:
                return e, c
    return None


def _cycle_vertex_seq(cert: RainbowCycleCertificate) -> list[int]:
    """Vertex sequence v0..v_{k-1} with steps[i] joining v_i to v_{i+1 mod k}."""
    from .certificates import _walk_vertices

    k = cert.length
    if k == 1:
        return [cert.steps[0][0][0]]
    if k == 2:
        e = cert.steps[0][0]
        return [e[0], e[1]]
    seq = _walk_vertices(cert.steps)
    assert seq is not None
    return seq


def _parent_step(
    q_inst: RainbowInstance, cmap: ContractionMap, e: Edge, c: int
) -> tuple[Edge, int]:
    pos = q_inst.families[c].index(e)
    return cmap.parent_edges[c][pos], cmap.family_map[c]


def _lift(
    inst: RainbowInstance,
    h: GreedySubgraph,
    q_inst: RainbowInstance,
    cmap: ContractionMap,
    sub: RainbowCycleCertificate,
) -> RainbowCycleCertificate:
    """Pull a quotient cycle back through one contraction."""
    seq = _cycle_vertex_seq(sub)
    k = len(seq)
    steps = list(sub.steps)
    if cmap.h not in seq:
        lifted = [_parent_step(q_inst, cmap, e, c) for e, c in steps]
        return RainbowCycleCertificate(steps=tuple(lifted))
    i0 = seq.index(cmap.h)
    seq = seq[i0:] + seq[:i0]
    steps = steps[i0:] + steps[:i0]
    inv = {z: v for v, z in enumerate(cmap.old_to_new) if z != cmap.h}
    parents = [_parent_step(q_inst, cmap, e, c) for e, c in steps]
    hv = h.vertices
    if k == 1:
        (pe, pc), = parents
        u, v = pe
        lifted = [(pe, pc)]
    else:
        pe0 = parents[0][0]
        w1 = inv[seq[1]]
        u = pe0[0] if pe0[1] == w1 else pe0[1]
        pel = parents[-1][0]
        wl = inv[seq[-1]]
        v = pel[0] if pel[1] == wl else pel[1]
        lifted = list(parents)
    assert u in hv and v in hv
    if u != v:
        lifted.extend(rainbow_path_in_subgraph(h, v, u))
    return RainbowCycleCertificate(steps=tuple(lifted))


def _length_bound(inst: RainbowInstance) -> int:
    return (inst.n + inst.p + 1) // 2


def _find(inst: RainbowInstance, collect: Collector | None) -> RainbowCycleCertificate:
    assert inst.m == inst.n
    loop = _first_loop(inst)
    if loop is not None:
        cert = RainbowCycleCertificate(steps=(loop,))
    else:
        cert = shared_edge_cycle(inst)
        if cert is None:
            if inst.p == 0:
                cert = assert_all_size2_bound(inst)
            else:
                seed = min(
                    c for c, fam in enumerate(inst.families) if len(fam) == 1
                )
                h = build_greedy_subgraph(inst, seed)
                if collect is not None:
                    collect.append((inst, h))
                q_inst, cmap = contract(inst, h)
                # Per-level arithmetic behind the length bound.
                assert (
                    (q_inst.n + q_inst.p + 1) // 2 + h.t // 2 <= _length_bound(inst)
                )
                assert q_inst.p == inst.p - 1 and q_inst.m == q_inst.n
                sub = _find(q_inst, collect)
                cert = _lift(inst, h, q_inst, cmap, sub)
    if not validate_rainbow_cycle(inst, cert):
        from .formats import format_rainbow

        raise BoundViolation(
            "constructed cycle failed validation on:\n" + format_rainbow(inst)
        )
    return cert


def find_rainbow_cycle(
    inst: RainbowInstance, collect: Collector | None = None
) -> RainbowCycleCertificate:
    """A rainbow cycle of length <= ceil((n + p) / 2), certified.

    Requires a simple-origin instance with as many families as
    vertices.  collect, if given, receives every (instance, greedy
    subgraph) pair built along the recursion, outermost first.
    """
    if not inst.simple_origin:
        raise GraphInputError("top-level instances must be of simple origin")
    if inst.n == 0:
        raise GraphInputError("instance has no vertices")
    if inst.m != inst.n:
        raise GraphInputError(f"need exactly n = {inst.n} families, got {inst.m}")
    cert = _find(inst, collect)
    bound = _length_bound(inst)
    if cert.length > bound:
        from .formats import format_rainbow

        raise BoundViolation(
            f"cycle length {cert.length} exceeds ceil((n+p)/2) = {bound} on:\n"
            + format_rainbow(inst)
        )
    return cert
