"""Brute-force oracles.

Everything here computes exact answers by exhaustive search, with no
shortcuts shared with the constructive algorithms, so the two routes can
be compared.  Oracles enforce hard caps and refuse rather than truncate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .certificates import (
    BOUND_CEIL_N_PLUS_P,
    BOUND_EXACT_GIRTH,
    BOUND_EXACT_LENGTH,
    CycleCertificate,
    RainbowCycleCertificate,
)
from .digraph import Digraph, bits, is_sinkless
from .errors import (
    Acyclic,
    BoundViolation,
    GraphInputError,
    NotSinkless,
    ResourceCap,
    TheoremViolation,
)
from .families import RainbowInstance

CYCLE_CAP = 10_000_000
RAINBOW_VERTEX_CAP = 16


def _girth_masks(n: int, out: tuple[int, ...], inn: tuple[int, ...]) -> tuple[int, int] | None:
    """(girth, anchor vertex) by BFS from every vertex, or None if acyclic.

    The cycle through anchor s is a shortest s -> u path plus the arc
    u -> s.  A digon scan settles girth 2 instantly; longer searches
    prune layers that cannot beat the best girth found so far.
    """
    for u in range(n):
        if out[u] & inn[u]:
            return 2, u
    best_g = None
    best_s = -1
    for s in range(n):
        target = inn[s]
        if not target:
            continue
        frontier = out[s]
        seen = frontier
        dist = 1
        while frontier:
            if frontier & target:
                g = dist + 1
                if best_g is None or g < best_g:
                    best_g, best_s = g, s
                break
            if best_g is not None and dist + 2 >= best_g:
                break
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= frontier
            dist += 1
    if best_g is None:
        return None
    return best_g, best_s


def _shortest_cycle_through(
    n: int, out: tuple[int, ...], inn: tuple[int, ...], s: int
) -> list[int]:
    """The lexicographically earliest shortest cycle through s, as a vertex list."""
    target = inn[s]
    parent = [-1] * n
    frontier = [s]
    depth = 0
    seen = 1 << s
    while frontier:
        close = [w for w in frontier if (target >> w) & 1 and depth >= 1]
        if close:
            u = min(close)
            path = []
            while u != s:
                path.append(u)
                u = parent[u]
            path.append(s)
            path.reverse()
            return path
        nxt = []
        for w in frontier:
            m = out[w] & ~seen
            while m:
                low = m & -m
                v = low.bit_length() - 1
                if parent[v] == -1 and v != s:
                    parent[v] = w
                    nxt.append(v)
                seen |= low
                m ^= low
        frontier = sorted(nxt)
        depth += 1
    raise AssertionError("no cycle through anchor vertex")


def _rotate_min(vs: list[int]) -> tuple[int, ...]:
    i = vs.index(min(vs))
    return tuple(vs[i:] + vs[:i])


def girth_exact(d: Digraph) -> tuple[int | float, CycleCertificate | None]:
    """The exact girth with a witness cycle, or (inf, None) for acyclic digraphs."""
    hit = _girth_masks(d.n, d.out_masks, d.in_masks)
    if hit is None:
        return math.inf, None
    g, s = hit
    if g == 2:
        u = next(bits(d.out_masks[s] & d.in_masks[s]))
        vs = [s, u]
    else:
        vs = _shortest_cycle_through(d.n, d.out_masks, d.in_masks, s)
    cert = CycleCertificate(
        vertices=_rotate_min(vs), bound=Fraction(g), bound_kind=BOUND_EXACT_GIRTH
    )
    return g, cert


def _cycles_vertices(
    n: int, out: tuple[int, ...], max_length: int | None
) -> Iterator[list[int]]:
    """All simple directed cycles, as vertex lists starting at their minimum vertex.

    Anchored enumeration: cycles are found from their smallest vertex s,
    and the search never descends below s, so each cycle appears exactly
    once.  Deterministic order: ascending anchor, then lexicographic path.
    """
    limit = n if max_length is None else min(max_length, n)
    if limit < 2:
        return
    path: list[int] = []

    def dfs(s: int, w: int, used: int) -> Iterator[list[int]]:
        m = out[w]
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            if v == s and len(path) >= 2:
                yield list(path)
            elif v > s and not (used & low) and len(path) < limit:
                path.append(v)
                yield from dfs(s, v, used | low)
                path.pop()

    for s in range(n):
        path = [s]
        yield from dfs(s, s, 1 << s)


def enumerate_cycles(
    d: Digraph, max_length: int | None = None
) -> Iterator[CycleCertificate]:
    """Every simple directed cycle of d, up to max_length if given.

    Emits at most CYCLE_CAP cycles; one more raises ResourceCap.
    """
    count = 0
    for vs in _cycles_vertices(d.n, d.out_masks, max_length):
        count += 1
        if count > CYCLE_CAP:
            raise ResourceCap(f"more than {CYCLE_CAP} cycles")
        yield CycleCertificate(
            vertices=tuple(vs), bound=Fraction(len(vs)), bound_kind=BOUND_EXACT_LENGTH
        )


@dataclass(frozen=True)
class TwoCyclePair:
    """Two cycles (possibly the same one) minimizing vertex intersection."""

    c1: CycleCertificate
    c2: CycleCertificate
    intersection: tuple[int, ...]
    p: int

    @property
    def degenerate(self) -> bool:
        return self.c1 == self.c2


def _deg2_hypothesis(d: Digraph) -> bool:
    return d.n > 0 and all(1 <= deg <= 2 for deg in d.out_deg)


def two_cycles_min_intersection(d: Digraph) -> TwoCyclePair:
    """A pair of cycles with minimum vertex intersection.

    The pair may repeat one cycle (needed when d has a single cycle).
    Ties break toward the smaller combined length, then enumeration
    order.  On sink-less digraphs with all out-degrees in {1, 2}, an
    intersection above p + 1 (p = number of out-degree-1 vertices) is a
    TheoremViolation.
    """
    cycles: list[tuple[int, tuple[int, ...]]] = []
    for cert in enumerate_cycles(d):
        mask = 0
        for v in cert.vertices:
            mask |= 1 << v
        cycles.append((mask, cert.vertices))
    if not cycles:
        raise Acyclic("digraph has no directed cycle")
    best = None
    for i, (mi, vi) in enumerate(cycles):
        for j in range(i, len(cycles)):
            mj, vj = cycles[j]
            key = ((mi & mj).bit_count(), len(vi) + len(vj), i, j)
            if best is None or key < best:
                best = key
    isize, _, bi, bj = best
    p = sum(1 for deg in d.out_deg if deg == 1)
    if _deg2_hypothesis(d) and isize > p + 1:
        from .formats import format_digraph

        raise TheoremViolation(
            f"cycle pair intersection {isize} exceeds p + 1 = {p + 1} on:\n"
            + format_digraph(d)
        )
    mi, vi = cycles[bi]
    mj, vj = cycles[bj]
    inter = tuple(bits(mi & mj))
    mk = lambda vs: CycleCertificate(
        vertices=vs, bound=Fraction(len(vs)), bound_kind=BOUND_EXACT_LENGTH
    )
    return TwoCyclePair(c1=mk(vi), c2=mk(vj), intersection=inter, p=p)


def deg2_short_cycle(d: Digraph) -> CycleCertificate:
    """A cycle of length <= ceil((n + p) / 2) on digraphs with out-degrees in {1, 2}."""
    if d.n == 0 or any(deg == 0 for deg in d.out_deg):
        raise NotSinkless("requires every out-degree >= 1")
    if any(deg > 2 for deg in d.out_deg):
        raise GraphInputError("requires every out-degree <= 2")
    pair = two_cycles_min_intersection(d)
    short = pair.c1 if pair.c1.length <= pair.c2.length else pair.c2
    bound = Fraction((d.n + pair.p + 1) // 2)
    if short.length > bound:
        from .formats import format_digraph

        raise BoundViolation(
            f"short cycle length {short.length} exceeds ceil((n+p)/2) = {bound} on:\n"
            + format_digraph(d)
        )
    return CycleCertificate(
        vertices=short.vertices, bound=bound, bound_kind=BOUND_CEIL_N_PLUS_P
    )


def shortest_rainbow_cycle_exact(
    inst: RainbowInstance,
) -> tuple[int | float, RainbowCycleCertificate | None]:
    """The exact rainbow girth by iterative deepening, or (inf, None).

    Length 1 means a loop edge; length 2 means two edges on one vertex
    pair from two families; length >= 3 is a simple rainbow cycle found
    by depth-limited search from each anchor vertex.
    """
    if inst.n > RAINBOW_VERTEX_CAP:
        raise ResourceCap(f"rainbow search capped at {RAINBOW_VERTEX_CAP} vertices")
    for c, fam in enumerate(inst.families):
        for e in fam:
            if e[0] == e[1]:
                return 1, RainbowCycleCertificate(steps=((e, c),))
    first_color: dict[tuple[int, int], int] = {}
    for c, fam in enumerate(inst.families):
        for e in fam:
            if e[0] == e[1]:
                continue
            if e in first_color and first_color[e] != c:
                return 2, RainbowCycleCertificate(steps=((e, first_color[e]), (e, c)))
            first_color.setdefault(e, c)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(inst.n)]
    for c, fam in enumerate(inst.families):
        for u, v in fam:
            if u != v:
                adj[u].append((v, c))
                adj[v].append((u, c))
    for u in range(inst.n):
        adj[u] = sorted(set(adj[u]))

    def closing_color(w: int, s: int, used_colors: int) -> int | None:
        for v, c in adj[w]:
            if v == s and not (used_colors >> c) & 1:
                return c
        return None

    path: list[int] = []
    colors: list[int] = []

    def dfs(s: int, w: int, used_v: int, used_c: int, remaining: int) -> bool:
        if remaining == 0:
            if path[1] > path[-1]:
                return False
            c = closing_color(w, s, used_c)
            if c is None:
                return False
            colors.append(c)
            return True
        for v, c in adj[w]:
            if v > s and not (used_v >> v) & 1 and not (used_c >> c) & 1:
                path.append(v)
                colors.append(c)
                if dfs(s, v, used_v | (1 << v), used_c | (1 << c), remaining - 1):
                    return True
                path.pop()
                colors.pop()
        return False

    for length in range(3, inst.n + 1):
        for s in range(inst.n):
            path = [s]
            colors = []
            if dfs(s, s, 1 << s, 0, length - 1):
                steps = []
                for i in range(length):
                    u, v = path[i], path[(i + 1) % length]
                    steps.append(((min(u, v), max(u, v)), colors[i]))
                return length, RainbowCycleCertificate(steps=tuple(steps))
    return math.inf, None


def assert_all_size2_bound(inst: RainbowInstance) -> RainbowCycleCertificate:
    """Exact shortest rainbow cycle for an all-size-2 instance, asserted <= ceil(n/2).

    This is the base case the recursive construction leans on; a miss is
    a counterexample to a published bound and raises BoundViolation.
    """
    length, cert = shortest_rainbow_cycle_exact(inst)
    bound = (inst.n + 1) // 2
    if cert is None or length > bound:
        from .formats import format_rainbow

        raise BoundViolation(
            f"all-size-2 instance has rainbow girth {length} > ceil(n/2) = {bound} on:\n"
            + format_rainbow(inst)
        )
    return cert
