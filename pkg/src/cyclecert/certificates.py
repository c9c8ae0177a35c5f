"""Checkable certificates and their validators.

Every algorithm in this package that promises a short cycle hands back a
certificate that an independent validator can confirm against the input
alone.  Validators never trust the producer: they re-check arcs, vertex
distinctness, color distinctness, and the numeric bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph
from .families import Edge, RainbowInstance, normalize_edge

# Bound kinds a cycle certificate may carry.  The bound is a promise:
# a certificate validates only if its length is within the bound.
BOUND_TWO_PHI = "two-phi"                      # length <= 2 * phi(D)
BOUND_CEIL_N_PLUS_P = "ceil-n-plus-p-over-2"   # length <= ceil((n + p) / 2)
BOUND_EXACT_GIRTH = "exact-girth"              # length <= girth(D), i.e. attains it
BOUND_EXACT_LENGTH = "exact-length"            # bound is the cycle's own length

BOUND_KINDS = frozenset(
    {BOUND_TWO_PHI, BOUND_CEIL_N_PLUS_P, BOUND_EXACT_GIRTH, BOUND_EXACT_LENGTH}
)


@dataclass(frozen=True)
class CycleCertificate:
    """A directed cycle given by its vertex sequence, plus a length bound."""

    vertices: tuple[int, ...]
    bound: Fraction
    bound_kind: str

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class RainbowCycleCertificate:
    """A rainbow cycle as a sequence of (edge, color) steps.

    Consecutive edges share a vertex, the last edge closes on the first,
    all cycle vertices are distinct, and all colors are distinct.
    """

    steps: tuple[tuple[Edge, int], ...]

    @property
    def length(self) -> int:
        return len(self.steps)


def validate_cycle(d: Digraph, cert: CycleCertificate) -> bool:
    """True iff cert is a genuine directed cycle of d within its stated bound."""
    if cert.bound_kind not in BOUND_KINDS:
        return False
    vs = cert.vertices
    k = len(vs)
    if k < 2 or len(set(vs)) != k:
        return False
    if any(not 0 <= v < d.n for v in vs):
        return False
    if any(not d.has_arc(vs[i], vs[(i + 1) % k]) for i in range(k)):
        return False
    return Fraction(k) <= cert.bound


def _walk_vertices(steps: tuple[tuple[Edge, int], ...]) -> list[int] | None:
    """Vertex sequence [v0, .., v_{k-1}] of a closed edge walk, or None.

    steps[i] joins v_i to v_{i+1 mod k}.  Edges are unordered, so both
    orientations of the first edge are tried.
    """
    k = len(steps)
    if k == 0:
        return None
    first = steps[0][0]
    starts = [(first[0], first[1])]
    if first[0] != first[1]:
        starts.append((first[1], first[0]))
    for v0, v1 in starts:
        seq = [v0, v1]
        ok = True
        for e, _ in steps[1:]:
            cur = seq[-1]
            if e[0] == cur:
                seq.append(e[1])
            elif e[1] == cur:
                seq.append(e[0])
            else:
                ok = False
                break
        if ok and seq[-1] == v0:
            return seq[:-1]
    return None


def validate_rainbow_cycle(inst: RainbowInstance, cert: RainbowCycleCertificate) -> bool:
    """True iff cert is a rainbow cycle of inst.

    Rules: colors pairwise distinct; each edge belongs to the family of
    its color; the steps form a closed walk on distinct vertices.  A
    single loop edge is a legal length-1 cycle only on instances not of
    simple origin.  Two edges on the same vertex pair form a legal
    length-2 cycle when their colors differ.
    """
    k = cert.length
    if k == 0:
        return False
    colors = [c for _, c in cert.steps]
    if len(set(colors)) != k:
        return False
    for e, c in cert.steps:
        if not 0 <= c < inst.m:
            return False
        if normalize_edge(e) not in inst.families[c]:
            return False
    if k == 1:
        (e, _), = cert.steps
        return e[0] == e[1] and not inst.simple_origin
    if any(e[0] == e[1] for e, _ in cert.steps):
        return False
    if k == 2:
        (e1, _), (e2, _) = cert.steps
        return normalize_edge(e1) == normalize_edge(e2)
    seq = _walk_vertices(cert.steps)
    return seq is not None and len(set(seq)) == k
