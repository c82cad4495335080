"""Graph automorphism groups, motion, twins, and vertex-transitivity.

The automorphism group is built as a stabilizer chain over the vertex
order 0, 1, 2, ...: at each level every candidate image of the next base
vertex is either reached by already-found generators or settled by a
complete individualization-refinement search, so the returned generators
generate the full group and the order is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graphcore import Graph, PairPartition, isomorphism_with_colors
from .permcore import (CapExceededError, PermGroup, Permutation,
                       _is_prime, reduce_generators)

GROUP_SCAN_LIMIT = 200_000
MAX_SUPPORT_SEARCH = 10


@dataclass
class AutResult:
    """Generators of the automorphism group plus search statistics."""

    group: PermGroup
    order: int
    stats: dict = field(default_factory=dict)


def _transporter(graph: Graph, fixed: int, v: int, w: int):
    """An automorphism fixing 0..fixed-1 pointwise and sending v to w."""
    colors = list(range(1, fixed + 1)) + [0] * (graph.n - fixed)
    src = list(colors)
    dst = list(colors)
    src[v] = -1
    dst[w] = -1
    return isomorphism_with_colors(graph, src, graph, dst)


def automorphism_group(graph: Graph, max_n: int = 64) -> AutResult:
    """Generators and exact order of the full automorphism group."""
    if graph.n > max_n:
        raise CapExceededError(f"graph size {graph.n} exceeds cap {max_n}")
    n = graph.n
    gens: list[Permutation] = []
    order = 1
    searches = 0
    for v in range(n):
        level_gens = [g for g in gens if all(g(i) == i for i in range(v))]
        orbit = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                for g in level_gens:
                    y = g(x)
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        for w in range(v + 1, n):
            if w in orbit:
                continue
            searches += 1
            t = _transporter(graph, v, v, w)
            if t is None:
                continue
            gens.append(t)
            level_gens.append(t)
            frontier = list(orbit)
            while frontier:
                nxt = []
                for x in frontier:
                    for g in level_gens:
                        y = g(x)
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
        order *= len(orbit)
    group = PermGroup(n, reduce_generators(n, gens))
    assert group.order() == order
    for g in group.generators:
        assert graph.is_automorphism(g)
    return AutResult(group=group, order=order,
                     stats={"transporter_searches": searches})


def automorphism_group_brute(graph: Graph, max_n: int = 8) -> PermGroup:
    """Oracle: the automorphism group by scanning all n! permutations."""
    if graph.n > max_n:
        raise CapExceededError(f"brute-force cap exceeded: {graph.n} > {max_n}")
    auts = [Permutation(images)
            for images in itertools.permutations(range(graph.n))
            if graph.is_automorphism(Permutation(images))]
    return PermGroup(graph.n, reduce_generators(graph.n, auts))


# ---------------------------------------------------------------------------
# twins

@dataclass(frozen=True)
class TwinInfo:
    """Vertex pairs whose transposition is an automorphism."""

    true_twins: tuple[tuple[int, int], ...]    # adjacent, equal closed nbhds
    false_twins: tuple[tuple[int, int], ...]   # non-adjacent, equal open nbhds

    def all_pairs(self) -> tuple[tuple[int, int], ...]:
        return self.true_twins + self.false_twins

    def __bool__(self) -> bool:
        return bool(self.true_twins or self.false_twins)


def find_twins(graph: Graph) -> TwinInfo:
    true_t = []
    false_t = []
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if graph.has_edge(u, v):
                if graph.adj[u] | (1 << u) == graph.adj[v] | (1 << v):
                    true_t.append((u, v))
            else:
                if graph.adj[u] & ~(1 << v) == graph.adj[v] & ~(1 << u):
                    false_t.append((u, v))
    return TwinInfo(tuple(true_t), tuple(false_t))


# ---------------------------------------------------------------------------
# motion

def _support_patterns(s: int) -> list[tuple[int, ...]]:
    """Permutations of 0..s-1 without fixed points (candidate support images)."""
    return [p for p in itertools.permutations(range(s))
            if all(p[i] != i for i in range(s))]


def _min_support_automorphism(graph: Graph, s: int):
    """An automorphism with support of size exactly s, or None."""
    n = graph.n
    patterns = _support_patterns(s)
    for supp in itertools.combinations(range(n), s):
        mask = sum(1 << v for v in supp)
        outside = [graph.adj[v] & ~mask for v in supp]
        for pat in patterns:
            ok = True
            for i in range(s):
                if outside[i] != outside[pat[i]]:
                    ok = False
                    break
            if not ok:
                continue
            for i in range(s):
                for j in range(i + 1, s):
                    if graph.has_edge(supp[i], supp[j]) != \
                       graph.has_edge(supp[pat[i]], supp[pat[j]]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                images = list(range(n))
                for i in range(s):
                    images[supp[i]] = supp[pat[i]]
                return Permutation(images)
    return None


def motion_witness(graph: Graph) -> tuple[int, Permutation]:
    """(motion, a minimal-support automorphism).

    Fast path: a twin pair decides motion 2 immediately.  Otherwise the
    automorphism group is scanned when small enough, else automorphisms of
    ascending support size are searched directly.
    """
    twins = find_twins(graph)
    if twins:
        a, b = twins.all_pairs()[0]
        return 2, Permutation.from_cycles(graph.n, [[a, b]])
    aut = automorphism_group(graph)
    if aut.order == 1:
        raise ValueError("trivial automorphism group: motion is undefined")
    if aut.order <= GROUP_SCAN_LIMIT:
        best = None
        for g in aut.group.elements(cap=GROUP_SCAN_LIMIT):
            if g.is_identity() or not _is_prime(g.order()):
                continue
            if best is None or len(g.support()) < len(best.support()):
                best = g
        return len(best.support()), best
    for s in range(3, min(graph.n, MAX_SUPPORT_SEARCH) + 1):
        g = _min_support_automorphism(graph, s)
        if g is not None:
            return s, g
    raise CapExceededError(
        f"motion exceeds support-search bound {MAX_SUPPORT_SEARCH} "
        f"on a group of order {aut.order}")


def motion(graph: Graph) -> int:
    return motion_witness(graph)[0]


# ---------------------------------------------------------------------------
# partition-preserving automorphisms and transitivity

def aut_preserving_partition(sigma: Graph, pairs: PairPartition,
                             cap: int = 100_000) -> PermGroup:
    """The subgroup of Aut(sigma) whose elements map pairs to pairs."""
    aut = automorphism_group(sigma)
    if aut.order > cap:
        raise CapExceededError(f"|Aut| = {aut.order} exceeds cap {cap}")
    keep = [g for g in aut.group.elements(cap=cap)
            if pairs.is_preserved_by(g)]
    return PermGroup(sigma.n, reduce_generators(sigma.n, keep))


def is_vertex_transitive(graph: Graph) -> bool:
    if graph.n == 0:
        return False
    if not graph.is_regular():
        return False
    aut = automorphism_group(graph)
    return len(aut.group.orbit(0)) == graph.n
