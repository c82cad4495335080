"""Simple undirected graphs: constructions, products, quotients, and I/O.

Vertices are 0-indexed; adjacency is stored as one bitmask per vertex.
Product indexing is fixed so that identity (not merely isomorphism) tests
are possible: lexicographic products are indexed major on the second
factor (vertex = gamma*|VD| + delta), the fibre construction major on the
base vertex (vertex = alpha*m + i).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .permcore import PermGroup, Permutation


class Graph:
    """An undirected simple graph on {0, ..., n-1} with bitset adjacency."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise ValueError("adjacency length mismatch")
        for v, row in enumerate(adj):
            if row & (1 << v):
                raise ValueError("loops are not allowed")
            if row >> n:
                raise ValueError("adjacency bit out of range")
        for u in range(n):
            for v in range(u + 1, n):
                if bool(adj[u] & (1 << v)) != bool(adj[v] & (1 << u)):
                    raise ValueError("adjacency must be symmetric")
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n)
                for v in _bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [(~row & full) & ~(1 << v)
                              for v, row in enumerate(self.adj)])

    def with_edge_removed(self, u: int, v: int) -> "Graph":
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def relabel(self, perm: Permutation) -> "Graph":
        """Image of the graph under a vertex permutation (v -> perm(v))."""
        adj = [0] * self.n
        for u in range(self.n):
            for v in _bits(self.adj[u]):
                adj[perm(u)] |= 1 << perm(v)
        return Graph(self.n, adj)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        verts = tuple(sorted(vertices))
        pos = {v: i for i, v in enumerate(verts)}
        adj = [0] * len(verts)
        for v in verts:
            for w in _bits(self.adj[v]):
                if w in pos:
                    adj[pos[v]] |= 1 << pos[w]
        return Graph(len(verts), adj), verts

    def is_automorphism(self, perm: Permutation) -> bool:
        if perm.degree != self.n:
            return False
        return all(
            self.adj[perm(u)] == _apply_mask(self.adj[u], perm)
            for u in range(self.n)
        )

    def is_regular(self) -> bool:
        return len({self.degree(v) for v in range(self.n)}) <= 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _apply_mask(mask: int, perm: Permutation) -> int:
    out = 0
    for v in _bits(mask):
        out |= 1 << perm(v)
    return out


# ---------------------------------------------------------------------------
# pair partitions (perfect matchings of a vertex set)

@dataclass(frozen=True)
class PairPartition:
    """A partition of a vertex set into unordered pairs."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for pair in self.pairs:
            if len(pair) != 2 or pair[0] >= pair[1]:
                raise ValueError("pairs must be sorted 2-element tuples")
            seen.update(pair)
        if seen != set(range(self.n)) or 2 * len(self.pairs) != self.n:
            raise ValueError("pairs must partition the vertex set")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Iterable[int]]) -> "PairPartition":
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        return cls(n, norm)

    def partner(self, v: int) -> int:
        for a, b in self.pairs:
            if v == a:
                return b
            if v == b:
                return a
        raise KeyError(v)

    def contains_pair(self, u: int, v: int) -> bool:
        return tuple(sorted((u, v))) in self.pairs

    def is_preserved_by(self, perm: Permutation) -> bool:
        pairset = set(self.pairs)
        return all(tuple(sorted((perm(a), perm(b)))) in pairset
                   for a, b in self.pairs)


def alternate_matching(n: int) -> PairPartition:
    """Every second edge of the n-cycle: {0,1},{2,3},... (n even)."""
    if n % 2:
        raise ValueError("need an even number of vertices")
    return PairPartition.from_pairs(n, [(i, i + 1) for i in range(0, n, 2)])


def antipodal_matching(n: int) -> PairPartition:
    """Antipodal pairs {i, i+n/2} of the n-cycle (n even)."""
    if n % 2:
        raise ValueError("need an even number of vertices")
    h = n // 2
    return PairPartition.from_pairs(n, [(i, i + h) for i in range(h)])


# ---------------------------------------------------------------------------
# basic constructions

def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def canonical_connection_set(n: int, s: Iterable[int]) -> frozenset:
    """Normalize a circulant connection set into {1, ..., n//2}."""
    out = set()
    for d in s:
        d %= n
        if d == 0:
            raise ValueError("connection set may not contain 0 mod n")
        out.add(min(d, n - d))
    return frozenset(out)


def circulant_graph(n: int, s: Iterable[int]) -> Graph:
    conn = canonical_connection_set(n, s)
    return Graph.from_edges(
        n, [(i, (i + d) % n) for i in range(n) for d in conn])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def matching_graph(m: int) -> Graph:
    """m disjoint edges on 2m vertices (pairs {2i, 2i+1})."""
    return Graph.from_edges(2 * m, [(2 * i, 2 * i + 1) for i in range(m)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


# ---------------------------------------------------------------------------
# products and quotients

def lex_product(delta: Graph, theta: Graph) -> Graph:
    """Lexicographic product: blow each vertex of theta into a copy of delta.

    Vertex (delta-vertex d, theta-vertex g) gets index g*|VD| + d.
    (d1,g1) ~ (d2,g2) iff (g1 = g2 and d1 ~ d2) or g1 ~ g2.
    """
    nd = delta.n
    n = nd * theta.n
    edges = []
    for g in range(theta.n):
        base = g * nd
        for d1, d2 in delta.edges():
            edges.append((base + d1, base + d2))
    for g1, g2 in theta.edges():
        for d1 in range(nd):
            for d2 in range(nd):
                edges.append((g1 * nd + d1, g2 * nd + d2))
    return Graph.from_edges(n, edges)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Box product; vertex (v1, v2) gets index v2*|V1| + v1."""
    n1 = g1.n
    edges = []
    for v2 in range(g2.n):
        for a, b in g1.edges():
            edges.append((v2 * n1 + a, v2 * n1 + b))
    for a, b in g2.edges():
        for v1 in range(n1):
            edges.append((a * n1 + v1, b * n1 + v1))
    return Graph.from_edges(n1 * g2.n, edges)


def prism_graph(m: int) -> Graph:
    """K_m box K_2: two copies of K_m joined by a perfect matching."""
    return cartesian_product(complete_graph(m), complete_graph(2))


def quotient_graph(graph: Graph, partition: Sequence[Sequence[int]]) -> Graph:
    """Parts become vertices; adjacent iff some cross edge exists (no loops)."""
    parts = [tuple(sorted(p)) for p in partition]
    covered = sorted(v for p in parts for v in p)
    if covered != list(range(graph.n)):
        raise ValueError("partition must cover the vertex set exactly once")
    masks = [sum(1 << v for v in p) for p in parts]
    k = len(parts)
    edges = []
    for i in range(k):
        union_i = 0
        for v in parts[i]:
            union_i |= graph.adj[v]
        for j in range(i + 1, k):
            if union_i & masks[j]:
                edges.append((i, j))
    return Graph.from_edges(k, edges)


# ---------------------------------------------------------------------------
# the fibre construction Inf(lambda, kappa, Sigma, P, m)

@dataclass(frozen=True)
class InfParams:
    """Parameters of the fibre construction: two bits and a multiplicity."""

    lam: int
    kap: int
    m: int

    def __post_init__(self):
        if self.lam not in (0, 1) or self.kap not in (0, 1):
            raise ValueError("lambda and kappa must be bits")
        if self.m < 2:
            raise ValueError("multiplicity must be at least 2")


def inf_graph(params: InfParams, sigma: Graph, pairs: PairPartition) -> Graph:
    """Blow each vertex of sigma into a fibre of m vertices.

    Vertex (alpha, i) gets index alpha*m + i.  Adjacency:
      - fibres over non-paired sigma-edges are joined completely;
      - fibres over a pair get a matching (lam=1) or a complete join minus
        the matching (lam=0), regardless of sigma-adjacency of the pair;
      - each fibre is a clique iff kap=1.
    """
    if pairs.n != sigma.n:
        raise ValueError("pair partition must cover the sigma vertex set")
    m = params.m
    n = sigma.n * m
    edges = []
    for alpha in range(sigma.n):
        if params.kap == 1:
            for i, j in itertools.combinations(range(m), 2):
                edges.append((alpha * m + i, alpha * m + j))
    for alpha in range(sigma.n):
        for beta in range(alpha + 1, sigma.n):
            paired = pairs.contains_pair(alpha, beta)
            if paired:
                for i in range(m):
                    for j in range(m):
                        if (i == j) == (params.lam == 1):
                            edges.append((alpha * m + i, beta * m + j))
            elif sigma.has_edge(alpha, beta):
                for i in range(m):
                    for j in range(m):
                        edges.append((alpha * m + i, beta * m + j))
    return Graph.from_edges(n, edges)


def px_graph(r: int) -> Graph:
    """lex(2K_1, C_r): the doubled r-cycle."""
    return lex_product(empty_graph(2), cycle_graph(r))


def spx_graph(r: int) -> Graph:
    """Inf(1, 0, C_2r, every-second-edge matching, 2)."""
    return inf_graph(InfParams(1, 0, 2), cycle_graph(2 * r),
                     alternate_matching(2 * r))


# ---------------------------------------------------------------------------
# named construction dispatch (shared by the CLI)

def construction(name: str, params: dict) -> Graph:
    """Build a named family member; raises ValueError on bad input."""
    name = name.lower()
    if name == "complete":
        return complete_graph(params["n"])
    if name == "empty":
        return empty_graph(params["n"])
    if name == "cycle":
        return cycle_graph(params["n"])
    if name == "path":
        return path_graph(params["n"])
    if name == "circulant":
        return circulant_graph(params["n"], params["set"])
    if name == "complete_bipartite":
        return complete_bipartite(params["m"], params["m"])
    if name == "matching":
        return matching_graph(params["m"])
    if name == "prism":
        return prism_graph(params["m"])
    if name == "petersen":
        return petersen_graph()
    if name == "px":
        return px_graph(params["r"])
    if name == "spx":
        return spx_graph(params["r"])
    raise ValueError(f"unknown construction {name!r}")


# ---------------------------------------------------------------------------
# invariant graphs of a permutation group

def invariant_graphs_under(z: PermGroup, max_orbits: int = 20) -> list[Graph]:
    """One graph per union of orbits of the group on unordered vertex pairs."""
    n = z.degree
    orbit_of = {}
    orbits = []
    for pair in itertools.combinations(range(n), 2):
        if pair in orbit_of:
            continue
        orb = {pair}
        frontier = [pair]
        while frontier:
            nxt = []
            for (a, b) in frontier:
                for g in z.generators:
                    img = tuple(sorted((g(a), g(b))))
                    if img not in orb:
                        orb.add(img)
                        nxt.append(img)
            frontier = nxt
        for p in orb:
            orbit_of[p] = len(orbits)
        orbits.append(sorted(orb))
    if len(orbits) > max_orbits:
        raise ValueError(f"{len(orbits)} pair-orbits exceed cap {max_orbits}")
    out = []
    for subset in range(1 << len(orbits)):
        edges = []
        for i, orb in enumerate(orbits):
            if subset & (1 << i):
                edges.extend(orb)
        out.append(Graph.from_edges(n, edges))
    return out


# ---------------------------------------------------------------------------
# equitable refinement and isomorphism

def _refine_pass(graph: Graph, colors: list[int], key_ids: dict) -> list[int]:
    """One refinement pass: new color = (color, sorted neighbor colors).

    Keys are shared through key_ids so that two graphs refined against the
    same dict within one pass get comparable color ids.
    """
    new = []
    for v in range(graph.n):
        key = (colors[v], tuple(sorted(colors[w] for w in _bits(graph.adj[v]))))
        if key not in key_ids:
            key_ids[key] = len(key_ids)
        new.append(key_ids[key])
    return new


def _partition_of(colors: list[int]) -> frozenset:
    return frozenset(frozenset(vs) for vs in _color_cells(colors).values())


def _joint_refine(g1: Graph, c1: list[int],
                  g2: Graph, c2: list[int]) -> Optional[tuple[list[int], list[int]]]:
    """Refine both colorings in lockstep until both partitions stabilize.

    Returns None as soon as the color histograms diverge (no isomorphism
    can respect the colorings).
    """
    while True:
        key_ids: dict = {}
        n1 = _refine_pass(g1, c1, key_ids)
        n2 = _refine_pass(g2, c2, key_ids)
        if sorted(n1) != sorted(n2):
            return None
        if _partition_of(n1) == _partition_of(c1) and \
           _partition_of(n2) == _partition_of(c2):
            return n1, n2
        c1, c2 = n1, n2


def _color_cells(colors: list[int]) -> dict[int, list[int]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def are_isomorphic(g1: Graph, g2: Graph,
                   max_n: int = 64) -> Optional[Permutation]:
    """A vertex bijection taking g1 to g2, or None.

    Backtracking with iterated equitable refinement; branch on the lowest-
    index vertex of the largest non-singleton cell.
    """
    if g1.n != g2.n:
        return None
    if g1.n > max_n:
        raise ValueError(f"isomorphism cap exceeded: {g1.n} > {max_n}")
    if g1.num_edges() != g2.num_edges():
        return None
    return isomorphism_with_colors(g1, [0] * g1.n, g2, [0] * g2.n)


def isomorphism_with_colors(g1: Graph, c1_init: Sequence[int],
                            g2: Graph, c2_init: Sequence[int]) -> Optional[Permutation]:
    """Color-respecting isomorphism search (same engine, seeded colors)."""
    if g1.n != g2.n:
        return None
    n = g1.n
    # seed colors must share an id space
    base: dict = {}
    c1 = []
    for c in c1_init:
        base.setdefault(c, len(base))
        c1.append(base[c])
    c2 = []
    for c in c2_init:
        if c not in base:
            return None
        c2.append(base[c])

    def search(c1: list[int], c2: list[int]) -> Optional[list[int]]:
        refined = _joint_refine(g1, c1, g2, c2)
        if refined is None:
            return None
        c1, c2 = refined
        cells1, cells2 = _color_cells(c1), _color_cells(c2)
        if sorted(cells1) != sorted(cells2) or any(
                len(cells1[c]) != len(cells2[c]) for c in cells1):
            return None
        target = None
        for c, vs in sorted(cells1.items()):
            if len(vs) > 1 and (target is None or len(vs) > len(cells1[target])):
                target = c
        if target is None:
            mapping = [0] * n
            for c, vs in cells1.items():
                mapping[vs[0]] = cells2[c][0]
            perm = Permutation(mapping)
            return mapping if g1.relabel(perm) == g2 else None
        v = min(cells1[target])
        fresh = max(max(c1), max(c2)) + 1
        for w in cells2[target]:
            d1, d2 = list(c1), list(c2)
            d1[v] = fresh
            d2[w] = fresh
            found = search(d1, d2)
            if found is not None:
                return found
        return None

    found = search(c1, c2)
    return Permutation(found) if found is not None else None


# ---------------------------------------------------------------------------
# graph6 and edge-list I/O

def to_graph6(graph: Graph) -> str:
    n = graph.n
    if n <= 62:
        header = chr(n + 63)
    elif n <= 258047:
        header = chr(126) + "".join(
            chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    else:
        raise ValueError("graph too large for graph6")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if graph.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    chars = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(val + 63))
    return header + "".join(chars)


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise ValueError("empty graph6 string")
    data = [ord(c) - 63 for c in text]
    if any(d < 0 or d > 63 for d in data):
        raise ValueError("invalid graph6 character")
    if data[0] == 63:
        if len(data) < 4:
            raise ValueError("truncated graph6 header")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise ValueError("graph6 body length mismatch")
    bits = []
    for d in body:
        for shift in range(5, -1, -1):
            bits.append((d >> shift) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def to_edge_list(graph: Graph) -> str:
    """Edge-list text: 'n <count>' then one 1-indexed edge per line."""
    lines = [f"n {graph.n}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError("expected 'n <count>' header")
            n = int(parts[1])
            continue
        u, v = (int(tok) - 1 for tok in line.split())
        edges.append((u, v))
    if n is None:
        raise ValueError("empty edge list")
    return Graph.from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accept either graph6 (single token) or the edge-list format."""
    stripped = text.strip()
    if "\n" in stripped or stripped.startswith("n "):
        return from_edge_list(text)
    return from_graph6(stripped)
