"""Imprimitive wreath products and block-system embeddings.

A wreath product of an inner group on m points and an outer group on k
points acts on m*k points; the pair (delta, lam) is flattened to
lam*m + delta, so the canonical blocks are the k consecutive runs of m
points.  Base-group elements are stored as flat permutations, never as
function objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .permcore import (BlockSystem, PermGroup, Permutation,
                       reduce_generators)


@dataclass(frozen=True)
class WreathLabeling:
    """Index map between pairs (delta, lam) and flat points lam*m + delta."""

    inner_degree: int
    outer_degree: int

    def flat(self, delta: int, lam: int) -> int:
        if not (0 <= delta < self.inner_degree and 0 <= lam < self.outer_degree):
            raise ValueError("pair out of range")
        return lam * self.inner_degree + delta

    def pair(self, point: int) -> tuple[int, int]:
        if not 0 <= point < self.inner_degree * self.outer_degree:
            raise ValueError("point out of range")
        return point % self.inner_degree, point // self.inner_degree

    def canonical_blocks(self) -> BlockSystem:
        m, k = self.inner_degree, self.outer_degree
        return BlockSystem.from_blocks(
            m * k, [range(lam * m, (lam + 1) * m) for lam in range(k)])


def wreath_product(inner: PermGroup, outer: PermGroup) -> PermGroup:
    """The imprimitive wreath product, acting on inner.degree * outer.degree
    points: (delta, lam)^(g, h) = (delta^g(lam), lam^h).

    Generators: the inner generators acting in every copy, plus the outer
    generators permuting copies.
    """
    m, k = inner.degree, outer.degree
    lab = WreathLabeling(m, k)
    n = m * k
    gens = []
    for g in inner.generators:
        for lam in range(k):
            images = list(range(n))
            for delta in range(m):
                images[lab.flat(delta, lam)] = lab.flat(g(delta), lam)
            gens.append(Permutation(images))
    for h in outer.generators:
        images = list(range(n))
        for lam in range(k):
            for delta in range(m):
                images[lab.flat(delta, lam)] = lab.flat(delta, h(lam))
        gens.append(Permutation(images))
    return PermGroup(n, gens)


def base_group_element(lab: WreathLabeling, parts: list[Permutation]) -> Permutation:
    """The base-group element acting as parts[lam] in copy lam."""
    m, k = lab.inner_degree, lab.outer_degree
    images = list(range(m * k))
    for lam, g in enumerate(parts):
        for delta in range(m):
            images[lab.flat(delta, lam)] = lab.flat(g(delta), lam)
    return Permutation(images)


def top_group_element(lab: WreathLabeling, h: Permutation) -> Permutation:
    """The top-group element permuting the copies by h."""
    m, k = lab.inner_degree, lab.outer_degree
    images = list(range(m * k))
    for lam in range(k):
        for delta in range(m):
            images[lab.flat(delta, lam)] = lab.flat(delta, h(lam))
    return Permutation(images)


@dataclass
class Embedding:
    """A verified permutation embedding into a wreath product.

    ``f`` is the point bijection onto the wreath labeling, ``phi`` maps each
    generator to its image, and f(w^g) = f(w)^phi(g) holds for every point
    and generator when ``verified`` is True.
    """

    f: Permutation
    phi: dict
    target: PermGroup
    labeling: WreathLabeling
    inner: PermGroup
    outer: PermGroup
    verified: bool

    def as_text(self) -> str:
        lines = ["embedding report", f"verified {str(self.verified).lower()}"]
        lines.append("point bijection (1-indexed): " + " ".join(
            str(self.f(v) + 1) for v in range(self.f.degree)))
        for g, img in sorted(self.phi.items(), key=lambda kv: kv[0].images):
            lines.append(f"generator {g} -> {img}")
        return "\n".join(lines) + "\n"


def _block_transversal(group: PermGroup, bs: BlockSystem) -> list[Permutation]:
    """For each block, a group element mapping block 0 onto it (BFS order)."""
    k = len(bs.blocks)
    first = {blk[0] for blk in bs.blocks}
    reps: dict[int, Permutation] = {0: group.identity()}
    frontier = [0]
    while frontier:
        nxt = []
        for j in frontier:
            anchor = bs.blocks[j][0]
            for g in group.generators:
                tj = bs.block_of[g(anchor)]
                if tj not in reps:
                    reps[tj] = reps[j] * g
                    nxt.append(tj)
        frontier = nxt
    if len(reps) != k:
        raise ValueError("group is not transitive on the blocks")
    return [reps[j] for j in range(k)]


def embed_imprimitive(group: PermGroup, bs: BlockSystem) -> Embedding:
    """Embed a transitive imprimitive group into (block action on one
    block) wr (action on blocks), verifying the embedding relation."""
    if not group.is_invariant_partition(bs):
        raise ValueError("partition is not invariant under the group")
    if not group.is_transitive():
        raise ValueError("group must be transitive")
    block0 = bs.blocks[0]
    m = len(block0)
    k = len(bs.blocks)
    inner_act = group.action_on_block(block0)
    inner = inner_act.group
    outer = group.action_on_blocks(bs).group
    lab = WreathLabeling(m, k)
    trans = _block_transversal(group, bs)
    pos = {v: i for i, v in enumerate(block0)}

    def f_point(omega: int) -> int:
        j = bs.block_of[omega]
        delta = pos[trans[j].inverse()(omega)]
        return lab.flat(delta, j)

    f = Permutation([f_point(omega) for omega in range(group.degree)])
    phi = {}
    for g in group.generators:
        phi[g] = f.inverse() * g * f
    target = wreath_product(inner, outer)
    verified = all(
        f(g(omega)) == phi[g](f(omega))
        for g in group.generators for omega in range(group.degree))
    return Embedding(f=f, phi=phi, target=target, labeling=lab,
                     inner=inner, outer=outer, verified=verified)


@dataclass
class SandwichReport:
    """Outcome of checking (inner closure)^k <= G <= wreath target."""

    x_group: PermGroup            # X = closure of x under the block stabilizer
    x_order: int
    copies_in_group: bool         # every materialized copy generator is in G
    embedding_verified: bool
    images_in_target: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.copies_in_group and self.embedding_verified
                and self.images_in_target)


def verify_sandwich(group: PermGroup, bs: BlockSystem,
                    x: Permutation) -> SandwichReport:
    """Check the sandwich given an element supported inside one block.

    X is the closure of x under conjugation by the setwise stabilizer of
    that block; one copy of X per block is materialized via a block
    transversal, and every copy generator is tested for membership in the
    group.  The wreath embedding is verified independently.
    """
    supp = x.support()
    holders = {bs.block_of[v] for v in supp}
    if len(holders) != 1:
        raise ValueError("support must lie inside a single block")
    j0 = holders.pop()
    block = bs.blocks[j0]
    g_block = group.setwise_stabilizer(block)
    x_group = g_block.normal_closure(x)
    failures = []
    trans = _block_transversal(group, bs)
    t0_inv = trans[j0].inverse()
    copies_ok = True
    for j in range(len(bs.blocks)):
        mover = t0_inv * trans[j]       # maps block j0 onto block j
        for gen in x_group.generators:
            copy_gen = gen.conjugate(mover)
            if copy_gen not in group:
                copies_ok = False
                failures.append(("copy_not_in_group", j, copy_gen))
    emb = embed_imprimitive(group, bs)
    images_ok = all(emb.phi[g] in emb.target for g in group.generators)
    if not images_ok:
        failures.append(("image_outside_target",))
    return SandwichReport(
        x_group=x_group, x_order=x_group.order(),
        copies_in_group=copies_ok,
        embedding_verified=emb.verified,
        images_in_target=images_ok,
        failures=failures)
