"""Permutations and finitely generated permutation groups.

Points are 0-indexed internally; the text interchange format is 1-indexed.
The right-action convention is used throughout: ``i^(p*q) = (i^p)^q``,
i.e. ``p*q`` means "apply p first, then q".
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

# default cap on element enumeration, overridable via the environment
DEFAULT_CAP = int(os.environ.get("SMALLMOTION_CAP", 10**6))


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured element cap."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Permutation:
    """A bijection of {0, ..., n-1} stored as an image array."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images must be a bijection of 0..n-1")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 0-indexed disjoint cycles."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for i, a in enumerate(cyc):
                if a in seen:
                    raise ValueError("cycles are not disjoint")
                seen.add(a)
                images[a] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: apply self first, then other."""
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(other.images[i] for i in self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """Return g^-1 * self * g."""
        return g.inverse() * self * g

    def support(self) -> frozenset:
        return frozenset(i for i, img in enumerate(self.images) if img != i)

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = []
            p = start
            while not seen[p]:
                seen[p] = True
                cyc.append(p)
                p = self.images[p]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // gcd(o, len(cyc))
        return o

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return format_cycles(self)


def classify_element(p: Permutation):
    """Classify p as one of identity / transposition / p_cycle / two_two / other.

    Returns (kind, param) where param is the cycle length for "p_cycle"
    and None otherwise.  A 2-cycle is reported as "transposition"; "p_cycle"
    means a single cycle of odd prime length with all other points fixed.
    "two_two" is an order-2 element moving exactly 4 points (a product of
    two disjoint transpositions).
    """
    ct = p.cycle_type()
    if not ct:
        return ("identity", None)
    if ct == (2,):
        return ("transposition", None)
    if ct == (2, 2):
        return ("two_two", None)
    if len(ct) == 1 and _is_prime(ct[0]):
        return ("p_cycle", ct[0])
    return ("other", None)


def is_p_cycle(p: Permutation, length: int) -> bool:
    """True iff p is a single cycle of the given prime length (2-cycles count)."""
    return p.cycle_type() == (length,) and _is_prime(length)


def is_two_two(p: Permutation) -> bool:
    return p.cycle_type() == (2, 2)


# ---------------------------------------------------------------------------
# cycle-notation text format (1-indexed for I/O)

def format_cycles(p: Permutation) -> str:
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(v + 1) for v in c) + ")" for c in cycs)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-indexed disjoint-cycle notation like ``(1,2)(3,4)``."""
    text = text.strip()
    if text in ("()", "", "id", "e"):
        return Permutation.identity(degree)
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad cycle notation: {text!r}")
    cycles = []
    for chunk in text[1:-1].split(")("):
        pts = [int(tok) - 1 for tok in chunk.replace(",", " ").split()]
        if any(v < 0 or v >= degree for v in pts):
            raise ValueError(f"point out of range in {text!r}")
        cycles.append(pts)
    return Permutation.from_cycles(degree, cycles)


def parse_group(text: str) -> "PermGroup":
    """Parse the group text format.

    First non-comment line is ``degree n``; each further line is one
    generator in 1-indexed disjoint-cycle notation.  Blank lines and
    ``#`` comments are ignored.
    """
    degree = None
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise ValueError("expected 'degree n' header")
            degree = int(parts[1])
            if degree < 0:
                raise ValueError("degree must be nonnegative")
            continue
        gens.append(parse_cycles(line, degree))
    if degree is None:
        raise ValueError("empty group description")
    return PermGroup(degree, gens)


def format_group(g: "PermGroup") -> str:
    lines = [f"degree {g.degree}"]
    lines.extend(format_cycles(p) for p in g.generators)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# stabilizer chain (deterministic Schreier-Sims, base 0,1,2,... by default)

class StabilizerChain:
    """Base and strong generators for a permutation group.

    ``_gens[l]`` holds the strong generators that fix base[0..l-1] pointwise
    and move base[l]; the level-l stabilizer is generated by the union of
    ``_gens[l:]``.  The base extends through ``base_order`` (0, 1, 2, ...
    unless an adapted order is requested).
    """

    def __init__(self, degree: int, generators: Sequence[Permutation],
                 base_order: Optional[Sequence[int]] = None):
        self.degree = degree
        self._base_order = list(base_order) if base_order is not None else list(range(degree))
        self.base: list[int] = []
        self._gens: list[list[Permutation]] = []
        self._transversal: list[dict[int, Permutation]] = []
        if base_order is not None and degree > 0:
            # an adapted order pins its first point as the first base point,
            # even when some generators fix it (point-stabilizer chains
            # rely on base[0] being exactly that point)
            self.base.append(self._base_order[0])
            self._gens.append([])
            self._transversal.append({})
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity():
                self._insert(g)
        self._schreier_sims()

    def _insert(self, g: Permutation) -> int:
        """File g at the level equal to the base prefix it fixes."""
        lvl = 0
        while lvl < len(self.base) and g(self.base[lvl]) == self.base[lvl]:
            lvl += 1
        if lvl == len(self.base):
            for b in self._base_order:
                if g(b) != b:
                    self.base.append(b)
                    break
            self._gens.append([])
            self._transversal.append({})
        self._gens[lvl].append(g)
        return lvl

    def _level_gens(self, level: int) -> list[Permutation]:
        return [g for lvl in range(level, len(self._gens)) for g in self._gens[lvl]]

    def _recompute_transversal(self, level: int) -> None:
        b = self.base[level]
        gens = self._level_gens(level)
        trans = {b: Permutation.identity(self.degree)}
        frontier = [b]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = s(x)
                    if y not in trans:
                        trans[y] = trans[x] * s
                        nxt.append(y)
            frontier = nxt
        self._transversal[level] = trans

    def _strip(self, g: Permutation, level: int) -> tuple[Permutation, int]:
        for i in range(level, len(self.base)):
            x = g(self.base[i])
            t = self._transversal[i].get(x)
            if t is None:
                return g, i
            g = g * t.inverse()
        return g, len(self.base)

    def _schreier_sims(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            self._recompute_transversal(i)
            gens = self._level_gens(i)
            trans = self._transversal[i]
            new_level = None
            for x in sorted(trans):
                tx = trans[x]
                for s in gens:
                    schreier = tx * s * trans[s(x)].inverse()
                    residue, _ = self._strip(schreier, i + 1)
                    if not residue.is_identity():
                        new_level = self._insert(residue)
                        break
                if new_level is not None:
                    break
            if new_level is None:
                i -= 1
            else:
                i = new_level

    def order(self) -> int:
        n = 1
        for trans in self._transversal:
            n *= len(trans)
        return n

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._strip(g, 0)
        return residue.is_identity()

    def elements(self, cap: Optional[int] = None) -> Iterator[Permutation]:
        """All group elements, in a deterministic order."""
        if cap is not None and self.order() > cap:
            raise CapExceededError(f"group order {self.order()} exceeds cap {cap}")
        levels = [
            [trans[x] for x in sorted(trans)] for trans in self._transversal
        ]
        ident = Permutation.identity(self.degree)
        if not levels:
            yield ident
            return
        for combo in itertools.product(*reversed(levels)):
            g = ident
            for t in combo:
                g = g * t
            yield g


# ---------------------------------------------------------------------------
# block systems

@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant partition into parts of equal size >= 2."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...] = field(repr=False, compare=False, default=())

    def __post_init__(self):
        seen = set()
        sizes = set()
        for blk in self.blocks:
            sizes.add(len(blk))
            seen.update(blk)
        if seen != set(range(self.degree)):
            raise ValueError("blocks must partition the point set")
        if len(seen) != sum(len(b) for b in self.blocks):
            raise ValueError("blocks must be disjoint")
        if len(sizes) != 1 or sizes.pop() < 2:
            raise ValueError("blocks must have uniform size >= 2")
        index = [0] * self.degree
        for i, blk in enumerate(self.blocks):
            for v in blk:
                index[v] = i
        object.__setattr__(self, "block_of", tuple(index))

    @classmethod
    def from_blocks(cls, degree: int, blocks: Iterable[Iterable[int]]) -> "BlockSystem":
        norm = tuple(sorted(tuple(sorted(b)) for b in blocks))
        return cls(degree, norm)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass
class InducedAction:
    """An induced permutation action together with its re-indexing map.

    ``index_map[i]`` is the original label of new point i (for actions on a
    block) or the block with new index i (for actions on a block system).
    ``kernel`` generates the kernel of the restriction, when computed.
    """

    group: "PermGroup"
    index_map: tuple
    kernel: Optional["PermGroup"] = None


class PermGroup:
    """A finitely generated permutation group on {0, ..., degree-1}."""

    def __init__(self, degree: int, generators: Iterable[Permutation],
                 cap: int = DEFAULT_CAP):
        self.degree = degree
        self.generators = tuple(g for g in generators if not g.is_identity())
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.cap = cap
        self._chain: Optional[StabilizerChain] = None

    # -- chain plumbing ---------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.generators)
        return self._chain

    def chain_with_base(self, base_order: Sequence[int]) -> StabilizerChain:
        return StabilizerChain(self.degree, self.generators, base_order)

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def elements(self, cap: Optional[int] = None) -> Iterator[Permutation]:
        return self.chain.elements(self.cap if cap is None else cap)

    def is_trivial(self) -> bool:
        return not self.generators

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- orbits and transitivity -----------------------------------------

    def orbit(self, point: int) -> frozenset:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def orbits(self) -> list[frozenset]:
        remaining = set(range(self.degree))
        out = []
        while remaining:
            o = self.orbit(min(remaining))
            out.append(o)
            remaining -= o
        return out

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def transporter(self, a: int, b: int) -> Optional[Permutation]:
        """Some group element mapping a to b (BFS, deterministic), or None."""
        if a == b:
            return self.identity()
        reps = {a: self.identity()}
        frontier = [a]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in reps:
                        reps[y] = reps[x] * g
                        if y == b:
                            return reps[y]
                        nxt.append(y)
            frontier = nxt
        return None

    # -- blocks -----------------------------------------------------------

    def minimal_block_containing(self, alpha: int, beta: int) -> frozenset:
        """Smallest block containing {alpha, beta}; whole set iff no proper one."""
        return self.minimal_block_spanning((alpha, beta))

    def minimal_block_spanning(self, points: Iterable[int]) -> frozenset:
        """Smallest block containing the given points (whole set if none)."""
        if not self.is_transitive():
            raise ValueError("group is not transitive")
        pts = sorted(set(points))
        if not pts:
            raise ValueError("need at least one point")
        parent = list(range(self.degree))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[max(ra, rb)] = min(ra, rb)
            return True

        for p in pts[1:]:
            union(pts[0], p)
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                anchor = {}
                for v in range(self.degree):
                    c = find(v)
                    if c in anchor:
                        if union(g(anchor[c]), g(v)):
                            changed = True
                    else:
                        anchor[c] = v
        root = find(pts[0])
        return frozenset(v for v in range(self.degree) if find(v) == root)

    def block_systems(self) -> list[BlockSystem]:
        """All nontrivial block systems of a transitive group.

        The blocks containing 0 form a lattice closed under joins; they are
        reached by closing the minimal blocks {0, beta} under pairwise joins.
        Systems are sorted by block size, then by their block lists.
        """
        if not self.is_transitive():
            raise ValueError("group is not transitive")
        blocks = set()
        for beta in range(1, self.degree):
            b = self.minimal_block_containing(0, beta)
            if 1 < len(b) < self.degree:
                blocks.add(b)
        frontier = set(blocks)
        while frontier:
            new = set()
            for b1 in frontier:
                for b2 in blocks:
                    if b1 <= b2 or b2 <= b1:
                        continue
                    j = self.minimal_block_spanning(b1 | b2)
                    if len(j) < self.degree and j not in blocks:
                        new.add(j)
            blocks |= new
            frontier = new
        systems = [self.block_system_from(b) for b in blocks]
        uniq = {s.blocks: s for s in systems}
        return sorted(uniq.values(), key=lambda s: (len(s.blocks[0]), s.blocks))

    def minimal_block_system(self) -> Optional[BlockSystem]:
        """A system of minimal blocks, or None iff the group is primitive.

        Deterministic: seeds {0, beta} are scanned for beta = 1, 2, ... and
        the first proper minimal block found wins.
        """
        if not self.is_transitive():
            raise ValueError("group is not transitive")
        for beta in range(1, self.degree):
            block = self.minimal_block_containing(0, beta)
            if len(block) < self.degree:
                return self.block_system_from(block)
        return None

    def block_system_from(self, block: Iterable[int]) -> BlockSystem:
        """The orbit of the given block under the group, as a block system."""
        start = tuple(sorted(block))
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for blk in frontier:
                for g in self.generators:
                    img = tuple(sorted(g(v) for v in blk))
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return BlockSystem.from_blocks(self.degree, seen)

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            raise ValueError("primitivity requires transitivity")
        return self.minimal_block_system() is None

    def is_invariant_partition(self, bs: BlockSystem) -> bool:
        blocks = set(bs.blocks)
        return all(
            tuple(sorted(g(v) for v in blk)) in blocks
            for g in self.generators for blk in bs.blocks
        )

    # -- induced actions and stabilizers ---------------------------------

    def action_on_blocks(self, bs: BlockSystem) -> InducedAction:
        """The action of the group on the blocks of a block system."""
        if not self.is_invariant_partition(bs):
            raise ValueError("partition is not invariant")
        k = len(bs.blocks)
        gens = []
        for g in self.generators:
            images = [bs.block_of[g(blk[0])] for blk in bs.blocks]
            gens.append(Permutation(images))
        group = PermGroup(k, gens, cap=self.cap)
        return InducedAction(group=group, index_map=bs.blocks)

    def action_on_block(self, block: Iterable[int],
                        with_kernel: bool = False) -> InducedAction:
        """The setwise stabilizer of the block, restricted to the block."""
        blk = tuple(sorted(block))
        setwise, pointwise = self.stabilizers(blk)
        pos = {v: i for i, v in enumerate(blk)}
        gens = []
        for g in setwise.generators:
            gens.append(Permutation([pos[g(v)] for v in blk]))
        group = PermGroup(len(blk), gens, cap=self.cap)
        kernel = pointwise if with_kernel else None
        return InducedAction(group=group, index_map=blk, kernel=kernel)

    def induced_action(self, domain) -> InducedAction:
        """Induced action on a block system, or of a block's setwise stabilizer."""
        if isinstance(domain, BlockSystem):
            return self.action_on_blocks(domain)
        return self.action_on_block(domain, with_kernel=True)

    def stabilizers(self, points: Iterable[int]) -> tuple["PermGroup", "PermGroup"]:
        """(setwise, pointwise) stabilizer of the point set.

        The pointwise stabilizer comes from iterated one-point stabilizers on
        the chain; the setwise stabilizer by exhaustive scan under the cap.
        """
        return self.setwise_stabilizer(points), self.pointwise_stabilizer(points)

    def setwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        ptset = set(points)
        elems = [g for g in self.elements()
                 if {g(v) for v in ptset} == ptset]
        return PermGroup(self.degree, reduce_generators(self.degree, elems),
                         cap=self.cap)

    def point_stabilizer(self, point: int) -> "PermGroup":
        """Stabilizer of a single point, via Schreier generators on a chain."""
        if all(g(point) == point for g in self.generators):
            return self
        base_order = [point] + [v for v in range(self.degree) if v != point]
        chain = self.chain_with_base(base_order)
        gens = [g for lvl in range(1, len(chain.base))
                for g in chain._gens[lvl]]
        gens = reduce_generators(self.degree, gens)
        return PermGroup(self.degree, gens, cap=self.cap)

    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        h = self
        for p in sorted(set(points)):
            h = h.point_stabilizer(p)
        return h

    # -- closures and minimal degree -------------------------------------

    def normal_closure(self, x: Permutation) -> "PermGroup":
        """The subgroup generated by all conjugates of x under the group."""
        if x.degree != self.degree:
            raise ValueError("degree mismatch")
        gens: list[Permutation] = []
        sub = StabilizerChain(self.degree, [])
        queue = [x]
        while queue:
            h = queue.pop(0)
            if sub.contains(h):
                continue
            gens.append(h)
            sub = StabilizerChain(self.degree, gens)
            for g in self.generators:
                queue.append(h.conjugate(g))
            # conjugates of the new generator by existing closure generators
            # are covered since the closure is normalized by G's generators.
        # fixed-point check: closure must be invariant under conjugation
        for g in self.generators:
            for h in gens:
                if not sub.contains(h.conjugate(g)):
                    # not yet closed; iterate once more
                    return self._normal_closure_fixpoint(gens)
        return PermGroup(self.degree, gens, cap=self.cap)

    def _normal_closure_fixpoint(self, seed: list[Permutation]) -> "PermGroup":
        gens = list(seed)
        sub = StabilizerChain(self.degree, gens)
        changed = True
        while changed:
            changed = False
            for h in list(gens):
                for g in self.generators:
                    c = h.conjugate(g)
                    if not sub.contains(c):
                        gens.append(c)
                        sub = StabilizerChain(self.degree, gens)
                        changed = True
        return PermGroup(self.degree, gens, cap=self.cap)

    def minimal_degree(self) -> int:
        """min |supp(x)| over non-identity x; error on the trivial group.

        The scan is restricted to elements of prime order, which is
        sufficient because supp(x^k) is contained in supp(x).
        """
        if self.is_trivial():
            raise ValueError("minimal degree of the trivial group is undefined")
        best = self.degree + 1
        for g in self.elements():
            if g.is_identity():
                continue
            if not _is_prime(g.order()):
                continue
            best = min(best, len(g.support()))
        return best

    def minimal_degree_full_scan(self) -> int:
        """Oracle variant: scan every non-identity element."""
        if self.is_trivial():
            raise ValueError("minimal degree of the trivial group is undefined")
        return min(len(g.support()) for g in self.elements()
                   if not g.is_identity())


def reduce_generators(degree: int, elements: Iterable[Permutation]) -> list[Permutation]:
    """Greedily pick a small generating set from a collection of elements."""
    gens: list[Permutation] = []
    chain = StabilizerChain(degree, [])
    for e in sorted(set(elements)):
        if e.is_identity() or chain.contains(e):
            continue
        gens.append(e)
        chain = StabilizerChain(degree, gens)
    return gens


def closure(degree: int, generators: Sequence[Permutation],
            cap: int = DEFAULT_CAP) -> set[Permutation]:
    """Exhaustive closure of a generating set (oracle for chain orders)."""
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in generators:
                e = h * g
                if e not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError(f"closure exceeds cap {cap}")
                    seen.add(e)
                    nxt.append(e)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# permutation isomorphism

def _transporter_counts(elements: Sequence[Permutation], degree: int):
    counts = [[0] * degree for _ in range(degree)]
    for g in elements:
        for a in range(degree):
            counts[a][g(a)] += 1
    return counts


def permutation_isomorphic(g1: PermGroup, g2: PermGroup,
                           max_degree: int = 16):
    """A point bijection f with f^-1 G1 f = G2, plus generator images.

    Returns (f, phi) where f is a Permutation and phi maps each generator x
    of g1 to f^-1 x f (an element of g2), so that f(w^x) = f(w)^phi(x) for
    all points w.  Returns None when no such bijection exists.
    """
    if g1.degree != g2.degree:
        return None
    n = g1.degree
    if n > max_degree:
        raise CapExceededError(f"degree {n} exceeds isomorphism cap {max_degree}")
    if g1.order() != g2.order():
        return None
    elems2 = set(g2.elements())
    elems1 = list(g1.elements())
    t1 = _transporter_counts(elems1, n)
    t2 = _transporter_counts(sorted(elems2), n)

    def extend(mapping: list, used: list):
        a = len(mapping)
        if a == n:
            f = Permutation(mapping)
            if all(x.conjugate(f) in elems2 for x in g1.generators):
                phi = {x: x.conjugate(f) for x in g1.generators}
                return f, phi
            return None
        for b in range(n):
            if used[b]:
                continue
            if t1[a][a] != t2[b][b]:
                continue
            ok = True
            for a2, b2 in enumerate(mapping):
                if t1[a][a2] != t2[b][b2] or t1[a2][a] != t2[b2][b]:
                    ok = False
                    break
            if not ok:
                continue
            mapping.append(b)
            used[b] = True
            found = extend(mapping, used)
            if found is not None:
                return found
            mapping.pop()
            used[b] = False
        return None

    return extend([], [False] * n)


def is_2_transitive(g: PermGroup) -> bool:
    """Transitive with a point stabilizer transitive on the remaining points."""
    if not g.is_transitive():
        return False
    if g.degree < 2:
        return False
    stab = g.point_stabilizer(0)
    orbs = [o for o in stab.orbits() if 0 not in o]
    return len(orbs) == 1 and len(orbs[0]) == g.degree - 1
