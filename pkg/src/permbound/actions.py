"""Orbits, block systems, primitivity and induced actions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .group import DEFAULT_ENUM_LIMIT, PermGroup
from .perm import Permutation, mul


class NotTransitiveError(ValueError):
    pass


def orbits(G: PermGroup) -> list[list[int]]:
    return G.orbits()


def is_transitive(G: PermGroup) -> bool:
    return G.is_transitive()


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> tuple[int, int] | None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra, rb


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``range(degree)`` into equal-size blocks, sorted by minimum."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...] = field(repr=False, compare=False)

    @classmethod
    def from_blocks(cls, degree: int, blocks: Iterable[Iterable[int]]) -> BlockSystem:
        bl = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0])
        block_of = [-1] * degree
        for i, b in enumerate(bl):
            for p in b:
                if block_of[p] != -1:
                    raise ValueError(f"point {p} lies in two blocks")
                block_of[p] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the domain")
        if len({len(b) for b in bl}) > 1:
            raise ValueError("blocks have unequal sizes")
        return cls(degree, tuple(bl), tuple(block_of))

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def is_trivial(self) -> bool:
        return self.block_size in (1, self.degree)

    def is_invariant(self, G: PermGroup) -> bool:
        for g in G.generators:
            for b in self.blocks:
                target = self.block_of[g.images[b[0]]]
                if any(self.block_of[g.images[p]] != target for p in b):
                    return False
        return True

    def block_containing(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_of[x]]

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def _finest_partition(G: PermGroup, x: int, y: int) -> BlockSystem:
    # Atkinson's closure: merge classes and propagate merges along generators.
    n = G.degree
    uf = _UnionFind(n)
    gens = [g.images for g in G.generators]
    queue = [uf.union(x, y)]
    while queue:
        a, b = queue.pop()
        for g in gens:
            merged = uf.union(g[a], g[b])
            if merged is not None:
                queue.append(merged)
    classes: dict[int, list[int]] = {}
    for p in range(n):
        classes.setdefault(uf.find(p), []).append(p)
    return BlockSystem.from_blocks(n, classes.values())


def _require_transitive(G: PermGroup) -> None:
    if not G.is_transitive():
        raise NotTransitiveError("group is not transitive")


def minimal_block_containing(G: PermGroup, x: int, y: int) -> list[int]:
    """Smallest block of imprimitivity containing both ``x`` and ``y``."""
    if x == y:
        raise ValueError("x and y must be distinct")
    _require_transitive(G)
    return list(_finest_partition(G, x, y).block_containing(x))


def is_primitive(G: PermGroup) -> bool:
    _require_transitive(G)
    if "primitive" not in G._memo:
        G._memo["primitive"] = all(
            _finest_partition(G, 0, y).block_size == G.degree for y in range(1, G.degree))
    return G._memo["primitive"]


def minimal_block_systems(G: PermGroup) -> list[BlockSystem]:
    """All block systems whose blocks are minimal nontrivial blocks (deduplicated)."""
    _require_transitive(G)
    n = G.degree
    if "min_systems" in G._memo:
        return list(G._memo["min_systems"])
    through0 = {y: _finest_partition(G, 0, y) for y in range(1, n)}
    found: dict[tuple, BlockSystem] = {}
    for y, sys in through0.items():
        b = sys.block_containing(0)
        if len(b) == n:
            continue
        if all(through0[z].block_containing(0) == b for z in b if z != 0):
            found.setdefault(sys.blocks, sys)
    result = sorted(found.values(), key=lambda s: (s.block_size, s.blocks))
    G._memo["min_systems"] = tuple(result)
    return result


def maximal_block_containing(G: PermGroup, x: int = 0) -> BlockSystem:
    """A block system of maximal proper blocks; its quotient action is primitive.

    The stabilizer of the block through ``x`` is a maximal subgroup containing G_x.
    """
    systems = minimal_block_systems(G)
    if not systems:
        raise ValueError("group is primitive")
    system = systems[0]
    quotient = block_action(G, system).image
    if is_primitive(quotient):
        return system
    upper = maximal_block_containing(quotient, system.block_of[x])
    return BlockSystem.from_blocks(
        G.degree, [[p for i in ub for p in system.blocks[i]] for ub in upper.blocks])


# -- induced actions ----------------------------------------------------------------


class InducedAction:
    """A homomorphism from ``source`` to a permutation group on ``size`` points.

    The image and kernel are computed from the graph of the action: the group
    generated by pairs (g, g^action) acting on the disjoint union of both domains.
    """

    def __init__(self, source: PermGroup, size: int, act: Callable[[tuple], tuple],
                 point_map: Sequence, *, kernel: PermGroup | None = None):
        self.source = source
        self.size = size
        self._act = act
        self.point_map = tuple(point_map)
        gen_images = [Permutation(act(g.images), check=False) for g in source.generators]
        self.image = PermGroup(gen_images, size)
        self._kernel = kernel
        self._graph: PermGroup | None = None

    def image_of(self, g: Permutation) -> Permutation:
        return Permutation(self._act(g.images), check=False)

    def _graph_group(self) -> PermGroup:
        if self._graph is None:
            n, m = self.source.degree, self.size
            gens = [Permutation(g.images + tuple(n + a for a in self._act(g.images)), check=False)
                    for g in self.source.generators]
            self._graph = PermGroup(gens, n + m, base=range(n, n + m))
        return self._graph

    @property
    def kernel(self) -> PermGroup:
        if self._kernel is None:
            n, m = self.source.degree, self.size
            tail = self._graph_group().pointwise_stabilizer(range(n, n + m))
            gens = [Permutation(s.images[:n], check=False) for s in tail.strong_generators()]
            self._kernel = PermGroup(gens, n)
        return self._kernel

    def lift(self, h: Permutation) -> Permutation:
        """Some source element whose image is ``h``."""
        graph = self._graph_group()
        n, m = self.source.degree, self.size
        r = h.images
        acc = tuple(range(n + m))
        for level in range(m):
            b = graph.base[level]
            beta = n + r[b - n]
            t = graph.transversal(level)
            if beta not in t:
                raise ValueError(f"{h} is not in the image of the action")
            u = t[beta].images
            u_act = tuple(u[n + i] - n for i in range(m))
            inv = [0] * m
            for i, a in enumerate(u_act):
                inv[a] = i
            r = mul(r, tuple(inv))
            acc = mul(u, acc)
        return Permutation(acc[:n], check=False)

    def preimage(self, H: PermGroup) -> PermGroup:
        gens = list(self.kernel.generators) + [self.lift(h) for h in H.generators]
        return PermGroup(gens, self.source.degree)


def block_action(G: PermGroup, B: BlockSystem) -> InducedAction:
    """Action of G on the blocks of ``B``; the kernel fixes every block setwise."""
    if B.degree != G.degree or not B.is_invariant(G):
        raise ValueError("not a block system of this group")
    block_of = B.block_of
    reps = [b[0] for b in B.blocks]

    def act(g: tuple) -> tuple:
        return tuple(block_of[g[r]] for r in reps)

    return InducedAction(G, B.num_blocks, act, B.blocks)


def restrict_to_invariant_set(G: PermGroup, S: Iterable[int]) -> InducedAction:
    """The group induced on an invariant set, re-indexed in increasing order."""
    pts = sorted(set(S))
    index = {p: i for i, p in enumerate(pts)}
    for g in G.generators:
        if any(g.images[p] not in index for p in pts):
            raise ValueError("set is not invariant under the group")

    def act(g: tuple) -> tuple:
        return tuple(index[g[p]] for p in pts)

    return InducedAction(G, len(pts), act, pts, kernel=G.pointwise_stabilizer(pts))


def coset_action(G: PermGroup, N: PermGroup) -> InducedAction:
    """Action of G on the right cosets of a subgroup N (kernel N when N is normal)."""
    if not N.is_subgroup_of(G):
        raise ValueError("not a subgroup")
    n = G.degree
    levels = [(N.base[i], sorted(N.transversal(i).items())) for i in range(len(N.base))]

    def canon(g: tuple) -> tuple:
        # lexicographically least base image over the coset Ng
        for _, trans in levels:
            best = None
            for beta, u in trans:
                if best is None or g[beta] < best[0]:
                    best = (g[beta], u)
            g = mul(best[1].images, g)
        return g

    reps = [canon(tuple(range(n)))]
    index = {reps[0]: 0}
    gens = [g.images for g in G.generators]
    for rep in reps:
        for s in gens:
            c = canon(mul(rep, s))
            if c not in index:
                index[c] = len(reps)
                reps.append(c)

    def act(g: tuple) -> tuple:
        return tuple(index[canon(mul(rep, g))] for rep in reps)

    return InducedAction(G, len(reps), act, [Permutation(r, check=False) for r in reps],
                         kernel=N if G.is_normal(N) else None)


def is_quasiprimitive(G: PermGroup, limit: int = DEFAULT_ENUM_LIMIT) -> bool:
    """Transitive with every minimal normal subgroup transitive."""
    from .structure import minimal_normal_subgroups

    _require_transitive(G)
    if G.degree == 1:
        return True
    return all(N.is_transitive() for N in minimal_normal_subgroups(G, limit=limit))
