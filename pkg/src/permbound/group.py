"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""
from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .perm import Permutation, PermutationError, invert, mul

DEFAULT_ENUM_LIMIT = 10**6


class ResourceLimitError(RuntimeError):
    """An operation would have to enumerate more elements than allowed."""


class _ChainBuilder:
    """Mutable base and strong generating set, completed by Sims' sifting loop.

    All permutations here are raw image tuples.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.n = degree
        self.id = tuple(range(degree))
        self.base: list[int] = []
        self.strong: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self.tinv: list[dict[int, tuple]] = []
        for b in base_prefix:
            self._append_base(b)

    def _append_base(self, b: int) -> None:
        self.base.append(b)
        self.strong.append([])
        self.trans.append({b: self.id})
        self.tinv.append({b: self.id})

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.base)):
            beta = g[self.base[i]]
            uinv = self.tinv[i].get(beta)
            if uinv is None:
                return g, i
            if beta != self.base[i]:
                g = mul(g, uinv)
        return g, len(self.base)

    def add(self, g: tuple) -> bool:
        """Add a generator; return False if it was already a member."""
        h, j = self.sift(g)
        if j == len(self.base) and h == self.id:
            return False
        self._insert(h, j, 0)
        self._complete(j)
        return True

    def _insert(self, h: tuple, j: int, lo: int) -> None:
        if j == len(self.base):
            self._append_base(next(p for p in range(self.n) if h[p] != p))
        for level in range(lo, j + 1):
            self.strong[level].append(h)
            self._extend_orbit(level, h)

    def _extend_orbit(self, level: int, new: tuple) -> None:
        trans, tinv, gens = self.trans[level], self.tinv[level], self.strong[level]
        queue = list(trans)
        # points already present only need the new generator applied
        frontier = []
        for beta in queue:
            gamma = new[beta]
            if gamma not in trans:
                u = mul(trans[beta], new)
                trans[gamma] = u
                tinv[gamma] = invert(u)
                frontier.append(gamma)
        while frontier:
            nxt = []
            for beta in frontier:
                u = trans[beta]
                for s in gens:
                    gamma = s[beta]
                    if gamma not in trans:
                        v = mul(u, s)
                        trans[gamma] = v
                        tinv[gamma] = invert(v)
                        nxt.append(gamma)
            frontier = nxt

    def _complete(self, i: int) -> None:
        while i >= 0:
            found = self._check_level(i)
            if found is None:
                i -= 1
                continue
            h, j = found
            self._insert(h, j, i + 1)
            i = j

    def _check_level(self, i: int):
        trans, tinv, ident = self.trans[i], self.tinv[i], self.id
        for beta, u in list(trans.items()):
            for s in list(self.strong[i]):
                sg = mul(mul(u, s), tinv[s[beta]])
                if sg == ident:
                    continue
                h, j = self.sift(sg, i + 1)
                if j < len(self.base) or h != ident:
                    return h, j
        return None


class PermGroup:
    """A permutation group on ``range(degree)``.

    Construction runs Schreier-Sims once; the group is immutable afterwards.
    Derived objects (stabilizers, base changes) are memoized per instance.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int, *,
                 base: Sequence[int] = (), _builder: _ChainBuilder | None = None,
                 _offset: int = 0):
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError(f"generator {g!r} is not a Permutation")
            if g.degree != degree:
                raise PermutationError(f"generator {g} has degree {g.degree}, expected {degree}")
        self._degree = degree
        self._generators = gens
        if _builder is None:
            if any(not 0 <= b < degree for b in base):
                raise ValueError(f"base point out of range for degree {degree}")
            _builder = _ChainBuilder(degree, base)
            for g in gens:
                _builder.add(g.images)
        self._b = _builder
        self._off = _offset
        self._order = 1
        for t in self._b.trans[_offset:]:
            self._order *= len(t)
        self._memo: dict = {}

    # -- basic data ----------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._generators

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(self._b.base[self._off:])

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def strong_generators(self) -> list[Permutation]:
        out, seen = [], set()
        for level in self._b.strong[self._off:]:
            for s in level:
                if s not in seen:
                    seen.add(s)
                    out.append(Permutation(s, check=False))
        return out

    def fundamental_orbits(self) -> list[list[int]]:
        return [list(t) for t in self._b.trans[self._off:]]

    def transversal(self, level: int) -> dict[int, Permutation]:
        """Coset representatives at ``level``: image of the base point -> element."""
        t = self._b.trans[self._off + level]
        return {beta: Permutation(u, check=False) for beta, u in t.items()}

    def _levels(self):
        return range(self._off, len(self._b.base))

    # -- membership ----------------------------------------------------------------

    def _sift(self, g: tuple) -> tuple[tuple, bool]:
        b = self._b
        for i in self._levels():
            beta = g[b.base[i]]
            uinv = b.tinv[i].get(beta)
            if uinv is None:
                return g, False
            if beta != b.base[i]:
                g = mul(g, uinv)
        return g, g == b.id

    def contains(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            raise PermutationError(f"degree mismatch: {p.degree} vs {self._degree}")
        return self._sift(p.images)[1]

    __contains__ = contains

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self._degree == other.degree and all(other.contains(g) for g in self._generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self._degree == other.degree and self._order == other.order()
                and self.is_subgroup_of(other))

    def __hash__(self) -> int:
        return hash((self._degree, self._order))

    # -- orbits and stabilizers ----------------------------------------------------------

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        out = [x]
        for a in out:
            for g in self._generators:
                b = g.images[a]
                if b not in seen:
                    seen.add(b)
                    out.append(b)
        return sorted(out)

    def orbits(self) -> list[list[int]]:
        if "orbits" not in self._memo:
            done = [False] * self._degree
            result = []
            for x in range(self._degree):
                if not done[x]:
                    orb = self.orbit(x)
                    for y in orb:
                        done[y] = True
                    result.append(orb)
            self._memo["orbits"] = result
        return [list(o) for o in self._memo["orbits"]]

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def with_base(self, prefix: Sequence[int]) -> PermGroup:
        """The same group with a chain whose base starts with ``prefix``."""
        prefix = tuple(prefix)
        if self.base[:len(prefix)] == prefix:
            return self
        key = ("with_base", prefix)
        if key not in self._memo:
            self._memo[key] = PermGroup(self.strong_generators(), self._degree, base=prefix)
        return self._memo[key]

    def _tail(self, k: int) -> PermGroup:
        """Subgroup fixing the first ``k`` base points, reusing the chain below them."""
        level = self._off + k
        gens = [Permutation(s, check=False) for s in self._b.strong[level]] \
            if level < len(self._b.base) else []
        return PermGroup(gens, self._degree, _builder=self._b, _offset=level)

    def point_stabilizer(self, x: int) -> PermGroup:
        if not 0 <= x < self._degree:
            raise ValueError(f"point {x} out of range for degree {self._degree}")
        return self.pointwise_stabilizer([x])

    def pointwise_stabilizer(self, points: Iterable[int]) -> PermGroup:
        pts = []
        for p in points:
            if not 0 <= p < self._degree:
                raise ValueError(f"point {p} out of range for degree {self._degree}")
            if p not in pts:
                pts.append(p)
        if not pts:
            return self
        key = ("stab", tuple(pts))
        if key not in self._memo:
            self._memo[key] = self.with_base(pts)._tail(len(pts))
        return self._memo[key]

    def transversal_element(self, x: int, y: int) -> Permutation | None:
        """Some element mapping ``x`` to ``y``, or None if y is not in the orbit of x."""
        g = self.with_base([x])
        t = g._b.trans[g._off]
        return Permutation(t[y], check=False) if y in t else None

    # -- subgroups ----------------------------------------------------------------

    def subgroup(self, gens: Iterable[Permutation]) -> PermGroup:
        return PermGroup(list(gens), self._degree)

    def normal_closure(self, seeds: Iterable[Permutation]) -> PermGroup:
        """Smallest normal subgroup of this group containing ``seeds``."""
        seeds = list(seeds)
        for s in seeds:
            if not self.contains(s):
                raise ValueError(f"seed {s} is not an element of the group")
        return _normal_closure_in(self._generators, seeds, self._degree)

    def is_normal(self, sub: PermGroup) -> bool:
        """Whether ``sub`` (assumed a subgroup) is normalized by every generator."""
        for g in self._generators:
            for h in sub.generators:
                if not sub.contains(h.conjugate(g)):
                    return False
        return True

    def derived_subgroup(self) -> PermGroup:
        if "derived" not in self._memo:
            gens = self._generators
            comms = []
            for i, a in enumerate(gens):
                for b in gens[i + 1:]:
                    c = a.inverse() * b.inverse() * a * b
                    if not c.is_identity():
                        comms.append(c)
            self._memo["derived"] = _normal_closure_in(gens, comms, self._degree)
        return self._memo["derived"]

    def is_abelian(self) -> bool:
        gens = self._generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    # -- enumeration ----------------------------------------------------------------

    def element_array(self, limit: int = DEFAULT_ENUM_LIMIT) -> np.ndarray:
        """All elements as rows of an image array, in a fixed order; identity first."""
        if self._order > limit:
            raise ResourceLimitError(f"group of order {self._order} exceeds enumeration limit {limit}")
        key = "elements"
        if key not in self._memo:
            n = self._degree
            dtype = np.int16 if n < 2**15 else np.int32
            elems = np.arange(n, dtype=dtype)[None, :]
            for i in reversed(list(self._levels())):
                t = self._b.trans[i]
                keys = [self._b.base[i]] + sorted(k for k in t if k != self._b.base[i])
                u = np.array([t[k] for k in keys], dtype=dtype)
                # (e * u)(x) = u(e(x))
                prod = u[np.arange(len(keys))[:, None, None], elems[None, :, :]]
                elems = prod.reshape(-1, n)
            elems.setflags(write=False)
            self._memo[key] = elems
        return self._memo[key]

    def elements(self, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[Permutation]:
        for row in self.element_array(limit):
            yield Permutation(row.tolist(), check=False)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self._degree}, order={self._order}, ngens={len(self._generators)})"


def _normal_closure_in(ambient_gens: Sequence[Permutation], seeds: Sequence[Permutation],
                       degree: int) -> PermGroup:
    builder = _ChainBuilder(degree)
    gens: list[tuple] = []
    for s in seeds:
        if builder.add(s.images):
            gens.append(s.images)
    queue = list(gens)
    amb = [(g.images, invert(g.images)) for g in ambient_gens]
    while queue:
        h = queue.pop(0)
        for g, ginv in amb:
            c = mul(mul(ginv, h), g)
            if builder.add(c):
                gens.append(c)
                queue.append(c)
    return PermGroup([Permutation(g, check=False) for g in gens], degree, _builder=builder)


def group_from_generators(gens: Iterable[Permutation], degree: int) -> PermGroup:
    return PermGroup(gens, degree)


def symmetric_group(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles([[0, 1]], n))
    if n >= 3:
        gens.append(Permutation.from_cycles([list(range(n))], n))
    return PermGroup(gens, n)


def alternating_group(n: int) -> PermGroup:
    gens = [Permutation.from_cycles([[0, 1, i]], n) for i in range(2, n)]
    return PermGroup(gens, n)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles([list(range(n))], n)] if n > 1 else [], n)
