"""Deterministic families of transitive groups and a seeded random sampler."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path

from . import actions
from .group import PermGroup, alternating_group, cyclic_group, symmetric_group
from .perm import Permutation, format_generator_text, mul
from .structure import is_prime

FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "frobenius", "johnson", "psl2",
            "wreath_imprimitive", "wreath_power", "regular_rep", "random")


@dataclass(frozen=True)
class GroupSpec:
    """A family tag plus parameters; nested specs appear as parameters of wreaths."""

    family: str
    params: tuple

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def __str__(self) -> str:
        return f"{self.family}({','.join(map(str, self.params))})"

    @property
    def name(self) -> str:
        return str(self)

    def file_stem(self) -> str:
        def flat(p):
            if isinstance(p, GroupSpec):
                return p.family + "".join(flat(q) for q in p.params)
            return str(p)
        return f"{self.family}_{'-'.join(flat(p) for p in self.params)}_{self.degree()}"

    def degree(self) -> int:
        f, p = self.family, self.params
        if f in ("cyclic", "dihedral", "symmetric", "alternating"):
            return p[0]
        if f == "frobenius":
            return p[0]
        if f == "johnson":
            return p[0] * (p[0] - 1) // 2
        if f == "psl2":
            return p[0] + 1
        if f == "wreath_imprimitive":
            return p[0].degree() * p[1].degree()
        if f == "wreath_power":
            return p[0].degree() ** p[1]
        if f == "regular_rep":
            return p[0].expected_order()
        return p[0]

    def expected_order(self) -> int | None:
        """Closed-form order; None for random groups."""
        f, p = self.family, self.params
        if f == "cyclic":
            return p[0]
        if f == "dihedral":
            return 2 * p[0]
        if f == "symmetric":
            return math.factorial(p[0])
        if f == "alternating":
            return max(math.factorial(p[0]) // 2, 1)
        if f == "frobenius":
            return p[0] * p[1]
        if f == "johnson":
            return math.factorial(p[0])
        if f == "psl2":
            return p[0] * (p[0] ** 2 - 1) // 2
        if f == "wreath_imprimitive":
            a, b = p[0].expected_order(), p[1].expected_order()
            return a ** p[1].degree() * b
        if f == "wreath_power":
            return p[0].expected_order() ** p[1] * math.factorial(p[1])
        if f == "regular_rep":
            return p[0].expected_order()
        return None

    def build(self) -> PermGroup:
        return build(self)


def cyclic(n): return GroupSpec("cyclic", (n,))
def dihedral(n): return GroupSpec("dihedral", (n,))
def symmetric(n): return GroupSpec("symmetric", (n,))
def alternating(n): return GroupSpec("alternating", (n,))
def frobenius(p, d): return GroupSpec("frobenius", (p, d))
def johnson(n): return GroupSpec("johnson", (n,))
def psl2(p): return GroupSpec("psl2", (p,))
def wreath_imprimitive(a, b): return GroupSpec("wreath_imprimitive", (a, b))
def wreath_power(a, b): return GroupSpec("wreath_power", (a, b))
def regular_rep(a): return GroupSpec("regular_rep", (a,))
def random_spec(degree, order_cap, seed): return GroupSpec("random", (degree, order_cap, seed))


def _perm(images) -> Permutation:
    return Permutation(images)


def _multiplier(p: int, d: int) -> int:
    """Least residue of multiplicative order exactly ``d`` modulo prime ``p``."""
    for a in range(1, p):
        k, x = 1, a
        while x != 1:
            x = x * a % p
            k += 1
        if k == d:
            return a
    raise ValueError(f"no element of order {d} modulo {p}")


def build(spec: GroupSpec) -> PermGroup:
    f, p = spec.family, spec.params
    if f == "cyclic":
        if p[0] < 1:
            raise ValueError("cyclic(n) needs n >= 1")
        return cyclic_group(p[0])
    if f == "dihedral":
        n = p[0]
        if n < 3:
            raise ValueError("dihedral(n) needs n >= 3")
        return PermGroup([_perm([(i + 1) % n for i in range(n)]),
                          _perm([(-i) % n for i in range(n)])], n)
    if f == "symmetric":
        if p[0] < 1:
            raise ValueError("symmetric(n) needs n >= 1")
        return symmetric_group(p[0])
    if f == "alternating":
        if p[0] < 3:
            raise ValueError("alternating(n) needs n >= 3")
        return alternating_group(p[0])
    if f == "frobenius":
        q, d = p
        if not is_prime(q) or (q - 1) % d:
            raise ValueError("frobenius(p, d) needs prime p and d | p-1")
        a = _multiplier(q, d)
        gens = [_perm([(x + 1) % q for x in range(q)])]
        if d > 1:
            gens.append(_perm([a * x % q for x in range(q)]))
        return PermGroup(gens, q)
    if f == "johnson":
        n = p[0]
        if n < 3:
            raise ValueError("johnson(n) needs n >= 3")
        pairs = list(combinations(range(n), 2))
        index = {pr: i for i, pr in enumerate(pairs)}
        gens = []
        for g in symmetric_group(n).generators:
            gens.append(_perm([index[tuple(sorted((g(a), g(b))))] for a, b in pairs]))
        return PermGroup(gens, len(pairs))
    if f == "psl2":
        q = p[0]
        if not is_prime(q) or q < 5:
            raise ValueError("psl2(p) needs a prime p >= 5")
        inf = q
        shift = [(z + 1) % q for z in range(q)] + [inf]
        inv = [inf if z == 0 else (-pow(z, -1, q)) % q for z in range(q)] + [0]
        return PermGroup([_perm(shift), _perm(inv)], q + 1)
    if f == "wreath_imprimitive":
        A, B = build(p[0]), build(p[1])
        a, b = A.degree, B.degree
        gens = []
        for g in A.generators:  # acts inside block 0
            gens.append(_perm([g(x) if x < a else x for x in range(a * b)]))
        for h in B.generators:  # permutes blocks
            gens.append(_perm([h(x // a) * a + x % a for x in range(a * b)]))
        return PermGroup(gens, a * b)
    if f == "wreath_power":
        A, k = build(p[0]), p[1]
        a = A.degree
        points = list(product(range(a), repeat=k))
        index = {pt: i for i, pt in enumerate(points)}
        gens = []
        for g in A.generators:
            gens.append(_perm([index[(g(pt[0]),) + pt[1:]] for pt in points]))
        for s in symmetric_group(k).generators:
            # coordinate i moves to position s(i)
            gens.append(_perm([index[tuple(pt[s.inverse()(i)] for i in range(k))] for pt in points]))
        return PermGroup(gens, a ** k)
    if f == "regular_rep":
        A = build(p[0])
        elems = list(A.elements())
        index = {e: i for i, e in enumerate(elems)}
        gens = [_perm([index[e * g] for e in elems]) for g in A.generators]
        return PermGroup(gens, len(elems))
    if f == "random":
        G = random_transitive(*p)
        if G is None:
            raise ValueError(f"{spec} produced no transitive group within the retry budget")
        return G
    raise ValueError(f"unknown family {f!r}")


class LCG:
    """Linear congruential generator, x -> 1664525 x + 1013904223 mod 2^32."""

    A, C, M = 1664525, 1013904223, 2**32

    def __init__(self, seed: int):
        self.state = seed % self.M

    def next(self) -> int:
        self.state = (self.A * self.state + self.C) % self.M
        return self.state

    def below(self, k: int) -> int:
        """Uniform-ish integer in [0, k) from the high bits."""
        return (self.next() * k) >> 32

    def permutation(self, n: int) -> list[int]:
        out = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out


RANDOM_ATTEMPTS = 64


def random_transitive(degree: int, order_cap: int, seed: int) -> PermGroup | None:
    """A transitive group from 2-3 pseudorandom generators, or None.

    Odd attempts draw generators preserving a random block system so that
    imprimitive groups of moderate order are reachable at larger degrees.
    """
    if degree < 2:
        raise ValueError("degree must be at least 2")
    rng = LCG(seed * 1000003 + degree)
    divisors = [b for b in range(2, degree) if degree % b == 0]
    for attempt in range(RANDOM_ATTEMPTS):
        count = 2 + rng.below(2)
        if attempt % 2 and divisors:
            b = divisors[rng.below(len(divisors))]
            relabel = rng.permutation(degree)
            inv = [0] * degree
            for i, r in enumerate(relabel):
                inv[r] = i
            gens = []
            for _ in range(count):
                top = rng.permutation(degree // b)
                inner = [rng.permutation(b) for _ in range(degree // b)]
                core = [top[x // b] * b + inner[x // b][x % b] for x in range(degree)]
                gens.append([relabel[core[inv[y]]] for y in range(degree)])
        else:
            gens = [rng.permutation(degree) for _ in range(count)]
        perms = [Permutation(g, check=False) for g in gens]
        perms = [g for g in perms if not g.is_identity()]
        G = PermGroup(perms, degree)
        if G.is_transitive() and G.order() <= order_cap:
            return G
    return None


def _base_specs(max_degree: int) -> list[GroupSpec]:
    specs = []
    specs += [cyclic(n) for n in range(2, max_degree + 1)]
    specs += [dihedral(n) for n in range(3, max_degree + 1)]
    specs += [symmetric(n) for n in range(2, max_degree + 1)]
    specs += [alternating(n) for n in range(3, max_degree + 1)]
    for q in range(3, max_degree + 1):
        if is_prime(q):
            specs += [frobenius(q, d) for d in range(2, q) if (q - 1) % d == 0]
    specs += [johnson(n) for n in range(4, 20) if n * (n - 1) // 2 <= max_degree]
    specs += [psl2(q) for q in range(5, max_degree) if is_prime(q)]
    return specs


def family_specs(max_degree: int, max_order: int) -> list[GroupSpec]:
    """All deterministic family instances within the degree and order caps."""
    base = [s for s in _base_specs(max_degree) if s.expected_order() <= max_order]
    specs = list(base)
    small = [s for s in base if s.family in ("cyclic", "dihedral", "symmetric", "alternating",
                                             "frobenius", "psl2") and s.degree() <= max_degree // 2]
    for A in small:
        for B in small:
            spec = wreath_imprimitive(A, B)
            if spec.degree() <= max_degree and spec.expected_order() <= max_order:
                specs.append(spec)
    for A in small:
        for k in (2, 3, 4):
            spec = wreath_power(A, k)
            if spec.degree() <= max_degree and spec.expected_order() <= max_order:
                specs.append(spec)
    for A in base:
        if A.family in ("dihedral", "alternating") and A.expected_order() <= max_degree:
            specs.append(regular_rep(A))
    return specs


def _dedupe_key(G: PermGroup):
    # repeated and identity generators do not change the group
    gens = {g.images for g in G.generators if not g.is_identity()}
    return (G.degree, G.order(), tuple(sorted(gens)))


def enumerate_corpus(max_degree: int = 12, max_order: int = 10**6, seed_count: int = 5,
                     seed0: int = 0) -> list[tuple[GroupSpec, PermGroup]]:
    out = []
    seen = set()

    def add(spec, G):
        key = _dedupe_key(G)
        if key not in seen:
            seen.add(key)
            out.append((spec, G))

    for spec in family_specs(max_degree, max_order):
        add(spec, build(spec))
    for degree in range(2, max_degree + 1):
        for seed in range(seed0, seed0 + seed_count):
            G = random_transitive(degree, max_order, seed)
            if G is not None:
                add(random_spec(degree, max_order, seed), G)
    return out


def export_corpus(corpus, directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for spec, G in corpus:
        path = directory / f"{spec.file_stem()}.grp"
        path.write_text(f"# {spec}\n" + format_generator_text(G.degree, G.generators))
        paths.append(path)
    return paths


# -- subdirect product instances ----------------------------------------------------------------


@dataclass
class SubdirectInstance:
    name: str
    group: PermGroup
    domain1: list[int]
    domain2: list[int]


def _graph_of(name: str, X: PermGroup, phi) -> SubdirectInstance:
    """The subgroup {(g, phi(g))} of X x phi(X) on the disjoint union of domains."""
    d = X.degree
    gens = []
    for g in X.generators:
        h = phi(g)
        gens.append(Permutation(g.images + tuple(d + a for a in h.images), check=False))
    m = len(phi(X.generators[0]).images) if X.generators else 1
    return SubdirectInstance(name, PermGroup(gens, d + m), list(range(d)), list(range(d, d + m)))


def _product_of(name: str, X: PermGroup, Y: PermGroup) -> SubdirectInstance:
    d, m = X.degree, Y.degree
    gens = [Permutation(g.images + tuple(range(d, d + m)), check=False) for g in X.generators]
    gens += [Permutation(tuple(range(d)) + tuple(d + a for a in h.images), check=False)
             for h in Y.generators]
    return SubdirectInstance(name, PermGroup(gens, d + m), list(range(d)), list(range(d, d + m)))


def _fiber_by_sign(name: str, m: int, k: int) -> SubdirectInstance:
    """{(a, b) in Sym(m) x Sym(k) : sign a = sign b}."""
    A, B = alternating_group(m), alternating_group(k)
    gens = [Permutation(g.images + tuple(range(m, m + k)), check=False) for g in A.generators]
    gens += [Permutation(tuple(range(m)) + tuple(m + a for a in h.images), check=False)
             for h in B.generators]
    ta = Permutation.from_cycles([[0, 1]], m + k)
    tb = Permutation.from_cycles([[m, m + 1]], m + k)
    gens.append(ta * tb)
    return SubdirectInstance(name, PermGroup(gens, m + k), list(range(m)), list(range(m, m + k)))


def _sign(g: Permutation) -> Permutation:
    return Permutation((0, 1) if g.is_even() else (1, 0), check=False)


def subdirect_instances() -> list[SubdirectInstance]:
    out = []
    diag = [cyclic(2), cyclic(3), symmetric(3), cyclic(4), dihedral(4), alternating(4),
            symmetric(4), alternating(5), dihedral(5), frobenius(5, 4)]
    for spec in diag:
        X = build(spec)
        out.append(_graph_of(f"diagonal {spec}", X, lambda g: g))
    for a, b in [(cyclic(2), cyclic(2)), (symmetric(3), cyclic(2)), (cyclic(3), symmetric(3)),
                 (alternating(4), cyclic(3)), (symmetric(4), symmetric(3))]:
        out.append(_product_of(f"product {a} x {b}", build(a), build(b)))
    for n in (3, 4, 5):
        out.append(_graph_of(f"sign graph symmetric({n})", symmetric_group(n), _sign))
    quotient_sources = [cyclic(4), cyclic(6), dihedral(4), dihedral(6),
                        wreath_imprimitive(cyclic(2), cyclic(2)),
                        wreath_imprimitive(symmetric(3), cyclic(2)), symmetric(4), alternating(4)]
    for spec in quotient_sources:
        X = build(spec)
        if actions.is_primitive(X):
            # Sym(4)/Alt(4) onto the three pairings of four points
            pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
            idx = {frozenset(map(frozenset, pr)): i for i, pr in enumerate(pairings)}

            def phi(g, idx=idx, pairings=pairings):
                return Permutation([idx[frozenset(frozenset(g(x) for x in pair) for pair in pr)]
                                    for pr in pairings], check=False)
        else:
            system = actions.minimal_block_systems(X)[-1]
            phi = actions.block_action(X, system).image_of
        out.append(_graph_of(f"quotient graph {spec}", X, phi))
    for m, k in [(3, 3), (3, 4), (4, 4), (2, 5)]:
        out.append(_fiber_by_sign(f"sign fiber product {m},{k}", m, k))
    return out


# -- key lemma instances ----------------------------------------------------------------


@dataclass
class KeyLemmaInstance:
    name: str
    group: PermGroup
    normal: PermGroup


def _diagonal_instance(A: PermGroup, label: str) -> KeyLemmaInstance:
    """A x A acting on A by x -> a^-1 x b; the right factor is normal with quotient A."""
    elems = [g.images for g in A.elements()]
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)

    def left(a):
        return Permutation([index[mul(a, x)] for x in elems], check=False)

    def right(a):
        return Permutation([index[mul(x, a)] for x in elems], check=False)

    lefts = [left(g.images) for g in A.generators]
    rights = [right(g.images) for g in A.generators]
    return KeyLemmaInstance(f"diagonal {label} x {label}", PermGroup(lefts + rights, n),
                            PermGroup(rights, n))


def key_lemma_instances() -> list[KeyLemmaInstance]:
    return [_diagonal_instance(alternating_group(5), "alternating(5)")]
