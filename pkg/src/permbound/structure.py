"""Composition series, abelian composition factors, minimal normal subgroups and socles.

Composition series are built from the stabilizer chain wherever possible: abelian
layers come from the derived subgroup, intransitive and imprimitive groups split
along an induced action and its kernel. Only perfect primitive groups are
enumerated, to find their minimal normal subgroups by conjugacy-class scanning.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import actions
from .group import DEFAULT_ENUM_LIMIT, PermGroup, ResourceLimitError
from .perm import Permutation
from .report import CheckReport, PASS, FAIL, describe, verdict


def prime_factors(n: int) -> list[int]:
    """Prime factorization of ``n`` with multiplicity, ascending."""
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


@dataclass(frozen=True, eq=False)
class FactorSignature:
    """Isomorphism-type stand-in for a composition factor.

    Abelian factors are cyclic of prime order. Nonabelian factors carry their
    order and, when known, the element-order frequencies as a refinement.
    """

    kind: str
    order: int
    refinement: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def abelian(cls, p: int) -> FactorSignature:
        return cls("abelian", p)

    @property
    def is_abelian(self) -> bool:
        return self.kind == "abelian"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorSignature):
            return NotImplemented
        if (self.kind, self.order) != (other.kind, other.order):
            return False
        if self.refinement is not None and other.refinement is not None:
            return self.refinement == other.refinement
        return True

    def __hash__(self) -> int:
        return hash((self.kind, self.order))

    def __lt__(self, other: FactorSignature) -> bool:
        return (self.kind, self.order, self.refinement or ()) < \
            (other.kind, other.order, other.refinement or ())

    def __str__(self) -> str:
        return f"C{self.order}" if self.is_abelian else f"NA{self.order}"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "order": self.order}
        if self.refinement is not None:
            d["element_orders"] = [list(x) for x in self.refinement]
        return d


@dataclass
class CompositionSeries:
    chain: list[PermGroup]
    factors: list[FactorSignature]

    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]

    def comp_a(self) -> frozenset[int]:
        return frozenset(f.order for f in self.factors if f.is_abelian)


# -- element scanning ----------------------------------------------------------------


def element_orders(E: np.ndarray) -> np.ndarray:
    """Orders of the permutations stored as rows of ``E``."""
    N, n = E.shape
    cols = np.arange(n)
    lengths = np.zeros((N, n), dtype=np.int64)
    P = E.astype(np.int64)
    for k in range(1, n + 1):
        hit = (P == cols) & (lengths == 0)
        lengths[hit] = k
        if k < n:
            P = np.take_along_axis(E, P, axis=1).astype(np.int64)
    return np.lcm.reduce(lengths, axis=1) if n else np.ones(N, dtype=np.int64)


def _row_keys(E: np.ndarray, base: Sequence[int], n: int) -> np.ndarray | None:
    if n ** max(len(base), 1) >= 2**62:
        return None
    keys = np.zeros(E.shape[0], dtype=np.int64)
    for b in reversed(base):
        keys = keys * n + E[:, b].astype(np.int64)
    return keys


def _conjugacy_labels(E: np.ndarray, conj_gens: Sequence[Permutation],
                      base: Sequence[int]) -> np.ndarray:
    """Label rows of ``E`` (a conjugation-closed set) by their conjugacy class."""
    N, n = E.shape
    keys = _row_keys(E, base, n)
    if keys is not None:
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
    else:
        lookup = {row.tobytes(): i for i, row in enumerate(E)}
    src, dst = [], []
    for s in conj_gens:
        sv = np.asarray(s.images, dtype=E.dtype)
        conj = np.empty_like(E)
        conj[:, sv] = sv[E]  # s^-1 e s sends s(i) to s(e(i))
        if keys is not None:
            ck = _row_keys(conj, base, n)
            idx = order[np.searchsorted(sorted_keys, ck)]
        else:
            idx = np.array([lookup[row.tobytes()] for row in conj])
        src.append(np.arange(N))
        dst.append(idx)
    if not src:
        return np.arange(N)
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _centralizer_in_symmetric(G: PermGroup) -> list[Permutation]:
    """Centralizer of a transitive group in Sym(n); it acts semiregularly."""
    n = G.degree
    gens = [g.images for g in G.generators]
    # word from 0 to each point along a spanning tree of the Schreier graph
    parent = {0: None}
    order = [0]
    for a in order:
        for gi, g in enumerate(gens):
            if g[a] not in parent:
                parent[g[a]] = (a, gi)
                order.append(g[a])
    result = []
    for y in range(n):
        c = [None] * n
        c[0] = y
        for b in order[1:]:
            a, gi = parent[b]
            c[b] = gens[gi][c[a]]
        if sorted(c) != list(range(n)):
            continue
        if all(c[g[a]] == g[c[a]] for g in gens for a in range(n)):
            result.append(Permutation(c, check=False))
    return result


def _prime_order_class_reps(G: PermGroup, limit: int, reverse: bool) -> list[Permutation]:
    """One representative per G-class of prime-order elements able to generate a
    minimal normal subgroup, in deterministic scan order."""
    key = ("class_reps", reverse)
    if key in G._memo:
        return G._memo[key]
    if G.order() > limit:
        raise ResourceLimitError(f"group of order {G.order()} exceeds enumeration limit {limit}")
    D = G.derived_subgroup()
    central = []
    if D.order() < G.order() and G.is_transitive():
        # a minimal normal subgroup meeting G' trivially is central
        scan = D
        central = [c for c in _centralizer_in_symmetric(G)
                   if not c.is_identity() and G.contains(c) and not D.contains(c)
                   and is_prime(c.order())]
    else:
        scan = G
    E = scan.element_array(limit)
    orders = element_orders(E)
    labels = _conjugacy_labels(E, G.generators, scan.base)
    idx = np.arange(len(E))
    if reverse:
        idx = idx[::-1]
    prime_mask = np.array([is_prime(o) for o in range(int(orders.max()) + 1)])
    sel = idx[prime_mask[orders[idx]]]
    _, first = np.unique(labels[sel], return_index=True)
    reps = [Permutation(E[i].tolist(), check=False) for i in sel[np.sort(first)]]
    central.sort(reverse=reverse)
    reps.extend(central)
    G._memo[key] = reps
    return reps


def _group_sort_key(H: PermGroup):
    return (H.order(), sorted(g.images for g in H.generators))


def minimal_normal_subgroups(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT,
                             reverse: bool = False) -> list[PermGroup]:
    """All minimal normal subgroups, each the normal closure of a prime-order element."""
    key = ("min_normal", reverse)
    if key in G._memo:
        return list(G._memo[key])
    if G.is_trivial():
        return []
    closures: list[PermGroup] = []
    for g in _prime_order_class_reps(G, limit, reverse):
        N = G.normal_closure([g])
        if not any(N == M for M in closures):
            closures.append(N)
    minimal = [N for N in closures
               if not any(M.order() < N.order() and M.is_subgroup_of(N) for M in closures)]
    minimal.sort(key=_group_sort_key)
    G._memo[key] = tuple(minimal)
    return minimal


def proper_normal_subgroup(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT,
                           reverse: bool = False) -> PermGroup | None:
    """An inclusion-minimal nontrivial proper normal subgroup, or None if G is simple."""
    if G.order() > limit:
        raise ResourceLimitError(f"group of order {G.order()} exceeds enumeration limit {limit}")
    mins = minimal_normal_subgroups(G, limit=limit, reverse=reverse)
    if not mins or mins[0].order() == G.order():
        return None
    return mins[-1] if reverse else mins[0]


def socle(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT) -> PermGroup:
    gens = [g for N in minimal_normal_subgroups(G, limit=limit) for g in N.generators]
    return PermGroup(gens, G.degree)


# -- composition series ----------------------------------------------------------------


def _split(act: actions.InducedAction, limit: int, reverse: bool):
    top_chain, top_factors = _series(act.image, limit, reverse)
    K = act.kernel
    chain = [act.source] + [act.preimage(H) for H in top_chain[1:-1]]
    k_chain, k_factors = _series(K, limit, reverse)
    return chain + k_chain, top_factors + k_factors


def _abelian_layer(G: PermGroup, D: PermGroup, reverse: bool) -> list[PermGroup]:
    """Subgroups from G down to (excluding) D with prime indices; all contain G'."""
    gens = list(G.generators)
    if reverse:
        gens.reverse()
    ups = []
    H = D
    for g in gens:
        if H.contains(g):
            continue
        d, x = 1, g
        while not H.contains(x):
            x = x * g
            d += 1
        done = 1
        for p in prime_factors(d):
            done *= p
            H = PermGroup(list(H.generators) + [g ** (d // done)], G.degree)
            ups.append(H)
    assert H.order() == G.order()
    chain = [G] + ups[::-1][1:]
    return chain


def _simple_signature(G: PermGroup, limit: int) -> FactorSignature:
    if is_prime(G.order()):
        return FactorSignature.abelian(G.order())
    orders = element_orders(G.element_array(limit))
    freq = tuple(sorted(Counter(orders.tolist()).items()))
    return FactorSignature("nonabelian", G.order(), freq)


def _series(G: PermGroup, limit: int, reverse: bool):
    key = ("series", reverse)
    if key in G._memo:
        return G._memo[key]
    n = G.degree
    if G.is_trivial():
        result = [G], []
    elif not G.is_transitive():
        moved = [o for o in G.orbits() if len(o) > 1]
        orbit = moved[-1] if reverse else moved[0]
        result = _split(actions.restrict_to_invariant_set(G, orbit), limit, reverse)
    else:
        D = G.derived_subgroup()
        if D.order() < G.order():
            layer = _abelian_layer(G, D, reverse)
            chain = layer + [D]
            factors = [FactorSignature.abelian(a.order() // b.order())
                       for a, b in zip(chain, chain[1:])]
            d_chain, d_factors = _series(D, limit, reverse)
            result = layer + d_chain, factors + d_factors
        elif not actions.is_primitive(G):
            systems = actions.minimal_block_systems(G)
            system = systems[-1] if reverse else systems[0]
            result = _split(actions.block_action(G, system), limit, reverse)
        else:
            N = proper_normal_subgroup(G, limit=limit, reverse=reverse)
            if N is None:
                result = [G, PermGroup([], n)], [_simple_signature(G, limit)]
            else:
                result = _split(actions.coset_action(G, N), limit, reverse)
    G._memo[key] = result
    return result


def composition_series(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT,
                       reverse: bool = False) -> CompositionSeries:
    """A composition series G = G_0 > G_1 > ... > 1 with its factor signatures.

    ``reverse`` reverses every internal scan order; by Jordan-Hoelder the factor
    multiset must not change.
    """
    if G.order() > limit:
        raise ResourceLimitError(f"group of order {G.order()} exceeds enumeration limit {limit}")
    chain, factors = _series(G, limit, reverse)
    return CompositionSeries(list(chain), list(factors))


def comp_a(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT) -> frozenset[int]:
    """Primes p such that a cyclic factor of order p occurs in a composition series."""
    return composition_series(G, limit=limit).comp_a()


def factor_multiset(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT) -> Counter:
    return Counter(composition_series(G, limit=limit).factors)


# -- order arithmetic ----------------------------------------------------------------


def pi_product(G: PermGroup) -> int:
    """Product of the distinct primes dividing |G|."""
    return math.prod(set(prime_factors(G.order())))


def exponent(G: PermGroup, *, limit: int = DEFAULT_ENUM_LIMIT) -> int:
    orders = element_orders(G.element_array(limit))
    return int(np.lcm.reduce(orders)) if len(orders) else 1


# -- checks ----------------------------------------------------------------


def _multiset_contains(big: Counter, small: Counter) -> bool:
    return all(big[k] >= v for k, v in small.items())


def _sig_list(c: Counter) -> list[str]:
    return sorted(str(k) for k in c.elements())


def check_socle_primitive(G: PermGroup, *, name: str | None = None,
                          limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """Socle of a primitive group: isomorphic simple factors; affine bound when abelian."""
    if not G.is_transitive() or not actions.is_primitive(G):
        raise ValueError("check_socle_primitive needs a primitive group")
    mins = minimal_normal_subgroups(G, limit=limit)
    soc = socle(G, limit=limit)
    factors = composition_series(soc, limit=limit).factors
    same = all(f == factors[0] for f in factors)
    transitive = all(N.is_transitive() for N in mins)
    normal = G.is_normal(soc)
    witness = {
        "minimal_normal_orders": [N.order() for N in mins],
        "socle_order": soc.order(),
        "socle_factors": [str(f) for f in factors],
        "minimal_normal_transitive": transitive,
        "socle_normal": normal,
    }
    ok = same and transitive and normal
    if factors and factors[0].is_abelian:
        p = factors[0].order
        s = len(factors)
        elementary = soc.is_abelian() and all(g.order() in (1, p) for g in soc.generators)
        quotient = G.order() // soc.order()
        witness.update(p=p, s=s, elementary_abelian=elementary, degree_matches=soc.order() == G.degree,
                       quotient_order=quotient, quotient_bound=p ** (s * s))
        ok = ok and elementary and soc.order() == G.degree and quotient < p ** (s * s)
    return CheckReport("prop:Socle", describe(G, name), verdict(ok), witness)


def check_subdirect(G: PermGroup, domain1: Iterable[int], domain2: Iterable[int], *,
                    D1: PermGroup | None = None, D2: PermGroup | None = None,
                    name: str | None = None, limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """Structure of a subdirect product of two constituents acting on disjoint domains."""
    dom1, dom2 = sorted(set(domain1)), sorted(set(domain2))
    if set(dom1) & set(dom2) or len(dom1) + len(dom2) != G.degree:
        raise ValueError("domains must partition the point set")
    proj1 = actions.restrict_to_invariant_set(G, dom1)
    proj2 = actions.restrict_to_invariant_set(G, dom2)
    for proj, D in ((proj1, D1), (proj2, D2)):
        if D is not None and proj.image != D:
            raise ValueError("group does not project onto its constituent")
    D1, D2 = proj1.image, proj2.image
    K1 = G.pointwise_stabilizer(dom2)   # elements trivial on the second constituent
    K2 = G.pointwise_stabilizer(dom1)
    N1 = PermGroup([proj1.image_of(g) for g in K1.generators], len(dom1))
    N2 = PermGroup([proj2.image_of(g) for g in K2.generators], len(dom2))
    N12 = PermGroup(list(K1.generators) + list(K2.generators), G.degree)
    fG, fD1, fD2 = (factor_multiset(X, limit=limit) for X in (G, D1, D2))
    fN1, fN2 = factor_multiset(N1, limit=limit), factor_multiset(N2, limit=limit)
    q1, q2 = D1.order() // N1.order(), D2.order() // N2.order()
    qG = G.order() // N12.order()
    orders_ok = (G.order() == N1.order() * N2.order() * q1 and q1 == q2 == qG
                 and N12.order() == N1.order() * N2.order())
    contains_ok = (_multiset_contains(fD1, fN1) and _multiset_contains(fD2, fN2)
                   and _multiset_contains(fG, fN1 + fN2))
    quotients_ok = contains_ok and (fD1 - fN1) == (fD2 - fN2) == (fG - fN1 - fN2)
    among_ok = _multiset_contains(fD1 + fD2, fG)
    normal_ok = G.is_normal(N12)
    witness = {
        "order_G": G.order(), "order_D1": D1.order(), "order_D2": D2.order(),
        "order_N1": N1.order(), "order_N2": N2.order(),
        "quotient_orders": [qG, q1, q2],
        "factors_G": _sig_list(fG), "factors_D1": _sig_list(fD1), "factors_D2": _sig_list(fD2),
        "product_normal": normal_ok, "quotient_factors_agree": quotients_ok,
        "factors_among_constituents": among_ok,
    }
    ok = orders_ok and quotients_ok and among_ok and normal_ok
    return CheckReport("lem:subdirect-product-structure", describe(G, name), verdict(ok), witness)
