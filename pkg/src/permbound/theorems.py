"""Executable checks of the composition-factor bounds and the reductions behind them.

All logarithms are base 2. Comparisons against irrational bounds use a 1e-9
margin in the direction that makes the check harder to pass; when every degree
involved is a power of two the bound is an exact float and no margin is used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import actions, keylemma
from .group import DEFAULT_ENUM_LIMIT, PermGroup, ResourceLimitError
from .orbitals import Suborbit, smallest_self_paired_nontrivial, suborbits, wielandt_data
from .report import FAIL, PASS, SKIPPED, CheckReport, describe, verdict
from .structure import comp_a, composition_series, exponent, pi_product, prime_factors, socle

EPS = keylemma.EPS

QUASIPRIMITIVE_NOT_PRIMITIVE = "QUASIPRIMITIVE_NOT_PRIMITIVE"
INTRANSITIVE_NORMAL = "INTRANSITIVE_NORMAL"
ABELIAN_SOCLE_BOUND = "ABELIAN_SOCLE_BOUND"
PRIMITIVE_P_NONABELIAN_SOCLE = "PRIMITIVE_P_NONABELIAN_SOCLE"
IMPRIMITIVE_P = "IMPRIMITIVE_P"


def _pow2(*ns: float) -> bool:
    return all(float(n).is_integer() and n >= 1 and int(n) & (int(n) - 1) == 0 for n in ns)


def _le(lhs: float, rhs: float, exact: bool) -> bool:
    return lhs <= rhs if exact else lhs <= rhs - EPS


def _lt(lhs: float, rhs: float, exact: bool) -> bool:
    return lhs < rhs if exact else lhs < rhs - EPS


def _primes(s) -> list[int]:
    return sorted(s)


def _skipped(lemma: str, G: PermGroup, name: str | None, err: Exception) -> CheckReport:
    return CheckReport(lemma, describe(G, name), SKIPPED, {}, reason=str(err))


def _require_primitive(G: PermGroup) -> None:
    if G.degree < 2 or not G.is_transitive() or not actions.is_primitive(G):
        raise ValueError("group is not primitive")


def theorem7_bound(n: int) -> float:
    return 2 * math.log2(n) ** 2


# -- single-lemma checks --------------------------------------------------------------


def check_jordan(G: PermGroup, *, name: str | None = None, x: int = 0) -> CheckReport:
    """Every prime dividing |G_x| divides the order of G_x on each nontrivial suborbit."""
    _require_primitive(G)
    Gx = G.point_stabilizer(x)
    primes = sorted(set(prime_factors(Gx.order())))
    rows, violations = [], []
    for s in suborbits(G, x):
        if s.size < 2:
            continue
        order = actions.restrict_to_invariant_set(Gx, s.points).image.order()
        missing = [p for p in primes if order % p]
        rows.append({"representative": s.representative, "size": s.size, "image_order": order})
        violations += [{"prime": p, "suborbit": s.representative} for p in missing]
    witness = {"x": x, "stabilizer_order": Gx.order(), "primes": primes, "suborbits": rows,
               "violations": violations}
    return CheckReport("lem:Jordan", describe(G, name), verdict(not violations), witness)


def check_odd_order(G: PermGroup, *, name: str | None = None,
                    limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """pi(G) <= n^(log n) and exp(G) <= n^((log n)^2) for transitive G of odd order."""
    if G.order() % 2 == 0:
        raise ValueError("group has even order")
    if not G.is_transitive():
        raise actions.NotTransitiveError("group is not transitive")
    lemma = "lem:nulladik"
    n = G.degree
    try:
        e = exponent(G, limit=limit)
    except ResourceLimitError as err:
        return _skipped(lemma, G, name, err)
    pi = pi_product(G)
    ln = math.log2(n)
    exact = _pow2(n, pi, e)
    pi_ok = _le(math.log2(pi), ln * ln, exact)
    exp_ok = _le(math.log2(e), ln ** 3, exact)
    witness = {"pi": pi, "exponent": e, "log2_pi": math.log2(pi), "log2_exponent": math.log2(e),
               "log2_pi_bound": ln * ln, "log2_exponent_bound": ln ** 3,
               "pi_bound": n ** ln, "pi_ok": pi_ok, "exponent_ok": exp_ok}
    return CheckReport(lemma, describe(G, name), verdict(pi_ok and exp_ok), witness)


def check_prop3(G: PermGroup, *, name: str | None = None, x: int = 0,
                limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """|Comp_A(G) minus Comp_A(G_x)| < log n."""
    if not G.is_transitive():
        raise actions.NotTransitiveError("group is not transitive")
    lemma = "prop:3"
    try:
        cg = comp_a(G, limit=limit)
        cx = comp_a(G.point_stabilizer(x), limit=limit)
    except ResourceLimitError as err:
        return _skipped(lemma, G, name, err)
    diff = cg - cx
    bound = math.log2(G.degree)
    ok = _lt(len(diff), bound, _pow2(G.degree))
    witness = {"comp_a_G": _primes(cg), "comp_a_Gx": _primes(cx), "difference": _primes(diff),
               "difference_size": len(diff), "bound": bound}
    return CheckReport(lemma, describe(G, name), verdict(ok), witness)


def default_suborbit(G: PermGroup, x: int = 0) -> Suborbit | None:
    """Smallest self-paired nontrivial suborbit, else the smallest nontrivial one."""
    s = smallest_self_paired_nontrivial(G, x)
    if s is not None:
        return s
    rest = [s for s in suborbits(G, x) if s.size >= 2]
    return min(rest, key=lambda s: (s.size, s.points[0])) if rest else None


def check_wielandt(G: PermGroup, x: int = 0, delta: Suborbit | None = None, *,
                   name: str | None = None, limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """Factors of the kernel T of G_x on delta occur in one of the two induced images."""
    _require_primitive(G)
    lemma = "lem:4"
    if delta is None:
        delta = default_suborbit(G, x)
        if delta is None:
            raise ValueError("group is regular")
    data = wielandt_data(G, x, delta)
    try:
        fT = composition_series(data.T, limit=limit).factors
        f1 = composition_series(data.stab_on_delta, limit=limit).factors
        f2 = composition_series(data.stab_on_delta_paired, limit=limit).factors
    except ResourceLimitError as err:
        return _skipped(lemma, G, name, err)
    allowed = list(f1) + list(f2)
    missing = sorted({str(f) for f in fT if not any(f == a for a in allowed)})
    witness = {
        "x": x, "delta": list(delta.points), "delta_paired": list(data.delta_paired.points),
        "y": data.y, "y_paired": data.y_paired, "T_order": data.T.order(), "P_order": data.P.order(),
        "factors_T": sorted({str(f) for f in fT}),
        "factors_stab_on_delta": sorted({str(f) for f in f1}),
        "factors_stab_on_delta_paired": sorted({str(f) for f in f2}),
        "missing": missing,
    }
    return CheckReport(lemma, describe(G, name), verdict(not missing), witness)


# -- reductions -----------------------------------------------------------------------


@dataclass
class TransitiveReduction:
    case: str
    n: int
    X: PermGroup
    alpha: int
    Y: PermGroup
    beta: int
    comp_Gx: frozenset
    comp_X_alpha: frozenset
    comp_Y_beta: frozenset
    slack: float
    certificate: dict

    @property
    def t(self) -> int:
        return self.X.degree

    @property
    def m(self) -> int:
        return self.Y.degree

    @property
    def rhs(self) -> float:
        return len(self.comp_X_alpha) + len(self.comp_Y_beta) + self.slack

    @property
    def holds(self) -> bool:
        sizes_ok = self.t >= 2 and self.m >= 2 and self.t * self.m <= self.n
        return (sizes_ok and _le(len(self.comp_Gx), self.rhs, _pow2(self.n))
                and self.certificate.get("containment", True))

    def to_dict(self) -> dict:
        return {
            "case": self.case, "n": self.n, "t": self.t, "m": self.m,
            "alpha": self.alpha, "beta": self.beta,
            "X": {"degree": self.X.degree, "order": self.X.order()},
            "Y": {"degree": self.Y.degree, "order": self.Y.order()},
            "comp_a_Gx": _primes(self.comp_Gx), "comp_a_X_alpha": _primes(self.comp_X_alpha),
            "comp_a_Y_beta": _primes(self.comp_Y_beta), "slack": self.slack,
            "lhs": len(self.comp_Gx), "rhs": self.rhs, "holds": self.holds,
            "certificate": self.certificate,
        }


def _intransitive_normal(G: PermGroup, limit: int):
    """A nontrivial intransitive normal subgroup with its orbit system, or None."""
    for system in actions.minimal_block_systems(G):
        act = actions.block_action(G, system)
        if not act.kernel.is_trivial():
            return act.kernel, system, act, "block kernel of a minimal block system"
    from .structure import minimal_normal_subgroups

    for N in minimal_normal_subgroups(G, limit=limit):
        if not N.is_transitive():
            system = actions.BlockSystem.from_blocks(G.degree, N.orbits())
            return N, system, actions.block_action(G, system), "minimal normal subgroup"
    return None


def decompose_transitive(G: PermGroup, x: int = 0, *, slack: float | None = None,
                         limit: int = DEFAULT_ENUM_LIMIT) -> TransitiveReduction:
    """Split a transitive imprimitive group into a block action X and a block constituent Y."""
    if not G.is_transitive():
        raise actions.NotTransitiveError("group is not transitive")
    if actions.is_primitive(G):
        raise ValueError("group is primitive")
    n = G.degree
    slack = math.log2(n) if slack is None else slack
    comp_gx = comp_a(G.point_stabilizer(x), limit=limit)
    found = _intransitive_normal(G, limit)
    if found is not None:
        N, system, act, source = found
        K = act.kernel
        case = INTRANSITIVE_NORMAL
        block = system.block_containing(x)
        Y = actions.restrict_to_invariant_set(K, block).image
        cert = {"N_order": N.order(), "N_source": source, "K_order": K.order()}
    else:
        case = QUASIPRIMITIVE_NOT_PRIMITIVE
        system = actions.maximal_block_containing(G, x)
        act = actions.block_action(G, system)
        if not act.kernel.is_trivial():
            raise RuntimeError("quasiprimitive group acts unfaithfully on a block system")
        block = system.block_containing(x)
        M = act.preimage(act.image.point_stabilizer(system.block_of[x]))
        Y = actions.restrict_to_invariant_set(M, block).image
        cert = {"M_order": M.order()}
    alpha = system.block_of[x]
    beta = block.index(x)
    X = act.image
    cx = comp_a(X.point_stabilizer(alpha), limit=limit)
    cy = comp_a(Y.point_stabilizer(beta), limit=limit)
    cert["blocks"] = system.as_lists()
    extra = comp_gx - cx - cy
    if case == QUASIPRIMITIVE_NOT_PRIMITIVE:
        cert["containment"] = not extra
    else:
        # surplus factors come from the block kernel and must be lost in Y_beta
        surplus = comp_a(Y, limit=limit) - cy
        cert["constituent_surplus"] = _primes(surplus)
        cert["containment"] = extra <= surplus
    cert["extra"] = _primes(extra)
    return TransitiveReduction(case, n, X, alpha, Y, beta, comp_gx, cx, cy, slack, cert)


@dataclass
class PrimitiveReduction:
    case: str
    n: int
    delta: Suborbit
    P: PermGroup
    comp_Gx: frozenset
    comp_P: frozenset
    comp_Py: frozenset
    bound: float | None = None
    socle_order: int | None = None
    nested: TransitiveReduction | None = None

    @property
    def star(self) -> bool:
        """Comp_A(G_x) lies in Comp_A(P) together with Comp_A(P_y)."""
        return self.comp_Gx <= self.comp_P | self.comp_Py

    @property
    def holds(self) -> bool:
        lhs = len(self.comp_Gx)
        exact = _pow2(self.n)
        if self.case == ABELIAN_SOCLE_BOUND:
            ok = _le(lhs, self.bound, exact)
        elif self.case == PRIMITIVE_P_NONABELIAN_SOCLE:
            ok = lhs <= len(self.comp_Py) and self.comp_P <= self.comp_Py
        else:
            tr = self.nested
            ok = (_le(lhs, len(self.comp_Py) + math.log2(self.n), exact)
                  and _le(lhs, len(tr.comp_X_alpha) + len(tr.comp_Y_beta) + 2 * math.log2(self.n), exact)
                  and tr.t >= 2 and tr.m >= 2 and tr.t * tr.m <= self.delta.size <= self.n
                  and tr.holds)
        return ok and self.star

    def to_dict(self) -> dict:
        d = {"case": self.case, "n": self.n, "delta": list(self.delta.points),
             "P": {"degree": self.P.degree, "order": self.P.order()},
             "comp_a_Gx": _primes(self.comp_Gx), "comp_a_P": _primes(self.comp_P),
             "comp_a_Py": _primes(self.comp_Py), "star": self.star, "holds": self.holds}
        if self.bound is not None:
            d["bound"] = self.bound
        if self.socle_order is not None:
            d["socle_order"] = self.socle_order
        if self.nested is not None:
            d["nested"] = self.nested.to_dict()
        return d


def decompose_primitive(G: PermGroup, x: int = 0, *,
                        limit: int = DEFAULT_ENUM_LIMIT) -> PrimitiveReduction:
    """Reduce a primitive group through G_x acting on its smallest self-paired suborbit."""
    _require_primitive(G)
    if G.point_stabilizer(x).is_trivial():
        raise ValueError("group is regular")
    delta = smallest_self_paired_nontrivial(G, x)
    if delta is None:
        raise ValueError("no nontrivial self-paired suborbit")
    n = G.degree
    Gx = G.point_stabilizer(x)
    P = actions.restrict_to_invariant_set(Gx, delta.points).image
    cgx = comp_a(Gx, limit=limit)
    cp = comp_a(P, limit=limit)
    cpy = comp_a(P.point_stabilizer(0), limit=limit)
    if actions.is_primitive(P):
        soc = socle(P, limit=limit)
        if soc.is_abelian():
            return PrimitiveReduction(ABELIAN_SOCLE_BOUND, n, delta, P, cgx, cp, cpy,
                                      bound=math.log2(n) ** 2, socle_order=soc.order())
        return PrimitiveReduction(PRIMITIVE_P_NONABELIAN_SOCLE, n, delta, P, cgx, cp, cpy,
                                  socle_order=soc.order())
    nested = decompose_transitive(P, 0, slack=2 * math.log2(n), limit=limit)
    return PrimitiveReduction(IMPRIMITIVE_P, n, delta, P, cgx, cp, cpy, nested=nested)


# -- recursive verification of the main bound ---------------------------------------

LEAF_REGULAR = "LEAF_REGULAR"
LEAF_ODD_ORDER = "LEAF_ODD_ORDER"
PRIMITIVE = "PRIMITIVE"
TRANSITIVE = "TRANSITIVE"
SKIPPED_NODE = "SKIPPED"


def split_arithmetic(n: int, t: int, m: int, slack: float) -> dict:
    """The proof's inequality with t the smaller part and k = n / t."""
    t, m = min(t, m), max(t, m)
    k = n / t
    lt, lk, ln = math.log2(t), math.log2(k), math.log2(n)
    lhs = 2 * lt * lt + 2 * lk * lk + slack
    rhs = 2 * ln * ln
    exact = _pow2(n, t, k)
    ok = t >= 2 and k * k >= n and _le(lhs, rhs, exact)
    return {"t": t, "m": m, "k": k, "lhs": lhs, "rhs": rhs, "ok": ok}


@dataclass
class TraceNode:
    kind: str
    degree: int
    order: int
    value: int | None
    bound: float
    reduction: TransitiveReduction | PrimitiveReduction | None = None
    arithmetic: dict | None = None
    children: list = field(default_factory=list)
    reason: str | None = None

    @property
    def bound_ok(self) -> bool | None:
        if self.value is None:
            return None
        return _lt(self.value, self.bound, _pow2(self.degree))

    @property
    def holds(self) -> bool:
        """False if any computed check in this subtree fails."""
        if self.bound_ok is False:
            return False
        if self.reduction is not None and not self.reduction.holds:
            return False
        if self.arithmetic is not None and not self.arithmetic["ok"]:
            return False
        return all(c.holds for c in self.children)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "degree": self.degree, "order": self.order, "value": self.value,
             "bound": self.bound, "bound_ok": self.bound_ok, "holds": self.holds,
             "children": [c.to_dict() for c in self.children]}
        if self.reduction is not None:
            d["reduction"] = self.reduction.to_dict()
        if self.arithmetic is not None:
            d["arithmetic"] = self.arithmetic
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass
class DecompositionTrace:
    group: dict
    root: TraceNode

    @property
    def holds(self) -> bool:
        return self.root.holds

    @property
    def skipped_nodes(self) -> int:
        return sum(1 for nd in self.root.nodes() if nd.kind == SKIPPED_NODE)

    def composite_nodes(self) -> list[TraceNode]:
        return [nd for nd in self.root.nodes() if nd.arithmetic is not None]

    def to_report(self) -> CheckReport:
        nodes = list(self.root.nodes())
        witness = {"value": self.root.value, "bound": self.root.bound, "depth": self.root.depth(),
                   "nodes": len(nodes), "composite_nodes": len(self.composite_nodes()),
                   "skipped_nodes": self.skipped_nodes, "trace": self.root.to_dict()}
        return CheckReport("thm:7", self.group, verdict(self.holds), witness)

    def to_dict(self) -> dict:
        return self.to_report().to_dict()


def _combine(node: TraceNode, children: list[TraceNode], parts: tuple[int, int], slack: float,
             inner: float) -> None:
    """Attach the proof arithmetic for a node split into parts of sizes t and m."""
    n = node.degree
    arith = split_arithmetic(n, parts[0], parts[1], 2 * math.log2(n))
    values = [c.value for c in children]
    if None not in values:
        combined = sum(values) + slack
        arith["children_sum_plus_slack"] = combined
        arith["ok"] = arith["ok"] and _le(node.value, combined, _pow2(n)) and _lt(
            combined, node.bound, _pow2(n, *parts))
    arith["certificate_slack"] = slack
    arith["inner_degree"] = inner
    node.arithmetic = arith
    node.children = children


def _trace(G: PermGroup, limit: int, root: bool = False) -> TraceNode:
    n = G.degree
    bound = theorem7_bound(n)
    try:
        Gx = G.point_stabilizer(0)
        value = len(comp_a(Gx, limit=limit))
    except ResourceLimitError as err:
        if root:
            raise
        return TraceNode(SKIPPED_NODE, n, G.order(), None, bound, reason=str(err))
    node = TraceNode(PRIMITIVE, n, G.order(), value, bound)
    try:
        if actions.is_primitive(G):
            if Gx.is_trivial():
                node.kind = LEAF_REGULAR
            elif G.order() % 2:
                node.kind = LEAF_ODD_ORDER
                primes = len(set(prime_factors(G.order())))
                ln = math.log2(n)
                node.arithmetic = {"distinct_primes": primes, "bound": ln * ln,
                                   "ok": _le(primes, ln * ln, _pow2(n))}
            else:
                red = decompose_primitive(G, limit=limit)
                node.reduction = red
                if red.case == PRIMITIVE_P_NONABELIAN_SOCLE:
                    child = _trace(red.P, limit)
                    node.children = [child]
                    if child.value is not None:
                        node.arithmetic = {"child_degree": red.P.degree, "ok": value <= child.value
                                           and red.P.degree < n}
                elif red.case == IMPRIMITIVE_P:
                    tr = red.nested
                    kids = [_trace(tr.X, limit), _trace(tr.Y, limit)]
                    _combine(node, kids, (tr.t, tr.m), 2 * math.log2(n), red.delta.size)
        else:
            node.kind = TRANSITIVE
            tr = decompose_transitive(G, limit=limit)
            node.reduction = tr
            kids = [_trace(tr.X, limit), _trace(tr.Y, limit)]
            _combine(node, kids, (tr.t, tr.m), tr.slack, n)
    except ResourceLimitError as err:
        node.reason = f"reduction skipped: {err}"
    return node


def verify_theorem7(G: PermGroup, *, name: str | None = None,
                    limit: int = DEFAULT_ENUM_LIMIT) -> DecompositionTrace:
    """Check |Comp_A(G_x)| < 2 (log n)^2 recursively along the reductions."""
    if not G.is_transitive():
        raise actions.NotTransitiveError("group is not transitive")
    return DecompositionTrace(describe(G, name), _trace(G, limit, root=True))


def check_theorem7(G: PermGroup, *, name: str | None = None,
                   limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    try:
        return verify_theorem7(G, name=name, limit=limit).to_report()
    except ResourceLimitError as err:
        return _skipped("thm:7", G, name, err)


# -- key lemma -----------------------------------------------------------------------


def alt_max_distinct_primes(k: int) -> tuple[int, tuple[int, ...]]:
    return keylemma.alt_max_distinct_primes(k)


def key_lemma_threshold(k_max: int) -> int | None:
    return keylemma.key_lemma_threshold(k_max)


def _alt_degree(order: int) -> int | None:
    k, f = 5, 60
    while f < order:
        k += 1
        f *= k
    return k if f == order else None


def check_key_lemma_instance(G: PermGroup, N: PermGroup, *, name: str | None = None,
                             limit: int = DEFAULT_ENUM_LIMIT) -> CheckReport:
    """A normal subgroup with alternating quotient is transitive and cannot violate the bound.

    The quotient is recognised as Alt(k) by its order k!/2 and a single nonabelian
    composition factor of that order; this does not prove isomorphism.
    """
    _require_primitive(G)
    if N.is_trivial():
        raise ValueError("N must be nontrivial")
    if not N.is_subgroup_of(G) or not G.is_normal(N):
        raise ValueError("N is not a normal subgroup")
    lemma = "lem:key"
    q = G.order() // N.order()
    k = _alt_degree(q)
    if k is None:
        raise ValueError("quotient order is not k!/2 for any k >= 5")
    try:
        fG = composition_series(G, limit=limit).factors
        fN = composition_series(N, limit=limit).factors
    except ResourceLimitError as err:
        return _skipped(lemma, G, name, err)
    rest = list(fG)
    for f in fN:
        idx = next(i for i, g in enumerate(rest) if g == f)
        rest.pop(idx)
    if len(rest) != 1 or rest[0].is_abelian or rest[0].order != q:
        raise ValueError("quotient is not a single nonabelian factor of order k!/2")
    n = G.degree
    m, cycle_type = alt_max_distinct_primes(k)
    large = k > math.log2(n) ** 5
    beats = m > keylemma.contradiction_bound(float(k)) + EPS
    transitive = N.is_transitive()
    witness = {"k": k, "n": n, "quotient_order": q, "N_order": N.order(),
               "N_transitive": transitive, "log2_n_pow5": math.log2(n) ** 5,
               "m": m, "cycle_type": list(cycle_type),
               "bound": float(keylemma.contradiction_bound(float(k))),
               "triggered": large and beats,
               "isomorphism_test": "order and single nonabelian factor only"}
    return CheckReport(lemma, describe(G, name), verdict(transitive and not (large and beats)),
                       witness)
