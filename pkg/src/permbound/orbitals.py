"""Suborbits of a point stabilizer, orbital pairing and Wielandt's lemma data."""
from __future__ import annotations

from dataclasses import dataclass

from . import actions
from .group import PermGroup


@dataclass(frozen=True)
class Suborbit:
    base_point: int
    index: int
    points: tuple[int, ...]
    paired_index: int

    @property
    def representative(self) -> int:
        return self.points[0]

    @property
    def self_paired(self) -> bool:
        return self.paired_index == self.index

    @property
    def size(self) -> int:
        return len(self.points)

    def is_trivial(self) -> bool:
        return self.points == (self.base_point,)

    def to_dict(self) -> dict:
        return {"points": list(self.points), "size": self.size, "self_paired": self.self_paired,
                "paired_index": self.paired_index}


def suborbits(G: PermGroup, x: int) -> list[Suborbit]:
    """Orbits of G_x, sorted by minimum point, each with its paired suborbit."""
    if not G.is_transitive():
        raise actions.NotTransitiveError("suborbits need a transitive group")
    key = ("suborbits", x)
    if key in G._memo:
        return list(G._memo[key])
    parts = G.point_stabilizer(x).orbits()
    where = {p: i for i, part in enumerate(parts) for p in part}
    paired = []
    for part in parts:
        # g with y^g = x sends (x, y) to (x^g, x), so x^g lies in the paired suborbit
        y = part[0]
        g = G.transversal_element(x, y).inverse()
        paired.append(where[g(x)])
    result = [Suborbit(x, i, tuple(part), paired[i]) for i, part in enumerate(parts)]
    G._memo[key] = tuple(result)
    return result


def paired_suborbit(G: PermGroup, x: int, delta: Suborbit) -> Suborbit:
    subs = suborbits(G, x)
    if delta.base_point != x or subs[delta.index].points != delta.points:
        raise ValueError("not a suborbit of this group at this point")
    return subs[delta.paired_index]


def suborbit_containing(G: PermGroup, x: int, y: int) -> Suborbit:
    return next(s for s in suborbits(G, x) if y in s.points)


def smallest_self_paired_nontrivial(G: PermGroup, x: int) -> Suborbit | None:
    candidates = [s for s in suborbits(G, x) if s.self_paired and s.size >= 2]
    if not candidates:
        return None
    return min(candidates, key=lambda s: (s.size, s.points[0]))


@dataclass
class WielandtData:
    x: int
    delta: Suborbit
    delta_paired: Suborbit
    y: int
    y_paired: int
    stabilizer: PermGroup             # G_x
    T: PermGroup                      # kernel of G_x on delta
    P: PermGroup                      # G_x induced on delta
    stab_on_delta: PermGroup          # G_{x,y} induced on delta
    stab_on_delta_paired: PermGroup   # G_{x,y'} induced on the paired suborbit


def wielandt_data(G: PermGroup, x: int, delta: Suborbit, *, check_primitive: bool = True) -> WielandtData:
    if delta.is_trivial():
        raise ValueError("suborbit must be nontrivial")
    Gx = G.point_stabilizer(x)
    if Gx.is_trivial():
        raise ValueError("group is regular")
    if check_primitive and not actions.is_primitive(G):
        raise ValueError("group is not primitive")
    dpair = paired_suborbit(G, x, delta)
    y, y2 = delta.representative, dpair.representative
    on_delta = actions.restrict_to_invariant_set(Gx, delta.points)
    Gxy = Gx.point_stabilizer(y)
    Gxy2 = Gx.point_stabilizer(y2)
    return WielandtData(
        x=x, delta=delta, delta_paired=dpair, y=y, y_paired=y2, stabilizer=Gx,
        T=on_delta.kernel, P=on_delta.image,
        stab_on_delta=actions.restrict_to_invariant_set(Gxy, delta.points).image,
        stab_on_delta_paired=actions.restrict_to_invariant_set(Gxy2, dpair.points).image,
    )
