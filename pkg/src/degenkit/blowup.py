"""Blow-up of an snc model along a closed stratum.

The move is a stellar subdivision of the dual complex with exact class
bookkeeping: writing J for the center, c_S = |J minus S| and E(c) for
1 + L + ... + L^(c-1),

* the new component gets id epsilon, multiplicity sum of m_j over J, and
  class E(|J|) [D_J] (the exceptional P^(|J|-1)-bundle);
* a surviving stratum S (J not contained in S) becomes
  [D_S] + (E(c_S) - 1) [D_{S u J}] when D_{S u J} is nonempty
  (the strict transform: [Bl_Z W] = [W] + (L + ... + L^(c-1)) [Z]);
* {epsilon} u S appears with class E(|J \\ S|) [D_{S u J}] whenever
  D_{S u J} is nonempty;
* every stratum containing J becomes empty.

Both specialization maps are unchanged by the move; the test suite checks
this exactly on randomized models.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ring
from .errors import IdCollision, InvalidCenter
from .ring import VarElement
from .snc import Component, SncModel


@dataclass(frozen=True)
class BlowupMove:
    center: frozenset[str]
    new_id: str

    def __init__(self, center, new_id: str):
        object.__setattr__(self, "center", frozenset(center))
        object.__setattr__(self, "new_id", new_id)


def blow_up_stratum(model: SncModel, move: BlowupMove) -> SncModel:
    J = move.center
    eps = move.new_id
    if len(J) < 2:
        raise InvalidCenter("center must contain at least two components")
    if not J <= set(model.ids):
        unknown = sorted(J - set(model.ids))
        raise InvalidCenter(f"center references unknown components {unknown}")
    if J not in model.strata:
        raise InvalidCenter(f"center stratum {{{','.join(sorted(J))}}} is empty")
    if eps in model.ids:
        raise IdCollision(f"component id {eps!r} already in use")
    if not ring.is_label_name(eps):
        raise InvalidCenter(f"invalid new component id {eps!r}")

    center_class = model.strata[J]

    def transformed(S: frozenset, cls: VarElement) -> VarElement:
        SJ = S | J
        extra = model.strata.get(SJ)
        if extra is None:
            return cls
        c = len(J - S)
        return cls + (ring.geometric_sum(c) - ring.ONE) * extra

    components: list[Component] = []
    for comp in model.components:
        components.append(
            Component(comp.id, comp.multiplicity, transformed(frozenset({comp.id}), comp.cls))
        )
    eps_mult = sum(model.component(j).multiplicity for j in J)
    components.append(Component(eps, eps_mult, ring.geometric_sum(len(J)) * center_class))

    strata: dict[frozenset[str], VarElement] = {}
    for S, cls in model.strata.items():
        if J <= S:
            continue  # swallowed by the exceptional component
        if len(S) >= 2:
            strata[S] = transformed(S, cls)
        # {epsilon} u S survives iff D_{S u J} was nonempty
        SJ = S | J
        extra = model.strata.get(SJ)
        if extra is not None:
            strata[S | {eps}] = ring.geometric_sum(len(J - S)) * extra

    return SncModel(model.generic_dim, components, strata)


__all__ = ["BlowupMove", "blow_up_stratum"]
