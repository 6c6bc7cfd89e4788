"""Labeled dual complexes of snc special fibers and the specialization maps.

An ``SncModel`` records the components of a special fiber (with
multiplicities and K0(Var) classes) and a table of closed-stratum classes
[D_J] indexed by nonempty subsets J of component ids; absent keys mean the
stratum is empty.  Everything here is combinatorial class bookkeeping; no
geometry is verified beyond the dual-complex consistency rules.

The two specialization maps computed from a model:

* ``rho_var``     -- sum over strata of (1-L)^(|J|-1) [D_J - (deeper strata)]
* ``rho_sgt``     -- mu of ``weighted_stratum_class`` = sum (-1)^(|J|-1) |J| [D_J]

with ``rho_var_via_bundles`` the projective-bundle rewriting of the first,
equal to it by a binomial identity (tested, not assumed).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import ring
from .errors import EmptyStratum, ParseError, UnknownLabel
from .fileio import iter_kv, optional_value, single_value
from .ring import SgtElement, VarElement

Stratum = frozenset[str]

MODEL_KINDS = ("snc-model", "kulikov-ii", "kulikov-iii")

_ID_OK = ring.is_label_name  # component ids share the label token grammar


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int
    cls: VarElement


class SncModel:
    """Immutable dual complex with class-labeled strata.

    ``strata`` maps nonempty id-sets to VarElements; singletons are filled in
    from the component classes when not supplied.  Structural sanity (unique
    ids, known ids in strata keys) is enforced here; the semantic invariants
    (face closure, dimension law) are checked by :func:`validate`.
    """

    def __init__(self, generic_dim: int, components, strata=None):
        if generic_dim < 0:
            raise ValueError("generic_dim must be nonnegative")
        comps: list[Component] = []
        for c in components:
            if not isinstance(c, Component):
                c = Component(*c)
            comps.append(c)
        ids = [c.id for c in comps]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate component ids")
        for c in comps:
            if not _ID_OK(c.id):
                raise ValueError(f"invalid component id {c.id!r}")
            if c.multiplicity < 1:
                raise ValueError(f"component {c.id}: multiplicity must be >= 1")
        self.generic_dim = generic_dim
        self.components = tuple(sorted(comps, key=lambda c: c.id))
        id_set = set(ids)

        table: dict[Stratum, VarElement] = {}
        for c in self.components:
            table[frozenset({c.id})] = c.cls
        if strata:
            for key, cls in strata.items():
                J = frozenset(key) if not isinstance(key, frozenset) else key
                if not J:
                    raise ValueError("empty stratum key")
                if not J <= id_set:
                    unknown = sorted(J - id_set)
                    raise ValueError(f"stratum references unknown ids {unknown}")
                # a singleton here may disagree with the component; validate flags it
                table[J] = cls
        self.strata = table

    # -- views ---------------------------------------------------------------

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def stratum(self, J) -> VarElement | None:
        """[D_J], or None when the stratum is empty."""
        return self.strata.get(frozenset(J))

    def nonempty(self) -> list[Stratum]:
        """All nonempty strata, ordered by (size, sorted ids)."""
        return sorted(self.strata, key=lambda J: (len(J), tuple(sorted(J))))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SncModel)
            and self.generic_dim == other.generic_dim
            and self.components == other.components
            and self.strata == other.strata
        )

    def __repr__(self) -> str:
        return f"SncModel(dim {self.generic_dim}, {len(self.components)} components, {len(self.strata)} strata)"


def _fmt_ids(J) -> str:
    return "{" + ",".join(sorted(J)) + "}"


def validate(model: SncModel, catalog) -> list[str]:
    """All invariant violations, each tagged with the offending stratum."""
    violations: list[str] = []
    for c in model.components:
        J = frozenset({c.id})
        if model.strata.get(J) != c.cls:
            violations.append(f"singleton stratum {_fmt_ids(J)} disagrees with component class")

    for J in model.nonempty():
        if len(J) > model.generic_dim + 1:
            violations.append(f"stratum {_fmt_ids(J)} has |J| > generic_dim + 1")
        for size in range(1, len(J)):
            for sub in combinations(sorted(J), size):
                if frozenset(sub) not in model.strata:
                    violations.append(f"face closure at {_fmt_ids(sub)} (inside {_fmt_ids(J)})")

        top = model.generic_dim + 1 - len(J)
        cls = model.strata[J]
        max_dim = None
        bad = False
        for mono, k, _c in cls.terms():
            total = k
            for name in mono:
                try:
                    lab = catalog.entry(name).label
                except UnknownLabel:
                    violations.append(f"unknown label [{name}] at {_fmt_ids(J)}")
                    bad = True
                    continue
                if lab.dim > top:
                    violations.append(
                        f"dimension law at {_fmt_ids(J)}: label [{name}] has dim {lab.dim} > {top}"
                    )
                total += lab.dim
            max_dim = total if max_dim is None else max(max_dim, total)
        if bad:
            continue
        if max_dim is None:
            violations.append(f"dimension law at {_fmt_ids(J)}: stratum class is zero")
        elif max_dim > top:
            violations.append(
                f"dimension law at {_fmt_ids(J)}: term of dimension {max_dim} > {top}"
            )
        elif max_dim < top:
            violations.append(
                f"dimension law at {_fmt_ids(J)}: top-dimensional part (dim {top}) missing"
            )
    return violations


def open_stratum_class(model: SncModel, J) -> VarElement:
    """[D_J minus all deeper strata], by Moebius inversion over the face poset."""
    J = frozenset(J)
    if J not in model.strata:
        raise EmptyStratum(f"stratum {_fmt_ids(J)} is empty")
    out = VarElement.zero()
    for Jp, cls in model.strata.items():
        if J <= Jp:
            out = out + (-1) ** (len(Jp) - len(J)) * cls
    return out


def rho_var(model: SncModel) -> VarElement:
    """Specialization class: sum of (1-L)^(|J|-1) times the open stratum class."""
    one_minus_L = ring.ONE - ring.L
    out = VarElement.zero()
    for J in model.nonempty():
        out = out + one_minus_L ** (len(J) - 1) * open_stratum_class(model, J)
    return out


def rho_var_via_bundles(model: SncModel) -> VarElement:
    """Same class written through normal-bundle projectivizations:
    sum of (-1)^(|J|-1) [P^(|J|-1)-bundle over D_J]."""
    out = VarElement.zero()
    for J in model.nonempty():
        j = len(J)
        out = out + (-1) ** (j - 1) * ring.geometric_sum(j) * model.strata[J]
    return out


def weighted_stratum_class(model: SncModel) -> VarElement:
    """sum (-1)^(|J|-1) |J| [D_J]; mu of this is rho_sgt."""
    out = VarElement.zero()
    for J in model.nonempty():
        j = len(J)
        out = out + (-1) ** (j - 1) * j * model.strata[J]
    return out


def rho_sgt(model: SncModel, catalog) -> SgtElement:
    """Specialization class modulo semi-orthogonal decompositions."""
    return ring.mu(weighted_stratum_class(model), catalog)


def special_fiber_class(model: SncModel) -> VarElement:
    """Class of the reduced special fiber, by inclusion-exclusion."""
    out = VarElement.zero()
    for J in model.nonempty():
        out = out + (-1) ** (len(J) - 1) * model.strata[J]
    return out


# -- model file format --------------------------------------------------------


def _parse_component(value: str, lineno: int) -> Component:
    parts = [p.strip() for p in value.split(";")]
    if len(parts) != 3:
        raise ParseError(f"line {lineno}: component needs 'id ; multiplicity ; class'")
    cid, mult_s, cls_s = parts
    if not _ID_OK(cid):
        raise ParseError(f"line {lineno}: invalid component id {cid!r}")
    try:
        mult = int(mult_s)
    except ValueError:
        raise ParseError(f"line {lineno}: bad multiplicity {mult_s!r}") from None
    if mult < 1:
        raise ParseError(f"line {lineno}: multiplicity must be >= 1")
    return Component(cid, mult, ring.parse_var_element(cls_s))


def parse_model(text: str) -> tuple[str, SncModel]:
    """Parse a model file; returns (kind, model).

    Grammar: optional ``kind = snc-model|kulikov-ii|kulikov-iii`` header,
    required ``generic_dim``, repeated ``component = id ; mult ; class`` and
    ``stratum = id1,id2,... ; class-or-empty`` lines.
    """
    lines = iter_kv(text)
    for _lineno, key, _v in lines:
        if key not in ("kind", "generic_dim", "component", "stratum"):
            raise ParseError(f"unknown model key {key!r}")
    kind = optional_value(lines, "kind", "snc-model")
    if kind not in MODEL_KINDS:
        raise ParseError(f"unknown model kind {kind!r}")
    if kind != "snc-model":
        raise ParseError(
            f"{kind} files hold builder data, not a model; use the kulikov parser"
        )
    generic_dim = int_or_parse_error(single_value(lines, "generic_dim"), "generic_dim")

    components: list[Component] = []
    strata: dict[frozenset[str], VarElement] = {}
    for lineno, key, value in lines:
        if key == "component":
            components.append(_parse_component(value, lineno))
        elif key == "stratum":
            parts = [p.strip() for p in value.split(";")]
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: stratum needs 'ids ; class'")
            ids = [t.strip() for t in parts[0].split(",")]
            if not ids or any(not _ID_OK(t) for t in ids):
                raise ParseError(f"line {lineno}: bad stratum ids {parts[0]!r}")
            J = frozenset(ids)
            if len(J) != len(ids):
                raise ParseError(f"line {lineno}: repeated id in stratum key")
            if J in strata:
                raise ParseError(f"line {lineno}: duplicate stratum {_fmt_ids(J)}")
            if parts[1] == "empty":
                continue  # missing keys already mean empty; accept the explicit form
            strata[J] = ring.parse_var_element(parts[1])
    if not components:
        raise ParseError("model has no components")
    try:
        return kind, SncModel(generic_dim, components, strata)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def int_or_parse_error(value: str, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what}: expected integer, got {value!r}") from None


def format_model(model: SncModel) -> str:
    lines = ["kind = snc-model", f"generic_dim = {model.generic_dim}"]
    for c in model.components:
        lines.append(f"component = {c.id} ; {c.multiplicity} ; {c.cls}")
    for J in model.nonempty():
        if len(J) == 1:
            continue
        lines.append(f"stratum = {','.join(sorted(J))} ; {model.strata[J]}")
    return "\n".join(lines) + "\n"


def load_model(path) -> tuple[str, SncModel]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model(fh.read())


__all__ = [
    "Component",
    "SncModel",
    "validate",
    "open_stratum_class",
    "rho_var",
    "rho_var_via_bundles",
    "weighted_stratum_class",
    "rho_sgt",
    "special_fiber_class",
    "parse_model",
    "format_model",
    "load_model",
    "MODEL_KINDS",
]
