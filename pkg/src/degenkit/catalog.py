"""Registry of atomic variety labels and their expansion rules.

A catalog entry ties a label (name, dimension, Euler number, kind) to an
optional class polynomial in K0(Var) and an optional SOD reduction in
K0(sGT).  Catalogs are immutable after construction and validated eagerly:
expansions must reference registered labels, be acyclic, and agree with the
entry's Euler number.

Catalog files are blank-line separated key = value records; see
``DEFAULT_CATALOG_TEXT`` for the shipped registry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import ring
from .errors import CatalogError, MalformedFVector, ParseError, UnknownLabel
from .fileio import parse_record_blocks
from .ring import SgtElement, VarElement

KINDS = ("expandable", "opaque")


@dataclass(frozen=True)
class AtomicLabel:
    name: str
    dim: int
    euler: int
    kind: str


@dataclass(frozen=True)
class CatalogEntry:
    label: AtomicLabel
    var_expansion: VarElement | None = None
    sgt_expansion: SgtElement | None = None


class Catalog:
    """Immutable label registry; raises CatalogError on inconsistent data."""

    def __init__(self, entries):
        table: dict[str, CatalogEntry] = {}
        for e in entries:
            name = e.label.name
            if not ring.is_label_name(name):
                raise CatalogError(f"invalid label name {name!r}")
            if name in table:
                raise CatalogError(f"duplicate label {name!r}")
            table[name] = e
        self._table = table
        self._sgt_cache: dict[str, SgtElement] = {}
        self._validate()

    # -- lookups -----------------------------------------------------------

    def __contains__(self, name: str) -> bool:
        return name == ring.PT_NAME or name in self._table

    def entry(self, name: str) -> CatalogEntry:
        if name == ring.PT_NAME and name not in self._table:
            return _PT_ENTRY
        try:
            return self._table[name]
        except KeyError:
            raise UnknownLabel(f"label {name!r} is not registered") from None

    def names(self) -> list[str]:
        return sorted(self._table)

    def extended(self, entries) -> "Catalog":
        """New catalog with extra entries appended."""
        return Catalog(list(self._table.values()) + list(entries))

    # -- the two expansion maps ---------------------------------------------

    def expand(self, name: str) -> VarElement:
        """K0(Var) class: the expansion polynomial, or the label itself."""
        e = self.entry(name)
        if e.var_expansion is not None:
            return e.var_expansion
        if e.label.kind == "expandable":
            raise CatalogError(f"expandable label {name!r} lacks var_expansion")
        return VarElement.label(name)

    def sgt_class(self, name: str) -> SgtElement:
        """K0(sGT) class: euler * pt for expandable labels, the registered
        SOD reduction for opaque ones (resolved recursively), else the label."""
        cached = self._sgt_cache.get(name)
        if cached is not None:
            return cached
        e = self.entry(name)
        if e.label.kind == "expandable":
            out = SgtElement.point(e.label.euler)
        elif e.sgt_expansion is None:
            out = SgtElement.label(name)
        else:
            acc = SgtElement.zero()
            for basis, c in e.sgt_expansion.terms():
                if len(basis) == 1:
                    acc = acc + c * self.sgt_class(basis[0])
                else:
                    acc = acc + SgtElement({basis: c})
            out = acc
        self._sgt_cache[name] = out
        return out

    # -- consistency --------------------------------------------------------

    def _references(self, name: str) -> set[str]:
        e = self._table[name]
        refs: set[str] = set()
        if e.var_expansion is not None:
            refs |= e.var_expansion.labels()
        if e.sgt_expansion is not None:
            refs |= {n for basis, _ in e.sgt_expansion.terms() for n in basis}
        return refs

    def _validate(self) -> None:
        for name, e in self._table.items():
            lab = e.label
            if lab.kind not in KINDS:
                raise CatalogError(f"{name}: unknown kind {lab.kind!r}")
            if lab.dim < 0:
                raise CatalogError(f"{name}: negative dimension")
            if name == ring.PT_NAME:
                if lab.dim != 0 or lab.euler != 1 or lab.kind != "opaque":
                    raise CatalogError("pt must be opaque with dim 0, euler 1")
                if e.var_expansion is not None or e.sgt_expansion is not None:
                    raise CatalogError("pt carries no expansions")
                continue
            if lab.kind == "opaque" and lab.dim == 0:
                raise CatalogError(f"{name}: opaque dim-0 labels are reserved for pt")
            if lab.kind == "expandable":
                if e.var_expansion is None:
                    raise CatalogError(f"{name}: expandable label needs var_expansion")
                if e.var_expansion.labels():
                    raise CatalogError(
                        f"{name}: expandable expansion must be a pure L-polynomial"
                    )
            elif e.var_expansion is not None and e.sgt_expansion is None:
                raise CatalogError(
                    f"{name}: opaque label with var_expansion needs sgt_expansion"
                )
            for ref in self._references(name):
                if ref not in self:
                    raise CatalogError(f"{name}: expansion references unknown {ref!r}")

        self._check_acyclic()

        # Euler coherence, checked after acyclicity so recursion terminates.
        for name, e in self._table.items():
            if name == ring.PT_NAME:
                continue
            if e.var_expansion is not None:
                got = ring.euler(e.var_expansion, self)
                if got != e.label.euler:
                    raise CatalogError(
                        f"{name}: var_expansion has euler {got}, label says {e.label.euler}"
                    )
            if e.sgt_expansion is not None:
                got = ring.sgt_euler(e.sgt_expansion, self)
                if got != e.label.euler:
                    raise CatalogError(
                        f"{name}: sgt_expansion has euler {got}, label says {e.label.euler}"
                    )
            if e.var_expansion is not None and e.sgt_expansion is not None:
                if ring.mu(e.var_expansion, self) != self.sgt_class(name):
                    raise CatalogError(
                        f"{name}: mu(var_expansion) disagrees with sgt_expansion"
                    )

    def _check_acyclic(self) -> None:
        WHITE, GREY, BLACK = 0, 1, 2
        color = {name: WHITE for name in self._table}

        def visit(name: str) -> None:
            color[name] = GREY
            for ref in self._references(name):
                if ref == ring.PT_NAME or ref not in self._table:
                    continue
                if color[ref] == GREY:
                    raise CatalogError(f"expansion cycle through {ref!r}")
                if color[ref] == WHITE:
                    visit(ref)
            color[name] = BLACK

        for name in self._table:
            if color[name] == WHITE:
                visit(name)


_PT_ENTRY = CatalogEntry(AtomicLabel(ring.PT_NAME, 0, 1, "opaque"))


def toric_class(f_vector) -> VarElement:
    """Class of the smooth complete toric variety with the given fan f-vector.

    f[k] counts k-dimensional cones (f[0] = 1 for the zero cone); each
    k-cone contributes a torus orbit (L-1)^(d-k), d = len(f)-1.
    """
    f = tuple(f_vector)
    if not f:
        raise MalformedFVector("empty f-vector")
    for x in f:
        if not isinstance(x, int) or isinstance(x, bool) or x <= 0:
            raise MalformedFVector(f"f-vector entries must be positive integers, got {x!r}")
    if f[0] != 1:
        raise MalformedFVector("f-vector must start with 1 (the zero cone)")
    d = len(f) - 1
    torus = ring.L - ring.ONE
    out = VarElement.zero()
    for k, count in enumerate(f):
        out = out + count * torus ** (d - k)
    return out


# -- catalog file format ------------------------------------------------------

_REQUIRED_KEYS = ("name", "dim", "euler", "kind")
_ALL_KEYS = _REQUIRED_KEYS + ("var_expansion", "sgt_expansion")


def parse_catalog(text: str) -> Catalog:
    entries = []
    for block in parse_record_blocks(text):
        rec: dict[str, str] = {}
        for lineno, key, value in block:
            if key not in _ALL_KEYS:
                raise ParseError(f"line {lineno}: unknown catalog key {key!r}")
            if key in rec:
                raise ParseError(f"line {lineno}: duplicate key {key!r}")
            rec[key] = value
        for key in _REQUIRED_KEYS:
            if key not in rec:
                raise ParseError(f"catalog record missing {key!r}")
        try:
            dim = int(rec["dim"])
            eu = int(rec["euler"])
        except ValueError as exc:
            raise ParseError(f"bad integer in catalog record {rec['name']!r}: {exc}") from None
        var_exp = (
            ring.parse_var_element(rec["var_expansion"])
            if "var_expansion" in rec
            else None
        )
        sgt_exp = (
            ring.parse_sgt_element(rec["sgt_expansion"])
            if "sgt_expansion" in rec
            else None
        )
        entries.append(
            CatalogEntry(AtomicLabel(rec["name"], dim, eu, rec["kind"]), var_exp, sgt_exp)
        )
    return Catalog(entries)


def format_catalog(catalog: Catalog) -> str:
    blocks = []
    for name in catalog.names():
        e = catalog.entry(name)
        lines = [
            f"name = {name}",
            f"dim = {e.label.dim}",
            f"euler = {e.label.euler}",
            f"kind = {e.label.kind}",
        ]
        if e.var_expansion is not None:
            lines.append(f"var_expansion = {e.var_expansion}")
        if e.sgt_expansion is not None:
            lines.append(f"sgt_expansion = {e.sgt_expansion}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_catalog(path) -> Catalog:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_catalog(fh.read())


DEFAULT_CATALOG_TEXT = """\
# degenkit default catalog

name = pt
dim = 0
euler = 1
kind = opaque

name = P1
dim = 1
euler = 2
kind = expandable
var_expansion = 1 + L

name = P2
dim = 2
euler = 3
kind = expandable
var_expansion = 1 + L + L^2

name = P3
dim = 3
euler = 4
kind = expandable
var_expansion = 1 + L + L^2 + L^3

name = P4
dim = 4
euler = 5
kind = expandable
var_expansion = 1 + L + L^2 + L^3 + L^4

name = E
dim = 1
euler = 0
kind = opaque

name = E2
dim = 1
euler = 0
kind = opaque

name = Curve_g2
dim = 1
euler = -2
kind = opaque

name = Curve_g3
dim = 1
euler = -4
kind = opaque

name = RuledE
dim = 2
euler = 0
kind = opaque
var_expansion = [E] + L*[E]
sgt_expansion = 2*[E]

name = RuledE2
dim = 2
euler = 0
kind = opaque
var_expansion = [E2] + L*[E2]
sgt_expansion = 2*[E2]

name = RatSurf_e3
dim = 2
euler = 3
kind = expandable
var_expansion = 1 + L + L^2

name = RatSurf_e4
dim = 2
euler = 4
kind = expandable
var_expansion = 1 + 2*L + L^2

name = RatSurf_e12
dim = 2
euler = 12
kind = expandable
var_expansion = 1 + 10*L + L^2

name = K3_X
dim = 2
euler = 24
kind = opaque

name = K3_Y
dim = 2
euler = 24
kind = opaque

name = Ab2
dim = 2
euler = 0
kind = opaque

name = Ab3
dim = 3
euler = 0
kind = opaque
"""


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    return parse_catalog(DEFAULT_CATALOG_TEXT)


def ruled_label_name(elliptic_label: str) -> str:
    return f"Ruled{elliptic_label}"


def ruled_entry(elliptic_label: str) -> CatalogEntry:
    """P1-bundle entry over an elliptic-type label: class [E](1+L), SOD 2[E]."""
    base = VarElement.label(elliptic_label)
    return CatalogEntry(
        AtomicLabel(ruled_label_name(elliptic_label), 2, 0, "opaque"),
        var_expansion=base + ring.L * base,
        sgt_expansion=2 * SgtElement.label(elliptic_label),
    )


__all__ = [
    "AtomicLabel",
    "CatalogEntry",
    "Catalog",
    "toric_class",
    "parse_catalog",
    "format_catalog",
    "load_catalog",
    "default_catalog",
    "DEFAULT_CATALOG_TEXT",
    "ruled_label_name",
    "ruled_entry",
]
