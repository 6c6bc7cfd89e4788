"""Exact arithmetic in the Grothendieck group of varieties and its SOD quotient.

``VarElement`` is an integer polynomial in the Lefschetz class L over formal
monomials in atomic variety labels; ``SgtElement`` lives in the quotient by
semi-orthogonal-decomposition relations, a free abelian group on basis labels
(a single opaque label, a sorted tuple of opaque labels, or the point class).

Both carry one canonical form (labels sorted inside monomials, terms ordered
by monomial then L-exponent, no zero coefficients) and one canonical text
grammar, ``c*L^k*[A]*[B]`` with terms joined by `` + `` / `` - ``.  The text
form is used verbatim in catalog files, model files and CLI output.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, UnknownLabel

Monomial = tuple[str, ...]

UNIT_MONOMIAL: Monomial = ()
PT_BASIS: tuple[str, ...] = ()
PT_NAME = "pt"

_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_INT_RE = re.compile(r"[+-]?[0-9]+\Z")


def is_label_name(name: str) -> bool:
    return bool(_LABEL_RE.match(name))


def _check_label(name: str) -> str:
    if not is_label_name(name):
        raise ParseError(f"invalid label name {name!r}")
    return name


class VarElement:
    """Element of K0(Var): Z-linear combination of L^k * (monomial of labels).

    Immutable; arithmetic returns new elements in canonical form.  The unit
    class [pt] is the empty monomial, never a stored label.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[Monomial, int], int] | None = None):
        clean: dict[tuple[Monomial, int], int] = {}
        if terms:
            for (mono, k), c in terms.items():
                if c == 0:
                    continue
                if k < 0:
                    raise ValueError("negative L-exponent")
                mono = tuple(sorted(n for n in mono if n != PT_NAME))
                key = (mono, k)
                c = clean.get(key, 0) + c
                if c:
                    clean[key] = c
                elif key in clean:
                    del clean[key]
        self._terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "VarElement":
        return cls()

    @classmethod
    def one(cls) -> "VarElement":
        return cls({(UNIT_MONOMIAL, 0): 1})

    @classmethod
    def lefschetz(cls, exponent: int = 1) -> "VarElement":
        return cls({(UNIT_MONOMIAL, exponent): 1})

    @classmethod
    def label(cls, name: str) -> "VarElement":
        _check_label(name)
        if name == PT_NAME:
            return cls.one()
        return cls({((name,), 0): 1})

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, int, int]]:
        """Yield (monomial, L-exponent, coefficient) in canonical order."""
        for mono, k in sorted(self._terms):
            yield mono, k, self._terms[(mono, k)]

    def coefficient(self, mono: Iterable[str] = (), exponent: int = 0) -> int:
        key = (tuple(sorted(mono)), exponent)
        return self._terms.get(key, 0)

    def labels(self) -> set[str]:
        return {name for mono, _ in self._terms for name in mono}

    def is_zero(self) -> bool:
        return not self._terms

    def pt_coefficient(self) -> int:
        """Coefficient of the unit term (monomial [pt], L^0)."""
        return self._terms.get((UNIT_MONOMIAL, 0), 0)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "VarElement") -> "VarElement":
        if not isinstance(other, VarElement):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return _raw(out)

    def __neg__(self) -> "VarElement":
        return _raw({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "VarElement") -> "VarElement":
        if not isinstance(other, VarElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return VarElement.zero()
            return _raw({key: c * other for key, c in self._terms.items()})
        if not isinstance(other, VarElement):
            return NotImplemented
        out: dict[tuple[Monomial, int], int] = {}
        for (m1, k1), c1 in self._terms.items():
            for (m2, k2), c2 in other._terms.items():
                key = (tuple(sorted(m1 + m2)), k1 + k2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return _raw(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int) -> "VarElement":
        if n < 0:
            raise ValueError("negative power in K0(Var)")
        result = VarElement.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- equality / rendering ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, VarElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return _join_terms(
            (_render_var_term(abs(c), k, mono), c > 0)
            for mono, k, c in self.terms()
        )

    def __repr__(self) -> str:
        return f"VarElement({self})"


def _raw(terms: dict) -> VarElement:
    el = VarElement.__new__(VarElement)
    el._terms = terms
    return el


ONE = VarElement.one()
L = VarElement.lefschetz()


def geometric_sum(length: int) -> VarElement:
    """1 + L + ... + L^(length-1); the class of P^(length-1)."""
    if length < 0:
        raise ValueError("negative length")
    return _raw({(UNIT_MONOMIAL, k): 1 for k in range(length)})


class SgtElement:
    """Element of K0(sGT): Z-linear combination of SOD basis labels.

    The basis label is a sorted tuple of opaque label names; the empty tuple
    is the class of the derived category of a point.  No ring structure is
    imposed: tuples of length >= 2 stay formal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[str, ...], int] | None = None):
        clean: dict[tuple[str, ...], int] = {}
        if terms:
            for basis, c in terms.items():
                if c == 0:
                    continue
                basis = tuple(sorted(n for n in basis if n != PT_NAME))
                c = clean.get(basis, 0) + c
                if c:
                    clean[basis] = c
                elif basis in clean:
                    del clean[basis]
        self._terms = clean

    @classmethod
    def zero(cls) -> "SgtElement":
        return cls()

    @classmethod
    def point(cls, coefficient: int = 1) -> "SgtElement":
        return cls({PT_BASIS: coefficient})

    @classmethod
    def label(cls, name: str) -> "SgtElement":
        _check_label(name)
        return cls({(name,) if name != PT_NAME else PT_BASIS: 1})

    def terms(self) -> Iterator[tuple[tuple[str, ...], int]]:
        for basis in sorted(self._terms):
            yield basis, self._terms[basis]

    def coefficient(self, basis: Iterable[str] = ()) -> int:
        return self._terms.get(tuple(sorted(basis)), 0)

    def pt_coefficient(self) -> int:
        return self._terms.get(PT_BASIS, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "SgtElement") -> "SgtElement":
        if not isinstance(other, SgtElement):
            return NotImplemented
        out = dict(self._terms)
        for basis, c in other._terms.items():
            s = out.get(basis, 0) + c
            if s:
                out[basis] = s
            elif basis in out:
                del out[basis]
        return _raw_sgt(out)

    def __neg__(self) -> "SgtElement":
        return _raw_sgt({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "SgtElement") -> "SgtElement":
        if not isinstance(other, SgtElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return SgtElement.zero()
            return _raw_sgt({b: c * other for b, c in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, SgtElement) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return _join_terms(
            (_render_sgt_term(abs(c), basis), c > 0) for basis, c in self.terms()
        )

    def __repr__(self) -> str:
        return f"SgtElement({self})"


def _raw_sgt(terms: dict) -> SgtElement:
    el = SgtElement.__new__(SgtElement)
    el._terms = terms
    return el


# -- the three homomorphisms out of K0(Var) ---------------------------------


def mul(a: VarElement, b: VarElement) -> VarElement:
    """Product in K0(Var); monomials merge, L-exponents add."""
    return a * b


def mu(a: VarElement, catalog) -> SgtElement:
    """Projection K0(Var)/(L-1) -> K0(sGT).

    L goes to 1; expandable labels contribute their Euler number; a lone
    opaque label contributes its catalog SOD class; two or more opaque
    labels in one monomial stay together as a formal tuple basis label.
    """
    acc: dict[tuple[str, ...], int] = {}

    def add(basis: tuple[str, ...], c: int) -> None:
        s = acc.get(basis, 0) + c
        if s:
            acc[basis] = s
        elif basis in acc:
            del acc[basis]

    for (mono, _k), c in a._terms.items():
        opaque: list[str] = []
        for name in mono:
            entry = catalog.entry(name)
            if entry.label.kind == "expandable":
                c *= entry.label.euler
            else:
                opaque.append(name)
        if c == 0:
            continue
        if not opaque:
            add(PT_BASIS, c)
        elif len(opaque) == 1:
            for basis, c2 in catalog.sgt_class(opaque[0])._terms.items():
                add(basis, c * c2)
        else:
            add(tuple(sorted(opaque)), c)
    return _raw_sgt(acc)


def euler(a: VarElement, catalog) -> int:
    """Euler-characteristic ring homomorphism K0(Var) -> Z with e(L) = 1."""
    total = 0
    for (mono, _k), c in a._terms.items():
        for name in mono:
            c *= catalog.entry(name).label.euler
        total += c
    return total


def reduce_mod_L_minus_1(a: VarElement) -> VarElement:
    """Substitute L -> 1 while keeping labels unexpanded."""
    out: dict[tuple[Monomial, int], int] = {}
    for (mono, _k), c in a._terms.items():
        key = (mono, 0)
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return _raw(out)


def sgt_euler(a: SgtElement, catalog) -> int:
    """Euler number of an SOD class: e(pt) = 1, tuples multiply."""
    total = 0
    for basis, c in a._terms.items():
        for name in basis:
            c *= catalog.entry(name).label.euler
        total += c
    return total


# -- canonical text grammar --------------------------------------------------


def _join_terms(parts: Iterable[tuple[str, bool]]) -> str:
    rendered: list[str] = []
    for body, positive in parts:
        if not rendered:
            rendered.append(body if positive else "-" + body)
        else:
            rendered.append(("+ " if positive else "- ") + body)
    return " ".join(rendered) if rendered else "0"


def _render_var_term(c: int, k: int, mono: Monomial) -> str:
    factors: list[str] = []
    if c != 1 or (k == 0 and not mono):
        factors.append(str(c))
    if k == 1:
        factors.append("L")
    elif k > 1:
        factors.append(f"L^{k}")
    factors.extend(f"[{name}]" for name in mono)
    return "*".join(factors)


def _render_sgt_term(c: int, basis: tuple[str, ...]) -> str:
    factors: list[str] = []
    if c != 1:
        factors.append(str(c))
    if basis:
        factors.extend(f"[{name}]" for name in basis)
    else:
        factors.append(f"[{PT_NAME}]")
    return "*".join(factors)


def _split_terms(text: str) -> list[tuple[int, str]]:
    """Split on top-level + / - into (sign, term-body) pairs."""
    text = text.strip()
    if not text:
        raise ParseError("empty class expression")
    out: list[tuple[int, str]] = []
    sign, buf = 1, []
    start = True
    for ch in text:
        if ch in "+-":
            if start:
                sign = -sign if ch == "-" else sign
            else:
                out.append((sign, "".join(buf).strip()))
                sign = 1 if ch == "+" else -1
                buf = []
                start = True
        else:
            buf.append(ch)
            if not ch.isspace():
                start = False
    out.append((sign, "".join(buf).strip()))
    return out


def _parse_factor(tok: str) -> tuple[str, object]:
    tok = tok.strip()
    if not tok:
        raise ParseError("empty factor (stray '*')")
    if _INT_RE.match(tok):
        return ("int", int(tok))
    if tok == "L":
        return ("L", 1)
    if tok.startswith("L^"):
        exp = tok[2:]
        if not exp.isdigit():
            raise ParseError(f"bad Lefschetz exponent in {tok!r}")
        return ("L", int(exp))
    if tok.startswith("[") and tok.endswith("]"):
        name = tok[1:-1].strip()
        if not is_label_name(name):
            raise ParseError(f"invalid label name {name!r}")
        return ("label", name)
    raise ParseError(f"unrecognized factor {tok!r}")


def parse_var_element(text: str) -> VarElement:
    """Parse the canonical term grammar ``c*L^k*[A]*[B]`` into a VarElement."""
    if text.strip() == "0":
        return VarElement.zero()
    result = VarElement.zero()
    for sign, body in _split_terms(text):
        if not body:
            raise ParseError(f"empty term in {text!r}")
        coeff, k, labels = sign, 0, []
        for tok in body.split("*"):
            kind, val = _parse_factor(tok)
            if kind == "int":
                coeff *= val  # type: ignore[operator]
            elif kind == "L":
                k += val  # type: ignore[operator]
            else:
                labels.append(val)
        result = result + VarElement({(tuple(sorted(labels)), k): coeff})  # type: ignore[arg-type]
    return result


def parse_sgt_element(text: str) -> SgtElement:
    """Parse the term grammar without L factors into an SgtElement."""
    if text.strip() == "0":
        return SgtElement.zero()
    result = SgtElement.zero()
    for sign, body in _split_terms(text):
        if not body:
            raise ParseError(f"empty term in {text!r}")
        coeff, labels = sign, []
        for tok in body.split("*"):
            kind, val = _parse_factor(tok)
            if kind == "int":
                coeff *= val  # type: ignore[operator]
            elif kind == "L":
                raise ParseError("Lefschetz class not allowed in an SOD class")
            else:
                labels.append(val)
        result = result + SgtElement({tuple(sorted(labels)): coeff})  # type: ignore[arg-type]
    return result


__all__ = [
    "VarElement",
    "SgtElement",
    "ONE",
    "L",
    "geometric_sum",
    "mul",
    "mu",
    "euler",
    "reduce_mod_L_minus_1",
    "sgt_euler",
    "parse_var_element",
    "parse_sgt_element",
    "is_label_name",
    "UnknownLabel",
]
