"""
Finite covers of Seifert fibered spaces, tracked by degree bookkeeping.

A cover ``M_i -> M`` is recorded by its total degree ``d``, the degree ``m``
between regular fibers and the degree ``l`` of the induced orbifold cover of
the bases.  No covering maps are represented; only the numerical data that
the gradient estimates consume.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from .seifert_core import (
    SeifertError,
    SeifertInvariants,
    euler_number,
    format_sfs,
    orbifold_euler_characteristic,
    parse_sfs,
    require_closed,
)

__all__ = [
    "CoverValidationError",
    "FamilyError",
    "CoverDescriptor",
    "identity_cover",
    "surface_cover_genus",
    "pullback_circle_bundle",
    "fiber_cyclic_cover",
    "compose",
    "push_through",
    "prop_circle_family",
    "Affine",
    "PropCircle",
    "FiberCyclic",
    "Explicit",
    "Parametric",
    "FamilySpec",
    "parse_family",
    "format_family",
    "materialize",
    "descriptor_from_json",
    "descriptor_to_json",
]


class CoverValidationError(SeifertError):
    """Cover data violating one of the necessary conditions for a Seifert cover."""

    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__(f"{invariant}: {message}")


class FamilyError(SeifertError):
    """A family of covers that does not apply to the given base."""


@dataclass(frozen=True)
class CoverDescriptor:
    """
    One finite cover ``total -> base``.

    ``total`` may be ``None`` for covers known only through ``(d, m, l)``;
    the checks that need the covering manifold are then skipped.
    """

    base: SeifertInvariants
    total: SeifertInvariants | None
    d: int
    m: int
    l: int

    def __post_init__(self):
        validate_cover(self)


def validate_cover(c: CoverDescriptor) -> None:
    require_closed(c.base)
    for name in ("d", "m", "l"):
        value = getattr(c, name)
        if not isinstance(value, int) or value < 1:
            raise CoverValidationError("degree", f"{name} must be a positive integer, got {value!r}")
    if c.d != c.m * c.l:
        raise CoverValidationError("d = m*l", f"d={c.d} but m*l={c.m * c.l}")
    if c.total is None:
        return
    require_closed(c.total)
    chi_base = orbifold_euler_characteristic(c.base)
    chi_total = orbifold_euler_characteristic(c.total)
    if chi_total != c.l * chi_base:
        raise CoverValidationError(
            "Riemann-Hurwitz",
            f"chi(O_total)={chi_total} but l*chi(O_base)={c.l * chi_base}",
        )
    if c.total.k > c.l * c.base.k:
        raise CoverValidationError(
            "cone bound", f"k_total={c.total.k} exceeds l*k_base={c.l * c.base.k}"
        )
    e_base, e_total = euler_number(c.base), euler_number(c.total)
    if e_total != Fraction(c.l, c.m) * e_base:
        raise CoverValidationError(
            "Euler number",
            f"e(total)={e_total} but (l/m)*e(base)={Fraction(c.l, c.m) * e_base}",
        )


def identity_cover(M: SeifertInvariants) -> CoverDescriptor:
    return CoverDescriptor(M, M, 1, 1, 1)


def surface_cover_genus(g: int, i: int) -> int:
    """Genus of an ``i``-fold cover of a closed genus-``g`` surface, ``ig - i + 1``."""
    if g < 1:
        raise SeifertError("the 2-sphere has no connected non-trivial covers")
    if i < 1:
        raise SeifertError("covering degree must be positive")
    return i * g - i + 1


def _require_circle_bundle(M: SeifertInvariants) -> None:
    require_closed(M)
    if M.k:
        raise FamilyError(f"{M} has exceptional fibers; a circle bundle is required")


def pullback_circle_bundle(M: SeifertInvariants, l: int) -> CoverDescriptor:
    """Pull the circle bundle M back along an ``l``-fold cover of its base."""
    _require_circle_bundle(M)
    genus = surface_cover_genus(M.base_genus, l)
    # obstruction class multiplies by the degree of the base cover
    total = SeifertInvariants(genus, M.b * l)
    return CoverDescriptor(M, total, l, 1, l)


def fiber_cyclic_cover(M: SeifertInvariants, m: int) -> CoverDescriptor:
    """
    The ``m``-fold cyclic cover unwrapping each fiber, defined when ``m``
    divides ``e(M)`` (any ``m`` when ``e(M) = 0``).  Divides ``e`` by ``m``.
    """
    _require_circle_bundle(M)
    if m < 1:
        raise FamilyError("fiber degree must be positive")
    if M.b % m:
        raise FamilyError(f"fiber degree {m} does not divide e={euler_number(M)}")
    total = SeifertInvariants(M.base_genus, M.b // m)
    return CoverDescriptor(M, total, m, m, 1)


def compose(outer: CoverDescriptor, inner: CoverDescriptor) -> CoverDescriptor:
    """The composite ``inner.total -> inner.base = outer.total -> outer.base``."""
    if outer.total is None:
        raise CoverValidationError("composition", "outer cover has unknown total space")
    if outer.total != inner.base:
        raise CoverValidationError(
            "composition",
            f"outer total {outer.total} is not the inner base {inner.base}",
        )
    return CoverDescriptor(
        outer.base,
        inner.total,
        outer.d * inner.d,
        outer.m * inner.m,
        outer.l * inner.l,
    )


def push_through(cover: CoverDescriptor, family: Iterable[CoverDescriptor]) -> list[CoverDescriptor]:
    """Compose every cover of ``cover.total`` with ``cover``."""
    return [compose(cover, c) for c in family]


def prop_circle_family(M: SeifertInvariants, indices: Iterable[int]) -> list[CoverDescriptor]:
    """
    Covers of a circle bundle M with ``e != 0`` by circle bundles with
    ``|e| = 1``: pull back along an ``i``-fold surface cover, then unwrap the
    fibers ``|e| i`` times.  Degrees are ``d = |e| i^2``, ``m = |e| i``, ``l = i``.
    """
    _require_circle_bundle(M)
    if M.b == 0:
        raise FamilyError(f"{M} has e = 0; use a fiber-cyclic family")
    if M.base_genus < 1:
        raise FamilyError(f"{M} is a lens space (base genus 0)")
    e = euler_number(M)
    b = abs(int(e))
    sign = 1 if e > 0 else -1
    out = []
    for i in indices:
        if i < 2:
            raise FamilyError(f"family index must be >= 2, got {i}")
        total = SeifertInvariants(i * M.base_genus - i + 1, -sign)
        out.append(CoverDescriptor(M, total, b * i * i, b * i, i))
    return out


# -- family specifications -------------------------------------------------


@dataclass(frozen=True)
class Affine:
    """Integer sequence ``slope * i + intercept``."""

    slope: int
    intercept: int

    def __call__(self, i: int) -> int:
        return self.slope * i + self.intercept

    @property
    def unbounded(self) -> bool:
        return self.slope > 0

    @classmethod
    def parse(cls, text: str) -> "Affine":
        s = text.replace(" ", "").replace("*", "")
        m = re.fullmatch(r"(?:([+-]?\d*)i)?(?:([+-]?\d+))?", s)
        if not s or m is None:
            raise FamilyError(f"not an affine expression in i: {text!r}")
        coef, const = m.group(1), m.group(2)
        has_i = "i" in s
        if has_i and const and const[0] not in "+-":
            raise FamilyError(f"not an affine expression in i: {text!r}")
        if has_i:
            slope = int(coef + "1") if coef in ("", "+", "-") else int(coef)
        else:
            slope = 0
        return cls(slope, int(const) if const else 0)

    def __str__(self):
        if not self.slope:
            return str(self.intercept)
        head = "i" if self.slope == 1 else f"{self.slope}i"
        if self.intercept:
            return f"{head}{self.intercept:+d}"
        return head


@dataclass(frozen=True)
class PropCircle:
    i_from: int
    i_to: int

    def __post_init__(self):
        if not 2 <= self.i_from <= self.i_to:
            raise FamilyError(f"need 2 <= i_from <= i_to, got {self.i_from}..{self.i_to}")


@dataclass(frozen=True)
class FiberCyclic:
    degrees: tuple[int, ...]

    def __post_init__(self):
        if not self.degrees or any(m < 1 for m in self.degrees):
            raise FamilyError("fiber-cyclic degrees must be a non-empty list of positive integers")


@dataclass(frozen=True)
class Explicit:
    covers: tuple[CoverDescriptor, ...]

    def __post_init__(self):
        if not self.covers:
            raise FamilyError("explicit family is empty")
        bases = {c.base for c in self.covers}
        if len(bases) != 1:
            raise FamilyError("explicit covers do not share a base")


@dataclass(frozen=True)
class Parametric:
    """
    Covers with orbifold degree ``l(i)`` and fiber degree ``m(i)`` for every
    ``i >= start``.  ``prefix`` is how many terms get materialized.
    """

    l: Affine
    m: Affine
    declared_unbounded_m: bool | None = None
    start: int = 1
    prefix: int = 10

    def __post_init__(self):
        for name in ("l", "m"):
            f = getattr(self, name)
            if f.slope < 0 or f(self.start) < 1:
                raise FamilyError(f"{name}(i) = {f} is not a positive sequence for i >= {self.start}")
        if self.declared_unbounded_m is None:
            object.__setattr__(self, "declared_unbounded_m", self.m.unbounded)
        elif self.declared_unbounded_m != self.m.unbounded:
            raise FamilyError(
                f"declared_unbounded_m={self.declared_unbounded_m} contradicts m(i) = {self.m}"
            )
        if self.prefix < 1:
            raise FamilyError("prefix must be positive")


FamilySpec = Union[PropCircle, FiberCyclic, Explicit, Parametric]


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def descriptor_from_json(entry: dict, base: SeifertInvariants) -> CoverDescriptor:
    try:
        sfs = entry.get("sfs")
        total = parse_sfs(sfs) if sfs else None
        return CoverDescriptor(base, total, int(entry["d"]), int(entry["m"]), int(entry["l"]))
    except KeyError as exc:
        raise FamilyError(f"cover entry missing field {exc.args[0]!r}: {entry}") from None


def descriptor_to_json(c: CoverDescriptor) -> dict:
    return {
        "sfs": format_sfs(c.total) if c.total is not None else None,
        "d": c.d,
        "m": c.m,
        "l": c.l,
    }


def parse_family(text: str, base: SeifertInvariants | None = None) -> FamilySpec:
    """
    Parse the command-line family forms::

        prop-circle:i=2..100
        fiber-cyclic:m=1,2,4,8      (ranges a..b allowed)
        parametric:l=i,m=7          (optional start=N, prefix=N)
        explicit:@covers.json       (or an inline JSON array)

    ``base`` is required for explicit families.
    """
    kind, sep, body = text.partition(":")
    if not sep:
        raise FamilyError(f"family must look like kind:args, got {text!r}")
    kind = kind.strip().lower()
    body = body.strip()
    try:
        if kind == "prop-circle":
            key, _, value = body.partition("=")
            lo, dots, hi = value.partition("..")
            if key.strip() != "i" or not dots:
                raise FamilyError(f"expected i=a..b, got {body!r}")
            return PropCircle(int(lo), int(hi))
        if kind == "fiber-cyclic":
            key, _, value = body.partition("=")
            if key.strip() != "m":
                raise FamilyError(f"expected m=..., got {body!r}")
            return FiberCyclic(tuple(_int_list(value)))
        if kind == "parametric":
            args = {}
            for item in body.split(","):
                key, eq, value = item.partition("=")
                if not eq:
                    raise FamilyError(f"bad parametric argument {item!r}")
                args[key.strip()] = value.strip()
            unknown = set(args) - {"l", "m", "start", "prefix"}
            if unknown or not {"l", "m"} <= set(args):
                raise FamilyError(f"parametric family needs l= and m=, got {sorted(args)}")
            return Parametric(
                Affine.parse(args["l"]),
                Affine.parse(args["m"]),
                start=int(args.get("start", 1)),
                prefix=int(args.get("prefix", 10)),
            )
        if kind == "explicit":
            if base is None:
                raise FamilyError("explicit families need the base manifold")
            raw = Path(body[1:]).read_text() if body.startswith("@") else body
            entries = json.loads(raw)
            if not isinstance(entries, list):
                raise FamilyError("explicit family must be a JSON array")
            return Explicit(tuple(descriptor_from_json(e, base) for e in entries))
    except ValueError as exc:
        if isinstance(exc, SeifertError):
            raise
        raise FamilyError(f"bad family {text!r}: {exc}") from None
    raise FamilyError(f"unknown family kind {kind!r}")


def format_family(family: FamilySpec) -> str:
    if isinstance(family, PropCircle):
        return f"prop-circle:i={family.i_from}..{family.i_to}"
    if isinstance(family, FiberCyclic):
        return "fiber-cyclic:m=" + ",".join(map(str, family.degrees))
    if isinstance(family, Parametric):
        return (
            f"parametric:l={family.l},m={family.m},"
            f"start={family.start},prefix={family.prefix}"
        )
    return "explicit:" + json.dumps([descriptor_to_json(c) for c in family.covers])


def materialize(base: SeifertInvariants, family: FamilySpec) -> list[tuple[int, CoverDescriptor]]:
    """Indexed covers of ``base``; parametric families yield their prefix."""
    if isinstance(family, PropCircle):
        indices = range(family.i_from, family.i_to + 1)
        return list(zip(indices, prop_circle_family(base, indices)))
    if isinstance(family, FiberCyclic):
        return [(n, fiber_cyclic_cover(base, m)) for n, m in enumerate(family.degrees, 1)]
    if isinstance(family, Explicit):
        if family.covers[0].base != base:
            raise FamilyError(f"explicit covers are over {family.covers[0].base}, not {base}")
        return list(enumerate(family.covers, 1))
    if isinstance(family, Parametric):
        out = []
        for i in range(family.start, family.start + family.prefix):
            m, l = family.m(i), family.l(i)
            out.append((i, CoverDescriptor(base, None, m * l, m, l)))
        return out
    raise TypeError(f"not a family: {family!r}")
