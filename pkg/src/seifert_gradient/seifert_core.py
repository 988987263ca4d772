"""
Seifert invariants, base orbifolds and the two basic rational invariants.

A closed orientable Seifert fibered space with orientable base is written

    SFS[g=<genus>; b=<int>; (a1,b1),...,(ak,bk)]

with every exceptional pair normalized to ``1 <= beta < alpha``.  All
arithmetic is done with :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "SeifertError",
    "NotationError",
    "SeifertInvariants",
    "Orbifold",
    "normalize",
    "base_orbifold",
    "orbifold_euler_characteristic",
    "euler_number",
    "loose_euler_number",
    "require_closed",
    "parse_sfs",
    "format_sfs",
]


class SeifertError(ValueError):
    """Invalid Seifert data, or an operation called outside its domain."""


class NotationError(SeifertError):
    """Malformed ``SFS[...]`` text.  ``position`` indexes the input string."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


@dataclass(frozen=True)
class SeifertInvariants:
    base_genus: int
    b: int
    exceptional: tuple[tuple[int, int], ...] = ()
    boundary_components: int = 0

    def __post_init__(self):
        if self.base_genus < 0:
            raise SeifertError(f"base genus must be >= 0, got {self.base_genus}")
        if self.boundary_components < 0:
            raise SeifertError("boundary_components must be >= 0")
        pairs = tuple(sorted((int(a), int(c)) for a, c in self.exceptional))
        for alpha, beta in pairs:
            if alpha < 2 or not 1 <= beta < alpha or math.gcd(alpha, beta) != 1:
                raise SeifertError(
                    f"exceptional pair ({alpha},{beta}) is not normalized; "
                    "use normalize()"
                )
        object.__setattr__(self, "exceptional", pairs)

    @property
    def k(self) -> int:
        """Number of exceptional fibers (cone points of the base)."""
        return len(self.exceptional)

    @property
    def is_closed(self) -> bool:
        return self.boundary_components == 0

    @property
    def is_circle_bundle(self) -> bool:
        return not self.exceptional

    def __str__(self):
        return format_sfs(self)


@dataclass(frozen=True)
class Orbifold:
    underlying_genus: int
    cone_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.underlying_genus < 0:
            raise SeifertError("underlying genus must be >= 0")
        orders = tuple(sorted(int(a) for a in self.cone_orders))
        if any(a < 2 for a in orders):
            raise SeifertError(f"cone orders must be >= 2, got {orders}")
        object.__setattr__(self, "cone_orders", orders)

    @property
    def k(self) -> int:
        return len(self.cone_orders)

    def euler_characteristic(self) -> Fraction:
        return orbifold_euler_characteristic(self)


def normalize(
    base_genus: int,
    b: int,
    pairs: Iterable[tuple[int, int]] = (),
    boundary_components: int = 0,
) -> SeifertInvariants:
    """
    Bring loose Seifert data into normal form.

    Each beta is reduced mod alpha into ``[1, alpha-1]`` with the quotient
    moved into ``b``; pairs with ``alpha == 1`` are regular fibers and are
    absorbed into ``b`` entirely.  The Euler number is unchanged.

    >>> normalize(0, 0, [(2, 3)])
    SeifertInvariants(base_genus=0, b=1, exceptional=((2, 1),), boundary_components=0)
    """
    b = int(b)
    out = []
    for alpha, beta in pairs:
        alpha, beta = int(alpha), int(beta)
        if alpha <= 0:
            raise SeifertError(f"fiber multiplicity must be positive in ({alpha},{beta})")
        if alpha == 1:
            b += beta
            continue
        if math.gcd(alpha, beta) != 1:
            raise SeifertError(f"pair ({alpha},{beta}) is not coprime")
        q, r = divmod(beta, alpha)
        b += q
        out.append((alpha, r))
    return SeifertInvariants(base_genus, b, tuple(out), boundary_components)


def base_orbifold(M: SeifertInvariants) -> Orbifold:
    return Orbifold(M.base_genus, tuple(a for a, _ in M.exceptional))


def orbifold_euler_characteristic(O: Orbifold | SeifertInvariants) -> Fraction:
    """chi(O) = 2 - 2g(B) - sum_j (1 - 1/alpha_j), exactly."""
    if isinstance(O, SeifertInvariants):
        O = base_orbifold(O)
    chi = Fraction(2 - 2 * O.underlying_genus)
    for alpha in O.cone_orders:
        chi -= 1 - Fraction(1, alpha)
    return chi


def require_closed(M: SeifertInvariants) -> None:
    if not M.is_closed:
        raise SeifertError(
            f"{M} has {M.boundary_components} boundary component(s); "
            "only closed manifolds are supported here"
        )


def loose_euler_number(b: int, pairs: Iterable[tuple[int, int]] = ()) -> Fraction:
    """Euler number of un-normalized data, same convention as :func:`euler_number`."""
    total = Fraction(b)
    for alpha, beta in pairs:
        total += Fraction(beta, alpha)
    return -total


def euler_number(M: SeifertInvariants) -> Fraction:
    """
    e(M) = -(b + sum_j beta_j/alpha_j).

    For circle bundles this is ``-b``, so ``|e|`` is the obstruction class.
    """
    require_closed(M)
    return loose_euler_number(M.b, M.exceptional)


# -- text notation ---------------------------------------------------------

_INT = r"[+\-−]?\d+"
_TOKEN = re.compile(
    r"\s*(?:(?P<int>" + _INT + r")|(?P<word>[A-Za-z]+)|(?P<punct>[\[\];=(),]))"
)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self._next()

    def _next(self):
        m = _TOKEN.match(self.text, self.pos)
        rest = self.text[self.pos:]
        if m is None:
            start = self.pos + len(rest) - len(rest.lstrip())
            if start >= len(self.text):
                self.kind, self.value, self.start = "end", "", start
                return
            raise NotationError("unexpected character", self.text, start)
        self.start = m.start(m.lastgroup)
        self.kind = m.lastgroup
        self.value = m.group(m.lastgroup)
        self.pos = m.end()

    def expect(self, value: str) -> None:
        if self.value != value or self.kind == "end":
            raise NotationError(f"expected {value!r}", self.text, self.start)
        self._next()

    def integer(self) -> int:
        if self.kind != "int":
            raise NotationError("expected an integer", self.text, self.start)
        v = int(self.value.replace("−", "-"))
        self._next()
        return v

    def peek(self, value: str) -> bool:
        return self.kind != "end" and self.value == value


def parse_sfs(text: str) -> SeifertInvariants:
    """
    Parse ``SFS[g=..; b=..; (a,b),...]`` and return normalized invariants.

    Whitespace is ignored.  Loose pairs (alpha = 1, beta outside
    ``[1, alpha)``) are accepted and normalized.
    """
    s = _Scanner(text)
    if s.value.upper() != "SFS":
        raise NotationError("expected 'SFS'", text, s.start)
    s._next()
    s.expect("[")
    s.expect("g")
    s.expect("=")
    genus = s.integer()
    if genus < 0:
        raise NotationError("genus must be non-negative", text, s.start)
    s.expect(";")
    s.expect("b")
    s.expect("=")
    b = s.integer()
    s.expect(";")
    pairs = []
    if s.peek("("):
        while True:
            s.expect("(")
            alpha = s.integer()
            s.expect(",")
            beta = s.integer()
            s.expect(")")
            pairs.append((alpha, beta))
            if not s.peek(","):
                break
            s.expect(",")
    s.expect("]")
    if s.kind != "end":
        raise NotationError("trailing input", text, s.start)
    return normalize(genus, b, pairs)


def format_sfs(M: SeifertInvariants) -> str:
    """Canonical notation; ``parse_sfs(format_sfs(M)) == M`` for closed M."""
    fibers = ",".join(f"({a},{c})" for a, c in M.exceptional)
    head = f"SFS[g={M.base_genus}; b={M.b};"
    return f"{head} {fibers}]" if fibers else f"{head}]"


def lcm(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
