"""
Heegaard gradient estimates for families of finite covers.

For a cover ``M_i -> M`` of degree ``d_i = m_i l_i`` the Heegaard genus of
``M_i`` is bracketed using only ``chi(O)``, ``k``, ``m_i`` and ``l_i``::

    -chi(O)/m_i  <=  g(M_i)/d_i  <=  (-chi(O) + k/2)/m_i + 3/(m_i l_i)

and tightened further when ``M_i`` itself is known.  Reports turn these
brackets into a verdict on whether the infimum of ``chi^h_-(M_i)/d_i`` over
the family is zero.  Infinite families are decided symbolically, never by
extrapolating a finite prefix.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classification import GeometryType, geometry, has_finite_pi1, is_irreducible
from .covers import (
    CoverDescriptor,
    CoverValidationError,
    Explicit,
    FamilyError,
    FamilySpec,
    FiberCyclic,
    Parametric,
    PropCircle,
    format_family,
    identity_cover,
    materialize,
    push_through,
)
from .heegaard import chi_sh_interval, genus_bounds
from .seifert_core import (
    SeifertError,
    SeifertInvariants,
    euler_number,
    orbifold_euler_characteristic,
    require_closed,
)

__all__ = [
    "GradientError",
    "Verdict",
    "RationalInterval",
    "GradientTerm",
    "GradientReport",
    "term_interval",
    "gradient_sequence",
    "decide_zero_gradient",
    "genus_gradient_equivalence",
    "strong_gradient_report",
    "negative_report",
    "prop_circle_bound",
    "prop_circle_threshold",
    "rational_limit",
]


class GradientError(SeifertError):
    """A gradient computation requested outside its hypotheses."""


class Verdict(enum.Enum):
    ZERO = "Zero"
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    UNKNOWN = "UnknownFinitePrefix"


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def scale(self, factor: Fraction) -> "RationalInterval":
        return RationalInterval(self.lo * factor, self.hi * factor)


@dataclass(frozen=True)
class GradientTerm:
    index: int
    d: int
    m: int
    l: int
    chi_over_d: RationalInterval
    genus_over_d: RationalInterval

    @property
    def chi(self) -> RationalInterval:
        """Bounds on chi^h_-(M_i) itself."""
        return self.chi_over_d.scale(Fraction(self.d))


@dataclass(frozen=True)
class GradientReport:
    base: SeifertInvariants
    family: FamilySpec | None
    terms: tuple[GradientTerm, ...]
    inf_upper_bound: Fraction | None
    inf_lower_bound: Fraction | None
    verdict: Verdict
    certificate: tuple[str, ...]
    monotone: bool = False
    strong: bool = False
    through: CoverDescriptor | None = None

    def __post_init__(self):
        lo, hi = self.inf_lower_bound, self.inf_upper_bound
        if lo is not None and hi is not None and lo > hi:
            raise ValueError(f"inf_lower_bound {lo} exceeds inf_upper_bound {hi}")
        if self.verdict is Verdict.POSITIVE and not (lo is not None and lo > 0):
            raise ValueError("a Positive verdict needs a positive lower bound")


# -- polynomial limits ------------------------------------------------------


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        for b, y in enumerate(q):
            out[a + b] += x * y
    return out


def _degree(p: Sequence[Fraction]) -> int:
    for n in range(len(p) - 1, -1, -1):
        if p[n]:
            return n
    return -1


def rational_limit(num: Sequence, den: Sequence) -> Fraction | None:
    """
    Limit of ``num(i)/den(i)`` as ``i -> oo`` for coefficient lists (constant
    term first).  ``den`` must have positive leading coefficient.  ``None``
    means the quotient diverges.
    """
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    dn, dd = _degree(num), _degree(den)
    if dd < 0 or den[dd] <= 0:
        raise ValueError("denominator must have positive leading coefficient")
    if dn < dd:
        return Fraction(0)
    if dn == dd:
        return num[dn] / den[dd]
    return None


def _affine(f) -> list[Fraction]:
    return [Fraction(f.intercept), Fraction(f.slope)]


# -- single terms -------------------------------------------------------------


def _require_infinite_pi1(M: SeifertInvariants) -> None:
    require_closed(M)
    if has_finite_pi1(M):
        raise GradientError(
            f"{M} has finite fundamental group; its gradient is negative "
            "(see classification.heegaard_gradient_sign)"
        )


def term_interval(
    base: SeifertInvariants,
    cover: CoverDescriptor,
    index: int = 1,
    strong: bool = False,
) -> GradientTerm:
    """
    Certified bounds on ``g(M_i)/d_i`` and ``chi^h_-(M_i)/d_i`` for one cover.

    With ``strong=True`` the term uses chi^sh_-, which is only available when
    the covering manifold is a circle bundle with ``|e| = 1``.
    """
    _require_infinite_pi1(base)
    if cover.base != base:
        raise CoverValidationError("base", f"cover is over {cover.base}, not {base}")
    chi = orbifold_euler_characteristic(base)
    d, m, l = cover.d, cover.m, cover.l
    lo = -chi / m
    hi = (-chi + Fraction(base.k, 2)) / m + Fraction(3, m * l)
    if cover.total is not None:
        genus = genus_bounds(cover.total).tightest()
        lo = max(lo, Fraction(genus.lo, d))
        hi = min(hi, Fraction(genus.hi, d))
    irreducible = is_irreducible(base)
    # irreducible with infinite pi_1 rules out genus 0 and 1
    lo = max(lo, Fraction(2, d) if irreducible else Fraction(0))
    if lo > hi:
        raise CoverValidationError(
            "genus bracket",
            f"no genus fits cover d={d}, m={m}, l={l}: [{lo}, {hi}]",
        )
    genus_over_d = RationalInterval(lo, hi)
    if strong:
        chi_sh = chi_sh_interval(cover.total) if cover.total is not None else None
        if chi_sh is None:
            raise GradientError("strongly irreducible chi_- is only certified for |e| = 1 circle bundles")
        chi_over_d = RationalInterval(Fraction(chi_sh.lo, d), Fraction(chi_sh.hi, d))
    else:
        shift = Fraction(2, d)
        chi_over_d = RationalInterval(max(2 * lo - shift, Fraction(0)), max(2 * hi - shift, Fraction(0)))
    return GradientTerm(index, d, m, l, chi_over_d, genus_over_d)


# -- the circle-bundle family -----------------------------------------------


def prop_circle_bound(g: int, b: int, i: int) -> Fraction:
    """The bound ``4g/(b i)`` on the i-th term of the circle-bundle family."""
    return Fraction(4 * g, b * i)


def prop_circle_threshold(g: int, b: int, n: int) -> int:
    """
    Smallest ``i >= 2`` with ``(4(ig - i + 1) - 2)/(b i^2) < 1/n``.

    The terms are strictly decreasing in ``i``, so every later term is
    below ``1/n`` as well.
    """
    if g < 1 or b < 1 or n < 1:
        raise ValueError("need g, b, n >= 1")
    # n (4(g-1) i + 2) < b i^2
    a = 4 * (g - 1)
    i = max(2, (n * a) // b)
    while n * (a * i + 2) >= b * i * i:
        i += 1
    return i


def _prop_circle_certificate(M: SeifertInvariants, through: CoverDescriptor | None) -> list[str]:
    g = M.base_genus
    b = abs(int(euler_number(M)))
    lines = [
        f"M_i: circle bundle over the genus (i*{g}-i+1) surface with |e| = 1, "
        f"d_i = {b}*i^2, m_i = {b}*i, l_i = i",
        "g(M_i) = 2(ig-i+1): the horizontal Heegaard surface is minimal when |e| = 1",
        f"chi_h(M_i)/d_i = (4(ig-i+1)-2)/({b} i^2) <= 4*{g}/({b} i) -> 0",
        "infinite pi_1, so every chi_h(M_i) >= 0; the infimum over i >= 2 is 0",
    ]
    if through is not None and through.d > 1:
        lines.append(
            f"pushed through a degree-{through.d} cover: each term divided by {through.d}, "
            "limit still 0"
        )
    return lines


# -- reports ------------------------------------------------------------------


def _materialize_terms(base, family, through, strong) -> list[GradientTerm]:
    if through is None:
        indexed = materialize(base, family)
    else:
        if through.base != base:
            raise CoverValidationError("base", f"cover is over {through.base}, not {base}")
        if through.total is None:
            raise CoverValidationError("composition", "cover has unknown total space")
        indexed = materialize(through.total, family)
        composed = push_through(through, [c for _, c in indexed])
        indexed = [(i, c) for (i, _), c in zip(indexed, composed)]
    terms = [term_interval(base, c, i, strong=strong) for i, c in indexed]
    terms.sort(key=lambda t: t.index)
    return terms


def _is_monotone(terms: Sequence[GradientTerm]) -> bool:
    return all(a.chi_over_d.hi >= b.chi_over_d.hi for a, b in zip(terms, terms[1:]))


def _finite_verdict(terms):
    lo = min(t.chi_over_d.lo for t in terms)
    if lo > 0:
        return Verdict.POSITIVE, lo, [
            f"finite family of {len(terms)} covers, every term >= {lo} > 0",
        ]
    return Verdict.UNKNOWN, Fraction(0), [
        f"finite family of {len(terms)} covers; no positive lower bound is certified",
    ]


def gradient_sequence(
    base: SeifertInvariants,
    family: FamilySpec,
    through: CoverDescriptor | None = None,
) -> GradientReport:
    """
    Materialize the terms of ``family`` and bound its infimal Heegaard gradient.

    ``through`` is an optional finite cover of ``base``; the family is then
    a family of covers of ``through.total``, composed down to ``base``.
    """
    _require_infinite_pi1(base)
    terms = _materialize_terms(base, family, through, strong=False)
    upper = min(t.chi_over_d.hi for t in terms)
    fam_base = through.total if through is not None else base
    if isinstance(family, PropCircle):
        g, b = fam_base.base_genus, abs(int(euler_number(fam_base)))
        scale = through.d if through is not None else 1
        for t in terms:
            if t.chi_over_d.hi > prop_circle_bound(g, b, t.index) / scale:
                raise AssertionError(f"term {t.index} exceeds 4g/(bi)")
        verdict, lower = Verdict.ZERO, Fraction(0)
        cert = _prop_circle_certificate(fam_base, through)
    elif isinstance(family, Parametric):
        verdict, lower, cert = _parametric_verdict(base, family, through)
    else:
        verdict, lower, cert = _finite_verdict(terms)
    return GradientReport(
        base, family, tuple(terms), upper, lower, verdict, tuple(cert),
        monotone=_is_monotone(terms), through=through,
    )


def _chain_constant(base: SeifertInvariants) -> Fraction:
    return -orbifold_euler_characteristic(base) + Fraction(base.k, 2)


def _parametric_verdict(base, family: Parametric, through):
    if through is not None:
        raise FamilyError("parametric families are given directly over the base")
    chi = orbifold_euler_characteristic(base)
    A = _chain_constant(base)
    l, m = _affine(family.l), _affine(family.m)
    ml = _poly_mul(m, l)
    # chi_h/d <= 2 g/d - 2/d <= (2A l + 4)/(m l)
    limit = rational_limit([2 * A * l[0] + 4, 2 * A * l[1]], ml)
    if limit is not None and limit <= 0:
        return Verdict.ZERO, Fraction(0), [
            f"g(M_i)/d_i <= ({A})/m_i + 3/(m_i l_i) with m_i = {family.m}, l_i = {family.l}",
            f"chi_h(M_i)/d_i <= (2*({A}) l_i + 4)/(m_i l_i) -> 0 as i -> oo",
        ]
    if chi < 0 and not family.m.unbounded:
        bound = -chi / family.m.intercept
        return Verdict.POSITIVE, bound, [
            f"m_i = {family.m} is bounded",
            f"chi_h(M_i)/d_i >= g(M_i)/d_i >= 2g(B_i)+k_i-2 over d_i >= -chi(O)/m_i = {bound}",
        ]
    return Verdict.UNKNOWN, Fraction(0), [
        "upper bounds do not tend to 0 and no uniform lower bound is available",
    ]


def decide_zero_gradient(base: SeifertInvariants, family: FamilySpec) -> GradientReport:
    """
    Decide whether the family has zero Heegaard gradient when the base
    orbifold has negative Euler characteristic: zero exactly when the
    fiber degrees ``m_i`` are unbounded.
    """
    require_closed(base)
    chi = orbifold_euler_characteristic(base)
    if chi >= 0:
        raise GradientError(
            f"chi(O) = {chi} >= 0; the fiber-degree criterion needs chi(O) < 0 "
            "(use gradient_sequence)"
        )
    terms = _materialize_terms(base, family, None, strong=False)
    upper = min(t.chi_over_d.hi for t in terms)
    A = _chain_constant(base)
    head = f"chi(O) = {chi} < 0, so M is irreducible with infinite pi_1"
    if isinstance(family, PropCircle):
        b = abs(int(euler_number(base)))
        unbounded, m_desc = True, f"{b}*i"
    elif isinstance(family, Parametric):
        unbounded, m_desc = bool(family.declared_unbounded_m), str(family.m)
    else:
        unbounded, m_desc = False, None
    if unbounded:
        cert = (
            head,
            f"fiber degrees m_i = {m_desc} are unbounded",
            f"g(M_i)/d_i <= (-chi(O_i) + 3 + k_i/2)/d_i <= ({A})/m_i + 3/(m_i l_i) -> 0",
            "chi_h(M_i)/d_i <= 2 g(M_i)/d_i, so the Heegaard gradient is 0",
        )
        return GradientReport(
            base, family, tuple(terms), upper, Fraction(0), Verdict.ZERO, cert,
            monotone=_is_monotone(terms),
        )
    if isinstance(family, Parametric):
        m_star = family.m.intercept
    else:
        m_star = max(t.m for t in terms)
    lower = -chi / m_star
    if not isinstance(family, Parametric):
        lower = max(lower, min(t.chi_over_d.lo for t in terms))
    cert = (
        head,
        f"fiber degrees are bounded by m* = {m_star}",
        "g(M_i) >= 2g(B_i) + k_i - 2 >= -chi(O_i) = -l_i chi(O)",
        f"chi_h(M_i)/d_i >= g(M_i)/d_i >= -chi(O)/m_i >= {-chi / m_star}",
    )
    return GradientReport(
        base, family, tuple(terms), upper, lower, Verdict.POSITIVE, cert,
        monotone=_is_monotone(terms),
    )


def _genus_verdict(report: GradientReport) -> Verdict:
    """Zero/Positive/Unknown decided from g(M_i)/d_i alone."""
    family, base, through = report.family, report.base, report.through
    terms = report.terms
    if isinstance(family, PropCircle):
        fam_base = through.total if through is not None else base
        g, b = fam_base.base_genus, abs(int(euler_number(fam_base)))
        scale = through.d if through is not None else 1
        # g(M_i)/d_i = 2(ig - i + 1) / (scale b i^2)
        num = [2, 2 * (g - 1)]
        den = [0, 0, scale * b]
        for t in terms:
            value = Fraction(num[0] + num[1] * t.index, den[2] * t.index ** 2)
            if t.genus_over_d != RationalInterval(value, value):
                return Verdict.UNKNOWN
        return Verdict.ZERO if rational_limit(num, den) == 0 else Verdict.UNKNOWN
    if isinstance(family, Parametric):
        A = _chain_constant(base)
        l, m = _affine(family.l), _affine(family.m)
        limit = rational_limit([A * l[0] + 3, A * l[1]], _poly_mul(m, l))
        if limit is not None and limit <= 0:
            return Verdict.ZERO
        chi = orbifold_euler_characteristic(base)
        if chi < 0 and not family.m.unbounded:
            return Verdict.POSITIVE
        return Verdict.UNKNOWN
    if not terms:
        return Verdict.UNKNOWN
    if min(t.genus_over_d.hi for t in terms) == 0:
        return Verdict.ZERO
    if min(t.genus_over_d.lo for t in terms) > 0:
        return Verdict.POSITIVE
    return Verdict.UNKNOWN


def genus_gradient_equivalence(report: GradientReport) -> bool:
    """
    Check that the chi^h-based verdict is Zero exactly when the genus-based
    one is.  Requires an irreducible base with infinite pi_1.
    """
    _require_infinite_pi1(report.base)
    if not is_irreducible(report.base):
        raise GradientError(f"{report.base} is reducible")
    return (report.verdict is Verdict.ZERO) == (_genus_verdict(report) is Verdict.ZERO)


def strong_gradient_report(
    base: SeifertInvariants,
    cover: CoverDescriptor | None,
    family: PropCircle,
) -> GradientReport:
    """
    Strong Heegaard gradient of an SL2R-tilde manifold through a supplied
    finite cover by a circle bundle with ``e != 0`` (``None``: the base is
    itself such a bundle).
    """
    if geometry(base) is not GeometryType.SL2R:
        raise GradientError(f"{base} is not an SL2R-tilde manifold")
    if cover is None:
        cover = identity_cover(base)
    if cover.base != base:
        raise CoverValidationError("base", f"cover is over {cover.base}, not {base}")
    total = cover.total
    if total is None or total.k or euler_number(total) == 0:
        raise CoverValidationError(
            "circle bundle", "the cover must be a circle bundle with non-zero Euler number"
        )
    if not isinstance(family, PropCircle):
        raise FamilyError("strong gradient reports use the circle-bundle family")
    terms = _materialize_terms(base, family, cover, strong=True)
    cert = _prop_circle_certificate(total, cover)
    cert.append(
        "each M_i is a circle bundle with |e| = 1: every irreducible Heegaard "
        "surface is strongly irreducible, so chi_sh(M_i) = chi_h(M_i)"
    )
    return GradientReport(
        base, family, tuple(terms), min(t.chi_over_d.hi for t in terms),
        Fraction(0), Verdict.ZERO, tuple(cert),
        monotone=_is_monotone(terms), strong=True, through=cover,
    )


def negative_report(M: SeifertInvariants) -> GradientReport:
    """Report for a finite-pi_1 manifold, covered by S^3 with gradient -2/d."""
    if not has_finite_pi1(M):
        raise GradientError(f"{M} has infinite fundamental group")
    cert = (
        f"chi(O) = {orbifold_euler_characteristic(M)} > 0 and e = {euler_number(M)} != 0: "
        "finite pi_1, so M is covered by S^3",
        "the universal cover S^3 -> M of degree d = |pi_1| has chi_h(S^3)/d = -2/d < 0",
    )
    return GradientReport(M, None, (), None, None, Verdict.NEGATIVE, cert)


def describe_family(report: GradientReport) -> str:
    return format_family(report.family) if report.family is not None else ""
