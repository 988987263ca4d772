"""
Certified Heegaard genus intervals.

The upper end is always the genus of a vertical Heegaard surface; the lower
end comes from the fact that a horizontal surface, when it is minimal, has
genus one less than the vertical one.  Circle bundles with ``|e| = 1`` are
the one family where the genus is known exactly: the horizontal surface of
genus ``2 g(B)`` is minimal and every irreducible splitting is strongly
irreducible.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classification import has_finite_pi1
from .seifert_core import SeifertError, SeifertInvariants, euler_number, require_closed

__all__ = [
    "GenusInterval",
    "ChiInterval",
    "vertical_genus",
    "lemma_genus_interval",
    "genus_bounds",
    "has_exact_circle_bundle_genus",
    "circle_bundle_exact_genus",
    "chi_h_interval",
    "chi_sh_interval",
]


@dataclass(frozen=True)
class GenusInterval:
    """
    Lemma interval ``[lo, hi]`` for the Heegaard genus.

    ``value`` is the genus itself when a sharper argument certifies it; the
    interval is left untouched so that it still contains the vertical genus.
    """

    lo: int
    hi: int
    value: int | None = None

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad genus interval [{self.lo}, {self.hi}]")
        if self.value is not None and self.value not in self:
            raise ValueError(f"genus {self.value} outside [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.value is not None or self.lo == self.hi

    def tightest(self) -> GenusInterval:
        if self.value is None:
            return self
        return GenusInterval(self.value, self.value, self.value)

    def __contains__(self, genus: int) -> bool:
        return self.lo <= genus <= self.hi


@dataclass(frozen=True)
class ChiInterval:
    """
    Interval for chi_- = 2*genus - 2 of a Heegaard surface.

    ``clamped`` records that the lower end was raised to 0 because the
    manifold has infinite fundamental group.
    """

    lo: int
    hi: int
    clamped: bool = False

    def __post_init__(self):
        if self.lo > self.hi or self.lo % 2 or self.hi % 2:
            raise ValueError(f"bad chi interval [{self.lo}, {self.hi}]")

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


def vertical_genus(M: SeifertInvariants) -> int:
    """Genus of a vertical Heegaard surface; depends only on g(B) and k."""
    require_closed(M)
    if M.k < 2:
        return 2 * M.base_genus + 1
    return 2 * M.base_genus + M.k - 1


def lemma_genus_interval(M: SeifertInvariants) -> GenusInterval:
    """``[max(0, 2g(B)+k-2), vertical_genus]`` with no hypothesis on pi_1."""
    require_closed(M)
    lo = max(0, 2 * M.base_genus + M.k - 2)
    return GenusInterval(lo, vertical_genus(M))


def has_exact_circle_bundle_genus(M: SeifertInvariants) -> bool:
    return M.is_closed and M.k == 0 and M.base_genus >= 1 and abs(euler_number(M)) == 1


def circle_bundle_exact_genus(M: SeifertInvariants) -> int:
    """Heegaard genus ``2 g(B)`` of a circle bundle with obstruction class +-1."""
    require_closed(M)
    if M.k:
        raise SeifertError(f"{M} has exceptional fibers; exact genus unavailable")
    if abs(euler_number(M)) != 1:
        raise SeifertError(f"{M} has |e| != 1; exact genus unavailable")
    if M.base_genus < 1:
        raise SeifertError(f"{M} is a lens space, outside the certified case")
    return 2 * M.base_genus


def genus_bounds(M: SeifertInvariants) -> GenusInterval:
    require_closed(M)
    if has_finite_pi1(M):
        raise SeifertError(
            f"{M} has finite fundamental group; use lemma_genus_interval()"
        )
    interval = lemma_genus_interval(M)
    if has_exact_circle_bundle_genus(M):
        return GenusInterval(interval.lo, interval.hi, circle_bundle_exact_genus(M))
    return interval


def chi_h_interval(M: SeifertInvariants) -> ChiInterval:
    genus = genus_bounds(M).tightest()
    lo, hi = 2 * genus.lo - 2, 2 * genus.hi - 2
    # infinite pi_1: no Heegaard sphere, so chi_- >= 0
    clamped = lo < 0
    return ChiInterval(max(lo, 0), max(hi, 0), clamped)


def chi_sh_interval(M: SeifertInvariants) -> ChiInterval | None:
    """
    chi_- of a strongly irreducible Heegaard surface, when certified.

    Only circle bundles with ``|e| = 1`` are certified, where it equals
    :func:`chi_h_interval`.  Returns ``None`` otherwise.
    """
    if not has_exact_circle_bundle_genus(M):
        return None
    return chi_h_interval(M)
