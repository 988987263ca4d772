"""JSON and CSV forms of classifications, genus data, families and reports."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .classification import Classification
from .covers import descriptor_to_json, format_family
from .gradient import GradientReport, RationalInterval
from .heegaard import ChiInterval, GenusInterval
from .seifert_core import SeifertInvariants, base_orbifold, format_sfs

SCHEMA_VERSION = "1"

CSV_COLUMNS = ("i", "d", "m", "l", "chi_lo", "chi_hi", "term_lo", "term_hi")


def rational_to_json(x: Fraction | None):
    if x is None:
        return None
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(obj) -> Fraction | None:
    if obj is None:
        return None
    return Fraction(int(obj["num"]), int(obj["den"]))


def interval_to_json(iv: RationalInterval) -> dict:
    return {"lo": rational_to_json(iv.lo), "hi": rational_to_json(iv.hi)}


def _schema(kind: str) -> str:
    return f"seifert-gradient/{kind}/v{SCHEMA_VERSION}"


def classification_to_json(c: Classification) -> dict:
    O = base_orbifold(c.manifold)
    return {
        "schema": _schema("classification"),
        "manifold": format_sfs(c.manifold),
        "orbifold": {"genus": O.underlying_genus, "cone_orders": list(O.cone_orders)},
        "orbifold_euler_characteristic": rational_to_json(c.orbifold_euler_characteristic),
        "euler_number": rational_to_json(c.euler_number),
        "geometry": c.geometry.value,
        "finite_pi1": c.finite_pi1,
        "virtually_fibers_over_circle": c.fibers_over_circle,
        "virtually_fibers_over_surface": c.fibers_over_surface,
        "gradient_sign": c.gradient_sign.value,
    }


def genus_to_json(
    M: SeifertInvariants,
    genus: GenusInterval,
    vertical: int,
    chi_h: ChiInterval | None,
    chi_sh: ChiInterval | None,
    finite_pi1: bool,
) -> dict:
    def chi(c):
        if c is None:
            return None
        return {"lo": c.lo, "hi": c.hi, "exact": c.exact, "clamped": c.clamped}

    return {
        "schema": _schema("genus"),
        "manifold": format_sfs(M),
        "finite_pi1": finite_pi1,
        "vertical_genus": vertical,
        "genus": {"lo": genus.lo, "hi": genus.hi, "value": genus.value, "exact": genus.exact},
        "chi_h": chi(chi_h),
        "chi_sh": chi(chi_sh),
    }


def family_to_json(base: SeifertInvariants, family, indexed) -> dict:
    return {
        "schema": _schema("family"),
        "base": format_sfs(base),
        "family": format_family(family),
        "covers": [dict(i=i, **descriptor_to_json(c)) for i, c in indexed],
    }


def family_to_csv(indexed) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("i", "sfs", "d", "m", "l"))
    for i, c in indexed:
        row = descriptor_to_json(c)
        w.writerow((i, row["sfs"] or "", c.d, c.m, c.l))
    return buf.getvalue()


def report_to_json(r: GradientReport) -> dict:
    return {
        "schema": _schema("report"),
        "base": format_sfs(r.base),
        "family": format_family(r.family) if r.family is not None else None,
        "through": descriptor_to_json(r.through) if r.through is not None else None,
        "strong": r.strong,
        "verdict": r.verdict.value,
        "inf_upper_bound": rational_to_json(r.inf_upper_bound),
        "inf_lower_bound": rational_to_json(r.inf_lower_bound),
        "monotone": r.monotone,
        "certificate": list(r.certificate),
        "terms": [
            {
                "i": t.index,
                "d": t.d,
                "m": t.m,
                "l": t.l,
                "chi": interval_to_json(t.chi),
                "term": interval_to_json(t.chi_over_d),
                "genus_over_d": interval_to_json(t.genus_over_d),
            }
            for t in r.terms
        ],
    }


def report_to_csv(r: GradientReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t in r.terms:
        chi = t.chi
        w.writerow((t.index, t.d, t.m, t.l, chi.lo, chi.hi, t.chi_over_d.lo, t.chi_over_d.hi))
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"

