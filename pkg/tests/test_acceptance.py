"""
Acceptance gate.  Every check uses exact rational arithmetic; the summary at
the end of the pytest run prints one pass/fail line per criterion.
"""
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from seifert_gradient.classification import GradientSign, has_finite_pi1, heegaard_gradient_sign
from seifert_gradient.covers import (
    CoverDescriptor,
    Explicit,
    FamilyError,
    Parametric,
    PropCircle,
    Affine,
    compose,
    fiber_cyclic_cover,
    identity_cover,
    prop_circle_family,
    pullback_circle_bundle,
)
from seifert_gradient.gradient import (
    Verdict,
    decide_zero_gradient,
    genus_gradient_equivalence,
    gradient_sequence,
    prop_circle_bound,
    strong_gradient_report,
    term_interval,
)
from seifert_gradient.heegaard import genus_bounds, lemma_genus_interval, vertical_genus
from seifert_gradient.seifert_core import (
    SeifertInvariants,
    euler_number,
    format_sfs,
    orbifold_euler_characteristic,
    parse_sfs,
)

from strategies import random_infinite_pi1, random_manifold

G2B1 = parse_sfs("SFS[g=2; b=1;]")
B237 = parse_sfs("SFS[g=0; b=-1; (2,1),(3,1),(7,1)]")
POINCARE = parse_sfs("SFS[g=0; b=-1; (2,1),(3,1),(5,1)]")
S2xS1 = parse_sfs("SFS[g=0; b=0;]")
N_RANDOM = 1000


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def criterion_1_report():
    return gradient_sequence(G2B1, PropCircle(2, 100))


def criterion_3_reports():
    covers = tuple(CoverDescriptor(B237, None, m * l, m, l) for m, l in [(1, 1), (42, 1), (7, 3), (6, 7)])
    return [
        decide_zero_gradient(B237, Parametric(Affine(0, 1), Affine(1, 0))),
        decide_zero_gradient(B237, Parametric(Affine(1, 0), Affine(0, 7))),
        decide_zero_gradient(B237, Explicit(covers)),
    ]


# -- 1 ------------------------------------------------------------------------


@criterion(1, "circle-bundle family over SFS[g=2; b=1;], i = 2..100")
def test_1_prop_circle_family():
    covers = prop_circle_family(G2B1, range(2, 101))
    report = criterion_1_report()
    for i, (cover, term) in enumerate(zip(covers, report.terms), start=2):
        assert abs(euler_number(cover.total)) == 1
        assert genus_bounds(cover.total).value == 2 * (2 * i - i + 1) == 2 * (i + 1)
        assert cover.d == term.d == i * i
        assert term.chi_over_d.lo == term.chi_over_d.hi == Fraction(4 * i + 2, i * i)
        assert term.chi_over_d.hi <= prop_circle_bound(2, 1, i)
    last = report.terms[-1].chi_over_d.hi
    assert last == Fraction(201, 5000) < Fraction(1, 20)
    assert report.inf_upper_bound == last
    assert report.verdict is Verdict.ZERO


@criterion(1, "circle-bundle family over SFS[g=2; b=1;], i = 2..100")
@pytest.mark.parametrize("n", [1, 2, 5, 10, 25])
def test_1_terms_below_one_over_n_from_4n(n):
    """Literal sub-claim: every term with i >= 4n is below 1/n."""
    late = [i for i in range(max(2, 4 * n), 4 * n + 200)]
    offenders = [i for i in late if not Fraction(4 * i + 2, i * i) < Fraction(1, n)]
    assert offenders == [], f"terms at i = {offenders} are not below 1/{n}"


# -- 2 ------------------------------------------------------------------------


@criterion(2, "gradient sign trichotomy")
def test_2_sign_trichotomy():
    assert has_finite_pi1(POINCARE)
    assert orbifold_euler_characteristic(POINCARE) == Fraction(1, 30)
    assert euler_number(POINCARE) == Fraction(-1, 30)
    assert heegaard_gradient_sign(POINCARE) is GradientSign.NEGATIVE
    assert heegaard_gradient_sign(G2B1) is GradientSign.ZERO
    assert heegaard_gradient_sign(S2xS1) is GradientSign.ZERO


# -- 3 ------------------------------------------------------------------------


@criterion(3, "zero-gradient decision over the (2,3,7) base")
def test_3_decision():
    assert orbifold_euler_characteristic(B237) == Fraction(-1, 42)
    unbounded, bounded, finite = criterion_3_reports()
    assert unbounded.verdict is Verdict.ZERO
    assert bounded.verdict is Verdict.POSITIVE
    assert bounded.inf_lower_bound == Fraction(1, 294)
    assert finite.verdict is Verdict.POSITIVE


# -- 4 ------------------------------------------------------------------------


def _random_chain(rng):
    M = SeifertInvariants(rng.randint(0, 5), rng.randint(-8, 8))
    total = identity_cover(M)
    for _ in range(rng.randint(1, 4)):
        current = total.total
        if current.base_genus > 0 and rng.random() < 0.5:
            step = pullback_circle_bundle(current, rng.randint(1, 4))
        else:
            e = abs(current.b)
            divisors = [n for n in range(1, 13) if e == 0 or e % n == 0]
            step = fiber_cyclic_cover(current, rng.choice(divisors))
        total = compose(total, step)
    return M, total


@criterion(4, "cover invariants on 1000 random compositions")
def test_4_cover_invariants():
    rng = random.Random(4)
    for _ in range(N_RANDOM):
        M, c = _random_chain(rng)
        assert c.base == M
        assert c.d == c.m * c.l
        assert orbifold_euler_characteristic(c.total) == c.l * orbifold_euler_characteristic(M)
        assert c.total.k <= c.l * M.k
        assert euler_number(c.total) == Fraction(c.l, c.m) * euler_number(M)

        if M.base_genus >= 1 and M.b != 0:
            i = rng.randint(2, 12)
            (direct,) = prop_circle_family(M, [i])
            pull = pullback_circle_bundle(M, i)
            two_step = compose(pull, fiber_cyclic_cover(pull.total, abs(pull.total.b)))
            assert (direct.base, direct.total, direct.d, direct.m, direct.l) == (
                two_step.base, two_step.total, two_step.d, two_step.m, two_step.l
            )


# -- 5 ------------------------------------------------------------------------


def _constructed_covers(M, rng):
    covers = [identity_cover(M)]
    chi = orbifold_euler_characteristic(M)
    for _ in range(3):
        m = rng.randint(1, 30)
        l = rng.randint(1, 30) if chi <= 0 else 1
        covers.append(CoverDescriptor(M, None, m * l, m, l))
    if M.k == 0:
        try:
            covers.append(pullback_circle_bundle(M, rng.randint(2, 5)))
        except FamilyError:
            pass
        if M.b != 0:
            covers.append(fiber_cyclic_cover(M, abs(M.b)))
    return covers


@criterion(5, "genus sandwich on 1000 random infinite-pi_1 manifolds")
def test_5_sandwich():
    rng = random.Random(5)
    for _ in range(N_RANDOM):
        M = random_infinite_pi1(rng)
        interval = genus_bounds(M)
        assert interval.hi - interval.lo <= 3
        assert vertical_genus(M) in interval
        assert lemma_genus_interval(M).lo <= interval.lo
        chi = orbifold_euler_characteristic(M)
        for cover in _constructed_covers(M, rng):
            t = term_interval(M, cover)
            assert -chi / cover.m <= t.genus_over_d.hi
            assert t.genus_over_d.lo <= (-chi + Fraction(M.k, 2)) / cover.m + Fraction(3, cover.m * cover.l)


# -- 6 ------------------------------------------------------------------------


@criterion(6, "genus and chi^h gradients agree on the reports of criteria 1-3")
def test_6_genus_equivalence():
    reports = [criterion_1_report(), gradient_sequence(G2B1, PropCircle(2, 20)), *criterion_3_reports()]
    assert all(genus_gradient_equivalence(r) for r in reports)


# -- 7 ------------------------------------------------------------------------


@criterion(7, "strong gradient equals chi^h gradient on SFS[g=2; b=1;]")
def test_7_strong_equals_weak():
    family = PropCircle(2, 100)
    strong = strong_gradient_report(G2B1, None, family)
    weak = gradient_sequence(G2B1, family)
    assert strong.strong and strong.verdict is Verdict.ZERO
    assert len(strong.terms) == len(weak.terms)
    for s, w in zip(strong.terms, weak.terms):
        assert s == w
    assert strong.inf_upper_bound == weak.inf_upper_bound


# -- 8 ------------------------------------------------------------------------


@criterion(8, "notation round trip and deterministic JSON")
def test_8_round_trip():
    rng = random.Random(8)
    for _ in range(N_RANDOM):
        M = random_manifold(rng)
        text = format_sfs(M)
        assert parse_sfs(text) == M
        assert format_sfs(parse_sfs(text)) == text


@criterion(8, "notation round trip and deterministic JSON")
def test_8_json_byte_identical():
    argv = [sys.executable, "-m", "seifert_gradient", "gradient", str(G2B1),
            "--family", "prop-circle:i=2..30", "--format", "json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    assert json.loads(runs[0])["verdict"] == "Zero"


def test_prop_circle_true_threshold():
    # companion to the literal sub-claim: the first index below 1/n is 4n + 1
    from seifert_gradient.gradient import prop_circle_threshold

    for n in range(1, 60):
        assert prop_circle_threshold(2, 1, n) == 4 * n + 1
        assert Fraction(4 * (4 * n) + 2, (4 * n) ** 2) == Fraction(1, n) + Fraction(1, 8 * n * n)
