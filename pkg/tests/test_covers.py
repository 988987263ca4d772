import json
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from seifert_gradient.covers import (
    Affine,
    CoverDescriptor,
    CoverValidationError,
    Explicit,
    FamilyError,
    FiberCyclic,
    Parametric,
    PropCircle,
    compose,
    fiber_cyclic_cover,
    format_family,
    identity_cover,
    materialize,
    parse_family,
    prop_circle_family,
    pullback_circle_bundle,
    surface_cover_genus,
)
from seifert_gradient.seifert_core import (
    SeifertError,
    SeifertInvariants,
    euler_number,
    orbifold_euler_characteristic,
    parse_sfs,
)

from strategies import circle_bundles

G2B1 = parse_sfs("SFS[g=2; b=1;]")
B237 = parse_sfs("SFS[g=0; b=-1; (2,1),(3,1),(7,1)]")


def bundle(genus, e):
    return SeifertInvariants(genus, -e)


@pytest.mark.parametrize("g, i, genus", [(2, 3, 4), (1, 5, 1), (3, 2, 5)])
def test_surface_cover_genus(g, i, genus):
    assert surface_cover_genus(g, i) == genus
    # Riemann-Hurwitz for unbranched surface covers
    assert 2 - 2 * genus == i * (2 - 2 * g)


def test_surface_cover_genus_rejects_sphere():
    with pytest.raises(SeifertError):
        surface_cover_genus(0, 2)


@pytest.mark.parametrize(
    "M, l, genus, e",
    [(G2B1, 3, 4, -3), (parse_sfs("SFS[g=1; b=0;]"), 7, 1, 0), (parse_sfs("SFS[g=3; b=-2;]"), 2, 5, 4)],
)
def test_pullback(M, l, genus, e):
    c = pullback_circle_bundle(M, l)
    assert (c.d, c.m, c.l) == (l, 1, l)
    assert c.total.base_genus == genus and euler_number(c.total) == e
    assert euler_number(c.total) == l * euler_number(M)


def test_pullback_rejects_exceptional():
    with pytest.raises(FamilyError):
        pullback_circle_bundle(B237, 2)


@pytest.mark.parametrize(
    "M, m, e",
    [(bundle(4, 3), 3, 1), (parse_sfs("SFS[g=2; b=0;]"), 10, 0), (bundle(2, 6), 2, 3)],
)
def test_fiber_cyclic(M, m, e):
    c = fiber_cyclic_cover(M, m)
    assert (c.d, c.m, c.l) == (m, m, 1)
    assert c.total.base_genus == M.base_genus and euler_number(c.total) == e


def test_fiber_cyclic_requires_divisibility():
    with pytest.raises(FamilyError):
        fiber_cyclic_cover(bundle(2, 3), 2)


def test_compose_to_unit_euler_bundle():
    c = compose(pullback_circle_bundle(G2B1, 3), fiber_cyclic_cover(bundle(4, -3), 3))
    assert (c.d, c.m, c.l) == (9, 3, 3)
    assert c.total == SeifertInvariants(4, 1)
    assert abs(euler_number(c.total)) == 1


def test_compose_identity():
    c = pullback_circle_bundle(G2B1, 3)
    assert compose(identity_cover(G2B1), c) == c
    assert compose(c, identity_cover(c.total)) == c


def test_pullbacks_compose():
    M = parse_sfs("SFS[g=3; b=2;]")
    two = pullback_circle_bundle(M, 2)
    stacked = compose(two, pullback_circle_bundle(two.total, 3))
    assert stacked == pullback_circle_bundle(M, 6)


def test_compose_mismatch():
    with pytest.raises(CoverValidationError):
        compose(pullback_circle_bundle(G2B1, 2), pullback_circle_bundle(G2B1, 2))


@pytest.mark.parametrize(
    "total, d, m, l, invariant",
    [
        (None, 6, 2, 2, "d = m*l"),
        (SeifertInvariants(4, -2), 2, 1, 2, "Riemann-Hurwitz"),
        (SeifertInvariants(3, -1), 2, 1, 2, "Euler number"),
        (SeifertInvariants(1, 0, ((2, 1),)), 1, 1, 1, "Riemann-Hurwitz"),
    ],
)
def test_validation_errors(total, d, m, l, invariant):
    with pytest.raises(CoverValidationError) as info:
        CoverDescriptor(G2B1, total, d, m, l)
    assert info.value.invariant == invariant


def test_cone_bound():
    # chi(S^2(6,6,6)) = -1/2 = chi(T^2(2)), but three cone points cannot cover one
    base = SeifertInvariants(1, 0, ((2, 1),))
    total = SeifertInvariants(0, 0, ((6, 1), (6, 1), (6, 1)))
    with pytest.raises(CoverValidationError) as info:
        CoverDescriptor(base, total, 1, 1, 1)
    assert info.value.invariant == "cone bound"


@pytest.mark.parametrize(
    "i, genus, d, m, l",
    [(3, 4, 9, 3, 3), (10, 11, 100, 10, 10)],
)
def test_prop_circle_family_examples(i, genus, d, m, l):
    (c,) = prop_circle_family(G2B1, [i])
    assert c.total.base_genus == genus and abs(euler_number(c.total)) == 1
    assert (c.d, c.m, c.l) == (d, m, l)


def test_prop_circle_family_genus_one():
    (c,) = prop_circle_family(parse_sfs("SFS[g=1; b=2;]"), [2])
    assert c.total.base_genus == 1 and abs(euler_number(c.total)) == 1
    assert (c.d, c.m, c.l) == (8, 4, 2)


@pytest.mark.parametrize("text", ["SFS[g=2; b=0;]", "SFS[g=0; b=3;]"])
def test_prop_circle_family_rejects(text):
    with pytest.raises(FamilyError):
        prop_circle_family(parse_sfs(text), [2])


def test_prop_circle_index_at_least_two():
    with pytest.raises(FamilyError):
        prop_circle_family(G2B1, [1])


def _check_invariants(c: CoverDescriptor):
    assert c.d == c.m * c.l
    assert orbifold_euler_characteristic(c.total) == c.l * orbifold_euler_characteristic(c.base)
    assert c.total.k <= c.l * c.base.k
    assert euler_number(c.total) == Fraction(c.l, c.m) * euler_number(c.base)


@st.composite
def cover_chains(draw):
    M = draw(circle_bundles())
    steps = []
    current = M
    for _ in range(draw(st.integers(1, 4))):
        if draw(st.booleans()):
            step = pullback_circle_bundle(current, draw(st.integers(1, 4)))
        else:
            e = abs(current.b)
            divisors = [n for n in range(1, 13) if e == 0 or e % n == 0]
            step = fiber_cyclic_cover(current, draw(st.sampled_from(divisors)))
        steps.append(step)
        current = step.total
    return M, steps


@given(cover_chains())
def test_random_compositions_keep_invariants(chain):
    M, steps = chain
    total = identity_cover(M)
    for step in steps:
        total = compose(total, step)
        _check_invariants(total)
    assert total.base == M


@given(cover_chains())
def test_compose_associative(chain):
    _, steps = chain
    assume(len(steps) >= 3)
    a, b, c = steps[:3]
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(circle_bundles(), st.integers(2, 30))
def test_prop_circle_factors(M, i):
    assume(M.b != 0)
    (direct,) = prop_circle_family(M, [i])
    pull = pullback_circle_bundle(M, i)
    cyclic = fiber_cyclic_cover(pull.total, abs(pull.total.b))
    assert direct == compose(pull, cyclic)
    _check_invariants(direct)


# -- family specs -------------------------------------------------------------


@pytest.mark.parametrize(
    "text, slope, intercept",
    [("i", 1, 0), ("7", 0, 7), ("2i+1", 2, 1), ("3*i-1", 3, -1), ("-i+4", -1, 4)],
)
def test_affine_parse(text, slope, intercept):
    f = Affine.parse(text)
    assert (f.slope, f.intercept) == (slope, intercept)
    assert Affine.parse(str(f)) == f


@pytest.mark.parametrize("text", ["", "j", "i7", "ii", "2.5i"])
def test_affine_parse_rejects(text):
    with pytest.raises(FamilyError):
        Affine.parse(text)


def test_parse_family_forms():
    assert parse_family("prop-circle:i=2..100") == PropCircle(2, 100)
    assert parse_family("fiber-cyclic:m=1,2,4,8") == FiberCyclic((1, 2, 4, 8))
    assert parse_family("fiber-cyclic:m=1..3,9") == FiberCyclic((1, 2, 3, 9))
    p = parse_family("parametric:l=i,m=7")
    assert p == Parametric(Affine(1, 0), Affine(0, 7))
    assert p.declared_unbounded_m is False
    assert parse_family("parametric:l=1,m=i").declared_unbounded_m is True


def test_parse_explicit(tmp_path):
    path = tmp_path / "covers.json"
    path.write_text(json.dumps([{"sfs": None, "d": 42, "m": 42, "l": 1}, {"d": 4, "m": 2, "l": 2}]))
    fam = parse_family(f"explicit:@{path}", base=B237)
    assert isinstance(fam, Explicit) and len(fam.covers) == 2
    assert [c.d for _, c in materialize(B237, fam)] == [42, 4]
    inline = parse_family('explicit:[{"sfs": "SFS[g=2; b=1;]", "d": 1, "m": 1, "l": 1}]', base=G2B1)
    assert inline.covers[0] == identity_cover(G2B1)


@pytest.mark.parametrize(
    "text",
    [
        "prop-circle:i=1..5",
        "prop-circle:j=2..5",
        "prop-circle",
        "fiber-cyclic:m=0",
        "parametric:l=i",
        "parametric:l=i,m=-i+1",
        "parametric:l=i,m=i,q=3",
        "hecke:n=3",
        'explicit:[{"d": 3, "m": 1, "l": 2}]',
        "explicit:{}",
    ],
)
def test_parse_family_rejects(text):
    with pytest.raises(SeifertError):
        parse_family(text, base=B237)


def test_parametric_declared_flag_must_match():
    with pytest.raises(FamilyError):
        Parametric(Affine(0, 1), Affine(0, 7), declared_unbounded_m=True)


@pytest.mark.parametrize(
    "family",
    [PropCircle(2, 5), FiberCyclic((1, 3)), Parametric(Affine(2, 1), Affine(1, 0), start=2, prefix=4)],
)
def test_format_family_round_trip(family):
    assert parse_family(format_family(family)) == family


def test_materialize_parametric_prefix():
    fam = Parametric(Affine(1, 0), Affine(0, 7), prefix=3)
    indexed = materialize(B237, fam)
    assert [(i, c.d, c.m, c.l) for i, c in indexed] == [(1, 7, 7, 1), (2, 14, 7, 2), (3, 21, 7, 3)]
    assert all(c.total is None for _, c in indexed)
