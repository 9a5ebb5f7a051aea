import pytest
from helpers import (
    ALL_BASES,
    CHAIN3,
    MONOID,
    PT,
    TWO,
    presheaf_fixture_pool,
    set_presheaf,
    two_point_presheaf,
)

from toposlang.category import principal_sieve
from toposlang.errors import CapExceeded
from toposlang.heyting import check_heyting_laws
from toposlang.presheaf import (
    GlobalElement,
    NatTransform,
    PresheafError,
    Subobject,
    char_morphism,
    classifier_kit,
    compose_nats,
    coproduct,
    enumerate_nats,
    enumerate_subobjects,
    eval_arrow,
    evaluation,
    exp_transpose,
    exp_untranspose,
    exponential,
    global_elements,
    initial_presheaf,
    power_object,
    power_transpose,
    power_untranspose,
    product,
    sub_heyting,
    subobject_implies,
    subobject_of_char,
    terminal_presheaf,
    validate_nat,
    validate_presheaf,
    verify_exponential_adjunction,
    verify_product_universal,
)


def fs(*xs):
    return frozenset(xs)


X2 = two_point_presheaf(["x0", "x1"], ["y0"], {"x0": "y0", "x1": "y0"})


def test_constant_presheaf_is_valid():
    for cat in ALL_BASES:
        assert validate_presheaf(terminal_presheaf(cat)).ok


def test_non_total_restriction_is_reported():
    broken = two_point_presheaf(["x0", "x1"], ["y0"], {"x0": "y0"})
    report = validate_presheaf(broken)
    assert ("not-total", "le[p,q]", "x1") in report.items


def test_identity_transformation_is_natural():
    ident = NatTransform(X2, X2, {obj: {x: x for x in X2.stage(obj)}
                                  for obj in TWO.objects})
    assert validate_nat(ident).ok


def test_non_natural_transformation_is_reported():
    y = two_point_presheaf(["u"], ["v0", "v1"], {"u": "v0"})
    n = NatTransform(y, y, {"q": {"u": "u"}, "p": {"v0": "v1", "v1": "v0"}})
    report = validate_nat(n)
    assert any(v[0] == "naturality" for v in report.items)


def test_classifier_on_one_object_category_is_two_valued():
    kit = classifier_kit(PT)
    assert kit.omega.stage("pt") == (fs(), fs("id[pt]"))
    assert kit.true_arrow.apply("pt", ()) == fs("id[pt]")
    assert validate_presheaf(kit.omega).ok and validate_nat(kit.true_arrow).ok


def test_classifier_on_two_point_poset():
    kit = classifier_kit(TWO)
    assert len(kit.omega.stage("q")) == 3
    assert len(kit.omega.stage("p")) == 2
    assert kit.omega.apply("le[p,q]", fs("le[p,q]")) == fs("id[p]")
    assert kit.true_arrow.apply("q", ()) == fs("id[q]", "le[p,q]")
    for cat in ALL_BASES:
        k = classifier_kit(cat)
        assert validate_presheaf(k.omega).ok and validate_nat(k.true_arrow).ok
        for obj in cat.objects:
            ident = cat.id_of(obj)
            for s in k.omega.stage(obj):
                assert k.omega.apply(ident, s) == s


def test_char_morphism_of_whole_and_empty():
    kit = classifier_kit(TWO)
    whole = Subobject(X2, {obj: X2.stage(obj) for obj in TWO.objects})
    chi = char_morphism(whole)
    for obj in TWO.objects:
        for x in X2.stage(obj):
            assert chi.apply(obj, x) == principal_sieve(TWO, obj).members
    empty = Subobject(X2, {})
    chi0 = char_morphism(empty)
    for obj in TWO.objects:
        for x in X2.stage(obj):
            assert chi0.apply(obj, x) == fs()
    assert validate_nat(chi).ok and validate_nat(chi0).ok


def test_char_morphism_of_half_open_subterminal():
    one = terminal_presheaf(TWO)
    k = Subobject(one, {"q": (), "p": ((),)})
    chi = char_morphism(k)
    assert chi.apply("q", ()) == fs("le[p,q]")
    assert chi.apply("p", ()) == fs("id[p]")
    assert subobject_of_char(chi) == k


def test_char_rejects_invalid_subobject():
    bad = Subobject(X2, {"q": ("x0",), "p": ()})  # not restriction-closed
    with pytest.raises(PresheafError):
        char_morphism(bad)


def test_char_and_inverse_are_mutually_inverse_on_pool():
    pool = presheaf_fixture_pool(10)
    assert len(pool) >= 10
    for x in pool:
        subs = enumerate_subobjects(x)
        homs = enumerate_nats(x, classifier_kit(x.base).omega)
        assert len(subs) == len(homs)
        chis = set()
        for k in subs:
            chi = char_morphism(k)
            assert validate_nat(chi).ok
            assert subobject_of_char(chi) == k
            chis.add(chi)
        assert chis == set(homs)
        for chi in homs:
            assert char_morphism(subobject_of_char(chi)) == chi


def test_sub_of_terminal_on_two_point_poset():
    one = terminal_presheaf(TWO)
    sa = sub_heyting(one)
    assert len(sa.algebra) == 3
    # excluded middle fails at the half-open sub-object
    half_key = Subobject(one, {"q": (), "p": ((),)}).key()
    neg = sa.algebra.negate(half_key)
    assert sa.subobjects[neg].parts == {"q": fs(), "p": fs()}
    assert sa.algebra.join(half_key, neg) != sa.algebra.top


def test_sub_of_terminal_in_set_is_two_valued_boolean():
    sa = sub_heyting(terminal_presheaf(PT))
    assert len(sa.algebra) == 2
    for a in sa.algebra.elements:
        assert sa.algebra.join(a, sa.algebra.negate(a)) == sa.algebra.top


def test_sub_heyting_scan_matches_stagewise_formula():
    for x in (X2, terminal_presheaf(TWO), set_presheaf(["u", "v"])):
        sa = sub_heyting(x)
        assert check_heyting_laws(sa.algebra).ok
        for a in sa.algebra.elements:
            for b in sa.algebra.elements:
                got = sa.subobjects[sa.algebra.implies(a, b)]
                want = subobject_implies(sa.subobjects[a], sa.subobjects[b])
                assert got == want


def test_sub_heyting_order_matches_char_pointwise_order():
    x = X2
    sa = sub_heyting(x)
    for a in sa.algebra.elements:
        for b in sa.algebra.elements:
            chi_a = char_morphism(sa.subobjects[a])
            chi_b = char_morphism(sa.subobjects[b])
            pointwise = all(chi_a.apply(obj, el) <= chi_b.apply(obj, el)
                            for obj in x.base.objects for el in x.stage(obj))
            assert sa.algebra.leq(a, b) == pointwise


def test_product_sizes_and_projections():
    y = two_point_presheaf(["u0", "u1", "u2"], ["w0", "w1"],
                           {"u0": "w0", "u1": "w1", "u2": "w0"})
    dia = product(X2, y)
    for obj in TWO.objects:
        assert len(dia.presheaf.stage(obj)) == len(X2.stage(obj)) * len(y.stage(obj))
    for proj in dia.projections:
        assert validate_nat(proj).ok
    assert validate_presheaf(dia.presheaf).ok


def test_product_with_terminal_is_isomorphic_to_x():
    one = terminal_presheaf(TWO)
    dia = product(X2, one)
    # explicit iso (x, ()) -> x
    to_x = NatTransform(dia.presheaf, X2,
                        {obj: {(x, ()): x for x, _ in dia.presheaf.stage(obj)}
                         for obj in TWO.objects})
    back = NatTransform(X2, dia.presheaf,
                        {obj: {x: (x, ()) for x in X2.stage(obj)}
                         for obj in TWO.objects})
    assert validate_nat(to_x).ok and validate_nat(back).ok
    assert compose_nats(to_x, back) == NatTransform(
        X2, X2, {obj: {x: x for x in X2.stage(obj)} for obj in TWO.objects})


def test_product_universal_property_by_exhaustion():
    one = terminal_presheaf(TWO)
    dia = product(X2, one)
    assert verify_product_universal(dia, two_point_presheaf(["z"], ["z'"], {"z": "z'"}))


def test_exponential_sizes_in_set():
    x = set_presheaf(["a", "b"])
    y = set_presheaf([0, 1, 2])
    assert len(exponential(x, y).stage("pt")) == 9
    assert len(power_object(x).stage("pt")) == 4


def test_power_of_terminal_is_isomorphic_to_omega():
    kit = classifier_kit(TWO)
    one = terminal_presheaf(TWO)
    p1 = power_object(one)
    # Yoneda iso: theta -> theta(id,()); inverse S -> (f,()) -> pullback of S along f
    fwd = {}
    for obj in TWO.objects:
        fwd[obj] = {theta: dict(theta)[(obj, TWO.id_of(obj), ())]
                    for theta in p1.stage(obj)}
    to_omega = NatTransform(p1, kit.omega, fwd)
    assert validate_nat(to_omega).ok
    for obj in TWO.objects:
        assert sorted(map(sorted, fwd[obj].values())) == \
            sorted(map(sorted, kit.omega.stage(obj)))
        assert len(set(fwd[obj].values())) == len(p1.stage(obj)) == \
            len(kit.omega.stage(obj))


def test_exponential_restriction_is_functorial_everywhere():
    for base in (TWO, CHAIN3, MONOID):
        kit = classifier_kit(base)
        px = power_object(kit.terminal)
        assert validate_presheaf(px).ok
        po = power_object(kit.omega)
        assert validate_presheaf(po).ok


def test_eval_arrow_and_transpose_round_trip():
    x = X2
    kit = classifier_kit(TWO)
    z = terminal_presheaf(TWO)
    dia = product(z, x)
    # name of "true on all of X": transpose of constant-principal arrow
    const_true = NatTransform(dia.presheaf, kit.omega,
                              {obj: {el: principal_sieve(TWO, obj).members
                                     for el in dia.presheaf.stage(obj)}
                               for obj in TWO.objects})
    name = power_transpose(const_true, z, x)
    assert validate_nat(name).ok
    assert power_untranspose(name, z, x) == const_true
    # the name is a global element of PX
    px = power_object(x)
    ge = GlobalElement(px, {obj: name.apply(obj, ()) for obj in TWO.objects})
    assert not ge.violations()
    # eval against the name recovers constant-true
    ev = eval_arrow(x)
    xpx = product(x, px)
    for obj in TWO.objects:
        for xv in x.stage(obj):
            got = ev.apply(obj, (xv, name.apply(obj, ())))
            assert got == principal_sieve(TWO, obj).members


def test_all_transposes_round_trip_on_two_point_fixture():
    z = two_point_presheaf(["z0"], ["z'"], {"z0": "z'"})
    x = terminal_presheaf(TWO)
    y = classifier_kit(TWO).omega
    dia = product(z, x)
    for f in enumerate_nats(dia.presheaf, y):
        h = exp_transpose(f, z, x, y)
        assert exp_untranspose(h, z, x, y) == f
    exp = exponential(x, y)
    for h in enumerate_nats(z, exp):
        assert exp_transpose(exp_untranspose(h, z, x, y), z, x, y) == h


def test_exponential_adjunction_bijection_on_fixtures():
    z = two_point_presheaf(["z0", "z1"], ["z'"], {"z0": "z'", "z1": "z'"})
    x = X2
    y = classifier_kit(TWO).omega
    assert verify_exponential_adjunction(z, x, y)
    assert verify_exponential_adjunction(set_presheaf([0, 1]), set_presheaf(["a"]),
                                         set_presheaf(["u", "v"]))


def test_evaluation_against_general_exponential():
    x = set_presheaf(["a", "b"])
    y = set_presheaf([0, 1])
    ev = evaluation(x, y)
    exp = exponential(x, y)
    for theta in exp.stage("pt"):
        table = {cell[0][2]: cell[1] for cell in theta}
        for xv in x.stage("pt"):
            assert ev.apply("pt", (theta, xv)) == table[xv]


def test_global_elements_of_omega_on_two_point_poset():
    kit = classifier_kit(TWO)
    got = [tuple(sorted(g.choice.items())) for g in global_elements(kit.omega)]
    assert set(got) == {
        (("p", fs()), ("q", fs())),
        (("p", fs("id[p]")), ("q", fs("le[p,q]"))),
        (("p", fs("id[p]")), ("q", fs("id[q]", "le[p,q]"))),
    }
    from toposlang._canon import canon_key
    assert got == sorted(got, key=canon_key)


def test_global_elements_counting():
    assert len(global_elements(terminal_presheaf(CHAIN3))) == 1
    x = set_presheaf(["a", "b", "c"])
    assert [g.choice["pt"] for g in global_elements(x)] == ["a", "b", "c"]


def test_global_elements_of_omega_form_heyting_algebra_pointwise():
    from toposlang.heyting import HeytingAlgebra
    kit = classifier_kit(TWO)
    gs = global_elements(kit.omega)
    ids = [g.key() for g in gs]
    by_id = {g.key(): g for g in gs}

    def leq(a, b):
        return all(by_id[a].choice[o] <= by_id[b].choice[o] for o in TWO.objects)

    alg = HeytingAlgebra(ids, leq)
    assert check_heyting_laws(alg).ok
    # pointwise meets and joins of matching families are matching
    for a in ids:
        for b in ids:
            met = alg.meet(a, b)
            assert all(by_id[met].choice[o] == by_id[a].choice[o] & by_id[b].choice[o]
                       for o in TWO.objects)
            joined = alg.join(a, b)
            assert all(by_id[joined].choice[o] == by_id[a].choice[o] | by_id[b].choice[o]
                       for o in TWO.objects)


def test_enumeration_caps_are_enforced():
    big = set_presheaf(list(range(9)))
    with pytest.raises(CapExceeded):
        enumerate_nats(big, big, cap=10)
    with pytest.raises(CapExceeded):
        enumerate_subobjects(big, cap=8)


def test_initial_object_and_coproduct_stretch():
    zero = initial_presheaf(TWO)
    assert validate_presheaf(zero).ok
    assert len(enumerate_nats(zero, X2)) == 1
    dia = coproduct(X2, terminal_presheaf(TWO))
    assert validate_presheaf(dia.presheaf).ok
    for inj in dia.projections:
        assert validate_nat(inj).ok
    for obj in TWO.objects:
        assert len(dia.presheaf.stage(obj)) == len(X2.stage(obj)) + 1


def test_subobject_order_is_monotone_under_restriction():
    # if K <= L in Sub(X), restricting any stage of K along any arrow stays
    # inside the corresponding stage of L
    x = X2
    sa = sub_heyting(x)
    cat = x.base
    for a in sa.algebra.elements:
        for b in sa.algebra.elements:
            if not sa.algebra.leq(a, b):
                continue
            k, l = sa.subobjects[a], sa.subobjects[b]
            for m in cat.morphisms:
                moved = {x.apply(m.id, el) for el in k.parts[m.cod]}
                assert moved <= l.parts[m.dom]
