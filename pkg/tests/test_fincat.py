import itertools

import pytest

from mct.fincat import (FinCatError, build_fincat, check_equivalence, colimit,
                        coproduct, diagram, discrete_pair_diagram, equalizer,
                        FinFunctor, identity_functor, initial_object, is_iso,
                        isos, limit, opposite, product, pullback, pushout,
                        relabel, span_diagram, terminal_object,
                        validate_category, validate_functor, empty_diagram)
from mct.fixtures import (chain3_category, interval, lattice_2x2,
                          parallel_pair, terminal_category, walking_homotopy,
                          walking_iso)


def test_walking_homotopy_is_valid():
    # exhaustive check of the hand-built 13-morphism table
    WH = walking_homotopy()
    assert len(WH.morphisms) == 13
    assert validate_category(WH).ok


def test_wh_repointed_composite_is_rejected():
    WH = walking_homotopy()
    bad = dict(WH.comp)
    bad[("s", "d0")] = "d0"   # wrong codomain: a dom/cod violation
    broken = type(WH)(WH.name, WH.objects, dict(WH.morphisms),
                      dict(WH.identities), bad)
    rep = validate_category(broken)
    assert not rep.ok
    assert any("s∘d0" in v or "endpoints" in v for v in rep.violations)


def test_one_object_one_morphism_category():
    assert validate_category(terminal_category()).ok


def test_associativity_violation_detected():
    C = build_fincat("assoc_broken", ["A"],
                     {"p": ("A", "A"), "q": ("A", "A"), "r": ("A", "A")},
                     lambda g, f: "p")
    bad = dict(C.comp)
    bad[("p", "p")] = "q"
    bad[("q", "p")] = "r"
    broken = type(C)(C.name, C.objects, dict(C.morphisms), dict(C.identities), bad)
    rep = validate_category(broken)
    assert not rep.ok


# -- limits and colimits ----------------------------------------------------

def test_terminal_of_lattice_is_top():
    L = lattice_2x2()
    assert terminal_object(L) == "top"
    assert initial_object(L) == "bot"


def test_coproduct_absent_in_parallel_pair():
    # oracle: enumerate every cocone on the discrete pair (A, A) and check
    # none is universal, then compare with the library answer
    P = parallel_pair()
    cocones = []
    for apex in P.objects:
        for l1 in P.hom("A", apex):
            for l2 in P.hom("A", apex):
                cocones.append((apex, l1, l2))
    universal = []
    for apex, l1, l2 in cocones:
        ok = True
        for a2, m1, m2 in cocones:
            n = sum(1 for t in P.hom(apex, a2)
                    if P.comp[(t, l1)] == m1 and P.comp[(t, l2)] == m2)
            if n != 1:
                ok = False
                break
        if ok:
            universal.append((apex, l1, l2))
    assert universal == []
    assert coproduct(P, "A", "A") is None


def test_pushout_of_identities():
    L = lattice_2x2()
    po = pushout(L, L.id_of("a"), L.id_of("a"))
    assert po is not None
    apex, leg1, leg2 = po
    assert apex == "a" and leg1 == L.id_of("a") and leg2 == L.id_of("a")


def test_pullback_in_poset_is_meet():
    L = lattice_2x2()
    pb = pullback(L, "a_to_top", "b_to_top")
    assert pb is not None
    assert pb[0] == "bot"


def test_pushout_in_poset_is_join():
    L = lattice_2x2()
    po = pushout(L, "bot_to_a", "bot_to_b")
    assert po is not None
    assert po[0] == "top"


def test_limit_uniqueness_property():
    # every competing cone factors uniquely through the returned limit
    L = lattice_2x2()
    D = discrete_pair_diagram(L, "a", "b")
    apex, legs = limit(L, D)
    assert apex == "bot"
    for apex2 in L.objects:
        for l1 in L.hom(apex2, "a"):
            for l2 in L.hom(apex2, "b"):
                n = sum(1 for t in L.hom(apex2, apex)
                        if L.comp[(legs["a"], t)] == l1
                        and L.comp[(legs["b"], t)] == l2)
                assert n == 1


def test_empty_diagram_limits():
    L = lattice_2x2()
    assert limit(L, empty_diagram(L))[0] == "top"
    assert colimit(L, empty_diagram(L))[0] == "bot"


def test_equalizer_in_parallel_pair_absent_but_trivial_present():
    P = parallel_pair()
    assert equalizer(P, "f", "g") is None
    assert equalizer(P, "f", "f") == ("A", "id_A")


def test_glued_cylinder_pushout_matches_cocone_oracle():
    # pushout of (d1, d0) in the completion: legs must form the glued cylinder
    from mct.fixtures import wh_completion
    C, _ = wh_completion()
    po = pushout(C, "d1", "d0")
    assert po is not None
    apex, a, b = po
    assert C.comp[(a, "d1")] == C.comp[(b, "d0")]
    # the cocone (s, s) factors through it uniquely
    from mct.fincat import induced_from_colimit
    s2 = induced_from_colimit(C, apex, [a, b], ["s", "s"])
    assert C.comp[(s2, a)] == "s"


# -- isomorphisms ------------------------------------------------------------

def test_is_iso_identity():
    WH = walking_homotopy()
    ok, w = is_iso(WH, "id_X")
    assert ok and w == "id_X"


def test_s_is_not_iso_in_wh():
    # s d0 = id_X but d0 s = e0 != id_W, and the full table search agrees
    WH = walking_homotopy()
    ok, _ = is_iso(WH, "s")
    assert not ok
    assert WH.comp[("s", "d0")] == "id_X"
    assert WH.comp[("d0", "s")] == "e0"


def test_walking_iso_u_is_iso():
    J = walking_iso()
    ok, w = is_iso(J, "u")
    assert ok and w == "v"


def test_iso_stable_under_identity_composition():
    J = walking_iso()
    for f in J.morphisms:
        pre = J.comp[(f, J.id_of(J.dom(f)))]
        post = J.comp[(J.id_of(J.cod(f)), f)]
        assert is_iso(J, f)[0] == is_iso(J, pre)[0] == is_iso(J, post)[0]


# -- functors and equivalences ------------------------------------------------

def test_identity_functor_is_equivalence():
    WH = walking_homotopy()
    rep = check_equivalence(identity_functor(WH))
    assert rep.is_equivalence


def test_inclusion_of_one_object_of_j_is_equivalence():
    J = walking_iso()
    pt = terminal_category()
    F = FinFunctor(pt, J, {"*": "A"}, {"id_*": "id_A"})
    assert validate_functor(F).ok
    rep = check_equivalence(F)
    assert rep.essentially_surjective and rep.is_equivalence


def test_constant_functor_not_faithful():
    WH = walking_homotopy()
    pt = terminal_category()
    F = FinFunctor(WH, pt, {x: "*" for x in WH.objects},
                   {m: "id_*" for m in WH.morphisms})
    assert validate_functor(F).ok
    rep = check_equivalence(F)
    assert not rep.faithful
    assert len(WH.hom("X", "Y")) == 2


def test_equivalence_implies_hom_bijection():
    J = walking_iso()
    F = identity_functor(J)
    assert check_equivalence(F).is_equivalence
    for x in J.objects:
        for y in J.objects:
            images = {F.mmap[f] for f in J.hom(x, y)}
            assert len(images) == len(J.hom(F.omap[x], F.omap[y]))


# -- duality -------------------------------------------------------------------

def test_opposite_involution():
    WH = walking_homotopy()
    assert opposite(opposite(WH)).comp == WH.comp
    assert validate_category(opposite(WH)).ok


def test_opposite_interval():
    I = interval()
    Iop = opposite(I)
    assert Iop.morphisms["0_to_1"] == ("1", "0")


def test_opposite_of_wh_reverses_split():
    WH = walking_homotopy()
    op = opposite(WH)
    # s: W -> X becomes X -> W and now is a split epi witness reversed
    assert op.morphisms["s"] == ("X", "W")
    assert op.comp[("d0", "s")] == "id_X"


def test_opposite_swaps_limits_and_colimits():
    L = lattice_2x2()
    Lop = opposite(L)
    assert terminal_object(Lop) == initial_object(L)
    assert initial_object(Lop) == terminal_object(L)
    po = pushout(L, "bot_to_a", "bot_to_b")
    pb = pullback(Lop, "bot_to_a", "bot_to_b")
    assert po[0] == pb[0]


def test_relabel_preserves_validity():
    WH = walking_homotopy()
    om = {x: f"o_{x}" for x in WH.objects}
    mm = {m: f"m_{m}" for m in WH.morphisms}
    assert validate_category(relabel(WH, om, mm)).ok


def test_nerve_chain3_shape():
    C = chain3_category()
    assert validate_category(C).ok
    assert C.comp[("g", "f")] == "gf"
