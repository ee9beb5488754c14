import pytest

from mct.fincat import FinCatError, isos, opposite, relabel
from mct.fixtures import (chain2_model, chain_poset, cotrivial_model,
                          lattice_2x2, terminal_category, trivial_model,
                          valid_model_fixtures, walking_homotopy, whc_model)
from mct.model import (ModelStructure, check_determination, check_stability,
                       cofibrant_objects, dual_model, fibrant_objects,
                       trivial_classes, validate_model,
                       weq_factorization_property)


def test_trivial_structure_on_lattice_passes_all_axioms():
    rep = validate_model(trivial_model(lattice_2x2()))
    assert rep.ok, str(rep)


def test_wh_structure_with_s_in_w_fails_m5():
    # s∘d0 = id_X is in W and s is in W, so two-of-three forces d0 into W
    WH = walking_homotopy()
    M = ModelStructure(WH, W={"id_X", "id_W", "id_Y", "s"},
                       F=set(WH.morphisms), coF=set(WH.morphisms))
    rep = validate_model(M)
    failing = rep.failing()
    assert "M5" in failing
    m5 = [r for r in rep.results if r.axiom == "M5"][0]
    assert "s" in m5.witness and "d0" in m5.witness


def test_identity_dropped_from_w_fails_m3():
    M = trivial_model(lattice_2x2())
    M.W.discard("id_bot")
    rep = validate_model(M)
    assert "M3" in rep.failing()


def test_trivial_classes_of_trivial_structure():
    M = trivial_model(lattice_2x2())
    tf, tc = trivial_classes(M)
    assert tf == isos(M.base)
    assert tc == isos(M.base)


def test_empty_w_breaks_m3():
    L = lattice_2x2()
    M = ModelStructure(L, W=set(), F=set(L.morphisms), coF=set(L.morphisms))
    tf, tc = trivial_classes(M)
    assert tf == set() and tc == set()
    assert "M3" in validate_model(M).failing()


def test_determination_trivial_structure():
    rep = check_determination(trivial_model(lattice_2x2()))
    assert rep.ok, str(rep)


def test_determination_detects_shrunk_cof():
    L = lattice_2x2()
    M = ModelStructure(L, W=isos(L), F=set(L.morphisms), coF=isos(L))
    rep = check_determination(M)
    assert not rep.ok
    # llp(isos) is everything, so coF != llp(F∩W)
    bad = [n for n, a, b in rep.mismatches if (a or b)]
    assert "coF = llp(F∩W)" in bad


def test_determination_of_dual_matches():
    for M in valid_model_fixtures():
        rep = check_determination(M)
        rep_dual = check_determination(dual_model(M))
        assert rep.ok == rep_dual.ok


def test_stability_trivial_structure():
    assert check_stability(trivial_model(lattice_2x2())).ok


def test_stability_all_valid_fixtures():
    for M in valid_model_fixtures():
        assert check_stability(M).ok, M.base.name


def test_stability_violation_detected():
    # coF = {ids, bot->a}: pushout of bot->a along bot->b has leg b->top not in coF
    L = lattice_2x2()
    ids = {L.id_of(x) for x in L.objects}
    M = ModelStructure(L, W=set(L.morphisms), F=set(L.morphisms),
                       coF=ids | {"bot_to_a"})
    rep = check_stability(M)
    assert not rep.ok
    assert any("bot_to_a" in v for v in rep.violations)


def test_fibrant_objects_trivial():
    M = trivial_model(lattice_2x2())
    assert fibrant_objects(M) == set(M.base.objects)
    assert cofibrant_objects(M) == set(M.base.objects)


def test_fibrant_objects_f_isos():
    M = cotrivial_model(lattice_2x2(), fibrations_trivial=True)
    # the map x -> top is an iso only for top itself
    assert fibrant_objects(M) == {"top"}
    assert cofibrant_objects(M) == set(M.base.objects)


def test_fibrant_objects_error_without_terminal():
    WH = walking_homotopy()
    M = ModelStructure(WH, W=isos(WH), F=set(WH.morphisms), coF=set(WH.morphisms))
    with pytest.raises(FinCatError):
        fibrant_objects(M)


def test_dual_model_swaps_classes():
    M = chain2_model()
    D = dual_model(M)
    assert D.W == M.W and D.F == M.coF and D.coF == M.F
    DD = dual_model(D)
    assert DD.W == M.W and DD.F == M.F and DD.coF == M.coF


def test_dual_under_cotrivial():
    M = cotrivial_model(lattice_2x2(), fibrations_trivial=True)
    D = dual_model(M)
    assert cofibrant_objects(D) == fibrant_objects(M)


def test_dual_valid_iff_valid():
    for M in valid_model_fixtures():
        assert validate_model(dual_model(M)).ok == validate_model(M).ok


def test_chain2_model_valid():
    rep = validate_model(chain2_model())
    assert rep.ok, str(rep)


def test_weq_factorization_property_on_valid_fixtures():
    for M in valid_model_fixtures():
        assert weq_factorization_property(M), M.base.name


def test_validation_invariant_under_relabeling():
    M = chain2_model()
    C = M.base
    om = {x: f"n{x}" for x in C.objects}
    mm = {m: f"n{m}" for m in C.morphisms}
    C2 = relabel(C, om, mm)
    M2 = ModelStructure(C2, W={mm[m] for m in M.W}, F={mm[m] for m in M.F},
                        coF={mm[m] for m in M.coF})
    assert validate_model(M2).ok == validate_model(M).ok


def test_whc_model_fails_m1_but_is_usable():
    M = whc_model()
    rep = validate_model(M)
    assert "M1" in rep.failing()
    # every object is fibrant and cofibrant by construction (F = coF = all)
    assert fibrant_objects(M) == set(M.base.objects)
    assert cofibrant_objects(M) == set(M.base.objects)


# -- the ten single-mutation corruptions (acceptance companion) ----------------

def mutations():
    """Ten corruptions of the trivial structure; each must fail with the
    expected axiom and a sensible witness."""
    out = []

    def fresh():
        return trivial_model(lattice_2x2())

    m = fresh(); m.W.discard("id_bot"); out.append(("drop id from W", m, "M3"))
    m = fresh(); m.F.discard("id_top"); out.append(("drop id from F", m, "M3"))
    m = fresh(); m.coF.discard("id_a"); out.append(("drop id from coF", m, "M3"))
    m = fresh(); m.W.add("bot_to_a"); out.append(("one non-iso in W", m, "M2"))
    m = fresh(); m.W.update({"bot_to_a", "a_to_top"})
    out.append(("W not closed under composition", m, "M5"))
    m = fresh(); m.W = set(m.base.morphisms)
    out.append(("W = all", m, "M2"))
    m = fresh(); m.F.discard("a_to_top")
    out.append(("remove factorization witness from F", m, "M4"))
    m = fresh(); m.coF.discard("bot_to_b")
    out.append(("remove factorization witness from coF", m, "M4"))
    m = fresh(); m.F = isos(m.base); m.W = isos(m.base)
    out.append(("F shrunk to isos with W = isos", m, "M4"))
    m = fresh(); m.W = {x for x in m.W if x != "id_top"} | {"a_to_top"}
    out.append(("swap an identity for a non-iso in W", m, "M3"))
    return out


@pytest.mark.parametrize("label,M,axiom", mutations())
def test_mutation_rejected(label, M, axiom):
    rep = validate_model(M)
    assert not rep.ok, label
    assert axiom in rep.failing(), (label, str(rep))
    failing = [r for r in rep.results if r.axiom == axiom][0]
    assert failing.witness, label
