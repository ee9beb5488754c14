import itertools

import pytest

from mct.factor import (LiftingProblem, RetractWitness, factorizations,
                        has_lifting, is_retract, llp_class, retract_of_factor,
                        rlp_class, solve_lifting, validate_wfs)
from mct.fincat import FinCatError, is_iso, isos
from mct.fixtures import (lattice_2x2, parallel_pair, walking_homotopy,
                          walking_iso)


def test_iso_forced_diagonal():
    # left arrow invertible: exactly the diagonal u∘f^{-1} shows up
    J = walking_iso()
    p = LiftingProblem(J, "u", "id_B", "u", "id_B")
    sols = solve_lifting(p)
    assert sols == ["id_B"]


def test_lifting_scan_in_wh():
    # hom(W, Y) = {h, fs, gs}; scanning it solves f = d0 against id_Y
    WH = walking_homotopy()
    p = LiftingProblem(WH, "d0", "id_Y", "f", "h")
    assert solve_lifting(p) == ["h"]
    assert set(WH.hom("W", "Y")) == {"h", "fs", "gs"}
    p2 = LiftingProblem(WH, "d0", "id_Y", "f", "fs")
    assert solve_lifting(p2) == ["fs"]


def test_square_with_no_diagonal():
    # f against f with identity frame: a diagonal would be a map B -> A
    P = parallel_pair()
    p = LiftingProblem(P, "f", "f", "id_A", "id_B")
    assert P.hom("B", "A") == ()
    assert solve_lifting(p) == []


def test_non_commuting_square_rejected():
    P = parallel_pair()
    with pytest.raises(FinCatError):
        LiftingProblem(P, "id_A", "id_B", "f", "g")


def test_llp_of_empty_class_is_everything():
    WH = walking_homotopy()
    assert llp_class(WH, set()) == set(WH.morphisms)


def test_isos_have_llp_against_everything():
    J = walking_iso()
    assert llp_class(J, set(J.morphisms)) == set(J.morphisms)
    L = lattice_2x2()
    for f in isos(L):
        assert all(has_lifting(L, f, g) for g in L.morphisms)
        assert all(has_lifting(L, g, f) for g in L.morphisms)


def test_retract_of_itself():
    WH = walking_homotopy()
    ok, w = is_retract(WH, "f", "f")
    assert ok


def test_idx_retract_of_e0_in_wh():
    WH = walking_homotopy()
    ok, w = is_retract(WH, "id_X", "e0")
    assert ok
    # the witness rows use s and d0: s∘d0 = id_X
    assert WH.comp[("s", "d0")] == "id_X"


def test_retract_incompatible_endpoints():
    WH = walking_homotopy()
    ok, _ = is_retract(WH, "f", "id_W")
    assert not ok


def test_factorizations_contain_identity_pair():
    WH = walking_homotopy()
    assert ("id_X", "f") in factorizations(WH, "f")
    assert ("f", "id_Y") in factorizations(WH, "f")


def test_factorization_of_f_through_w():
    WH = walking_homotopy()
    assert ("d0", "h") in factorizations(WH, "f")


def test_factorizations_of_id_x_through_w():
    WH = walking_homotopy()
    through_w = [(i, p) for i, p in factorizations(WH, "id_X")
                 if WH.cod(i) == "W"]
    assert set(through_w) == {("d0", "s"), ("d1", "s")}


def test_wfs_isos_all():
    L = lattice_2x2()
    rep = validate_wfs(L, isos(L), set(L.morphisms))
    assert rep.ok


def test_wfs_all_isos():
    L = lattice_2x2()
    rep = validate_wfs(L, set(L.morphisms), isos(L))
    assert rep.ok


def test_wfs_isos_isos_fails_on_wh():
    WH = walking_homotopy()
    rep = validate_wfs(WH, isos(WH), isos(WH))
    assert not rep.ok
    assert "f" in rep.factorization_failures


def test_retract_of_factor_left():
    # id_X = s∘d0 and id_X lifts against s: id_X is a retract of d0
    WH = walking_homotopy()
    w = retract_of_factor(WH, "id_X", "d0", "s", side="left")
    assert WH.comp[(w.t, w.v)] == "id_X"
    assert WH.comp[(w.r, w.u)] == "id_X"


def test_retract_of_factor_iso_any_factorization():
    J = walking_iso()
    w = retract_of_factor(J, "u", "u", "id_B", side="left")
    assert isinstance(w, RetractWitness)


def test_retract_of_factor_missing_lift_errors():
    # f = h∘d0 but f has no lift against h (it would need an arrow Y -> W)
    WH = walking_homotopy()
    with pytest.raises(FinCatError):
        retract_of_factor(WH, "f", "d0", "h", side="left")


# -- class calculus properties ------------------------------------------------

def test_llp_antitone():
    WH = walking_homotopy()
    all_m = sorted(WH.morphisms)
    small = {"s"}
    for extra in all_m:
        big = small | {extra}
        assert llp_class(WH, big) <= llp_class(WH, small)
        assert rlp_class(WH, big) <= rlp_class(WH, small)


def test_llp_closed_under_composition_and_identities():
    WH = walking_homotopy()
    S = {"h"}
    L = llp_class(WH, S)
    for x in WH.objects:
        assert WH.id_of(x) in L
    for (g, f), gf in WH.comp.items():
        if f in L and g in L:
            assert gf in L
    R = rlp_class(WH, S)
    for (g, f), gf in WH.comp.items():
        if f in R and g in R:
            assert gf in R


def test_galois_connection():
    L = lattice_2x2()
    classes = [isos(L), set(L.morphisms), {L.id_of(x) for x in L.objects}]
    for A, B in itertools.product(classes, repeat=2):
        left = A <= llp_class(L, B)
        right = B <= rlp_class(L, A)
        assert left == right


def test_retract_closure_of_llp():
    WH = walking_homotopy()
    S = {"h"}
    L = llp_class(WH, S)
    for f in WH.morphisms:
        for g in L:
            if is_retract(WH, f, g)[0]:
                assert f in L
