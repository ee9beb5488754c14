"""Canonical test categories and model structures.

The walking-homotopy category WH is the smallest category carrying a
nontrivial homotopy for Sigma = {identities, s}.  Its completion
`wh_completion` adjoins, inside presheaves over WH, the coproduct X+X, the
eight cylinder-leg pushouts, and initial/terminal objects, so cylinder gluing
and the Quillen normalization pipeline have everything they need.  The
completion is computed from the presheaf formulas, not hand-tabulated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fincat import FinCat, FinCatError, build_fincat, isos
from .model import ModelStructure


# -- small posets and friends ---------------------------------------------

def terminal_category() -> FinCat:
    return build_fincat("pt", ["*"], {}, lambda g, f: None)


def poset_category(name: str, elements: list[str], leq) -> FinCat:
    """Poset as a category: one arrow a_to_b whenever leq(a, b)."""
    arrows = {f"{a}_to_{b}": (a, b)
              for a in elements for b in elements if a != b and leq(a, b)}

    def rule(g, f):
        a = f.split("_to_")[0]
        b = g.split("_to_")[1]
        return f"{a}_to_{b}" if a != b else f"id_{a}"

    return build_fincat(name, elements, arrows, rule)


def interval() -> FinCat:
    return poset_category("interval", ["0", "1"], lambda a, b: a <= b)


def chain_poset(n: int) -> FinCat:
    elts = [str(i) for i in range(n + 1)]
    return poset_category(f"chain{n}", elts, lambda a, b: int(a) <= int(b))


def lattice_2x2() -> FinCat:
    order = {"bot": {"bot", "a", "b", "top"}, "a": {"a", "top"},
             "b": {"b", "top"}, "top": {"top"}}
    return poset_category("lattice2x2", ["bot", "a", "b", "top"],
                          lambda x, y: y in order[x])


def parallel_pair() -> FinCat:
    return build_fincat("parallel_pair", ["A", "B"],
                        {"f": ("A", "B"), "g": ("A", "B")}, lambda g, f: None)


def walking_iso() -> FinCat:
    def rule(g, f):
        return "id_A" if (g, f) == ("v", "u") else "id_B"
    return build_fincat("walking_iso", ["A", "B"],
                        {"u": ("A", "B"), "v": ("B", "A")}, rule)


def chain3_category() -> FinCat:
    """x -> y -> z with the composite; its nerve is the standard 2-simplex."""
    return build_fincat("chain3", ["x", "y", "z"],
                        {"f": ("x", "y"), "g": ("y", "z"), "gf": ("x", "z")},
                        lambda g, f: "gf")


# -- the walking homotopy -------------------------------------------------

_WH_COMP = {
    ("s", "d0"): "id_X", ("s", "d1"): "id_X",
    ("d0", "s"): "e0", ("d1", "s"): "e1",
    ("e0", "d0"): "d0", ("e0", "d1"): "d0",
    ("e1", "d0"): "d1", ("e1", "d1"): "d1",
    ("s", "e0"): "s", ("s", "e1"): "s",
    ("e0", "e0"): "e0", ("e0", "e1"): "e0",
    ("e1", "e0"): "e1", ("e1", "e1"): "e1",
    ("h", "d0"): "f", ("h", "d1"): "g",
    ("h", "e0"): "fs", ("h", "e1"): "gs",
    ("f", "s"): "fs", ("g", "s"): "gs",
    ("fs", "d0"): "f", ("fs", "d1"): "f",
    ("gs", "d0"): "g", ("gs", "d1"): "g",
    ("fs", "e0"): "fs", ("fs", "e1"): "fs",
    ("gs", "e0"): "gs", ("gs", "e1"): "gs",
}


def walking_homotopy() -> FinCat:
    """WH: objects X, W, Y; s∘d0 = s∘d1 = id_X, h∘d0 = f, h∘d1 = g.  13 morphisms."""
    arrows = {"d0": ("X", "W"), "d1": ("X", "W"), "s": ("W", "X"),
              "e0": ("W", "W"), "e1": ("W", "W"),
              "f": ("X", "Y"), "g": ("X", "Y"), "h": ("W", "Y"),
              "fs": ("W", "Y"), "gs": ("W", "Y")}
    return build_fincat("walking_homotopy", ["X", "W", "Y"], arrows,
                        lambda g, f: _WH_COMP[(g, f)])


def wh_sigma() -> set[str]:
    return {"id_X", "id_W", "id_Y", "s"}


# -- presheaf engine over WH ------------------------------------------------
#
# A presheaf P over the base B assigns each base object a finite tuple of
# element labels and each base morphism m: a -> b a function P(b) -> P(a).
# The objects we need are: representables, one binary coproduct of
# representables, pushouts of representable spans, and the empty/terminal
# presheaves.  For each shape nat(P, Q) has a closed form, so hom-sets come
# cheap; arrows are stored as per-level component dicts.


@dataclass
class _Psh:
    name: str
    values: dict[str, tuple]
    action: dict[tuple[str, object], object]
    # how to enumerate nat(P, -): ("repr", c) | ("copr", c, c) | ("push", ...) | "empty" | "terminal"
    kind: tuple = ("opaque",)

    def act(self, m, e):
        return self.action[(m, e)]


def _representable(B: FinCat, c: str) -> _Psh:
    values = {b: tuple(B.hom(b, c)) for b in B.objects}
    action = {}
    for m, (a, b) in B.morphisms.items():
        for e in values[b]:
            action[(m, e)] = B.comp[(e, m)]
    return _Psh(f"y{c}", values, action, ("repr", c))


def _coproduct_of_representables(B: FinCat, name: str, c1: str, c2: str) -> _Psh:
    values = {b: tuple(("l", e) for e in B.hom(b, c1)) + tuple(("r", e) for e in B.hom(b, c2))
              for b in B.objects}
    action = {}
    for m, (a, b) in B.morphisms.items():
        for tag, e in values[b]:
            action[(m, (tag, e))] = (tag, B.comp[(e, m)])
    return _Psh(name, values, action, ("copr", c1, c2))


def _pushout_of_representables(B: FinCat, name: str, apex: str, w: str,
                               m1: str, m2: str) -> _Psh:
    """Pushout  y(w) <- y(apex) -> y(w)  along postcomposition with m1, m2: apex -> w.

    Levelwise quotient of the tagged disjoint union by ("l", m1∘e) ~ ("r", m2∘e).
    """
    values = {}
    rep_of: dict[tuple[str, tuple[str, str]], tuple[str, str]] = {}
    for b in B.objects:
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        elems = [("l", e) for e in B.hom(b, w)] + [("r", e) for e in B.hom(b, w)]
        for x in elems:
            parent[x] = x
        for e in B.hom(b, apex):
            a, c = ("l", B.comp[(m1, e)]), ("r", B.comp[(m2, e)])
            ra, rc = find(a), find(c)
            if ra != rc:
                parent[max(ra, rc)] = min(ra, rc)
        reps = []
        for x in elems:
            r = find(x)
            rep_of[(b, x)] = r
            if r == x:
                reps.append(x)
        values[b] = tuple(reps)
    action = {}
    for m, (a, b) in B.morphisms.items():
        for tag, e in values[b]:
            action[(m, (tag, e))] = rep_of[(a, (tag, B.comp[(e, m)]))]
    P = _Psh(name, values, action, ("push", apex, w, m1, m2))
    P.rep_of = rep_of  # used to express the pushout legs
    return P


def _empty_psh(B: FinCat) -> _Psh:
    return _Psh("O", {b: () for b in B.objects}, {}, ("empty",))


def _terminal_psh(B: FinCat) -> _Psh:
    values = {b: ("*",) for b in B.objects}
    action = {(m, "*"): "*" for m in B.morphisms}
    return _Psh("T", values, action, ("terminal",))


def _nat_transfs(B: FinCat, P: _Psh, Q: _Psh):
    """All natural transformations P -> Q as per-level component dicts.

    Uses Yoneda / the colimit formula for the shapes above, so this never
    enumerates raw function families except out of the terminal presheaf.
    """
    def from_element(c, q):
        # y(c) -> Q determined by q in Q(c)
        return {b: {e: Q.act(e, q) for e in B.hom(b, c)} for b in B.objects}

    kind = P.kind[0]
    if kind == "empty":
        yield {b: {} for b in B.objects}
    elif kind == "repr":
        c = P.kind[1]
        for q in Q.values[c]:
            yield from_element(c, q)
    elif kind == "copr":
        c1, c2 = P.kind[1], P.kind[2]
        for q1 in Q.values[c1]:
            f1 = from_element(c1, q1)
            for q2 in Q.values[c2]:
                f2 = from_element(c2, q2)
                yield {b: {("l", e): f1[b][e] for e in B.hom(b, c1)} |
                          {("r", e): f2[b][e] for e in B.hom(b, c2)}
                       for b in B.objects}
    elif kind == "push":
        apex, w, m1, m2 = P.kind[1:]
        for q1 in Q.values[w]:
            for q2 in Q.values[w]:
                # compatibility over the apex: Q(m1)(q1) = Q(m2)(q2)
                if Q.act(m1, q1) != Q.act(m2, q2):
                    continue
                f1, f2 = from_element(w, q1), from_element(w, q2)
                comp = {}
                for b in B.objects:
                    level = {}
                    for tag, e in P.values[b]:
                        level[(tag, e)] = (f1 if tag == "l" else f2)[b][e]
                    comp[b] = level
                yield comp
    elif kind == "terminal":
        pools = [Q.values[b] for b in B.objects]
        if any(not pool for pool in pools):
            return
        for combo in itertools.product(*pools):
            family = dict(zip(B.objects, combo))
            if all(Q.act(m, family[b]) == family[a]
                   for m, (a, b) in B.morphisms.items()):
                yield {b: {"*": family[b]} for b in B.objects}
    else:
        raise FinCatError(f"cannot enumerate transformations out of {P.name}")


def presheaf_subcategory(B: FinCat, presheaves: list[_Psh], name: str,
                         named: dict[tuple[str, str], dict] | None = None):
    """Full subcategory of presheaves over B on the given objects.

    Returns (FinCat, components) where components maps each morphism id to its
    per-level dict.  `named` maps (src, tgt) -> {frozen components -> id} for
    arrows that should carry readable ids.
    """
    named = named or {}
    by_name = {P.name: P for P in presheaves}
    if len(by_name) != len(presheaves):
        raise FinCatError("presheaf names must be unique")

    def freeze(P, comp):
        return tuple((b, tuple(sorted(((str(k), str(v)) for k, v in comp[b].items()))))
                     for b in B.objects)

    arrows: dict[str, tuple[str, str]] = {}
    components: dict[str, dict] = {}
    frozen_to_id: dict[tuple[str, str, tuple], str] = {}
    identities: dict[str, str] = {}

    for P in presheaves:
        for Q in presheaves:
            counter = 0
            for comp in _nat_transfs(B, P, Q):
                fz = freeze(P, comp)
                key = (P.name, Q.name, fz)
                if key in frozen_to_id:
                    continue
                if P.name == Q.name and all(comp[b][e] == e for b in B.objects
                                            for e in P.values[b]):
                    mid = f"id_{P.name}"
                    identities[P.name] = mid
                else:
                    mid = named.get((P.name, Q.name), {}).get(fz)
                    if mid is None:
                        counter += 1
                        mid = f"{P.name}__{Q.name}_{counter}"
                arrows[mid] = (P.name, Q.name)
                components[mid] = comp
                frozen_to_id[key] = mid

    comp_table: dict[tuple[str, str], str] = {}
    for g, (dg, cg) in arrows.items():
        for f, (df, cf) in arrows.items():
            if cf != dg:
                continue
            gh = {b: {e: components[g][b][components[f][b][e]]
                      for e in by_name[df].values[b]}
                  for b in B.objects}
            comp_table[(g, f)] = frozen_to_id[(df, cg, freeze(by_name[df], gh))]

    C = FinCat(name, tuple(P.name for P in presheaves), arrows, identities, comp_table)
    return C, components


# -- the completed walking homotopy ---------------------------------------

_WHC_CACHE: dict[str, object] = {}


def wh_completion():
    """WH completed inside presheaves: returns (FinCat, classes dict).

    Objects: O (initial), yX, yW, yY, XX = yX + yX, pushouts
    Pdij = yW +_{yX; di, dj} yW and Peij = yW +_{yW; ei, ej} yW, T (terminal).
    Classes: Sigma = {identities, s}; W = closure of Sigma plus the pushout
    legs under composition and two-out-of-three; F = COF = everything, so all
    objects are fibrant and cofibrant by construction.
    """
    if "cat" in _WHC_CACHE:
        return _WHC_CACHE["cat"], _WHC_CACHE["classes"]

    B = walking_homotopy()
    yX, yW, yY = (_representable(B, c) for c in ("X", "W", "Y"))
    O, T = _empty_psh(B), _terminal_psh(B)
    XX = _coproduct_of_representables(B, "XX", "X", "X")

    pushouts = []
    for i, j in itertools.product("01", repeat=2):
        pushouts.append(_pushout_of_representables(B, f"Pd{i}{j}", "X", "W", f"d{i}", f"d{j}"))
    for i, j in itertools.product("01", repeat=2):
        pushouts.append(_pushout_of_representables(B, f"Pe{i}{j}", "W", "W", f"e{i}", f"e{j}"))

    objs = [O, yX, yW, yY, XX] + pushouts + [T]

    named: dict[tuple[str, str], dict] = {}

    def freeze(P, comp):
        return tuple((b, tuple(sorted(((str(k), str(v)) for k, v in comp[b].items()))))
                     for b in B.objects)

    # base arrows keep their WH names
    reps = {"X": yX, "W": yW, "Y": yY}
    for m, (d, c) in B.morphisms.items():
        if B.is_identity(m):
            continue
        comp = {b: {e: B.comp[(m, e)] for e in B.hom(b, d)} for b in B.objects}
        named.setdefault((f"y{d}", f"y{c}"), {})[freeze(reps[d], comp)] = m
    # coproduct injections
    for tag, iname in (("l", "i0"), ("r", "i1")):
        comp = {b: {e: (tag, e) for e in B.hom(b, "X")} for b in B.objects}
        named.setdefault(("yX", "XX"), {})[freeze(yX, comp)] = iname
    # pushout legs and the induced collapse onto yX
    for P in pushouts:
        legl = {b: {e: P.rep_of[(b, ("l", e))] for e in B.hom(b, "W")} for b in B.objects}
        legr = {b: {e: P.rep_of[(b, ("r", e))] for e in B.hom(b, "W")} for b in B.objects}
        bucket = named.setdefault(("yW", P.name), {})
        bucket[freeze(yW, legl)] = f"{P.name}_a"
        bucket.setdefault(freeze(yW, legr), f"{P.name}_b")
        smap = {b: {(tag, e): B.comp[("s", e)] for tag, e in P.values[b]} for b in B.objects}
        named.setdefault((P.name, "yX"), {})[freeze(P, smap)] = f"{P.name}_s"

    C, components = presheaf_subcategory(B, objs, "wh_completion", named)

    sigma = {C.id_of(o) for o in C.objects} | {"s"}
    seed = set(sigma)
    for P in pushouts:
        seed.update({f"{P.name}_a", f"{P.name}_b", f"{P.name}_s"})
    W = _w_closure(C, seed)
    all_mor = set(C.morphisms)
    classes = {"Sigma": sigma, "W": W, "F": set(all_mor), "COF": set(all_mor)}
    _WHC_CACHE["cat"] = C
    _WHC_CACHE["classes"] = classes
    return C, classes


def _w_closure(C: FinCat, seed: set[str]) -> set[str]:
    """Close a morphism class under composition and two-out-of-three."""
    W = set(seed) | {C.id_of(x) for x in C.objects}
    changed = True
    while changed:
        changed = False
        for (g, f), gf in C.comp.items():
            ins = (f in W) + (g in W) + (gf in W)
            if ins == 2:
                for m in (f, g, gf):
                    if m not in W:
                        W.add(m)
                        changed = True
    return W


# -- model structures on the fixtures --------------------------------------

def trivial_model(C: FinCat) -> ModelStructure:
    """W = isos, F = coF = all.  Valid on any finitely bicomplete fixture."""
    all_m = set(C.morphisms)
    return ModelStructure(C, W=isos(C), F=set(all_m), coF=set(all_m))


def cotrivial_model(C: FinCat, fibrations_trivial: bool = True) -> ModelStructure:
    """W = all; one of F/coF is the isos, the other everything."""
    all_m = set(C.morphisms)
    if fibrations_trivial:
        return ModelStructure(C, W=set(all_m), F=isos(C), coF=set(all_m))
    return ModelStructure(C, W=set(all_m), F=set(all_m), coF=isos(C))


def chain2_model() -> ModelStructure:
    """On the chain 0 < 1 < 2: W = {ids, 0->1}, F = all, coF = {ids, 1->2, 0->2}."""
    C = chain_poset(2)
    ids = {C.id_of(x) for x in C.objects}
    return ModelStructure(C, W=ids | {"0_to_1"}, F=set(C.morphisms),
                          coF=ids | {"1_to_2", "0_to_2"})


def whc_model() -> ModelStructure:
    """Declared structure on the completion: fails M1/M2, powers the Sigma machinery."""
    C, classes = wh_completion()
    return ModelStructure(C, W=set(classes["W"]), F=set(classes["F"]),
                          coF=set(classes["COF"]))


def valid_model_fixtures() -> list[ModelStructure]:
    return [
        trivial_model(lattice_2x2()),
        trivial_model(terminal_category()),
        trivial_model(walking_iso()),
        trivial_model(chain_poset(2)),
        cotrivial_model(lattice_2x2(), fibrations_trivial=True),
        cotrivial_model(lattice_2x2(), fibrations_trivial=False),
        chain2_model(),
    ]
