"""Finite categories given by total composition tables, and brute-force (co)limits.

Everything downstream (lifting, model axioms, homotopies, Ho) runs on these.
A category is a plain record: ordered objects, ordered morphisms with dom/cod,
a distinguished identity per object, and a total composition table on
composable pairs.  Validation is exhaustive; searches are deterministic, with
ties broken by object/morphism declaration order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._search import budget_tick


class FinCatError(Exception):
    """Malformed reference or structurally unusable input."""


@dataclass(frozen=True)
class FinCat:
    name: str
    objects: tuple[str, ...]
    # morphism id -> (dom, cod); insertion order is the canonical order
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str]            # object -> identity morphism id
    comp: dict[tuple[str, str], str]      # (g, f) -> g∘f  for cod(f) = dom(g)
    _hom: dict[tuple[str, str], tuple[str, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for m, (d, c) in self.morphisms.items():
            if d not in self.objects or c not in self.objects:
                raise FinCatError(f"morphism {m!r} references unknown object")
        for x, i in self.identities.items():
            if x not in self.objects or i not in self.morphisms:
                raise FinCatError(f"identity of {x!r} is not a declared morphism")
        hom: dict[tuple[str, str], list[str]] = {}
        for m, (d, c) in self.morphisms.items():
            hom.setdefault((d, c), []).append(m)
        object.__setattr__(self, "_hom", {k: tuple(v) for k, v in hom.items()})

    # -- basic accessors -------------------------------------------------
    def dom(self, f: str) -> str:
        return self.morphisms[f][0]

    def cod(self, f: str) -> str:
        return self.morphisms[f][1]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def id_of(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.dom(f)) == f and self.dom(f) == self.cod(f)

    def compose(self, g: str, f: str) -> str:
        """g∘f, requiring cod(f) = dom(g)."""
        if self.cod(f) != self.dom(g):
            raise FinCatError(f"compose({g!r}, {f!r}): not composable")
        return self.comp[(g, f)]

    def obj_index(self, x: str) -> int:
        return self.objects.index(x)

    def mor_index(self, f: str) -> int:
        return list(self.morphisms).index(f)

    def composable_pairs(self):
        for g, (dg, _) in self.morphisms.items():
            for x in self.objects:
                for f in self.hom(x, dg):
                    yield g, f

    def __repr__(self):  # keep reprs short, these tables are large
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def build_fincat(name, objects, arrows, compose_rule, identities=None) -> FinCat:
    """Assemble a FinCat from non-identity arrows and a composition rule.

    `arrows` maps id -> (dom, cod) for non-identity morphisms; identities are
    added as id_<obj> unless `identities` overrides the naming.  The rule is
    called on non-identity composable pairs and must return a morphism id.
    """
    ids = identities or {x: f"id_{x}" for x in objects}
    morphisms: dict[str, tuple[str, str]] = {ids[x]: (x, x) for x in objects}
    for m, (d, c) in arrows.items():
        if m in morphisms:
            raise FinCatError(f"duplicate morphism id {m!r}")
        morphisms[m] = (d, c)
    comp: dict[tuple[str, str], str] = {}
    for g, (dg, _) in morphisms.items():
        for f, (df, cf) in morphisms.items():
            if cf != dg:
                continue
            if f == ids.get(df):
                comp[(g, f)] = g
            elif g == ids.get(dg):
                comp[(g, f)] = f
            else:
                comp[(g, f)] = compose_rule(g, f)
    return FinCat(name, tuple(objects), morphisms, ids, comp)


# -- validation ----------------------------------------------------------

@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        return "valid" if self.ok else "\n".join(self.violations)


def validate_category(C: FinCat) -> ValidationReport:
    """Exhaustively check the category axioms; list every violation found."""
    v: list[str] = []
    for x in C.objects:
        i = C.identities.get(x)
        if i is None:
            v.append(f"object {x}: no identity assigned")
        elif C.morphisms[i] != (x, x):
            v.append(f"identity {i} of {x}: wrong endpoints {C.morphisms[i]}")
    # totality and typing of the table
    for g, f in C.composable_pairs():
        h = C.comp.get((g, f))
        if h is None:
            v.append(f"missing composite {g}∘{f}")
            continue
        if h not in C.morphisms:
            v.append(f"composite {g}∘{f} = {h}: unknown morphism")
            continue
        if C.morphisms[h] != (C.dom(f), C.cod(g)):
            v.append(f"composite {g}∘{f} = {h}: endpoints {C.morphisms[h]} != ({C.dom(f)}, {C.cod(g)})")
    for (g, f) in C.comp:
        if g not in C.morphisms or f not in C.morphisms:
            v.append(f"table entry ({g}, {f}): unknown morphism")
        elif C.cod(f) != C.dom(g):
            v.append(f"table entry ({g}, {f}): pair is not composable")
    if v:
        return ValidationReport(v)
    # unit laws
    for f, (d, c) in C.morphisms.items():
        if C.comp[(f, C.id_of(d))] != f:
            v.append(f"unit law fails: {f}∘{C.id_of(d)} = {C.comp[(f, C.id_of(d))]}")
        if C.comp[(C.id_of(c), f)] != f:
            v.append(f"unit law fails: {C.id_of(c)}∘{f} = {C.comp[(C.id_of(c), f)]}")
    # associativity, O(#composable triples)
    for h, (dh, _) in C.morphisms.items():
        for g in (m for m, (_, c) in C.morphisms.items() if c == dh):
            hg = C.comp[(h, g)]
            dg = C.dom(g)
            for x in C.objects:
                for f in C.hom(x, dg):
                    budget_tick()
                    if C.comp[(h, C.comp[(g, f)])] != C.comp[(hg, f)]:
                        v.append(f"associativity fails on ({h}, {g}, {f})")
    return ValidationReport(v)


# -- functors, natural transformations, diagrams -------------------------

@dataclass(frozen=True)
class FinFunctor:
    source: FinCat
    target: FinCat
    omap: dict[str, str]
    mmap: dict[str, str]

    def on_obj(self, x: str) -> str:
        return self.omap[x]

    def on_mor(self, f: str) -> str:
        return self.mmap[f]


def validate_functor(F: FinFunctor) -> ValidationReport:
    v: list[str] = []
    C, D = F.source, F.target
    for x in C.objects:
        if F.omap.get(x) not in D.objects:
            v.append(f"object {x}: image missing or unknown")
    for f, (d, c) in C.morphisms.items():
        g = F.mmap.get(f)
        if g is None or g not in D.morphisms:
            v.append(f"morphism {f}: image missing or unknown")
        elif D.morphisms[g] != (F.omap[d], F.omap[c]):
            v.append(f"morphism {f}: image endpoints do not match")
    if v:
        return ValidationReport(v)
    for x in C.objects:
        if F.mmap[C.id_of(x)] != D.id_of(F.omap[x]):
            v.append(f"identity of {x} not preserved")
    for g, f in C.composable_pairs():
        if F.mmap[C.comp[(g, f)]] != D.comp[(F.mmap[g], F.mmap[f])]:
            v.append(f"composition not preserved on ({g}, {f})")
    return ValidationReport(v)


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms})


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    if F.target is not G.source and F.target != G.source:
        raise FinCatError("functors not composable")
    return FinFunctor(F.source, G.target,
                      {x: G.omap[F.omap[x]] for x in F.omap},
                      {m: G.mmap[F.mmap[m]] for m in F.mmap})


@dataclass(frozen=True)
class NatTransf:
    source: FinFunctor
    target: FinFunctor
    components: dict[str, str]   # object of the source category -> morphism of the target


def validate_nat_transf(t: NatTransf) -> ValidationReport:
    v: list[str] = []
    F, G = t.source, t.target
    C, D = F.source, F.target
    for x in C.objects:
        c = t.components.get(x)
        if c is None or c not in D.morphisms:
            v.append(f"component at {x}: missing or unknown")
        elif D.morphisms[c] != (F.omap[x], G.omap[x]):
            v.append(f"component at {x}: endpoints do not match")
    if v:
        return ValidationReport(v)
    for f, (x, y) in C.morphisms.items():
        if D.comp[(t.components[y], F.mmap[f])] != D.comp[(G.mmap[f], t.components[x])]:
            v.append(f"naturality square fails at {f}")
    return ValidationReport(v)


@dataclass(frozen=True)
class Diagram:
    shape: FinCat
    functor: FinFunctor

    def __post_init__(self):
        if self.functor.source != self.shape:
            raise FinCatError("diagram functor must have the shape as source")


def diagram(shape: FinCat, target: FinCat, omap: dict[str, str], mmap: dict[str, str]) -> Diagram:
    F = FinFunctor(shape, target, dict(omap), dict(mmap))
    rep = validate_functor(F)
    if not rep.ok:
        raise FinCatError(f"invalid diagram: {rep}")
    return Diagram(shape, F)


# -- diagram shapes used throughout ---------------------------------------

def _shape(name, objects, arrows):
    return build_fincat(name, objects, arrows, lambda g, f: None)


EMPTY_SHAPE = FinCat("empty", (), {}, {}, {})
SINGLE_ARROW_SHAPE = _shape("single_arrow", ["a", "b"], {"e": ("a", "b")})
PARALLEL_PAIR_SHAPE = _shape("parallel_pair", ["a", "b"], {"e1": ("a", "b"), "e2": ("a", "b")})
SPAN_SHAPE = _shape("span", ["m", "a", "b"], {"l": ("m", "a"), "r": ("m", "b")})
COSPAN_SHAPE = _shape("cospan", ["a", "b", "m"], {"l": ("a", "m"), "r": ("b", "m")})
DISCRETE_PAIR_SHAPE = FinCat("discrete_pair", ("a", "b"),
                             {"id_a": ("a", "a"), "id_b": ("b", "b")},
                             {"a": "id_a", "b": "id_b"},
                             {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b"})


# -- cones, limits, colimits ----------------------------------------------

def _cones(C: FinCat, D: Diagram):
    """All cones over D: (apex, legs) with legs natural, in canonical order."""
    sh, F = D.shape, D.functor
    for apex in C.objects:
        leg_choices = [C.hom(apex, F.omap[x]) for x in sh.objects]
        for combo in itertools.product(*leg_choices):
            budget_tick()
            legs = dict(zip(sh.objects, combo))
            if all(C.comp[(F.mmap[m], legs[x])] == legs[y]
                   for m, (x, y) in sh.morphisms.items()):
                yield apex, legs


def _cocones(C: FinCat, D: Diagram):
    sh, F = D.shape, D.functor
    for apex in C.objects:
        leg_choices = [C.hom(F.omap[x], apex) for x in sh.objects]
        for combo in itertools.product(*leg_choices):
            budget_tick()
            legs = dict(zip(sh.objects, combo))
            if all(C.comp[(legs[y], F.mmap[m])] == legs[x]
                   for m, (x, y) in sh.morphisms.items()):
                yield apex, legs


def limit(C: FinCat, D: Diagram):
    """Limiting cone (apex, legs) or None; ties broken by declaration order."""
    cones = list(_cones(C, D))
    for apex, legs in cones:
        if _is_limiting(C, D, apex, legs, cones):
            return apex, legs
    return None


def colimit(C: FinCat, D: Diagram):
    cocones = list(_cocones(C, D))
    for apex, legs in cocones:
        if _is_colimiting(C, D, apex, legs, cocones):
            return apex, legs
    return None


def _is_limiting(C, D, apex, legs, cones):
    sh = D.shape
    for a2, legs2 in cones:
        n = 0
        for t in C.hom(a2, apex):
            if all(C.comp[(legs[x], t)] == legs2[x] for x in sh.objects):
                n += 1
                if n > 1:
                    return False
        if n != 1:
            return False
    return True


def _is_colimiting(C, D, apex, legs, cocones):
    sh = D.shape
    for a2, legs2 in cocones:
        n = 0
        for t in C.hom(apex, a2):
            if all(C.comp[(t, legs[x])] == legs2[x] for x in sh.objects):
                n += 1
                if n > 1:
                    return False
        if n != 1:
            return False
    return True


def empty_diagram(C: FinCat) -> Diagram:
    return Diagram(EMPTY_SHAPE, FinFunctor(EMPTY_SHAPE, C, {}, {}))


def terminal_object(C: FinCat):
    r = limit(C, empty_diagram(C))
    return r[0] if r else None


def initial_object(C: FinCat):
    r = colimit(C, empty_diagram(C))
    return r[0] if r else None


def discrete_pair_diagram(C: FinCat, x: str, y: str) -> Diagram:
    return diagram(DISCRETE_PAIR_SHAPE, C, {"a": x, "b": y},
                   {"id_a": C.id_of(x), "id_b": C.id_of(y)})


def product(C: FinCat, x: str, y: str):
    """Binary product: (apex, proj_x, proj_y) or None."""
    r = limit(C, discrete_pair_diagram(C, x, y))
    if r is None:
        return None
    apex, legs = r
    return apex, legs["a"], legs["b"]


def coproduct(C: FinCat, x: str, y: str):
    """Binary coproduct: (apex, inj_x, inj_y) or None."""
    r = colimit(C, discrete_pair_diagram(C, x, y))
    if r is None:
        return None
    apex, legs = r
    return apex, legs["a"], legs["b"]


def span_diagram(C: FinCat, f: str, g: str) -> Diagram:
    if C.dom(f) != C.dom(g):
        raise FinCatError("span legs must share their domain")
    m = C.dom(f)
    return diagram(SPAN_SHAPE, C, {"m": m, "a": C.cod(f), "b": C.cod(g)},
                   {"l": f, "r": g, "id_m": C.id_of(m),
                    "id_a": C.id_of(C.cod(f)), "id_b": C.id_of(C.cod(g))})


def cospan_diagram(C: FinCat, f: str, g: str) -> Diagram:
    if C.cod(f) != C.cod(g):
        raise FinCatError("cospan legs must share their codomain")
    m = C.cod(f)
    return diagram(COSPAN_SHAPE, C, {"m": m, "a": C.dom(f), "b": C.dom(g)},
                   {"l": f, "r": g, "id_m": C.id_of(m),
                    "id_a": C.id_of(C.dom(f)), "id_b": C.id_of(C.dom(g))})


def pushout(C: FinCat, f: str, g: str):
    """Pushout square of the span (f, g): (apex, leg_along_f, leg_along_g) or None.

    leg_along_f is the cocone leg out of cod(f); the returned square satisfies
    leg_along_f ∘ f = leg_along_g ∘ g.
    """
    r = colimit(C, span_diagram(C, f, g))
    if r is None:
        return None
    apex, legs = r
    return apex, legs["a"], legs["b"]


def pullback(C: FinCat, f: str, g: str):
    """Pullback square of the cospan (f, g): (apex, leg_to_dom_f, leg_to_dom_g) or None."""
    r = limit(C, cospan_diagram(C, f, g))
    if r is None:
        return None
    apex, legs = r
    return apex, legs["a"], legs["b"]


def equalizer(C: FinCat, f: str, g: str):
    if (C.dom(f), C.cod(f)) != (C.dom(g), C.cod(g)):
        raise FinCatError("parallel pair required")
    D = diagram(PARALLEL_PAIR_SHAPE, C, {"a": C.dom(f), "b": C.cod(f)},
                {"e1": f, "e2": g, "id_a": C.id_of(C.dom(f)), "id_b": C.id_of(C.cod(f))})
    r = limit(C, D)
    return None if r is None else (r[0], r[1]["a"])


def coequalizer(C: FinCat, f: str, g: str):
    if (C.dom(f), C.cod(f)) != (C.dom(g), C.cod(g)):
        raise FinCatError("parallel pair required")
    D = diagram(PARALLEL_PAIR_SHAPE, C, {"a": C.dom(f), "b": C.cod(f)},
                {"e1": f, "e2": g, "id_a": C.id_of(C.dom(f)), "id_b": C.id_of(C.cod(f))})
    r = colimit(C, D)
    return None if r is None else (r[0], r[1]["b"])


def induced_from_colimit(C: FinCat, apex: str, legs: list[str], cocone: list[str]):
    """The unique t: apex -> V factoring the given cocone through the colimit legs."""
    target = C.cod(cocone[0])
    found = None
    for t in C.hom(apex, target):
        if all(C.comp[(t, l)] == c for l, c in zip(legs, cocone)):
            if found is not None:
                raise FinCatError("colimit factorization not unique (invalid input)")
            found = t
    if found is None:
        raise FinCatError("no factorization through the colimit (invalid input)")
    return found


def induced_to_limit(C: FinCat, apex: str, legs: list[str], cone: list[str]):
    source = C.dom(cone[0])
    found = None
    for t in C.hom(source, apex):
        if all(C.comp[(l, t)] == c for l, c in zip(legs, cone)):
            if found is not None:
                raise FinCatError("limit factorization not unique (invalid input)")
            found = t
    if found is None:
        raise FinCatError("no factorization through the limit (invalid input)")
    return found


# -- isomorphisms, equivalences, duality ----------------------------------

def is_iso(C: FinCat, f: str):
    """(True, inverse) if f is invertible, else (False, None)."""
    x, y = C.morphisms[f]
    for g in C.hom(y, x):
        if C.comp[(g, f)] == C.id_of(x) and C.comp[(f, g)] == C.id_of(y):
            return True, g
    return False, None


def isos(C: FinCat) -> set[str]:
    return {f for f in C.morphisms if is_iso(C, f)[0]}


@dataclass
class EquivalenceReport:
    full: bool
    faithful: bool
    essentially_surjective: bool
    witnesses: dict[str, str]

    @property
    def is_equivalence(self) -> bool:
        return self.full and self.faithful and self.essentially_surjective


def check_equivalence(F: FinFunctor) -> EquivalenceReport:
    """Full / faithful / essentially surjective, each by enumeration."""
    C, D = F.source, F.target
    full, faithful, w = True, True, {}
    for x in C.objects:
        for y in C.objects:
            images = [F.mmap[f] for f in C.hom(x, y)]
            if len(set(images)) < len(images):
                faithful = False
                w.setdefault("faithful", f"hom({x},{y}) not injective")
            target_hom = D.hom(F.omap[x], F.omap[y])
            if not set(target_hom) <= set(images):
                full = False
                w.setdefault("full", f"hom({x},{y}) not surjective")
    ess = True
    image_objs = set(F.omap.values())
    for d in D.objects:
        if not any(any(is_iso(D, f)[0] for f in D.hom(d, o)) for o in image_objs):
            ess = False
            w.setdefault("essentially_surjective", f"object {d} not hit up to iso")
            break
    return EquivalenceReport(full, faithful, ess, w)


def opposite(C: FinCat) -> FinCat:
    """Formal dual; morphism ids are kept, dom/cod and composition flip."""
    return FinCat(C.name + "_op", C.objects,
                  {m: (c, d) for m, (d, c) in C.morphisms.items()},
                  dict(C.identities),
                  {(f, g): h for (g, f), h in C.comp.items()})


def relabel(C: FinCat, obj_map: dict[str, str], mor_map: dict[str, str]) -> FinCat:
    """Rename objects and morphisms (bijectively); used for invariance tests."""
    return FinCat(C.name + "_relabeled",
                  tuple(obj_map[x] for x in C.objects),
                  {mor_map[m]: (obj_map[d], obj_map[c]) for m, (d, c) in C.morphisms.items()},
                  {obj_map[x]: mor_map[i] for x, i in C.identities.items()},
                  {(mor_map[g], mor_map[f]): mor_map[h] for (g, f), h in C.comp.items()})


# -- functor enumeration (used by localization checks) --------------------

def all_functors(C: FinCat, D: FinCat, arrow_filter=None):
    """Yield every functor C -> D, by depth-first assignment with pruning.

    arrow_filter(f, image) may veto an assignment (e.g. to demand that a class
    of arrows lands in isomorphisms).
    """
    non_id = [m for m in C.morphisms if not C.is_identity(m)]

    def assign_objects(i, omap):
        if i == len(C.objects):
            yield from assign_arrows(0, omap, {})
            return
        x = C.objects[i]
        for dx in D.objects:
            omap[x] = dx
            # cheap prune: every hom out of / into x must stay inhabitable
            ok = True
            for y, dy in omap.items():
                if C.hom(x, y) and not D.hom(dx, dy):
                    ok = False
                    break
                if C.hom(y, x) and not D.hom(dy, dx):
                    ok = False
                    break
            if ok:
                yield from assign_objects(i + 1, omap)
        omap.pop(x, None)

    def assign_arrows(j, omap, mmap):
        budget_tick()
        if j == len(non_id):
            full = dict(mmap)
            for x in C.objects:
                full[C.id_of(x)] = D.id_of(omap[x])
            F = FinFunctor(C, D, dict(omap), full)
            if validate_functor(F).ok:
                yield F
            return
        f = non_id[j]
        d, c = C.morphisms[f]
        for img in D.hom(omap[d], omap[c]):
            if arrow_filter and not arrow_filter(f, img, D):
                continue
            mmap[f] = img
            # prune on already-decidable composites
            ok = True
            for g, h in list(mmap.items()):
                if g == f:
                    continue
                for a, b in ((f, g), (g, f)):
                    if C.cod(b) == C.dom(a):
                        comp = C.comp[(a, b)]
                        img_comp = D.comp[(mmap[a], mmap[b])]
                        known = mmap.get(comp) if not C.is_identity(comp) else D.id_of(omap[C.dom(b)])
                        if known is not None and known != img_comp:
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                yield from assign_arrows(j + 1, omap, mmap)
            del mmap[f]

    yield from assign_objects(0, {})
