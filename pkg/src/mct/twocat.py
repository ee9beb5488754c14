"""Finite 2-categories with explicit composition tables.

Both compositions are stored in full: vertical per hom-category, horizontal
for every composable 2-cell pair.  Whiskering is horizontal composition with
an identity 2-cell; `whisker_determination_check` cross-validates the stored
table against the whisker formula, which catches construction bugs in the
homotopy-2-category builder.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._search import UnionFind, budget_tick
from .fincat import FinCat, FinCatError, FinFunctor, validate_functor


@dataclass
class TwoCat:
    name: str
    objects: tuple[str, ...]
    one_cells: dict[str, tuple[str, str]]       # id -> (dom, cod)
    id_1: dict[str, str]                         # object -> identity 1-cell
    two_cells: dict[str, tuple[str, str]]        # id -> (src 1-cell, tgt 1-cell)
    id_2: dict[str, str]                         # 1-cell -> identity 2-cell
    vcomp: dict[tuple[str, str], str]            # (beta, alpha) -> beta∘alpha
    hcomp1: dict[tuple[str, str], str]           # (g, f) -> g∘f on 1-cells
    hcomp2: dict[tuple[str, str], str]           # (beta, alpha) -> beta*alpha
    _hom1: dict = field(default=None, repr=False, compare=False)
    _hom2: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        h1: dict = {}
        for f, (a, b) in self.one_cells.items():
            h1.setdefault((a, b), []).append(f)
        h2: dict = {}
        for c, (f, g) in self.two_cells.items():
            h2.setdefault((f, g), []).append(c)
        object.__setattr__(self, "_hom1", h1)
        object.__setattr__(self, "_hom2", h2)

    def hom1(self, a, b):
        return tuple(self._hom1.get((a, b), ()))

    def hom2(self, f, g):
        return tuple(self._hom2.get((f, g), ()))

    def one_dom(self, f):
        return self.one_cells[f][0]

    def one_cod(self, f):
        return self.one_cells[f][1]

    def src2(self, c):
        return self.two_cells[c][0]

    def tgt2(self, c):
        return self.two_cells[c][1]

    def cells_between(self, a, b):
        """All 2-cells living in the hom-category hom(a, b)."""
        out = []
        for f in self.hom1(a, b):
            for g in self.hom1(a, b):
                out.extend(self.hom2(f, g))
        return out

    def whisker_post(self, r: str, c: str) -> str:
        """r * c for a 1-cell r (postcomposition side)."""
        return self.hcomp2[(self.id_2[r], c)]

    def whisker_pre(self, c: str, l: str) -> str:
        """c * l for a 1-cell l (precomposition side)."""
        return self.hcomp2[(c, self.id_2[l])]

    def is_invertible_2cell(self, c: str):
        f, g = self.two_cells[c]
        for d in self.hom2(g, f):
            if self.vcomp[(d, c)] == self.id_2[f] and self.vcomp[(c, d)] == self.id_2[g]:
                return True, d
        return False, None

    def __repr__(self):
        return (f"TwoCat({self.name!r}, {len(self.objects)} objects, "
                f"{len(self.one_cells)} 1-cells, {len(self.two_cells)} 2-cells)")


@dataclass
class TwoCatReport:
    violations: list[str]

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        return "valid 2-category" if self.ok else "\n".join(self.violations[:20])


def _cells_by_src(T: TwoCat):
    out: dict[str, list[str]] = {}
    for c, (f, _) in T.two_cells.items():
        out.setdefault(f, []).append(c)
    return out


def _vcomposable(T: TwoCat):
    by_src = _cells_by_src(T)
    for a, (_, g) in T.two_cells.items():
        for b in by_src.get(g, ()):
            yield b, a


def _hcomposable(T: TwoCat):
    for a, (f, g) in T.two_cells.items():
        x, y = T.one_cells[f]
        for b, (f2, g2) in T.two_cells.items():
            if T.one_dom(f2) == y:
                yield b, a


def validate_twocat(T: TwoCat) -> TwoCatReport:
    """Hom-categories, horizontal unit/associativity, Id_g*Id_f, interchange."""
    v: list[str] = []
    # typing
    for f, (a, b) in T.one_cells.items():
        if a not in T.objects or b not in T.objects:
            v.append(f"1-cell {f}: unknown endpoint")
    for c, (f, g) in T.two_cells.items():
        if f not in T.one_cells or g not in T.one_cells:
            v.append(f"2-cell {c}: unknown boundary")
        elif T.one_cells[f] != T.one_cells[g]:
            v.append(f"2-cell {c}: boundary 1-cells not parallel")
    for x in T.objects:
        i = T.id_1.get(x)
        if i is None or T.one_cells.get(i) != (x, x):
            v.append(f"object {x}: bad identity 1-cell")
    for f in T.one_cells:
        i = T.id_2.get(f)
        if i is None or T.two_cells.get(i) != (f, f):
            v.append(f"1-cell {f}: bad identity 2-cell")
    if v:
        return TwoCatReport(v)

    # each hom(a, b) is a category under vertical composition
    for b, a in _vcomposable(T):
        c = T.vcomp.get((b, a))
        if c is None:
            v.append(f"missing vertical composite {b}∘{a}")
        elif T.two_cells[c] != (T.src2(a), T.tgt2(b)):
            v.append(f"vertical composite {b}∘{a} has wrong boundary")
    if v:
        return TwoCatReport(v)
    for c in T.two_cells:
        f, g = T.two_cells[c]
        if T.vcomp[(c, T.id_2[f])] != c or T.vcomp[(T.id_2[g], c)] != c:
            v.append(f"vertical unit law fails at {c}")
    by_src = _cells_by_src(T)
    for b, a in _vcomposable(T):
        ba = T.vcomp[(b, a)]
        for c in by_src.get(T.tgt2(b), ()):
            budget_tick()
            if T.vcomp[(c, ba)] != T.vcomp[(T.vcomp[(c, b)], a)]:
                v.append(f"vertical associativity fails on ({c}, {b}, {a})")

    # horizontal composition of 1-cells: category laws
    for g, (dg, cg) in T.one_cells.items():
        for f, (df, cf) in T.one_cells.items():
            if cf != dg:
                continue
            gf = T.hcomp1.get((g, f))
            if gf is None or T.one_cells[gf] != (df, cg):
                v.append(f"bad 1-cell composite {g}∘{f}")
    if v:
        return TwoCatReport(v)
    for f, (a, b) in T.one_cells.items():
        if T.hcomp1[(f, T.id_1[a])] != f or T.hcomp1[(T.id_1[b], f)] != f:
            v.append(f"horizontal unit fails on 1-cell {f}")
    for h in T.one_cells:
        for g in [g for g in T.one_cells if T.one_cod(g) == T.one_dom(h)]:
            hg = T.hcomp1[(h, g)]
            for f in [f for f in T.one_cells if T.one_cod(f) == T.one_dom(g)]:
                if T.hcomp1[(h, T.hcomp1[(g, f)])] != T.hcomp1[(hg, f)]:
                    v.append(f"horizontal associativity fails on 1-cells ({h}, {g}, {f})")

    # horizontal composition of 2-cells
    for b, a in _hcomposable(T):
        c = T.hcomp2.get((b, a))
        want = (T.hcomp1[(T.src2(b), T.src2(a))], T.hcomp1[(T.tgt2(b), T.tgt2(a))])
        if c is None:
            v.append(f"missing horizontal composite {b}*{a}")
        elif T.two_cells[c] != want:
            v.append(f"horizontal composite {b}*{a} has wrong boundary")
    if v:
        return TwoCatReport(v)
    for g, f in T.hcomp1:
        if T.hcomp2[(T.id_2[g], T.id_2[f])] != T.id_2[T.hcomp1[(g, f)]]:
            v.append(f"Id_{g} * Id_{f} != Id of the composite")
    for c, (f, g) in T.two_cells.items():
        x, y = T.one_cells[f]
        if T.hcomp2[(c, T.id_2[T.id_1[x]])] != c or T.hcomp2[(T.id_2[T.id_1[y]], c)] != c:
            v.append(f"horizontal unit fails at 2-cell {c}")
    for b, a in _hcomposable(T):
        ba = T.hcomp2[(b, a)]
        for c in T.two_cells:
            if T.one_dom(T.src2(c)) != T.one_cod(T.src2(b)):
                continue
            budget_tick()
            if T.hcomp2[(c, ba)] != T.hcomp2[(T.hcomp2[(c, b)], a)]:
                v.append(f"horizontal associativity fails on 2-cells ({c}, {b}, {a})")

    # interchange
    outgoing: dict[str, list[str]] = {}
    for c, (f, _) in T.two_cells.items():
        outgoing.setdefault(T.one_dom(f), []).append(c)
    for a in T.two_cells:
        for b in by_src.get(T.tgt2(a), ()):
            ba = T.vcomp[(b, a)]
            for a2 in outgoing.get(T.one_cod(T.src2(a)), ()):
                for b2 in by_src.get(T.tgt2(a2), ()):
                    budget_tick()
                    lhs = T.vcomp[(T.hcomp2[(b2, b)], T.hcomp2[(a2, a)])]
                    rhs = T.hcomp2[(T.vcomp[(b2, a2)], ba)]
                    if lhs != rhs:
                        v.append(f"interchange fails on ({b2}, {a2}; {b}, {a})")
    return TwoCatReport(v)


def whisker_determination_check(T: TwoCat) -> TwoCatReport:
    """The three whiskering axioms, and stored b*a = (b*tgt(a)) ∘ (src(b)*a)."""
    v: list[str] = []
    # axiom 1: Id_g * f = g * Id_f = Id_{gf}
    for g, f in T.hcomp1:
        gf = T.hcomp1[(g, f)]
        if T.whisker_pre(T.id_2[g], f) != T.id_2[gf]:
            v.append(f"Id_{g} * {f} != Id_{gf}")
        if T.whisker_post(g, T.id_2[f]) != T.id_2[gf]:
            v.append(f"{g} * Id_{f} != Id_{gf}")
    # axiom 2: whiskering is functorial in the 2-cell
    for a in T.two_cells:
        for b in [b for b in T.two_cells if T.src2(b) == T.tgt2(a)
                  and T.one_cells[T.src2(b)] == T.one_cells[T.src2(a)]]:
            ba = T.vcomp[(b, a)]
            x, y = T.one_cells[T.src2(a)]
            for l in [l for l in T.one_cells if T.one_cod(l) == x]:
                budget_tick()
                if T.vcomp[(T.whisker_pre(b, l), T.whisker_pre(a, l))] != T.whisker_pre(ba, l):
                    v.append(f"whisker axiom 2 (pre) fails on ({b}, {a}, {l})")
            for r in [r for r in T.one_cells if T.one_dom(r) == y]:
                budget_tick()
                if T.vcomp[(T.whisker_post(r, b), T.whisker_post(r, a))] != T.whisker_post(r, ba):
                    v.append(f"whisker axiom 2 (post) fails on ({r}, {b}, {a})")
    # axiom 3 + determination of the stored table
    for b, a in _hcomposable(T):
        f, g = T.two_cells[a]
        f2, g2 = T.two_cells[b]
        one = T.vcomp[(T.whisker_post(g2, a), T.whisker_pre(b, f))]
        two = T.vcomp[(T.whisker_pre(b, g), T.whisker_post(f2, a))]
        if one != two:
            v.append(f"middle-four exchange fails on ({b}, {a})")
        if T.hcomp2[(b, a)] != one:
            v.append(f"stored {b}*{a} differs from the whisker formula")
    return TwoCatReport(v)


def is_equivalence_1cell(T: TwoCat, f: str):
    """Search a quasi-inverse: (True, (g, alpha, beta)) with invertible
    alpha: id_dom => g∘f and beta: f∘g => id_cod."""
    x, y = T.one_cells[f]
    for g in T.hom1(y, x):
        gf = T.hcomp1[(g, f)]
        fg = T.hcomp1[(f, g)]
        for alpha in T.hom2(T.id_1[x], gf):
            if not T.is_invertible_2cell(alpha)[0]:
                continue
            for beta in T.hom2(fg, T.id_1[y]):
                budget_tick()
                if T.is_invertible_2cell(beta)[0]:
                    return True, (g, alpha, beta)
    return False, None


def discrete_twocat(C: FinCat) -> TwoCat:
    """A category seen as a 2-category with identity 2-cells only."""
    two = {f"Id_{m}": (m, m) for m in C.morphisms}
    id2 = {m: f"Id_{m}" for m in C.morphisms}
    vcomp = {(c, c): c for c in two}
    hcomp2 = {(id2[g], id2[f]): id2[C.comp[(g, f)]] for (g, f) in C.comp}
    return TwoCat(f"disc({C.name})", C.objects, dict(C.morphisms),
                  dict(C.identities), two, id2, vcomp, dict(C.comp), hcomp2)


# -- 2-functors ------------------------------------------------------------

@dataclass
class TwoFunctor:
    source: TwoCat
    target: TwoCat
    omap: dict[str, str]
    map1: dict[str, str]
    map2: dict[str, str]


def validate_twofunctor(F: TwoFunctor) -> TwoCatReport:
    v: list[str] = []
    S, T = F.source, F.target
    for x in S.objects:
        if F.omap.get(x) not in T.objects:
            v.append(f"object {x}: bad image")
    for f, (a, b) in S.one_cells.items():
        img = F.map1.get(f)
        if img is None or T.one_cells.get(img) != (F.omap[a], F.omap[b]):
            v.append(f"1-cell {f}: bad image")
    for c, (f, g) in S.two_cells.items():
        img = F.map2.get(c)
        if img is None or T.two_cells.get(img) != (F.map1[f], F.map1[g]):
            v.append(f"2-cell {c}: bad image")
    if v:
        return TwoCatReport(v)
    for x in S.objects:
        if F.map1[S.id_1[x]] != T.id_1[F.omap[x]]:
            v.append(f"identity 1-cell of {x} not preserved")
    for f in S.one_cells:
        if F.map2[S.id_2[f]] != T.id_2[F.map1[f]]:
            v.append(f"identity 2-cell of {f} not preserved")
    for (g, f), gf in S.hcomp1.items():
        if F.map1[gf] != T.hcomp1[(F.map1[g], F.map1[f])]:
            v.append(f"1-cell composition not preserved on ({g}, {f})")
    for (b, a), c in S.vcomp.items():
        if F.map2[c] != T.vcomp[(F.map2[b], F.map2[a])]:
            v.append(f"vertical composition not preserved on ({b}, {a})")
    for (b, a), c in S.hcomp2.items():
        if F.map2[c] != T.hcomp2[(F.map2[b], F.map2[a])]:
            v.append(f"horizontal composition not preserved on ({b}, {a})")
    return TwoCatReport(v)


def compose_twofunctors(G: TwoFunctor, F: TwoFunctor) -> TwoFunctor:
    return TwoFunctor(F.source, G.target,
                      {x: G.omap[y] for x, y in F.omap.items()},
                      {f: G.map1[g] for f, g in F.map1.items()},
                      {c: G.map2[d] for c, d in F.map2.items()})


# -- pi0 -------------------------------------------------------------------

@dataclass
class Pi0Result:
    category: FinCat
    projection: dict[str, str]    # 1-cell -> class morphism id
    functor: FinFunctor           # 1-truncation -> pi0 category


def pi0(T: TwoCat) -> Pi0Result:
    """Collapse each hom-category to its connected components.

    Components are computed by union-find over the symmetric closure of
    "there is a 2-cell"; the induced composition is asserted well-defined.
    """
    uf = UnionFind()
    for f in T.one_cells:
        uf.add(f)
    for c, (f, g) in T.two_cells.items():
        uf.union(f, g)

    class_name: dict[str, str] = {}
    members: dict[str, list[str]] = {}
    for f in T.one_cells:
        members.setdefault(uf.find(f), []).append(f)
    for rep in members:
        class_name[rep] = f"[{rep}]"
    proj = {f: class_name[uf.find(f)] for f in T.one_cells}

    morphisms = {class_name[rep]: T.one_cells[rep] for rep in members}
    identities = {x: proj[T.id_1[x]] for x in T.objects}
    comp: dict[tuple[str, str], str] = {}
    for (g, f), gf in T.hcomp1.items():
        key = (proj[g], proj[f])
        val = proj[gf]
        if key in comp and comp[key] != val:
            raise FinCatError(
                f"pi0 composition ill-defined on {key}: {comp[key]} vs {val}")
        comp[key] = val
    Q = FinCat(f"pi0({T.name})", T.objects, morphisms, identities, comp)
    base = one_truncation(T)
    F = FinFunctor(base, Q, {x: x for x in T.objects}, dict(proj))
    return Pi0Result(Q, proj, F)


def one_truncation(T: TwoCat) -> FinCat:
    """The underlying 1-category (objects, 1-cells, hcomp1)."""
    return FinCat(f"tr1({T.name})", T.objects, dict(T.one_cells),
                  dict(T.id_1), dict(T.hcomp1))


@dataclass
class Pi0UniversalReport:
    factored: bool
    unique: bool
    detail: str

    @property
    def ok(self):
        return self.factored and self.unique


def pi0_universal_check(T: TwoCat, X: FinCat, F: TwoFunctor) -> Pi0UniversalReport:
    """F: T -> discrete(X) factors uniquely through pi0(T).

    Constructs the factorization and then scans all functors pi0(T) -> X for
    alternates.  A 2-functor into a discrete target must already identify
    2-cell-connected 1-cells; if not, F was invalid and we report that.
    """
    from .fincat import all_functors
    res = pi0(T)
    # F's 1-cell map must be constant on components
    assign: dict[str, str] = {}
    for f in T.one_cells:
        cls = res.projection[f]
        img = F.map1[f]   # 1-cells of discrete(X) are the morphisms of X
        if cls in assign and assign[cls] != img:
            return Pi0UniversalReport(False, False,
                                      f"F does not identify the component of {f}")
        assign[cls] = img
    tilde = FinFunctor(res.category, X,
                       {x: F.omap[x] for x in T.objects}, assign)
    rep = validate_functor(tilde)
    if not rep.ok:
        return Pi0UniversalReport(False, False, f"induced map is not a functor: {rep}")
    count = 0
    for G in all_functors(res.category, X):
        if all(G.mmap[res.projection[f]] == assign[res.projection[f]] for f in T.one_cells) \
                and all(G.omap[x] == F.omap[x] for x in T.objects):
            count += 1
    return Pi0UniversalReport(True, count == 1,
                              f"{count} functor(s) agree with F after projection")


def pi0_of_twofunctor(G: TwoFunctor) -> FinFunctor:
    """pi0 applied to a 2-functor."""
    rs, rt = pi0(G.source), pi0(G.target)
    omap = dict(G.omap)
    mmap = {}
    for f in G.source.one_cells:
        mmap[rs.projection[f]] = rt.projection[G.map1[f]]
    return FinFunctor(rs.category, rt.category, omap, mmap)
