"""The homotopy 2-category: presentation by saturated homotopy classes,
probe evaluation, functor extension, replacements and localization checks.

2-cells start as germ classes of homotopies and are merged by a congruence
closure under laws that are sound for the semantic relation (equality of all
probe images): degenerate and s-factoring homotopies are identities, gluing
realizes vertical composition, inverses cancel, whiskering is a congruence,
and the middle-four exchange holds.  The closure only ever merges classes, so
it reaches a fixed point; every merge is logged with the rule that forced it.

Equality of 2-cells is three-valued: same saturated class ("equal"), separated
by a probe ("distinct"), or "undecided" — the semantic relation quantifies
over all 2-categories and is not finitely decidable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ._search import UnionFind, budget_tick
from .fincat import (FinCat, FinCatError, FinFunctor, NatTransf, all_functors,
                     initial_object, terminal_object, validate_functor)
from .homotopy import (Cylinder, Homotopy, cylinder_morphisms, enumerate_cylinders,
                       glue_homotopies, identity_homotopy, invert, whisker_left,
                       whisker_right, _check_sigma)
from .model import (ModelStructure, fibrant_cofibrant_objects, validate_model,
                    trivial_classes)
from .twocat import (TwoCat, TwoFunctor, discrete_twocat, is_equivalence_1cell,
                     pi0, validate_twofunctor)


class WellDefinednessError(Exception):
    """A saturation merge joined classes with distinct probe images."""


# -- the presentation engine -------------------------------------------------

@dataclass
class HoPresentation:
    twocat: TwoCat
    ambient: FinCat
    sigma: frozenset[str]
    objects: tuple[str, ...]
    cell_of_key: dict[tuple, str]          # homotopy key -> 2-cell id
    members: dict[str, list[Homotopy]]     # 2-cell id -> instances
    identity_cells: dict[str, str]         # 1-cell -> its identity 2-cell
    saturation_log: list[str]
    warnings: list[str]

    def cell_of(self, H: Homotopy) -> str:
        return self.cell_of_key[H.key()]

    def representative(self, cell: str) -> Homotopy:
        return self.members[cell][0]


class _Engine:
    def __init__(self, C: FinCat, sigma, objects):
        self.C = C
        self.sigma = _check_sigma(C, sigma)
        self.objects = tuple(objects)
        self.instances: dict[tuple, Homotopy] = {}
        self.uf = UnionFind()
        self.class_members: dict[tuple, list[tuple]] = {}
        self.by_cell: dict[tuple[str, str], list[tuple]] = {}
        self.log: list[str] = []
        self.pushouts: dict[tuple[str, str], object] = {}
        self.glue_records: list[tuple[tuple, tuple, tuple]] = []

    # -- registration and merging ---------------------------------------
    def merge(self, k1, k2, rule: str) -> bool:
        r1, r2 = self.uf.find(k1), self.uf.find(k2)
        if r1 == r2:
            return False
        H1, H2 = self.instances[k1], self.instances[k2]
        if (H1.f, H1.g) != (H2.f, H2.g):
            raise WellDefinednessError(
                f"{rule} tried to merge cells with different boundaries")
        self.uf.union(r1, r2)
        root = self.uf.find(r1)
        other = r2 if root == r1 else r1
        self.class_members[root].extend(self.class_members.pop(other))
        self.log.append(f"{rule}: merged [{k1}] with [{k2}]")
        return True

    def register(self, H: Homotopy, link: bool = True) -> tuple:
        k = H.key()
        if k in self.instances:
            return k
        self.instances[k] = H
        self.uf.add(k)
        self.class_members[k] = [k]
        self.by_cell.setdefault((H.f, H.g), []).append(k)
        self._identity_rules(H)
        if link:
            self._germ_link(H)
        return k

    def _identity_rules(self, H: Homotopy):
        C = self.C
        cyl = H.cylinder
        if H.f != H.g:
            return
        ik = identity_homotopy(C, H.f).key()
        if ik not in self.instances and ik != H.key():
            self.register(identity_homotopy(C, H.f), link=False)
        if cyl.degenerate:
            self.merge(H.key(), ik, "degenerate-cylinder")
            return
        for f2 in C.hom(cyl.Z, C.cod(H.h)):
            if C.comp[(f2, cyl.s)] == H.h:
                self.merge(H.key(), ik, "factors-through-s")
                return

    def _germ_link(self, H: Homotopy):
        """Connect a late-registered homotopy to same-boundary instances."""
        C = self.C
        mine = H.cylinder
        for k2 in list(self.by_cell.get((H.f, H.g), ())):
            if k2 == H.key():
                continue
            other = self.instances[k2].cylinder
            for m in cylinder_morphisms(mine, other):
                if C.comp[(self.instances[k2].h, m.phi)] == H.h:
                    self.merge(H.key(), k2, "germ")
            for m in cylinder_morphisms(other, mine):
                if C.comp[(H.h, m.phi)] == self.instances[k2].h:
                    self.merge(H.key(), k2, "germ")

    # -- initial enumeration ----------------------------------------------
    def enumerate(self):
        C = self.C
        for A in self.objects:
            cyls = enumerate_cylinders(C, self.sigma, A)
            for B in self.objects:
                for cyl in cyls:
                    for h in C.hom(cyl.W, B):
                        self.register(Homotopy(cyl, h), link=False)
            self._germ_pass(A, cyls)

    def _germ_pass(self, A: str, cyls: list[Cylinder]):
        C = self.C
        for c1 in cyls:
            for c2 in cyls:
                for m in cylinder_morphisms(c1, c2):
                    for B in self.objects:
                        for h2 in C.hom(c2.W, B):
                            k2 = c2.key() + (h2,)
                            k1 = c1.key() + (C.comp[(h2, m.phi)],)
                            if k1 in self.instances and k2 in self.instances:
                                self.merge(k1, k2, "germ")

    # -- gluing -------------------------------------------------------------
    def _pushout(self, f: str, g: str):
        key = (f, g)
        if key not in self.pushouts:
            from .fincat import pushout
            self.pushouts[key] = pushout(self.C, f, g)
        return self.pushouts[key]

    def glue(self, H1: Homotopy, H2: Homotopy) -> tuple | None:
        """Glue H2∘H1 if possible; registers and records the result key."""
        c1, c2 = H1.cylinder, H2.cylinder
        if H1.g != H2.f or (c1.Z, c1.x) != (c2.Z, c2.x):
            return None
        po = self._pushout(c1.d1, c2.d0)
        if po is None:
            return None
        K = glue_homotopies(self.C, H1, H2, po=po)
        k = self.register(K)
        self.glue_records.append((H1.key(), H2.key(), k))
        return k

    def is_identity_cell(self, rep) -> bool:
        H = self.instances[rep]
        if H.f != H.g:
            return False
        ik = identity_homotopy(self.C, H.f).key()
        return ik in self.instances and self.uf.find(ik) == self.uf.find(rep)

    def members_of(self, rep) -> list[tuple]:
        return sorted(self.class_members[self.uf.find(rep)])

    def compose(self, repA, repB) -> tuple | None:
        """Class of the vertical composite B∘A, or None if no gluing exists."""
        A, B = self.uf.find(repA), self.uf.find(repB)
        HA, HB = self.instances[A], self.instances[B]
        if HA.g != HB.f:
            raise FinCatError("cells are not vertically composable")
        if self.is_identity_cell(A):
            return B
        if self.is_identity_cell(B):
            return A
        result = None
        for ka in self.members_of(A):
            for kb in self.members_of(B):
                k = self.glue(self.instances[ka], self.instances[kb])
                if k is not None:
                    k = self.uf.find(k)
                    if result is None:
                        result = k
                    elif result != self.uf.find(k):
                        self.merge(result, k, "composite-coherence")
                        result = self.uf.find(result)
        return result

    # -- saturation ---------------------------------------------------------
    def saturate(self, max_rounds: int = 50):
        rounds = 0
        changed = True
        while changed:
            rounds += 1
            if rounds > max_rounds:
                raise FinCatError("saturation did not stabilize within the bound")
            changed = False
            changed |= self._pass_inverse()
            changed |= self._pass_glue_coherence()
            changed |= self._pass_whisker_congruence()
            changed |= self._pass_assoc_and_interchange()

    def _pass_inverse(self) -> bool:
        changed = False
        C = self.C
        for k in list(self.instances):
            H = self.instances[k]
            if H.cylinder.degenerate:
                continue
            Hi = invert(H)
            ki = self.register(Hi)
            kk = self.glue(H, Hi)
            if kk is not None:
                ik = self.register(identity_homotopy(C, H.f), link=False)
                changed |= self.merge(kk, ik, "inverse-law")
            kk = self.glue(Hi, H)
            if kk is not None:
                ik = self.register(identity_homotopy(C, H.g), link=False)
                changed |= self.merge(kk, ik, "inverse-law")
        return changed

    def _pass_glue_coherence(self) -> bool:
        changed = False
        groups: dict[tuple, list[tuple]] = {}
        for k1, k2, kr in self.glue_records:
            groups.setdefault((self.uf.find(k1), self.uf.find(k2)), []).append(kr)
        for results in groups.values():
            first = results[0]
            for other in results[1:]:
                changed |= self.merge(first, other, "composition-law")
        return changed

    def _pass_whisker_congruence(self) -> bool:
        """Equal cells stay equal after whiskering by any composable 1-cell."""
        changed = False
        C = self.C
        classes: dict[tuple, list[tuple]] = {}
        for k in self.instances:
            classes.setdefault(self.uf.find(k), []).append(k)
        for rep, ks in classes.items():
            if len(ks) == 1:
                continue
            H0 = self.instances[ks[0]]
            X, Y = C.morphisms[H0.f]
            for A in self.objects:
                for l in C.hom(A, X):
                    keys = []
                    for k in ks:
                        Hl = whisker_left(self.instances[k], l)
                        keys.append(self.register(Hl))
                    for other in keys[1:]:
                        changed |= self.merge(keys[0], other, "whisker-congruence")
            for B in self.objects:
                for r in C.hom(Y, B):
                    keys = []
                    for k in ks:
                        rH = whisker_right(r, self.instances[k])
                        keys.append(self.register(rH))
                    for other in keys[1:]:
                        changed |= self.merge(keys[0], other, "whisker-congruence")
        return changed

    def _cells(self) -> dict[tuple, tuple]:
        """Current cells: representative -> (f, g)."""
        out = {}
        for k in self.instances:
            r = self.uf.find(k)
            if r not in out:
                H = self.instances[r]
                out[r] = (H.f, H.g)
        return out

    def _pass_assoc_and_interchange(self) -> bool:
        changed = False
        C = self.C
        cells = self._cells()
        by_src: dict[str, list[tuple]] = {}
        for rep, (f, g) in cells.items():
            by_src.setdefault(f, []).append(rep)
        # vertical associativity: (c∘b)∘a = c∘(b∘a)
        for a, (fa, ga) in list(cells.items()):
            for b in by_src.get(ga, ()):
                ba = self.compose(a, b)
                if ba is None:
                    continue
                for c in by_src.get(self.instances[b].g, ()):
                    cb = self.compose(b, c)
                    if cb is None:
                        continue
                    lhs = self.compose(self.uf.find(ba), c)
                    rhs = self.compose(a, self.uf.find(cb))
                    if lhs is not None and rhs is not None:
                        changed |= self.merge(lhs, rhs, "vertical-associativity")
        # middle-four exchange: (b*g)∘(f2*a)... for a: f=>g at (X,Y), b: f2=>g2 at (Y,Z)
        for a, (f, g) in list(cells.items()):
            Ha = self.instances[a]
            X, Y = C.morphisms[f]
            for b, (f2, g2) in list(cells.items()):
                if C.dom(f2) != Y:
                    continue
                Hb = self.instances[b]
                left1 = self.register(whisker_left(Hb, f))    # b*f : f2 f => g2 f
                left2 = self.register(whisker_right(g2, Ha))  # g2*a: g2 f => g2 g
                right1 = self.register(whisker_right(f2, Ha))  # f2*a: f2 f => f2 g
                right2 = self.register(whisker_left(Hb, g))   # b*g : f2 g => g2 g
                lhs = self.compose(left1, left2)
                rhs = self.compose(right1, right2)
                if lhs is not None and rhs is not None:
                    changed |= self.merge(lhs, rhs, "middle-interchange")
        return changed

    # -- assembly -------------------------------------------------------------
    def build(self, name: str, warnings: list[str]) -> HoPresentation:
        C = self.C
        one_cells = {m: C.morphisms[m] for m in C.morphisms
                     if C.dom(m) in self.objects and C.cod(m) in self.objects}
        id1 = {x: C.id_of(x) for x in self.objects}
        hcomp1 = {(g, f): C.comp[(g, f)] for g in one_cells for f in one_cells
                  if C.cod(f) == C.dom(g)}

        cells = self._cells()
        order = sorted(cells, key=lambda r: (cells[r], min(self.members_of(r))))
        cell_name: dict[tuple, str] = {}
        two_cells: dict[str, tuple[str, str]] = {}
        id2: dict[str, str] = {}
        counter = 0
        for rep in order:
            f, g = cells[rep]
            if self.is_identity_cell(rep):
                nm = f"Id[{f}]"
                id2[f] = nm
            else:
                counter += 1
                nm = f"c{counter}[{f}=>{g}]"
            cell_name[rep] = nm
            two_cells[nm] = (f, g)
        for f in one_cells:
            if f not in id2:
                raise FinCatError(f"missing identity 2-cell for {f}")

        def cname(rep):
            return cell_name[self.uf.find(rep)]

        vcomp: dict[tuple[str, str], str] = {}
        for a, (fa, ga) in cells.items():
            for b, (fb, gb) in cells.items():
                if fb != ga:
                    continue
                r = self.compose(a, b)
                if r is None:
                    raise FinCatError(
                        f"no vertical composite for ({cell_name[b]}, {cell_name[a]}): "
                        f"the base lacks the gluing pushout")
                vcomp[(cell_name[b], cell_name[a])] = cname(r)

        hcomp2: dict[tuple[str, str], str] = {}
        for a, (f, g) in cells.items():
            X, Y = C.morphisms[f]
            Ha = self.instances[a]
            for b, (f2, g2) in cells.items():
                if C.dom(f2) != Y:
                    continue
                Hb = self.instances[b]
                aid, bid = self.is_identity_cell(a), self.is_identity_cell(b)
                if aid and bid:
                    res = self.uf.find(self.register(
                        identity_homotopy(C, C.comp[(f2, f)]), link=False))
                else:
                    k1 = self.register(whisker_right(f2, Ha))   # f2*a
                    k2 = self.register(whisker_left(Hb, g))     # b*g
                    res = self.compose(k1, k2)
                    if res is None:
                        raise FinCatError(
                            f"no horizontal composite {cell_name[b]} * {cell_name[a]}")
                hcomp2[(cell_name[b], cell_name[a])] = cname(res)

        T = TwoCat(name, self.objects, one_cells, id1, two_cells, id2,
                   vcomp, hcomp1, hcomp2)
        cell_of_key = {k: cname(k) for k in self.instances}
        members = {}
        for k, H in self.instances.items():
            members.setdefault(cname(k), []).append(H)
        for nm in members:
            members[nm].sort(key=lambda H: H.key())
        return HoPresentation(T, C, frozenset(self.sigma), self.objects,
                              cell_of_key, members, id2, list(self.log), warnings)


def build_ho(C: FinCat, sigma, objects, name: str = "Ho",
             warnings: list[str] | None = None) -> HoPresentation:
    """Saturated homotopy presentation of the full subcategory on `objects`."""
    eng = _Engine(C, sigma, objects)
    eng.enumerate()
    eng.saturate()
    return eng.build(name, warnings or [])


def build_Ho(M: ModelStructure, fact=None, objects=None,
             sigma=None) -> HoPresentation:
    """The homotopy 2-category of a model structure on its fibrant-cofibrant part.

    An invalid structure only produces warnings: the construction needs just
    (C, Sigma).  `fact` (a functorial-factorization pair) is not needed here;
    it feeds the replacement/q pipeline.  `sigma` defaults to W.
    """
    warnings = []
    rep = validate_model(M)
    if not rep.ok:
        warnings.append("model axioms fail (" + ", ".join(rep.failing())
                        + "); building from (C, Sigma) only")
    if objects is None:
        try:
            objects = sorted(fibrant_cofibrant_objects(M),
                             key=M.base.obj_index)
        except FinCatError:
            warnings.append("no initial/terminal object; using all objects")
            objects = M.base.objects
    sig = set(M.W) if sigma is None else set(sigma)
    sig |= {M.base.id_of(x) for x in M.base.objects}
    return build_ho(M.base, sig, objects, name=f"Ho({M.base.name})",
                    warnings=warnings)


# -- probes -------------------------------------------------------------------

@dataclass
class ProbeFunctor:
    name: str
    base: FinCat
    target: TwoCat
    omap: dict[str, str]
    mmap: dict[str, str]
    sigma: frozenset[str]
    certs: dict[str, tuple] = field(default_factory=dict)


def make_probe(name, base: FinCat, target: TwoCat, omap, mmap, sigma) -> ProbeFunctor:
    """Validate functoriality into the 1-truncation and certify Sigma-images."""
    for x in base.objects:
        if omap.get(x) not in target.objects:
            raise FinCatError(f"probe {name}: object {x} has no valid image")
    for m, (d, c) in base.morphisms.items():
        img = mmap.get(m)
        if img is None or target.one_cells.get(img) != (omap[d], omap[c]):
            raise FinCatError(f"probe {name}: morphism {m} has no valid image")
    for x in base.objects:
        if mmap[base.id_of(x)] != target.id_1[omap[x]]:
            raise FinCatError(f"probe {name}: identity of {x} not preserved")
    for (g, f), gf in base.comp.items():
        if mmap[gf] != target.hcomp1[(mmap[g], mmap[f])]:
            raise FinCatError(f"probe {name}: composition not preserved on ({g}, {f})")
    certs = {}
    for s in sigma:
        ok, cert = is_equivalence_1cell(target, mmap[s])
        if not ok:
            raise FinCatError(f"probe {name}: image of {s} is not an equivalence")
        certs[s] = cert
    return ProbeFunctor(name, base, target, dict(omap), dict(mmap),
                        frozenset(sigma), certs)


def compute_FC_hat(F: ProbeFunctor, cyl: Cylinder) -> str:
    """The unique 2-cell F(d0) => F(d1) whose s-whisker is the identity of F(x)."""
    T = F.target
    fs, fx = F.mmap[cyl.s], F.mmap[cyl.x]
    sols = []
    for gamma in T.hom2(F.mmap[cyl.d0], F.mmap[cyl.d1]):
        if T.whisker_post(fs, gamma) == T.id_2[fx]:
            sols.append(gamma)
    if len(sols) != 1:
        raise FinCatError(
            f"probe {F.name}: {len(sols)} solutions for the cylinder 2-cell "
            f"(invalid equivalence certificate)")
    return sols[0]


def compute_FH_hat(F: ProbeFunctor, H: Homotopy) -> str:
    """F(h) whiskered onto the cylinder 2-cell: the probe image of H."""
    return F.target.whisker_post(F.mmap[H.h], compute_FC_hat(F, H.cylinder))


# -- probe targets -------------------------------------------------------------

def z2_codiscrete(C: FinCat, name: str | None = None) -> TwoCat:
    """Two parallel 2-cells (parities 0/1) between every parallel 1-cell pair.

    Both compositions add parities; interchange is commutativity of addition.
    """
    two = {}
    id2 = {}
    for f, (a, b) in C.morphisms.items():
        for g in C.hom(a, b):
            for eps in (0, 1):
                two[f"z{eps}[{f}>{g}]"] = (f, g)
    for f in C.morphisms:
        id2[f] = f"z0[{f}>{f}]"

    def cell(f, g, eps):
        return f"z{eps}[{f}>{g}]"

    def parity(c):
        return int(c[1])

    vcomp = {}
    for c1, (f, g) in two.items():
        for c2, (g2, l) in two.items():
            if g2 == g and C.morphisms[f] == C.morphisms[g]:
                vcomp[(c2, c1)] = cell(f, l, (parity(c1) + parity(c2)) % 2)
    hcomp2 = {}
    for c1, (f, g) in two.items():
        for c2, (f2, g2) in two.items():
            if C.dom(f2) != C.cod(f):
                continue
            hcomp2[(c2, c1)] = cell(C.comp[(f2, f)], C.comp[(g2, g)],
                                    (parity(c1) + parity(c2)) % 2)
    return TwoCat(name or f"z2({C.name})", C.objects, dict(C.morphisms),
                  dict(C.identities), two, id2, vcomp, dict(C.comp), hcomp2)


def codiscrete_twocat(C: FinCat, name: str | None = None) -> TwoCat:
    """Exactly one 2-cell between every parallel 1-cell pair."""
    two = {f"u[{f}>{g}]": (f, g)
           for f, (a, b) in C.morphisms.items() for g in C.hom(a, b)}
    id2 = {f: f"u[{f}>{f}]" for f in C.morphisms}
    vcomp = {}
    for c1, (f, g) in two.items():
        for c2, (g2, l) in two.items():
            if g2 == g and C.morphisms[f] == C.morphisms[g]:
                vcomp[(c2, c1)] = f"u[{f}>{l}]"
    hcomp2 = {}
    for c1, (f, g) in two.items():
        for c2, (f2, g2) in two.items():
            if C.dom(f2) != C.cod(f):
                continue
            hcomp2[(c2, c1)] = f"u[{C.comp[(f2, f)]}>{C.comp[(g2, g)]}]"
    return TwoCat(name or f"codisc({C.name})", C.objects, dict(C.morphisms),
                  dict(C.identities), two, id2, vcomp, dict(C.comp), hcomp2)


def walking_equivalence_base() -> FinCat:
    """Finite quotient of the free equivalence: words in u, v capped via
    (vu)(vu) = vu and (uv)(uv) = uv; canonical words have length <= 3."""
    from .fincat import build_fincat

    words = {"u": ("A", "B"), "v": ("B", "A"), "vu": ("A", "A"),
             "uv": ("B", "B"), "uvu": ("A", "B"), "vuv": ("B", "A")}

    def compose_rule(g, f):
        w = g + f
        while len(w) >= 4:
            w = w[2:]
        return w

    return build_fincat("walking_equivalence", ["A", "B"], words, compose_rule)


def walking_equivalence_twocat() -> TwoCat:
    """The walking equivalence as a 2-category with codiscrete hom-groupoids;
    every triangle equation holds on the nose because parallel 2-cells agree."""
    return codiscrete_twocat(walking_equivalence_base(), "walking_equivalence")


def homotopy_quotient(C: FinCat, sigma, objects):
    """Quotient of the full subcategory on `objects` by homotopy connectivity.

    This is the direct Quillen-style oracle: f ~ g iff a single homotopy
    connects them, closed transitively; whiskering makes it a congruence.
    Returns (FinCat, projection dict).
    """
    sigma = _check_sigma(C, sigma)
    arrows = [m for m in C.morphisms
              if C.dom(m) in objects and C.cod(m) in objects]
    uf = UnionFind()
    for m in arrows:
        uf.add(m)
    cyls = {A: enumerate_cylinders(C, sigma, A) for A in objects}
    for A in objects:
        for B in objects:
            for cyl in cyls[A]:
                for h in C.hom(cyl.W, B):
                    uf.union(C.comp[(h, cyl.d0)], C.comp[(h, cyl.d1)])
    proj = {m: f"[{uf.find(m)}]" for m in arrows}
    morphisms = {}
    for m in arrows:
        morphisms.setdefault(proj[m], (C.dom(m), C.cod(m)))
    identities = {x: proj[C.id_of(x)] for x in objects}
    comp = {}
    for g in arrows:
        for f in arrows:
            if C.cod(f) != C.dom(g):
                continue
            key = (proj[g], proj[f])
            val = proj[C.comp[(g, f)]]
            if comp.setdefault(key, val) != val:
                raise FinCatError("homotopy quotient composition ill-defined")
    Q = FinCat(f"{C.name}_mod_homotopy", tuple(objects), morphisms, identities, comp)
    return Q, proj


def default_probe_suite(C: FinCat, sigma) -> list[ProbeFunctor]:
    """Discrete quotient probe, the terminal collapse, the walking equivalence
    collapse, and (when Sigma allows) the tautological parity probe.

    Probes are functors on the whole ambient category: probe evaluation walks
    arbitrary instance cylinders, which may leave any chosen object subset.
    """
    sigma = _check_sigma(C, sigma)
    probes = []

    pt = discrete_twocat(_terminal_cat())
    probes.append(make_probe("collapse", C, pt,
                             {x: "*" for x in C.objects},
                             {m: "id_*" for m in C.morphisms}, sigma))

    try:
        Q, proj = homotopy_quotient(C, sigma, C.objects)
        probes.append(make_probe("quotient", C, discrete_twocat(Q),
                                 {x: x for x in C.objects}, proj, sigma))
    except FinCatError:
        pass

    E = walking_equivalence_twocat()
    probes.append(make_probe("walking_equivalence", C, E,
                             {x: "A" for x in C.objects},
                             {m: "id_A" for m in C.morphisms}, sigma))

    # the tautological parity probe has quadratic-size 2-cell tables; only
    # materialize it on small ambients
    if len(C.morphisms) <= 64:
        try:
            Z = z2_codiscrete(C)
            probes.append(make_probe("parity", C, Z,
                                     {x: x for x in C.objects},
                                     {m: m for m in C.morphisms}, sigma))
        except FinCatError:
            pass
    return probes


def _terminal_cat() -> FinCat:
    return FinCat("pt", ("*",), {"id_*": ("*", "*")}, {"*": "id_*"},
                  {("id_*", "id_*"): "id_*"})


# -- functor extension ---------------------------------------------------------

def extend_functor(F: ProbeFunctor, pres: HoPresentation) -> TwoFunctor:
    """The unique 2-functor on the presentation agreeing with F.

    Well-definedness is the soundness property: every member of a saturated
    class must have the same probe image.  Raises WellDefinednessError if a
    merge joined distinct images.
    """
    T = pres.twocat
    map2 = {}
    for cell, hs in pres.members.items():
        images = []
        for H in hs:
            images.append(compute_FH_hat(F, H))
        if len(set(images)) > 1:
            raise WellDefinednessError(
                f"probe {F.name} separates members of {cell}: {sorted(set(images))}")
        map2[cell] = images[0]
    G = TwoFunctor(T, F.target,
                   {x: F.omap[x] for x in T.objects},
                   {f: F.mmap[f] for f in T.one_cells},
                   map2)
    rep = validate_twofunctor(G)
    if not rep.ok:
        raise WellDefinednessError(f"extension of {F.name} is not a 2-functor: {rep}")
    return G


def cell_equality(pres: HoPresentation, H1: Homotopy, H2: Homotopy,
                  probes: list[ProbeFunctor]) -> str:
    """Three-valued comparison: 'equal', 'distinct (probe <name>)', 'undecided'."""
    c1, c2 = pres.cell_of(H1), pres.cell_of(H2)
    if c1 == c2:
        return "equal"
    for F in probes:
        if compute_FH_hat(F, H1) != compute_FH_hat(F, H2):
            return f"distinct (probe {F.name})"
    return "undecided"


def extend_nat_transf(theta: dict[str, str], F: ProbeFunctor, G: ProbeFunctor,
                      pres: HoPresentation):
    """Extend a natural transformation F => G to the presentation.

    theta maps each presentation object to a 1-cell of the shared target.
    Verifies naturality, the cylinder exchange identity
    theta_W * FC = GC * theta_X on every enumerated instance cylinder, and
    2-naturality theta_Y * F~[H] = G~[H] * theta_X on every 2-cell; failures
    are theory violations.
    """
    if F.target is not G.target:
        raise FinCatError("probes must share their target")
    T = F.target
    C = pres.ambient
    violations = []
    for m in pres.twocat.one_cells:
        x, y = C.morphisms[m]
        if T.hcomp1[(theta[y], F.mmap[m])] != T.hcomp1[(G.mmap[m], theta[x])]:
            violations.append(f"naturality fails at {m}")
    if violations:
        return None, violations
    seen = set()
    for hs in pres.members.values():
        for H in hs:
            cyl = H.cylinder
            if cyl.key() in seen or cyl.W not in theta:
                continue
            seen.add(cyl.key())
            lhs = T.whisker_post(theta[cyl.W], compute_FC_hat(F, cyl))
            rhs = T.whisker_pre(compute_FC_hat(G, cyl), theta[cyl.X])
            if lhs != rhs:
                violations.append(f"cylinder exchange fails on {cyl.key()}")
    Ft, Gt = extend_functor(F, pres), extend_functor(G, pres)
    for cell, (f, g) in pres.twocat.two_cells.items():
        x, y = C.morphisms[f]
        lhs = T.whisker_post(theta[y], Ft.map2[cell])
        rhs = T.whisker_pre(Gt.map2[cell], theta[x])
        if lhs != rhs:
            violations.append(f"2-naturality fails on {cell}")
    return {"components": dict(theta), "F": Ft, "G": Gt}, violations


def check_modification_extension(mu: dict[str, str], F: ProbeFunctor,
                                 G: ProbeFunctor, pres: HoPresentation) -> list[str]:
    """mu assigns each object a 2-cell; the extension must satisfy
    mu_Y * F~(alpha) = G~(alpha) * mu_X for every 2-cell alpha."""
    T = F.target
    C = pres.ambient
    Ft, Gt = extend_functor(F, pres), extend_functor(G, pres)
    bad = []
    for cell, (f, g) in pres.twocat.two_cells.items():
        x, y = C.morphisms[f]
        lhs = T.hcomp2[(mu[y], Ft.map2[cell])]
        rhs = T.hcomp2[(Gt.map2[cell], mu[x])]
        if lhs != rhs:
            bad.append(f"modification law fails on {cell}")
    return bad


# -- functorial factorizations and replacements ---------------------------------

@dataclass
class FunctorialFactorization:
    """Chosen (lambda_f, rho_f) per morphism plus connecting morphisms.

    `connect(u, v, f, g)` returns the middle map for a square (u, v): f -> g.
    """
    ambient: FinCat
    lam: dict[str, str]
    rho: dict[str, str]
    connect: object
    left_class: frozenset[str]
    right_class: frozenset[str]

    def mid(self, f: str) -> str:
        return self.ambient.cod(self.lam[f])


@dataclass
class FFReport:
    violations: list[str]
    mode: str

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        head = f"functorial factorization check ({self.mode})"
        return head + (": ok" if self.ok else ":\n" + "\n".join(self.violations[:10]))


def validate_functorial_factorization(ff: FunctorialFactorization,
                                      exhaustive_limit: int = 120) -> FFReport:
    """rho∘lambda = f, classes, naturality on every square; functoriality on
    composable square pairs (exhaustively below the size limit, else on a
    deterministic sample, stated in the report)."""
    C = ff.ambient
    v = []
    for f in C.morphisms:
        lam, rho = ff.lam.get(f), ff.rho.get(f)
        if lam is None or rho is None or C.comp[(rho, lam)] != f:
            v.append(f"{f}: rho∘lambda != f")
            continue
        if lam not in ff.left_class:
            v.append(f"{f}: lambda not in the left class")
        if rho not in ff.right_class:
            v.append(f"{f}: rho not in the right class")
    if v:
        return FFReport(v, "aborted early")

    squares = []
    for f in C.morphisms:
        for g in C.morphisms:
            for u in C.hom(C.dom(f), C.dom(g)):
                gu = C.comp[(g, u)]
                for vv in C.hom(C.cod(f), C.cod(g)):
                    if C.comp[(vv, f)] == gu:
                        squares.append((u, vv, f, g))
    for (u, vv, f, g) in squares:
        m = ff.connect(u, vv, f, g)
        if C.comp[(m, ff.lam[f])] != C.comp[(ff.lam[g], u)]:
            v.append(f"square ({u},{vv}): lambda naturality fails")
        elif C.comp[(ff.rho[g], m)] != C.comp[(vv, ff.rho[f])]:
            v.append(f"square ({u},{vv}): rho naturality fails")
    for f in C.morphisms:
        if ff.connect(C.id_of(C.dom(f)), C.id_of(C.cod(f)), f, f) != C.id_of(ff.mid(f)):
            v.append(f"{f}: connect(id, id) != id")
    if v:
        return FFReport(v, "naturality phase")

    exhaustive = len(C.morphisms) <= exhaustive_limit
    by_left: dict[str, list] = {}
    for sq in squares:
        by_left.setdefault(sq[2], []).append(sq)
    count = 0
    for (u, vv, f, g) in squares:
        for (u2, v2, _, h) in by_left.get(g, ()):
            count += 1
            if not exhaustive and count % 97 != 0:
                continue
            uu, vvv = C.comp[(u2, u)], C.comp[(v2, vv)]
            lhs = ff.connect(uu, vvv, f, h)
            rhs = C.comp[(ff.connect(u2, v2, g, h), ff.connect(u, vv, f, g))]
            if lhs != rhs:
                v.append(f"functoriality fails on stacked squares ({u},{vv};{u2},{v2})")
    mode = ("exhaustive" if exhaustive
            else f"sampled 1/97 of {count} composable square pairs")
    return FFReport(v, mode)


def identity_factorization_left(C: FinCat, left_class, right_class) -> FunctorialFactorization:
    """lambda = id, rho = f (mid = dom); connect(u, v, f, g) = u."""
    return FunctorialFactorization(
        C, {f: C.id_of(C.dom(f)) for f in C.morphisms},
        {f: f for f in C.morphisms},
        lambda u, v, f, g: u, frozenset(left_class), frozenset(right_class))


def identity_factorization_right(C: FinCat, left_class, right_class) -> FunctorialFactorization:
    """lambda = f, rho = id (mid = cod); connect(u, v, f, g) = v."""
    return FunctorialFactorization(
        C, {f: f for f in C.morphisms},
        {f: C.id_of(C.cod(f)) for f in C.morphisms},
        lambda u, v, f, g: v, frozenset(left_class), frozenset(right_class))


def poset_factorization(C: FinCat, mid_choice, left_class, right_class) -> FunctorialFactorization:
    """On a thin category the middle object determines everything."""
    lam, rho = {}, {}
    for f in C.morphisms:
        m = mid_choice(f)
        lam[f] = C.hom(C.dom(f), m)[0]
        rho[f] = C.hom(m, C.cod(f))[0]

    def connect(u, v, f, g):
        src = C.cod(lam[f])
        tgt = C.cod(lam[g])
        hom = C.hom(src, tgt)
        if not hom:
            raise FinCatError(f"no connecting morphism {src} -> {tgt}")
        return hom[0]

    return FunctorialFactorization(C, lam, rho, connect,
                                   frozenset(left_class), frozenset(right_class))


@dataclass
class ReplacementData:
    Q: FinFunctor
    R: FinFunctor
    p: NatTransf
    i: NatTransf
    report: list[str]


def build_replacements(M: ModelStructure, fact_cof: FunctorialFactorization,
                       fact_fib: FunctorialFactorization) -> ReplacementData:
    """Cofibrant replacement Q from factoring 0 -> X, fibrant replacement R
    from X -> 1, with the comparison transformations p: Q => Id, i: Id => R."""
    C = M.base
    zero, one = initial_object(C), terminal_object(C)
    if zero is None or one is None:
        raise FinCatError("replacements need an initial and a terminal object")
    tf, tc = trivial_classes(M)
    issues = []
    for name, ff, lcls, rcls in (("cofibrant", fact_cof, M.coF, tf),
                                 ("fibrant", fact_fib, tc, M.F)):
        rep = validate_functorial_factorization(ff)
        if not rep.ok:
            raise FinCatError(f"{name} factorization invalid: {rep}")
        if set(ff.left_class) - set(lcls) or set(ff.right_class) - set(rcls):
            issues.append(f"{name} factorization classes differ from ({'coF' if name=='cofibrant' else 'coF∩W'}, ...)")

    def from_zero(x):
        return C.hom(zero, x)[0]

    def to_one(x):
        return C.hom(x, one)[0]

    q_omap, q_mmap, p_comp = {}, {}, {}
    for x in C.objects:
        f0 = from_zero(x)
        q_omap[x] = fact_cof.mid(f0)
        p_comp[x] = fact_cof.rho[f0]
        if fact_cof.lam[f0] not in M.coF:
            issues.append(f"Q{x} is not cofibrant")
        if p_comp[x] not in tf:
            issues.append(f"p at {x} is not a trivial fibration")
    for f, (x, y) in C.morphisms.items():
        q_mmap[f] = fact_cof.connect(C.id_of(zero), f, from_zero(x), from_zero(y))
    Q = FinFunctor(C, C, q_omap, q_mmap)
    repq = validate_functor(Q)
    if not repq.ok:
        raise FinCatError(f"Q is not a functor: {repq}")

    r_omap, r_mmap, i_comp = {}, {}, {}
    for x in C.objects:
        f1 = to_one(x)
        r_omap[x] = fact_fib.mid(f1)
        i_comp[x] = fact_fib.lam[f1]
        if fact_fib.rho[f1] not in M.F:
            issues.append(f"R{x} is not fibrant")
        if i_comp[x] not in tc:
            issues.append(f"i at {x} is not a trivial cofibration")
    for f, (x, y) in C.morphisms.items():
        r_mmap[f] = fact_fib.connect(f, C.id_of(one), to_one(x), to_one(y))
    R = FinFunctor(C, C, r_omap, r_mmap)
    repr_ = validate_functor(R)
    if not repr_.ok:
        raise FinCatError(f"R is not a functor: {repr_}")

    from .fincat import identity_functor, validate_nat_transf
    p = NatTransf(Q, identity_functor(C), p_comp)
    i = NatTransf(identity_functor(C), R, i_comp)
    for t, nm in ((p, "p"), (i, "i")):
        r = validate_nat_transf(t)
        if not r.ok:
            raise FinCatError(f"{nm} is not natural: {r}")
    for f in C.morphisms:
        if f in M.W and q_mmap[f] not in M.W:
            issues.append(f"Q does not preserve the weak equivalence {f}")
        if f in M.W and r_mmap[f] not in M.W:
            issues.append(f"R does not preserve the weak equivalence {f}")
    return ReplacementData(Q, R, p, i, issues)


@dataclass
class QFunctorData:
    functor: FinFunctor       # C -> 1-truncation of Ho
    equivalence_certs: dict[str, tuple]
    report: list[str]


def build_q(M: ModelStructure, repl: ReplacementData, pres: HoPresentation) -> QFunctorData:
    """q = i ∘ R ∘ Q; certifies q(W) ⊆ equivalences of the presentation."""
    from .twocat import one_truncation
    C = M.base
    omap = {x: repl.R.omap[repl.Q.omap[x]] for x in C.objects}
    mmap = {f: repl.R.mmap[repl.Q.mmap[f]] for f in C.morphisms}
    issues = []
    for x, tx in omap.items():
        if tx not in pres.objects:
            issues.append(f"q({x}) = {tx} is not fibrant-cofibrant")
    F = FinFunctor(C, one_truncation(pres.twocat), omap, mmap)
    rep = validate_functor(F)
    if not rep.ok:
        raise FinCatError(f"q is not a functor: {rep}")
    certs = {}
    for s in sorted(M.W, key=C.mor_index):
        ok, cert = is_equivalence_1cell(pres.twocat, mmap[s])
        if not ok:
            issues.append(f"q({s}) is not an equivalence")
        else:
            certs[s] = cert
    return QFunctorData(F, certs, issues)


# -- localization universal property --------------------------------------------

@dataclass
class LocalizationReport:
    functors_checked: int
    failures: list[str]

    @property
    def ok(self):
        return not self.failures

    def __str__(self):
        if self.ok:
            return (f"{self.functors_checked} functor(s) invert W and factor "
                    f"uniquely through pi0(Ho)")
        return "\n".join(self.failures[:10])


def localization_check(M: ModelStructure, pres: HoPresentation, X: FinCat,
                       max_objects: int = 3, max_morphisms: int = 12) -> LocalizationReport:
    """Every functor C_fc -> X inverting W factors uniquely through pi0(Ho)."""
    from .fincat import is_iso
    from .fixtures_support import sub_fincat
    if len(X.objects) > max_objects or len(X.morphisms) > max_morphisms:
        raise FinCatError("target category exceeds the configured probe size")
    C = pres.ambient
    sub = sub_fincat(C, pres.objects)
    res = pi0(pres.twocat)
    failures = []
    count = 0
    iso_cache = {m: is_iso(X, m)[0] for m in X.morphisms}

    def inverts_w(f, img, D):
        if f in M.W:
            return iso_cache[img]
        return True

    for F in all_functors(sub, X, arrow_filter=inverts_w):
        if not all(iso_cache[F.mmap[s]] for s in M.W
                   if s in sub.morphisms):
            continue
        count += 1
        assign = {}
        welldef = True
        for f in sub.morphisms:
            cls = res.projection[f]
            if cls in assign and assign[cls] != F.mmap[f]:
                failures.append(f"functor #{count} does not respect pi0 classes at {f}")
                welldef = False
                break
            assign[cls] = F.mmap[f]
        if not welldef:
            continue
        tilde = FinFunctor(res.category, X, dict(F.omap), assign)
        if not validate_functor(tilde).ok:
            failures.append(f"functor #{count}: induced map not a functor")
            continue
        matches = 0
        for G in all_functors(res.category, X):
            if G.omap == F.omap and all(G.mmap[res.projection[f]] == F.mmap[f]
                                        for f in sub.morphisms):
                matches += 1
        if matches != 1:
            failures.append(f"functor #{count}: {matches} factorizations through pi0(Ho)")
    return LocalizationReport(count, failures)
