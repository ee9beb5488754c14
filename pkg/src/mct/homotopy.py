"""Cylinders and homotopies for a category with a distinguished class Sigma.

A cylinder for X is (W, Z, d0, d1, s, x) with s in Sigma and s∘d0 = s∘d1 = x;
a homotopy f => g is a cylinder plus h with h∘d0 = f, h∘d1 = g.  The Quillen
notions (q-cylinder = codiagonal factorization, q-homotopy, path objects) are
the special case Sigma = W of a model structure.  Everything here is a finite
enumeration; gluing uses pushouts of the ambient category.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._search import UnionFind, budget_tick
from .factor import LiftingProblem, factorizations, solve_lifting
from .fincat import FinCat, FinCatError, coproduct, product, pullback, pushout, \
    induced_from_colimit, initial_object, terminal_object
from .model import ModelStructure, cofibrant_objects, fibrant_objects, trivial_classes


class TheoryViolation(Exception):
    """A theorem of the calculus failed on inputs satisfying its hypotheses."""


@dataclass
class Cylinder:
    ambient: FinCat
    X: str
    W: str
    Z: str
    d0: str
    d1: str
    s: str
    x: str

    def __post_init__(self):
        C = self.ambient
        if C.comp[(self.s, self.d0)] != self.x or C.comp[(self.s, self.d1)] != self.x:
            raise FinCatError("not a cylinder: s∘d0 = s∘d1 = x fails")

    def key(self):
        return (self.X, self.W, self.Z, self.d0, self.d1, self.s, self.x)

    @property
    def degenerate(self):
        return self.d0 == self.d1


@dataclass
class Homotopy:
    cylinder: Cylinder
    h: str

    def __post_init__(self):
        C = self.cylinder.ambient
        self.f = C.comp[(self.h, self.cylinder.d0)]
        self.g = C.comp[(self.h, self.cylinder.d1)]

    def key(self):
        return self.cylinder.key() + (self.h,)


@dataclass
class QCylinderCert:
    cylinder: Cylinder
    coproduct_obj: str
    i0: str
    i1: str
    induced: str        # (d0|d1): X+X -> W
    codiagonal: str     # nabla: X+X -> X
    fibrant: bool       # s is also a fibration


@dataclass
class PathObject:
    ambient: FinCat
    Y: str
    V: str
    delta0: str
    delta1: str
    sigma: str
    pairing: str        # (delta0, delta1): V -> Y x Y
    product_obj: str
    pr0: str
    pr1: str


@dataclass
class RightHomotopy:
    path: PathObject
    k: str
    f: str
    g: str


@dataclass(frozen=True)
class CylMorphism:
    phi: str
    psi: str


def _check_sigma(C: FinCat, sigma) -> set[str]:
    sigma = set(sigma)
    for x in C.objects:
        if C.id_of(x) not in sigma:
            raise FinCatError(f"Sigma must contain every identity; missing id of {x}")
    unknown = sigma - set(C.morphisms)
    if unknown:
        raise FinCatError(f"Sigma references unknown morphisms {sorted(unknown)}")
    return sigma


def enumerate_cylinders(C: FinCat, sigma, X: str) -> list[Cylinder]:
    """All cylinders for X with s in Sigma, in canonical order."""
    sigma = _check_sigma(C, sigma)
    out = []
    for W in C.objects:
        legs = C.hom(X, W)
        if not legs:
            continue
        for s in sorted((m for m in sigma if C.dom(m) == W), key=C.mor_index):
            Z = C.cod(s)
            for d0 in legs:
                x = C.comp[(s, d0)]
                for d1 in legs:
                    budget_tick()
                    if C.comp[(s, d1)] == x:
                        out.append(Cylinder(C, X, W, Z, d0, d1, s, x))
    return out


def identity_homotopy(C: FinCat, f: str) -> Homotopy:
    """The canonical I_f on the trivial cylinder of dom(f)."""
    X = C.dom(f)
    i = C.id_of(X)
    return Homotopy(Cylinder(C, X, X, X, i, i, i, i), f)


def enumerate_homotopies(C: FinCat, sigma, f: str, g: str,
                         cylinders: list[Cylinder] | None = None) -> list[Homotopy]:
    """All homotopies f => g; errors if the arrows are not parallel."""
    if C.morphisms[f] != C.morphisms[g]:
        raise FinCatError("homotopies only connect parallel arrows")
    X, Y = C.morphisms[f]
    if cylinders is None:
        cylinders = enumerate_cylinders(C, sigma, X)
    out = []
    for cyl in cylinders:
        for h in C.hom(cyl.W, Y):
            budget_tick()
            if C.comp[(h, cyl.d0)] == f and C.comp[(h, cyl.d1)] == g:
                out.append(Homotopy(cyl, h))
    return out


def is_q_cylinder(M: ModelStructure, cyl: Cylinder) -> QCylinderCert | None:
    """Certify cyl as a factorization of the codiagonal: (d0|d1) in coF, s in W.

    Needs the coproduct X+X; raises if it does not exist.
    """
    C = M.base
    if cyl.Z != cyl.X or cyl.x != C.id_of(cyl.X):
        return None
    cop = coproduct(C, cyl.X, cyl.X)
    if cop is None:
        raise FinCatError(f"coproduct {cyl.X}+{cyl.X} missing")
    XX, i0, i1 = cop
    induced = induced_from_colimit(C, XX, [i0, i1], [cyl.d0, cyl.d1])
    nabla = induced_from_colimit(C, XX, [i0, i1], [C.id_of(cyl.X), C.id_of(cyl.X)])
    if C.comp[(cyl.s, induced)] != nabla:
        return None
    if cyl.s not in M.W or induced not in M.coF:
        return None
    return QCylinderCert(cyl, XX, i0, i1, induced, nabla, fibrant=cyl.s in M.F)


@dataclass
class Lemma2Report:
    passed: bool
    detail: str


def lemma2_check(M: ModelStructure, cert: QCylinderCert) -> Lemma2Report:
    """For cofibrant X, the legs of a q-cylinder are trivial cofibrations.

    Raising on a non-cofibrant X is a precondition error; a failure on a valid
    structure would falsify the lemma.
    """
    cyl = cert.cylinder
    if cyl.X not in cofibrant_objects(M):
        raise FinCatError(f"{cyl.X} is not cofibrant; lemma does not apply")
    tc = M.coF & M.W
    bad = [d for d in (cyl.d0, cyl.d1) if d not in tc]
    if bad:
        return Lemma2Report(False, f"legs {bad} not trivial cofibrations")
    return Lemma2Report(True, "d0, d1 are trivial cofibrations")


def glue_homotopies(C: FinCat, H: Homotopy, K: Homotopy, po=None) -> Homotopy:
    """Vertical gluing along the pushout of (H.d1, K.d0).

    Requires matching middle arrow, equal cylinder bases (Z, x), and the
    pushout to exist (precomputed pushouts may be passed in).  The resulting
    cylinder's s need not lie in Sigma; callers decide what to do with it.
    """
    c1, c2 = H.cylinder, K.cylinder
    if H.g != K.f:
        raise FinCatError("homotopies are not composable")
    if (c1.Z, c1.x) != (c2.Z, c2.x):
        raise FinCatError("cylinders do not share their base (Z, x)")
    if po is None:
        po = pushout(C, c1.d1, c2.d0)
    if po is None:
        raise FinCatError(f"pushout of ({c1.d1}, {c2.d0}) missing")
    _, a, b = po   # a out of c1.W, b out of c2.W, a∘d1 = b∘d0'
    s2 = induced_from_colimit(C, C.cod(a), [a, b], [c1.s, c2.s])
    h2 = induced_from_colimit(C, C.cod(a), [a, b], [H.h, K.h])
    glued = Cylinder(C, c1.X, C.cod(a), c1.Z,
                     C.comp[(a, c1.d0)], C.comp[(b, c2.d1)], s2, c1.x)
    return Homotopy(glued, h2)


def compose_vertical(M: ModelStructure, H: Homotopy, K: Homotopy) -> Homotopy:
    """Quillen composition f => l of H: f => g and K: g => l via the glued cylinder.

    Preconditions from the composition lemma: X cofibrant, the pushout exists.
    On a valid structure the glued s is again a weak equivalence; if not, that
    is a theory violation.
    """
    C = M.base
    if H.cylinder.X not in cofibrant_objects(M):
        raise FinCatError(f"{H.cylinder.X} is not cofibrant")
    out = glue_homotopies(C, H, K)
    if H.cylinder.s in M.W and K.cylinder.s in M.W and out.cylinder.s not in M.W:
        raise TheoryViolation("glued cylinder map left the weak equivalences")
    return out


def invert(H: Homotopy) -> Homotopy:
    """The homotopy g => f on the same data with d0 and d1 exchanged."""
    c = H.cylinder
    return Homotopy(Cylinder(c.ambient, c.X, c.W, c.Z, c.d1, c.d0, c.s, c.x), H.h)


def whisker_left(H: Homotopy, l: str) -> Homotopy:
    """H*l: f∘l => g∘l; the cylinder is reindexed along l, h is unchanged."""
    c = H.cylinder
    C = c.ambient
    if C.cod(l) != c.X:
        raise FinCatError("whisker: cod(l) must be the cylinder's object")
    cyl = Cylinder(C, C.dom(l), c.W, c.Z,
                   C.comp[(c.d0, l)], C.comp[(c.d1, l)], c.s, C.comp[(c.x, l)])
    return Homotopy(cyl, H.h)


def whisker_right(r: str, H: Homotopy) -> Homotopy:
    """r*H: r∘f => r∘g; same cylinder, h postcomposed."""
    C = H.cylinder.ambient
    if C.dom(r) != C.cod(H.h):
        raise FinCatError("whisker: dom(r) must be the homotopy target")
    return Homotopy(H.cylinder, C.comp[(r, H.h)])


def cylinder_morphisms(c1: Cylinder, c2: Cylinder) -> list[CylMorphism]:
    """All (phi, psi) with phi∘d0 = d0', phi∘d1 = d1', psi∘s = s'∘phi, psi∘x = x'."""
    C = c1.ambient
    if c1.X != c2.X:
        return []
    out = []
    for phi in C.hom(c1.W, c2.W):
        if C.comp[(phi, c1.d0)] != c2.d0 or C.comp[(phi, c1.d1)] != c2.d1:
            continue
        target = C.comp[(c2.s, phi)]
        for psi in C.hom(c1.Z, c2.Z):
            budget_tick()
            if C.comp[(psi, c1.s)] == target and C.comp[(psi, c1.x)] == c2.x:
                out.append(CylMorphism(phi, psi))
    return out


def germ_classes(C: FinCat, sigma, f: str, g: str):
    """Partition of the homotopies f => g by the germ relation.

    The relation is the symmetric-transitive closure of "some cylinder
    morphism (phi, psi): C -> C' satisfies h'∘phi = h".
    """
    homos = enumerate_homotopies(C, sigma, f, g)
    uf = UnionFind()
    for H in homos:
        uf.add(H.key())
    by_cyl: dict[tuple, list[Homotopy]] = {}
    for H in homos:
        by_cyl.setdefault(H.cylinder.key(), []).append(H)
    cyls = {H.cylinder.key(): H.cylinder for H in homos}
    for k1, c1 in cyls.items():
        for k2, c2 in cyls.items():
            for m in cylinder_morphisms(c1, c2):
                for H2 in by_cyl[k2]:
                    k = c1.key() + (C.comp[(H2.h, m.phi)],)
                    if k in uf.parent:
                        uf.union(k, H2.key())
    classes: dict = {}
    for H in homos:
        classes.setdefault(uf.find(H.key()), []).append(H)
    return list(classes.values())


# -- Quillen normalization (three-step lemma) --------------------------------

def _pick_factorization(M: ModelStructure, f: str, left_class, right_class):
    """Lexicographically least (i, p) = f with i in left_class, p in right_class."""
    for i, p in factorizations(M.base, f):
        if i in left_class and p in right_class:
            return i, p
    return None


def to_q_homotopy(M: ModelStructure, H: Homotopy):
    """Normalize a homotopy between fibrant-cofibrant objects to a q-homotopy.

    Returns (H', chain) where chain records the germ links constructed on the
    way: pairs (homotopy, description).  Raises FinCatError naming the failing
    step when the base lacks a needed (co)limit or factorization.
    """
    C = M.base
    cyl = H.cylinder
    X = cyl.X
    Y = C.cod(H.h)
    fib, cof = fibrant_objects(M), cofibrant_objects(M)
    for obj in (X, Y):
        if obj not in fib or obj not in cof:
            raise FinCatError(f"{obj} is not fibrant-cofibrant")
    tf, tc = trivial_classes(M)
    chain = [(H, "input")]

    # step 1: make the cylinder fibrant (factor s, lift h along the factor)
    if cyl.s in M.F:
        H1, c1 = H, cyl
    else:
        pick = _pick_factorization(M, cyl.s, tc, M.F)
        if pick is None:
            raise FinCatError("step 1: no (coF∩W, F) factorization of s")
        j, s_t = pick
        Wt = C.cod(j)
        t_obj = terminal_object(C)
        if t_obj is None:
            raise FinCatError("step 1: terminal object missing")
        lift = solve_lifting(LiftingProblem(C, j, C.hom(Y, t_obj)[0],
                                            H.h, C.hom(Wt, t_obj)[0]))
        if not lift:
            raise FinCatError("step 1: no lift of h along the cylinder fattening")
        h_t = lift[0]
        c1 = Cylinder(C, X, Wt, cyl.Z, C.comp[(j, cyl.d0)], C.comp[(j, cyl.d1)],
                      s_t, cyl.x)
        H1 = Homotopy(c1, h_t)
        chain.append((H1, f"fibrant cylinder via (j={j}, id_{cyl.Z})"))

    # step 2: pull the base point back along s to reach base (X, id_X)
    if c1.Z == X and c1.x == C.id_of(X):
        H2, c2 = H1, c1
    else:
        pb = pullback(C, c1.x, c1.s)
        if pb is None:
            raise FinCatError("step 2: pullback of (x, s) missing")
        P, to_X, t = pb   # to_X: P -> dom(x) = X, t: P -> W with x∘to_X = s∘t
        sigma_m = to_X
        if sigma_m not in tf:
            raise TheoryViolation("step 2: pulled-back map is not a trivial fibration")
        # deltas: X -> P induced by cones (id_X, d_i)
        from .fincat import induced_to_limit
        d0p = induced_to_limit(C, P, [to_X, t], [C.id_of(X), c1.d0])
        d1p = induced_to_limit(C, P, [to_X, t], [C.id_of(X), c1.d1])
        c2 = Cylinder(C, X, P, X, d0p, d1p, sigma_m, C.id_of(X))
        H2 = Homotopy(c2, C.comp[(H1.h, t)])
        chain.append((H2, f"base pulled back via (t={t}, x={c1.x})"))

    # step 3: factor the induced X+X -> P as cofibration then trivial fibration
    cop = coproduct(C, X, X)
    if cop is None:
        raise FinCatError("step 3: coproduct missing")
    XX, i0, i1 = cop
    ind = induced_from_colimit(C, XX, [i0, i1], [c2.d0, c2.d1])
    pick = _pick_factorization(M, ind, M.coF, tf)
    if pick is None:
        raise FinCatError("step 3: no (coF, F∩W) factorization of the leg pairing")
    c_map, p = pick
    Wq = C.cod(c_map)
    d0q, d1q = C.comp[(c_map, i0)], C.comp[(c_map, i1)]
    sq = C.comp[(c2.s, p)]
    c3 = Cylinder(C, X, Wq, X, d0q, d1q, sq, C.id_of(X))
    H3 = Homotopy(c3, C.comp[(H2.h, p)])
    chain.append((H3, f"q-homotopy via (p={p}, id_{X})"))

    cert = is_q_cylinder(M, c3)
    if cert is None:
        raise TheoryViolation("step 3 output failed the q-cylinder certificate")
    if (H3.f, H3.g) != (H.f, H.g):
        raise TheoryViolation("normalization changed the endpoints")
    return H3, chain


def left_to_right(M: ModelStructure, H: Homotopy, P: PathObject) -> RightHomotopy:
    """Convert a q-homotopy into a right homotopy over the given path object.

    Solves the lifting problem d0 (trivial cofibration, X cofibrant) against
    the path fibration (delta0, delta1), top sigma∘f, bottom (f∘s, h).
    """
    C = M.base
    cyl = H.cylinder
    X = cyl.X
    if X not in cofibrant_objects(M):
        raise FinCatError(f"{X} is not cofibrant")
    if cyl.Z != X or cyl.x != C.id_of(X):
        raise FinCatError("left_to_right expects a q-homotopy (base (X, id))")
    tc = M.coF & M.W
    if cyl.d0 not in tc:
        raise TheoryViolation("d0 is not a trivial cofibration on this valid structure")
    if P.pairing not in M.F:
        raise FinCatError("path object pairing is not a fibration")
    from .fincat import induced_to_limit
    bottom = induced_to_limit(C, P.product_obj, [P.pr0, P.pr1],
                              [C.comp[(H.f, cyl.s)], H.h])
    top = C.comp[(P.sigma, H.f)]
    sols = solve_lifting(LiftingProblem(C, cyl.d0, P.pairing, top, bottom))
    if not sols:
        raise TheoryViolation("no diagonal: right-homotopy conversion failed")
    k = C.comp[(sols[0], cyl.d1)]
    if C.comp[(P.delta0, k)] != H.f or C.comp[(P.delta1, k)] != H.g:
        raise TheoryViolation("converted right homotopy has wrong endpoints")
    return RightHomotopy(P, k, H.f, H.g)


def enumerate_path_objects(M: ModelStructure, Y: str) -> list[PathObject]:
    """All factorizations of the diagonal with sigma in W and (d0,d1) in F."""
    C = M.base
    prod = product(C, Y, Y)
    if prod is None:
        raise FinCatError(f"product {Y}x{Y} missing")
    YY, pr0, pr1 = prod
    from .fincat import induced_to_limit
    diag = induced_to_limit(C, YY, [pr0, pr1], [C.id_of(Y), C.id_of(Y)])
    out = []
    for sigma_m, pairing in factorizations(C, diag):
        if sigma_m in M.W and pairing in M.F:
            out.append(PathObject(C, Y, C.cod(sigma_m),
                                  C.comp[(pr0, pairing)], C.comp[(pr1, pairing)],
                                  sigma_m, pairing, YY, pr0, pr1))
    return out
