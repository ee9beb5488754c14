"""Lifting problems, LLP/RLP classes, retracts, factorizations, weak
factorization systems.  All solvers are exhaustive scans over hom-sets."""

from __future__ import annotations

from dataclasses import dataclass

from ._search import budget_tick
from .fincat import FinCat, FinCatError, is_iso


@dataclass(frozen=True)
class LiftingProblem:
    """Commuting square g∘u = v∘f; solutions are diagonals h with h∘f = u, g∘h = v."""
    ambient: FinCat
    f: str
    g: str
    u: str
    v: str

    def __post_init__(self):
        C = self.ambient
        if C.dom(self.u) != C.dom(self.f) or C.cod(self.u) != C.dom(self.g):
            raise FinCatError("top arrow does not fit the square")
        if C.dom(self.v) != C.cod(self.f) or C.cod(self.v) != C.cod(self.g):
            raise FinCatError("bottom arrow does not fit the square")
        if C.comp[(self.g, self.u)] != C.comp[(self.v, self.f)]:
            raise FinCatError("square does not commute")


def solve_lifting(p: LiftingProblem) -> list[str]:
    """All diagonals of the square, possibly none."""
    C = p.ambient
    out = []
    for h in C.hom(C.cod(p.f), C.dom(p.g)):
        budget_tick()
        if C.comp[(h, p.f)] == p.u and C.comp[(p.g, h)] == p.v:
            out.append(h)
    return out


def has_lifting(C: FinCat, f: str, g: str) -> bool:
    """f has LLP against g: every commuting square admits a diagonal."""
    for u in C.hom(C.dom(f), C.dom(g)):
        vf_target = C.comp[(g, u)]
        for v in C.hom(C.cod(f), C.cod(g)):
            if C.comp[(v, f)] != vf_target:
                continue
            if not solve_lifting(LiftingProblem(C, f, g, u, v)):
                return False
    return True


def llp_class(C: FinCat, S) -> set[str]:
    """Morphisms with LLP against every member of S."""
    S = list(S)
    return {f for f in C.morphisms if all(has_lifting(C, f, g) for g in S)}


def rlp_class(C: FinCat, S) -> set[str]:
    """Morphisms with RLP against every member of S."""
    S = list(S)
    return {g for g in C.morphisms if all(has_lifting(C, f, g) for f in S)}


@dataclass(frozen=True)
class RetractWitness:
    """Rows X -> X' -> X and Y -> Y' -> Y composing to identities, squares commuting."""
    u: str
    r: str
    v: str
    t: str


def is_retract(C: FinCat, f: str, g: str):
    """(True, witness) iff f is a retract of g."""
    X, Y = C.morphisms[f]
    X2, Y2 = C.morphisms[g]
    for u in C.hom(X, X2):
        for r in C.hom(X2, X):
            if C.comp[(r, u)] != C.id_of(X):
                continue
            for v in C.hom(Y, Y2):
                if C.comp[(g, u)] != C.comp[(v, f)]:
                    continue
                for t in C.hom(Y2, Y):
                    budget_tick()
                    if C.comp[(t, v)] != C.id_of(Y):
                        continue
                    if C.comp[(f, r)] == C.comp[(t, g)]:
                        return True, RetractWitness(u, r, v, t)
    return False, None


def factorizations(C: FinCat, f: str) -> list[tuple[str, str]]:
    """All (i, p) with p∘i = f, through every intermediate object, canonical order."""
    X, Y = C.morphisms[f]
    out = []
    for V in C.objects:
        for i in C.hom(X, V):
            for p in C.hom(V, Y):
                budget_tick()
                if C.comp[(p, i)] == f:
                    out.append((i, p))
    return out


@dataclass(frozen=True)
class WFS:
    ambient: FinCat
    L: frozenset[str]
    R: frozenset[str]


@dataclass
class WFSReport:
    factorization_failures: list[str]
    llp_mismatch: tuple[set[str], set[str]]   # (L \ llp(R), llp(R) \ L)
    rlp_mismatch: tuple[set[str], set[str]]

    @property
    def ok(self) -> bool:
        return (not self.factorization_failures
                and not any(self.llp_mismatch) and not any(self.rlp_mismatch))

    def __str__(self):
        if self.ok:
            return "valid weak factorization system"
        bits = []
        if self.factorization_failures:
            bits.append("no L-R factorization for: " + ", ".join(self.factorization_failures))
        if any(self.llp_mismatch):
            bits.append(f"L != llp(R): extra={sorted(self.llp_mismatch[0])} "
                        f"missing={sorted(self.llp_mismatch[1])}")
        if any(self.rlp_mismatch):
            bits.append(f"R != rlp(L): extra={sorted(self.rlp_mismatch[0])} "
                        f"missing={sorted(self.rlp_mismatch[1])}")
        return "\n".join(bits)


def validate_wfs(C: FinCat, L, R) -> WFSReport:
    """Factor every morphism as R∘L and check both lifting characterizations."""
    L, R = set(L), set(R)
    fails = []
    for f in C.morphisms:
        if not any(i in L and p in R for i, p in factorizations(C, f)):
            fails.append(f)
    llp_of_R = llp_class(C, R)
    rlp_of_L = rlp_class(C, L)
    return WFSReport(fails, (L - llp_of_R, llp_of_R - L), (R - rlp_of_L, rlp_of_L - R))


def retract_of_factor(C: FinCat, f: str, i: str, p: str, side: str) -> RetractWitness:
    """Given f = p∘i, exhibit f as a retract of i (side="left", f has LLP
    against p) or of p (side="right", f has RLP against i).

    Solves the lifting problem from the determination lemma's proof; raises if
    no diagonal exists (hypothesis failure).
    """
    if C.comp[(p, i)] != f:
        raise FinCatError("not a factorization of f")
    X, Y = C.morphisms[f]
    if side == "left":
        # square: top i, bottom id_Y, left f, right p
        sols = solve_lifting(LiftingProblem(C, f, p, i, C.id_of(Y)))
        if not sols:
            raise FinCatError("f has no lift against p; hypothesis fails")
        l = sols[0]
        # rows X = X -> X and Y -l-> mid -p-> Y
        return RetractWitness(u=C.id_of(X), r=C.id_of(X), v=l, t=p)
    if side == "right":
        sols = solve_lifting(LiftingProblem(C, i, f, C.id_of(X), p))
        if not sols:
            raise FinCatError("f has no lift against i; hypothesis fails")
        l = sols[0]
        return RetractWitness(u=i, r=l, v=C.id_of(Y), t=C.id_of(Y))
    raise ValueError("side must be 'left' or 'right'")


def iso_class_lifts(C: FinCat, f: str) -> bool:
    """Isomorphisms lift against everything; used as a sanity oracle in tests."""
    ok, _ = is_iso(C, f)
    return ok
