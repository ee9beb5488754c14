"""Model structures on finite categories: the five axioms, derived classes,
determination and stability, duality.

M1 is certified against the generating diagram family {empty, single arrow,
parallel pair, span, cospan, discrete pair}: binary (co)products,
(co)equalizers and terminal/initial objects generate all finite (co)limits.
Structures failing M1 may still drive the cylinder calculus, which only needs
(C, Sigma); consumers are expected to treat that as a warning, not an error.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .factor import factorizations, has_lifting, llp_class, rlp_class, is_retract
from .fincat import (FinCat, FinCatError, colimit, diagram, limit, opposite,
                     initial_object, terminal_object,
                     DISCRETE_PAIR_SHAPE, PARALLEL_PAIR_SHAPE, SINGLE_ARROW_SHAPE,
                     SPAN_SHAPE, COSPAN_SHAPE, empty_diagram, pushout, pullback)


@dataclass
class ModelStructure:
    base: FinCat
    W: set[str]
    F: set[str]
    coF: set[str]
    validated: "AxiomReport | None" = field(default=None, compare=False)

    def __post_init__(self):
        known = set(self.base.morphisms)
        for name, cls in (("W", self.W), ("F", self.F), ("coF", self.coF)):
            unknown = set(cls) - known
            if unknown:
                raise FinCatError(f"class {name} references unknown morphisms {sorted(unknown)}")

    @property
    def is_valid(self):
        if self.validated is None:
            self.validated = validate_model(self)
        return self.validated.ok


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: str = ""

    def __str__(self):
        mark = "pass" if self.passed else f"FAIL ({self.witness})"
        return f"{self.axiom}: {mark}"


@dataclass
class AxiomReport:
    results: list[AxiomResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failing(self) -> list[str]:
        return [r.axiom for r in self.results if not r.passed]

    def __str__(self):
        return "\n".join(str(r) for r in self.results)


def _check_m1(C: FinCat) -> AxiomResult:
    if terminal_object(C) is None:
        return AxiomResult("M1", False, "no terminal object")
    if initial_object(C) is None:
        return AxiomResult("M1", False, "no initial object")
    for x, y in itertools.product(C.objects, repeat=2):
        from .fincat import product, coproduct
        if product(C, x, y) is None:
            return AxiomResult("M1", False, f"no product {x} x {y}")
        if coproduct(C, x, y) is None:
            return AxiomResult("M1", False, f"no coproduct {x} + {y}")
    for f in C.morphisms:
        for g in C.hom(C.dom(f), C.cod(f)):
            from .fincat import equalizer, coequalizer
            if equalizer(C, f, g) is None:
                return AxiomResult("M1", False, f"no equalizer of ({f}, {g})")
            if coequalizer(C, f, g) is None:
                return AxiomResult("M1", False, f"no coequalizer of ({f}, {g})")
    # spans / cospans (single-arrow diagrams always have (co)limits)
    for f in C.morphisms:
        for g in C.morphisms:
            if C.dom(f) == C.dom(g) and pushout(C, f, g) is None:
                return AxiomResult("M1", False, f"no pushout of span ({f}, {g})")
            if C.cod(f) == C.cod(g) and pullback(C, f, g) is None:
                return AxiomResult("M1", False, f"no pullback of cospan ({f}, {g})")
    return AxiomResult("M1", True)


def _check_m2(M: ModelStructure) -> AxiomResult:
    C = M.base
    for i in sorted(M.coF & M.W, key=C.mor_index):
        for p in sorted(M.F, key=C.mor_index):
            if not has_lifting(C, i, p):
                return AxiomResult("M2", False, f"{i} in coF∩W has no LLP against {p} in F")
    for p in sorted(M.F & M.W, key=C.mor_index):
        for i in sorted(M.coF, key=C.mor_index):
            if not has_lifting(C, i, p):
                return AxiomResult("M2", False, f"{p} in F∩W has no RLP against {i} in coF")
    return AxiomResult("M2", True)


def _check_m3(M: ModelStructure) -> AxiomResult:
    C = M.base
    for name, cls in (("W", M.W), ("F", M.F), ("coF", M.coF)):
        for x in C.objects:
            if C.id_of(x) not in cls:
                return AxiomResult("M3", False, f"{name} misses identity of {x}")
        for (g, f), gf in sorted(C.comp.items()):
            if f in cls and g in cls and gf not in cls:
                return AxiomResult("M3", False, f"{name} not closed under composition: {g}∘{f}")
        for f in sorted(C.morphisms, key=C.mor_index):
            if f in cls:
                continue
            for g in sorted(cls, key=C.mor_index):
                ok, _ = is_retract(C, f, g)
                if ok:
                    return AxiomResult("M3", False,
                                       f"{name} not closed under retracts: {f} is a retract of {g}")
    return AxiomResult("M3", True)


def _check_m4(M: ModelStructure) -> AxiomResult:
    C = M.base
    for f in sorted(C.morphisms, key=C.mor_index):
        facts = factorizations(C, f)
        if not any(i in M.coF and p in (M.F & M.W) for i, p in facts):
            return AxiomResult("M4", False, f"{f} has no (coF, F∩W) factorization")
        if not any(i in (M.coF & M.W) and p in M.F for i, p in facts):
            return AxiomResult("M4", False, f"{f} has no (coF∩W, F) factorization")
    return AxiomResult("M4", True)


def _check_m5(M: ModelStructure) -> AxiomResult:
    C = M.base
    for (g, f), gf in sorted(C.comp.items()):
        ins = (f in M.W) + (g in M.W) + (gf in M.W)
        if ins == 2:
            return AxiomResult("M5", False, f"two-of-three fails on ({g}, {f}, {gf})")
    return AxiomResult("M5", True)


def validate_model(M: ModelStructure) -> AxiomReport:
    """Axiom-by-axiom report with a first witness (in declaration order) per failure."""
    report = AxiomReport([
        _check_m1(M.base),
        _check_m2(M),
        _check_m3(M),
        _check_m4(M),
        _check_m5(M),
    ])
    M.validated = report
    return report


def trivial_classes(M: ModelStructure) -> tuple[set[str], set[str]]:
    """(F∩W, coF∩W): the trivial fibrations and trivial cofibrations."""
    return (M.F & M.W, M.coF & M.W)


@dataclass
class DeterminationReport:
    # each entry: (name, missing from computed, extra in computed)
    mismatches: list[tuple[str, set[str], set[str]]]

    @property
    def ok(self):
        return all(not a and not b for _, a, b in self.mismatches)

    def __str__(self):
        if self.ok:
            return "all four lifting determinations hold"
        return "\n".join(f"{n}: declared-only={sorted(a)} computed-only={sorted(b)}"
                         for n, a, b in self.mismatches if a or b)


def check_determination(M: ModelStructure) -> DeterminationReport:
    """coF = llp(F∩W), coF∩W = llp(F), F = rlp(coF∩W), F∩W = rlp(coF)."""
    C = M.base
    tf, tc = trivial_classes(M)
    pairs = [
        ("coF = llp(F∩W)", M.coF, llp_class(C, tf)),
        ("coF∩W = llp(F)", tc, llp_class(C, M.F)),
        ("F = rlp(coF∩W)", M.F, rlp_class(C, tc)),
        ("F∩W = rlp(coF)", tf, rlp_class(C, M.coF)),
    ]
    return DeterminationReport([(n, set(a) - set(b), set(b) - set(a)) for n, a, b in pairs])


@dataclass
class StabilityReport:
    violations: list[str]

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        return "stable" if self.ok else "\n".join(self.violations)


def check_stability(M: ModelStructure) -> StabilityReport:
    """Cobase changes of (trivial) cofibrations are (trivial) cofibrations,
    dually for (trivial) fibrations; checked on every span/cospan with an
    existing pushout/pullback."""
    C = M.base
    tf, tc = trivial_classes(M)
    v: list[str] = []
    for f in C.morphisms:
        for g in C.morphisms:
            if C.dom(f) == C.dom(g) and (f in M.coF or f in tc):
                po = pushout(C, f, g)
                if po is not None:
                    _, _, leg = po  # leg out of cod(g) is the cobase change of f
                    if f in M.coF and leg not in M.coF:
                        v.append(f"pushout of cofibration {f} along {g} gives {leg} not in coF")
                    if f in tc and leg not in tc:
                        v.append(f"pushout of trivial cofibration {f} along {g} "
                                 f"gives {leg} not in coF∩W")
            if C.cod(f) == C.cod(g) and (f in M.F or f in tf):
                pb = pullback(C, f, g)
                if pb is not None:
                    _, _, leg = pb
                    if f in M.F and leg not in M.F:
                        v.append(f"pullback of fibration {f} along {g} gives {leg} not in F")
                    if f in tf and leg not in tf:
                        v.append(f"pullback of trivial fibration {f} along {g} "
                                 f"gives {leg} not in F∩W")
    return StabilityReport(v)


def fibrant_objects(M: ModelStructure) -> set[str]:
    C = M.base
    t = terminal_object(C)
    if t is None:
        raise FinCatError("no terminal object")
    return {x for x in C.objects if C.hom(x, t)[0] in M.F}


def cofibrant_objects(M: ModelStructure) -> set[str]:
    C = M.base
    i = initial_object(C)
    if i is None:
        raise FinCatError("no initial object")
    return {x for x in C.objects if C.hom(i, x)[0] in M.coF}


def fibrant_cofibrant_objects(M: ModelStructure) -> set[str]:
    return fibrant_objects(M) & cofibrant_objects(M)


def dual_model(M: ModelStructure) -> ModelStructure:
    """Opposite base, F and coF exchanged, W kept."""
    return ModelStructure(opposite(M.base), W=set(M.W), F=set(M.coF), coF=set(M.F))


def weq_factorization_property(M: ModelStructure) -> bool:
    """W = {f : f = p∘i with i in coF∩W and p in F∩W}; exhaustive check."""
    C = M.base
    tf, tc = trivial_classes(M)
    for f in C.morphisms:
        has = any(i in tc and p in tf for i, p in factorizations(C, f))
        if has != (f in M.W):
            return False
    return True
