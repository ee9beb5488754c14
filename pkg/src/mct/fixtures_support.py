"""Small structural helpers shared by fixtures, hocat and the CLI."""

from __future__ import annotations

from .fincat import FinCat


def sub_fincat(C: FinCat, objects) -> FinCat:
    """Full subcategory on the given objects (ids preserved)."""
    objects = tuple(x for x in C.objects if x in set(objects))
    keep = {m for m, (d, c) in C.morphisms.items() if d in objects and c in objects}
    return FinCat(f"{C.name}_sub", objects,
                  {m: C.morphisms[m] for m in C.morphisms if m in keep},
                  {x: C.identities[x] for x in objects},
                  {(g, f): h for (g, f), h in C.comp.items()
                   if g in keep and f in keep})
