"""Equivalence invariants of presented groupoids."""

from __future__ import annotations

from dataclasses import dataclass

from .group import AbelianInvariant, abelianization, vertex_group
from .groupoid import GroupoidPresentation, connected_components


@dataclass(frozen=True)
class InvariantBundle:
    objects: int
    components: int
    abelianizations: tuple      # sorted AbelianInvariant per component

    def as_dict(self) -> dict:
        return {"objects": self.objects, "components": self.components,
                "abelianizations": [a.as_tuple() for a in self.abelianizations]}


def component_abelianizations(g: GroupoidPresentation) -> list[AbelianInvariant]:
    return sorted(abelianization(vertex_group(g, comp[0])) for comp in connected_components(g))


def invariant_bundle(g: GroupoidPresentation) -> InvariantBundle:
    comps = connected_components(g)
    abel = tuple(sorted(abelianization(vertex_group(g, c[0])) for c in comps))
    return InvariantBundle(len(g.objects), len(comps), abel)


def compare_bundles(a: InvariantBundle, b: InvariantBundle, names) -> list[tuple]:
    """(name, value in a, value in b) for each listed invariant that differs."""
    out = []
    for name in names:
        x, y = getattr(a, name), getattr(b, name)
        if x != y:
            out.append((name, x, y))
    return out
