"""Per-q catalog: invariant classes with their twist abelianizations.

This is the computed side of the table verification: for every equivalence
class of invariant presentations, the abelianization of a representative
and of its two multiplier twists.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from .abelian import AbelianGroup, abelianization
from .plane import build_plane
from .presentations import (
    InvariantClass,
    enumerate_all_invariant,
    group_presentation,
    is_multiplier_fixed,
    presentation_from_sigma,
    twist_multiplier,
)

TWIST_TAGS = ("base", "q", "q2")


def key_digest(canonical_key) -> str:
    """Short stable digest of a canonical triple list, used in label files."""
    blob = ";".join(",".join(map(str, t)) for t in canonical_key).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


@dataclass(frozen=True)
class TwistOrbit:
    q: int
    index: int
    base: AbelianGroup
    twist_q: AbelianGroup
    twist_q2: AbelianGroup
    inverse_index: int
    shift: int
    sigma: str
    key_digest: str

    def values(self) -> dict[str, AbelianGroup]:
        return {"base": self.base, "q": self.twist_q, "q2": self.twist_q2}

    def signature(self) -> tuple:
        return tuple(sorted(g.sort_key() for g in (self.base, self.twist_q, self.twist_q2)))


def _fixed_representative(cls: InvariantClass, plane):
    """A member fixed by j -> q*j (invariant presentations always have one)."""
    if is_multiplier_fixed(cls.representative):
        return cls.representative
    for b, sigma in cls.members:
        cand = presentation_from_sigma(plane, b, sigma)
        if is_multiplier_fixed(cand):
            return cand
    raise ValueError(f"class {cls.index} has no multiplier-fixed member")


@lru_cache(maxsize=None)
def invariant_catalog(q: int) -> tuple[TwistOrbit, ...]:
    plane = build_plane(q)
    orbits = []
    for cls in enumerate_all_invariant(plane):
        rep = _fixed_representative(cls, plane)
        base = abelianization(group_presentation(rep))
        g1 = abelianization(group_presentation(twist_multiplier(rep, 1)))
        g2 = abelianization(group_presentation(twist_multiplier(rep, 2)))
        b0, sigma0 = cls.members[0]
        orbits.append(
            TwistOrbit(
                q=q,
                index=cls.index,
                base=base,
                twist_q=g1,
                twist_q2=g2,
                inverse_index=cls.inverse_index,
                shift=b0,
                sigma=sigma0.describe(),
                key_digest=key_digest(cls.canonical_key),
            )
        )
    return tuple(orbits)


def computed_mapping(qs) -> dict[tuple[int, tuple[int, str]], AbelianGroup]:
    """The (q, (class index, twist tag)) -> group association fed to verify."""
    out: dict[tuple[int, tuple[int, str]], AbelianGroup] = {}
    for q in qs:
        for orbit in invariant_catalog(q):
            for tag, group in orbit.values().items():
                out[(q, (orbit.index, tag))] = group
    return out
