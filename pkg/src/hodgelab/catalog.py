"""Named classes (P1, E, P2, the generator D, S', T', two surfaces with partial data)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

from .derhamring import DeRhamVector, s
from .hdrring import G2, G3, HdrElement
from .hodgering import HodgeDiamond, PHI_IMAGES


class UnknownName(KeyError):
    pass


class PartialEntry(ValueError):
    pass


@dataclass(frozen=True)
class VarietyClass:
    name: str
    dim: int
    hodge: Optional[HodgeDiamond]
    derham: Optional[DeRhamVector]
    derham_kind: str  # "via-s", "pinned" or "partial"
    notes: str = ""
    known: dict = field(default_factory=dict)
    virtual: bool = False

    @property
    def concrete(self) -> bool:
        return self.hodge is not None and self.derham is not None

    def element(self) -> HdrElement:
        if not self.concrete:
            raise PartialEntry(f"{self.name} has only partial data: {self.known}")
        return HdrElement(self.hodge, self.derham)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "hodge": self.hodge.to_json() if self.hodge else "abstract",
            "derham": self.derham.to_json() if self.derham else "partial",
            "derham_kind": self.derham_kind,
            "virtual": self.virtual,
            "known": self.known,
            "notes": self.notes,
        }


def _degenerate(name: str, hodge: HodgeDiamond, notes: str, virtual: bool = False) -> VarietyClass:
    return VarietyClass(name, hodge.n, hodge, s(hodge), "via-s", notes, virtual=virtual)


_ENTRIES = [
    _degenerate("point", HodgeDiamond.from_matrix([[1]]), "Spec k"),
    _degenerate("P1", HodgeDiamond.from_matrix([[1, 0], [0, 1]]), "projective line; the generator A"),
    _degenerate("E", HodgeDiamond.from_matrix([[1, 1], [1, 1]]), "elliptic curve; B = E - P1"),
    _degenerate("P2", HodgeDiamond.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
                "projective plane; C = P1xP1 - P2"),
    _degenerate("GenD", HodgeDiamond.from_poly(PHI_IMAGES["D"], 2),
                "ring generator D, a virtual class rather than a variety", virtual=True),
    VarietyClass("Sprime", 2, HodgeDiamond.zero(2), G2, "pinned",
                 "(0, g2): difference (h(S), s(h(S))) - (h(S), dR(S)) for a surface with "
                 "h^{1,0}+h^{0,1}-h^1_dR odd", virtual=True),
    VarietyClass("Tprime", 3, HodgeDiamond.zero(3), G3, "pinned",
                 "(0, g3): second generator of ker(chi, h^0)", virtual=True),
    VarietyClass("SerreSurface", 2, None, None, "partial",
                 "surface without Hodge symmetry: H^0(Omega^1) = 0, h^1(O) = 1; rest unknown",
                 known={"h[1,0]": 0, "h[0,1]": 1}),
    VarietyClass("LangSurface", 2, None, None, "partial",
                 "surface whose Hodge-de Rham spectral sequence does not degenerate",
                 known={"h[1,0]": 1, "h[0,1]": 1, "h_dR[1]": 1}),
]

CATALOG: dict[str, VarietyClass] = {e.name: e for e in _ENTRIES}


def names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> VarietyClass:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None


def product(names: list[str]) -> HdrElement:
    """Componentwise Kunneth product of the named classes (the point if empty)."""
    elements = [get(n).element() for n in names]
    return reduce(lambda x, y: x * y, elements, get("point").element())
