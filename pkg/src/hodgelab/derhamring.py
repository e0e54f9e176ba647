"""The de Rham ring inside Z[t, z].

Degree n elements are ``(sum h^i t^i) z^n`` with ``h^i == h^{2n-i}`` and
``h^n`` even when n is odd.  The ring is presented by

    psi: A -> (1+t^2)z   B -> 2tz   C -> t^2 z^2   D -> (t+t^3)z^2

with kernel ``J = (A^2C - D^2, AB - 2D, B^2 - 4C, BD - 2AC)``; ``psi`` is
the composite of the Hodge presentation with ``s: x, y -> t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from .gradedpoly import Exponent, Poly, Ring
from .hodgering import (
    ABCD,
    HodgeDiamond,
    InternalBasisDefect,
    PresentationElement,
    basis_H,
    coefficient_vector,
    monomials,
)
from .intlattice import (
    IntMatrix,
    NotUnimodular,
    as_matrix,
    inverse_unimodular,
    kernel_basis,
    kernel_mod,
    lattice_equal,
    mod_span,
    span_equal,
)
from .report import checking

TZ = Ring([("t", 0), ("z", 1)])

_t, _z = TZ.gens()
PSI_IMAGES: dict[str, Poly] = {
    "A": (1 + _t**2) * _z,
    "B": 2 * _t * _z,
    "C": _t**2 * _z**2,
    "D": (_t + _t**3) * _z**2,
}

A, B, C, D = ABCD.gens()
J_GENERATORS: tuple[Poly, ...] = (A**2 * C - D**2, A * B - 2 * D, B**2 - 4 * C, B * D - 2 * A * C)


class NotInDR(ValueError):
    pass


@dataclass(frozen=True)
class DeRhamVector:
    """``h = (h^0, ..., h^{2n})`` of a degree-``n`` element."""

    n: int
    h: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(v) for v in self.h)
        if self.n < 0 or len(h) != 2 * self.n + 1:
            raise ValueError(f"de Rham vector of dimension {self.n} needs {2 * self.n + 1} entries")
        object.__setattr__(self, "h", h)

    @classmethod
    def zero(cls, n: int) -> DeRhamVector:
        return cls(n, [0] * (2 * n + 1))

    @classmethod
    def from_poly(cls, p: Poly, n: int) -> DeRhamVector:
        if p.ring != TZ:
            raise ValueError("expected a polynomial in Z[t, z]")
        h = [0] * (2 * n + 1)
        for (i, k), c in p.items():
            if k != n:
                continue
            if i > 2 * n:
                raise ValueError(f"t^{i}z^{n} does not fit in degree {n}")
            h[i] = c
        return cls(n, h)

    def to_poly(self) -> Poly:
        return TZ({(i, self.n): c for i, c in enumerate(self.h)})

    def coords(self) -> tuple[int, ...]:
        return self.h

    @property
    def is_member(self) -> bool:
        return is_member_dr(self)

    def __add__(self, other: DeRhamVector) -> DeRhamVector:
        if not isinstance(other, DeRhamVector):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("adding vectors of different dimension")
        return DeRhamVector(self.n, [a + b for a, b in zip(self.h, other.h)])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> DeRhamVector:
        return DeRhamVector(self.n, [k * v for v in self.h])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, DeRhamVector):
            return DeRhamVector.from_poly(self.to_poly() * other.to_poly(), self.n + other.n)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        return str(self.to_poly()) if any(self.h) else "0"

    def to_json(self) -> dict:
        return {"type": "derham", "n": self.n, "h": list(self.h)}

    @classmethod
    def from_json(cls, data: Mapping) -> DeRhamVector:
        if data.get("type", "derham") != "derham":
            raise ValueError(f"not a de Rham vector: type {data.get('type')!r}")
        return cls(int(data["n"]), [int(v) for v in data["h"]])


def is_member_dr(v: DeRhamVector) -> bool:
    n = v.n
    if any(v.h[i] != v.h[2 * n - i] for i in range(2 * n + 1)):
        return False
    return n % 2 == 0 or v.h[n] % 2 == 0


def rank_DR(n: int) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    return n + 1


def basis_DR(n: int) -> list[DeRhamVector]:
    out = []
    for i in range(n):
        h = [0] * (2 * n + 1)
        h[i] = h[2 * n - i] = 1
        out.append(DeRhamVector(n, h))
    h = [0] * (2 * n + 1)
    h[n] = 1 if n % 2 == 0 else 2
    out.append(DeRhamVector(n, h))
    return out


def dr_coords(v: DeRhamVector) -> tuple[int, ...]:
    """Coordinates of a member in :func:`basis_DR`."""
    n = v.n
    mid = v.h[n] if n % 2 == 0 else v.h[n] // 2
    return v.h[:n] + (mid,)


@lru_cache(maxsize=None)
def basis_matrix_DR(n: int) -> IntMatrix:
    return as_matrix([b.h for b in basis_DR(n)], 2 * n + 1)


def s(a: HodgeDiamond) -> DeRhamVector:
    """Collapse a diamond along anti-diagonals: ``h^m = sum_{i+j=m} h^{i,j}``."""
    n = a.n
    h = [0] * (2 * n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            h[i + j] += a.h[i][j]
    return DeRhamVector(n, h)


# Hodge-side and de Rham-side evaluations t -> -1 / t -> 0 (resp. x, y).

def chi_H(a: HodgeDiamond) -> int:
    return sum((-1) ** (i + j) * a.h[i][j] for i in range(a.n + 1) for j in range(a.n + 1))


def h00_H(a: HodgeDiamond) -> int:
    return a.h[0][0]


def chi_DR(v: DeRhamVector) -> int:
    return sum((-1) ** i * c for i, c in enumerate(v.h))


def h0_DR(v: DeRhamVector) -> int:
    return v.h[0]


@lru_cache(maxsize=None)
def _psi_monomial(exp: Exponent) -> Poly:
    out = TZ.one()
    for name, e in zip(ABCD.names, exp):
        if e:
            out = out * PSI_IMAGES[name] ** e
    return out


def psi_poly(P: Union[Poly, PresentationElement]) -> Poly:
    if isinstance(P, PresentationElement):
        P = P.to_poly()
    if P.ring != ABCD:
        raise ValueError("psi expects a polynomial in Z[A, B, C, D]")
    out = TZ.zero()
    for exp, c in P.items():
        out = out + _psi_monomial(exp) * c
    return out


def psi(P: Union[Poly, PresentationElement]) -> dict[int, DeRhamVector]:
    return {n: DeRhamVector.from_poly(piece, n) for n, piece in psi_poly(P).pieces().items()}


def psi_n(P: Union[Poly, PresentationElement], n: int) -> DeRhamVector:
    return DeRhamVector.from_poly(psi_poly(P).graded_piece(n), n)


def normal_monomials_DR(n: int) -> list[Exponent]:
    """The n+1 monomials spanning ``Z[A,B,C,D]/J`` in degree n.

    Blocks in order ``A^i D^l``, ``C^k D^l`` (k > 0), ``A C^k D^l`` (k > 0),
    ``B C^k``; lex ascending inside each block.
    """
    mons = monomials(n)
    blocks = [
        [e for e in mons if e[1] == 0 and e[2] == 0],
        [e for e in mons if e[0] == 0 and e[1] == 0 and e[2] > 0],
        [e for e in mons if e[0] == 1 and e[1] == 0 and e[2] > 0],
        [e for e in mons if e[0] == 0 and e[1] == 1 and e[3] == 0],
    ]
    return [e for block in blocks for e in sorted(block)]


@lru_cache(maxsize=None)
def _decompose_inverse_DR(n: int) -> IntMatrix:
    cols = [dr_coords(DeRhamVector.from_poly(_psi_monomial(e), n)) for e in normal_monomials_DR(n)]
    M = as_matrix(cols, n + 1)
    try:
        return inverse_unimodular(M)
    except NotUnimodular as exc:
        raise InternalBasisDefect(f"de Rham degree {n}: {exc}") from exc


def decompose_DR(v: DeRhamVector) -> Poly:
    """Unique integer combination of :func:`normal_monomials_DR` mapping to ``v``."""
    if not is_member_dr(v):
        raise NotInDR(f"not in DR_{v.n}: {list(v.h)}")
    coeffs = _decompose_inverse_DR(v.n) @ dr_coords(v)
    return ABCD(dict(zip(normal_monomials_DR(v.n), coeffs)))


# -- relations --------------------------------------------------------------------


def poincare_vectors(n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(n):
        v = [0] * (2 * n + 1)
        v[i], v[2 * n - i] = 1, -1
        out.append(tuple(v))
    return out


def parity_vector(n: int, m: int) -> tuple[int, ...]:
    """``(m/2) * e_n``: the middle-parity congruence mod an even ``m``."""
    v = [0] * (2 * n + 1)
    v[n] = m // 2
    return tuple(v)


def dr_relations(n: int) -> list[tuple[int, ...]]:
    """Integer functionals (vectors on h^0..h^2n) vanishing on ``DR_n``."""
    return kernel_basis(basis_matrix_DR(n).T)


def dr_congruences(n: int, m: int) -> list[tuple[int, ...]]:
    return kernel_mod(basis_matrix_DR(n).T, m)


# -- verification -----------------------------------------------------------------


def _ideal_degree_part(gens: Sequence[Poly], n: int, mons: Sequence[Exponent]) -> list[tuple[int, ...]]:
    out = []
    for g in gens:
        for e in monomials(n - g.degree()):
            out.append(coefficient_vector(g * ABCD.monomial(e), mons))
    return out


def verify_derham(max_n: int, ideal: Optional[Sequence[Poly]] = None):
    """psi is onto ``DR_n`` with kernel ``J_n``, and ``s`` maps ``H_n`` onto ``DR_n``."""
    gens = list(J_GENERATORS if ideal is None else ideal)
    chk = checking("derham.presentation", "DR* = Z[A,B,C,D]/J with psi = s o phi; s surjective")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            dim = 2 * n + 1
            mons = monomials(n)
            imgs = [DeRhamVector.from_poly(_psi_monomial(e), n) for e in mons]
            bad = next((e for e, v in zip(mons, imgs) if not is_member_dr(v)), None)
            if bad is not None:
                chk.fail(rec, f"psi({ABCD.monomial(bad)}) is not in DR_{n}")
                continue
            full = as_matrix([v.h for v in imgs], dim)
            if not lattice_equal(full, basis_matrix_DR(n)):
                chk.fail(rec, "psi image lattice differs from DR_n")
                continue
            ker = kernel_basis(full)
            ideal_part = _ideal_degree_part(gens, n, mons)
            if not span_equal(ker, ideal_part, len(mons)):
                extra = next((v for v in ker if not span_equal(ideal_part + [v], ideal_part, len(mons))), None)
                chk.fail(rec, f"ker psi differs from J_{n}; missing kernel vector {extra}")
                continue
            s_imgs = [s(b).h for b in basis_H(n)]
            if not span_equal(s_imgs, [b.h for b in basis_DR(n)], dim):
                chk.fail(rec, "s(H_n) does not span DR_n")
    return chk.finish()


def verify_dr_relations(max_n: int, moduli: Sequence[int] = (2, 3, 4, 5, 6, 9)):
    chk = checking("derham.relations", "relations on DR_n: Poincare duality (+ parity mod even m, n odd)")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            dim = 2 * n + 1
            if not span_equal(dr_relations(n), poincare_vectors(n), dim):
                chk.fail(rec, "exact relations differ from the Poincare span")
            for m in moduli:
                expected = poincare_vectors(n)
                if n % 2 and m % 2 == 0:
                    expected.append(parity_vector(n, m))
                if mod_span(dr_congruences(n, m), m, dim) != mod_span(expected, m, dim):
                    chk.fail(rec, f"congruences mod {m} differ")
    return chk.finish()
