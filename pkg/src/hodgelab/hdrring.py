"""The Hodge-de Rham ring: pairs (a, b) in H_n x DR_n with matching h^{0,0}/h^0 and Euler characteristic.

The kernel of ``(chi, h^0)`` on the de Rham ring is the ideal ``I``
generated by

    g2 = (t + 2t^2 + t^3) z^2        g3 = (t^2 + 2t^3 + t^4) z^3

and the ring is generated by the ``(phi, psi)`` images of ``A, B, C, D``
together with the two classes ``S' = (0, g2)`` and ``T' = (0, g3)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .derhamring import (
    DeRhamVector,
    basis_DR,
    basis_matrix_DR,
    chi_DR,
    chi_H,
    h00_H,
    h0_DR,
    is_member_dr,
    normal_monomials_DR,
    parity_vector,
    poincare_vectors,
    s,
    _psi_monomial,
    TZ,
)
from .gradedpoly import Exponent, Poly, Ring
from .hodgering import (
    ABCD,
    HodgeDiamond,
    basis_matrix,
    decompose,
    is_member,
    monomials,
    serre_vectors,
    _phi_monomial,
)
from .intlattice import (
    IntMatrix,
    as_matrix,
    kernel_basis,
    kernel_mod,
    mod_span,
    saturate,
    solve_exact,
    span_equal,
)
from .report import checking

ABCDST = Ring([("A", 1), ("B", 1), ("C", 2), ("D", 2), ("S", 2), ("T", 3)])

_t, _z = TZ.gens()
G2 = DeRhamVector.from_poly((_t + 2 * _t**2 + _t**3) * _z**2, 2)
G3 = DeRhamVector.from_poly((_t**2 + 2 * _t**3 + _t**4) * _z**3, 3)


@dataclass(frozen=True)
class HdrElement:
    a: HodgeDiamond
    b: DeRhamVector

    def __post_init__(self):
        if self.a.n != self.b.n:
            raise ValueError(f"degree mismatch: hodge part {self.a.n}, de Rham part {self.b.n}")

    @property
    def n(self) -> int:
        return self.a.n

    @classmethod
    def zero(cls, n: int) -> HdrElement:
        return cls(HodgeDiamond.zero(n), DeRhamVector.zero(n))

    @classmethod
    def from_coords(cls, n: int, vec: Sequence[int]) -> HdrElement:
        k = (n + 1) ** 2
        return cls(HodgeDiamond.from_coords(n, vec[:k]), DeRhamVector(n, vec[k:]))

    def coords(self) -> tuple[int, ...]:
        """Combined coordinates: all h^{i,j} row-major, then h^0..h^2n."""
        return self.a.coords() + self.b.coords()

    @property
    def is_member(self) -> bool:
        return is_member_hdr(self.a, self.b)

    def __add__(self, other: HdrElement) -> HdrElement:
        return HdrElement(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return HdrElement(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return HdrElement(self.a.scale(other), self.b.scale(other))
        if isinstance(other, HdrElement):
            return HdrElement(self.a * other.a, self.b * other.b)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.a}, {self.b})"

    def to_json(self) -> dict:
        return {"type": "hdr", "n": self.n, "hodge": self.a.to_json(), "derham": self.b.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> HdrElement:
        if data.get("type", "hdr") != "hdr":
            raise ValueError(f"not an hdr element: type {data.get('type')!r}")
        el = cls(HodgeDiamond.from_json(data["hodge"]), DeRhamVector.from_json(data["derham"]))
        if "n" in data and int(data["n"]) != el.n:
            raise ValueError("declared degree does not match the parts")
        return el


def is_member_hdr(a: HodgeDiamond, b: DeRhamVector) -> bool:
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} vs {b.n}")
    if not (is_member(a) and is_member_dr(b)):
        return False
    return h00_H(a) == h0_DR(b) and chi_H(a) == chi_DR(b)


def sprime() -> HdrElement:
    return HdrElement(HodgeDiamond.zero(2), G2)


def tprime() -> HdrElement:
    return HdrElement(HodgeDiamond.zero(3), G3)


# -- the ideal I = ker(chi, h^0) --------------------------------------------------


def _dr_dim(n: int) -> int:
    return 2 * n + 1


def kernel_I(n: int) -> list[tuple[int, ...]]:
    """Lattice basis (h-vectors) of ``{v in DR_n : chi(v) = h^0(v) = 0}``."""
    B = basis_matrix_DR(n)
    constraints = IntMatrix([[(-1) ** i for i in range(_dr_dim(n))], [1] + [0] * (2 * n)])
    ker = kernel_basis(constraints @ B)
    return [tuple(B @ v) for v in ker]


def ideal_I_generators(n: int, second: Optional[DeRhamVector] = G3) -> list[tuple[int, ...]]:
    """``g2 * DR_{n-2}`` and ``second * DR_{n-3}`` as h-vectors."""
    out = []
    if n >= 2:
        out += [(G2 * b).h for b in basis_DR(n - 2)]
    if second is not None and n >= second.n:
        out += [(second * b).h for b in basis_DR(n - second.n)]
    return out


def verify_kernel_I(max_n: int):
    chk = checking("hdr.kernel_I", "ker(chi, h0) on DR* is generated by g2 and g3")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            for g in (G2, G3):
                if not is_member_dr(g) or chi_DR(g) or h0_DR(g):
                    chk.fail(rec, f"generator {g} is not in the kernel")
            ker = kernel_I(n)
            expected_rank = 0 if n < 2 else n - 1
            if len(ker) != expected_rank:
                chk.fail(rec, f"kernel rank {len(ker)} != {expected_rank}")
            elif not span_equal(ker, ideal_I_generators(n), _dr_dim(n)):
                chk.fail(rec, "kernel lattice differs from g2*DR + g3*DR")
    return chk.finish()


def alternative_generators_I3(bound: int = 2) -> list[tuple[DeRhamVector, bool, bool]]:
    """Test every ``w = a*g3 + L`` (L in g2*DR_1, coefficients in ``[-bound, bound]``).

    Returns ``(w, h^2(w) odd, g2*DR_1 + Z w == I_3)`` for each sample.
    """
    base = [DeRhamVector(3, v) for v in ideal_I_generators(3, second=None)]
    target = kernel_I(3)
    rng = range(-bound, bound + 1)
    out = []
    for a, c1, c2 in itertools.product(rng, rng, rng):
        w = G3.scale(a) + base[0].scale(c1) + base[1].scale(c2)
        if not any(w.h):
            continue
        generates = span_equal([b.h for b in base] + [w.h], target, 7)
        out.append((w, w.h[2] % 2 == 1, generates))
    return out


def verify_tprime_alternatives(bound: int = 2):
    """Any element of ``I_3`` with odd ``h^2`` replaces g3; even ones do not."""
    chk = checking("hdr.tprime_alternatives", "g3 may be replaced by any element of I_3 with odd h^2")
    with chk.degree(3) as rec:
        samples = alternative_generators_I3(bound)
        if not any(odd for _, odd, _ in samples) or all(odd for _, odd, _ in samples):
            chk.fail(rec, "sample set lacks odd or even cases")
        for w, odd, gen in samples:
            if odd != gen:
                chk.fail(rec, f"w = {w}: h^2 odd = {odd}, generates = {gen}")
                break
    return chk.finish()


# -- tau and the lattice HDR_n ----------------------------------------------------


def tau(P: Poly) -> dict[int, HdrElement]:
    """``A..D -> (phi, psi)``, ``S -> S'``, ``T -> T'``, multiplied componentwise."""
    if P.ring != ABCDST:
        raise ValueError("tau expects a polynomial in Z[A, B, C, D, S, T]")
    out: dict[int, HdrElement] = {}
    for exp, c in P.items():
        el = _tau_monomial(exp)
        n = el.n
        out[n] = out[n] + el * c if n in out else el * c
    return {n: el for n, el in sorted(out.items()) if any(el.coords())}


@lru_cache(maxsize=None)
def _tau_monomial(exp: Exponent) -> HdrElement:
    base, (si, ti) = exp[:4], exp[4:]
    n = ABCD.weighted_degree(base)
    el = HdrElement(HodgeDiamond.from_poly(_phi_monomial(base), n), DeRhamVector.from_poly(_psi_monomial(base), n))
    for _ in range(si):
        el = el * sprime()
    for _ in range(ti):
        el = el * tprime()
    return el


def tau_generators(n: int, use_sprime: bool = True, use_tprime: bool = True) -> list[HdrElement]:
    """``tau(M)``, ``S'*tau(M)``, ``T'*tau(M)`` for monomials ``M`` in A..D."""
    gens = [_tau_monomial(e + (0, 0)) for e in monomials(n)]
    if use_sprime:
        gens += [_tau_monomial(e + (1, 0)) for e in monomials(n - 2)]
    if use_tprime:
        gens += [_tau_monomial(e + (0, 1)) for e in monomials(n - 3)]
    return gens


def _constraint_matrix(n: int) -> IntMatrix:
    """Rows: ``h00(a) - h0(b)`` and ``chi(a) - chi(b)`` on combined coordinates."""
    return IntMatrix([components_vector(n), euler_vector(n)])


@lru_cache(maxsize=None)
def _basis_HDR_coords(n: int) -> tuple[tuple[int, ...], ...]:
    k, d = (n + 1) ** 2, _dr_dim(n)
    BH, BD = basis_matrix(n), basis_matrix_DR(n)
    cols = [c + (0,) * d for c in BH.columns()] + [(0,) * k + c for c in BD.columns()]
    Bc = as_matrix(cols, k + d)
    ker = kernel_basis(_constraint_matrix(n) @ Bc)
    return tuple(tuple(Bc @ v) for v in ker)


def rank_HDR(n: int) -> int:
    if n < 0:
        raise ValueError("degree must be non-negative")
    return len(_basis_HDR_coords(n))


def basis_HDR(n: int) -> list[HdrElement]:
    return [HdrElement.from_coords(n, v) for v in _basis_HDR_coords(n)]


def verify_tau_surjective(max_n: int, use_sprime: bool = True, use_tprime: bool = True):
    chk = checking("hdr.tau_surjective", "tau: Z[A,B,C,D,S,T] -> HDR* is surjective")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            gens = tau_generators(n, use_sprime, use_tprime)
            bad = next((g for g in gens if not g.is_member), None)
            if bad is not None:
                chk.fail(rec, f"generator {bad} is not in HDR_{n}")
                continue
            dim = (n + 1) ** 2 + _dr_dim(n)
            target = _basis_HDR_coords(n)
            got = [g.coords() for g in gens]
            if not span_equal(got, target, dim):
                missing = next((v for v in target if not span_equal(got + [v], got, dim)), None)
                chk.fail(rec, f"tau image misses {HdrElement.from_coords(n, missing)}")
    return chk.finish()


def decompose_HDR(el: HdrElement) -> Poly:
    """A polynomial ``Q`` in ``Z[A,B,C,D,S,T]`` with ``tau(Q) == el``.

    ``el = (a, s(a)) + (0, c)``: the first part comes from the Hodge
    decomposition of ``a``; ``c`` lies in ``I_n`` and is written over
    ``S * (normal de Rham monomials of degree n-2)`` and
    ``T * (normal de Rham monomials of degree n-3)`` by the HNF solve.
    """
    if not el.is_member:
        raise ValueError(f"not in HDR_{el.n}: {el}")
    n = el.n
    hodge_part = decompose(el.a).to_poly()
    c = el.b - s(el.a)
    terms: dict[Exponent, int] = {e + (0, 0): v for e, v in hodge_part.items()}
    cols, labels = [], []
    for e in (normal_monomials_DR(n - 2) if n >= 2 else []):
        cols.append((G2 * DeRhamVector.from_poly(_psi_monomial(e), n - 2)).h)
        labels.append(e + (1, 0))
    for e in (normal_monomials_DR(n - 3) if n >= 3 else []):
        cols.append((G3 * DeRhamVector.from_poly(_psi_monomial(e), n - 3)).h)
        labels.append(e + (0, 1))
    if any(c.h):
        coeffs = solve_exact(as_matrix(cols, _dr_dim(n)), c.h)
        for lab, v in zip(labels, coeffs):
            terms[lab] = terms.get(lab, 0) + v
    return ABCDST(terms)


# -- combined functionals ---------------------------------------------------------


@dataclass(frozen=True)
class CombinedFunctional:
    """``sum lam[i][j] h^{i,j} + sum mu[i] h^i_dR``, optionally mod ``modulus``."""

    n: int
    lam: tuple[tuple[int, ...], ...]
    mu: tuple[int, ...]
    modulus: Optional[int] = None

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[int], modulus: Optional[int] = None) -> CombinedFunctional:
        k = n + 1
        if modulus:
            vec = [v % modulus for v in vec]
        lam = tuple(tuple(vec[i * k:(i + 1) * k]) for i in range(k))
        return cls(n, lam, tuple(vec[k * k:]), modulus)

    def vector(self) -> tuple[int, ...]:
        return tuple(v for r in self.lam for v in r) + self.mu

    def __call__(self, el: HdrElement) -> int:
        val = sum(x * y for x, y in zip(self.vector(), el.coords()))
        return val % self.modulus if self.modulus else val

    def to_json(self) -> dict:
        out = {"type": "combined", "n": self.n, "lambda": [list(r) for r in self.lam], "mu": list(self.mu)}
        if self.modulus:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> CombinedFunctional:
        n = int(data["n"])
        vec = [int(v) for row in data["lambda"] for v in row] + [int(v) for v in data["mu"]]
        if len(vec) != (n + 1) ** 2 + 2 * n + 1:
            raise ValueError("wrong number of coefficients")
        m = data.get("modulus")
        return cls.from_vector(n, vec, int(m) if m else None)


def components_vector(n: int) -> tuple[int, ...]:
    k = (n + 1) ** 2
    v = [0] * (k + _dr_dim(n))
    v[0] = 1
    v[k] = -1
    return tuple(v)


def euler_vector(n: int) -> tuple[int, ...]:
    hodge = [(-1) ** (i + j) for i in range(n + 1) for j in range(n + 1)]
    derham = [-((-1) ** i) for i in range(_dr_dim(n))]
    return tuple(hodge + derham)


def named_relations(n: int, modulus: Optional[int] = None) -> list[tuple[str, tuple[int, ...]]]:
    """Serre, Poincare, components, Euler (and parity for even ``modulus``, odd ``n``)."""
    k, d = (n + 1) ** 2, _dr_dim(n)
    out = []
    reps = [(i, j) for i in range(n + 1) for j in range(n + 1) if (i, j) < (n - i, n - j)]
    for (i, j), v in zip(reps, serre_vectors(n)):
        out.append((f"serre[{i},{j}]", v + (0,) * d))
    for i, v in enumerate(poincare_vectors(n)):
        out.append((f"poincare[{i}]", (0,) * k + v))
    out.append(("components", components_vector(n)))
    out.append(("euler", euler_vector(n)))
    if modulus and modulus % 2 == 0 and n % 2 == 1:
        out.append(("parity", (0,) * k + parity_vector(n, modulus)))
    return out


def hdr_relations(n: int) -> list[CombinedFunctional]:
    """Basis of the integer functionals vanishing on ``HDR_n``."""
    dim = (n + 1) ** 2 + _dr_dim(n)
    ann = kernel_basis(as_matrix(_basis_HDR_coords(n), dim).T)
    return [CombinedFunctional.from_vector(n, v) for v in ann]


def hdr_congruences(n: int, m: int) -> list[CombinedFunctional]:
    """Generators of the functionals vanishing mod ``m`` on every tau-generator."""
    dim = (n + 1) ** 2 + _dr_dim(n)
    G = as_matrix([g.coords() for g in tau_generators(n)], dim)
    return [CombinedFunctional.from_vector(n, v, m) for v in kernel_mod(G.T, m)]


def verify_hdr_relations(max_n: int, moduli: Sequence[int] = (2, 3, 4)):
    chk = checking("hdr.relations", "relations: Serre, Poincare, components, Euler; congruences add middle parity")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            dim = (n + 1) ** 2 + _dr_dim(n)
            got = [f.vector() for f in hdr_relations(n)]
            if len(got) != dim - rank_HDR(n):
                chk.fail(rec, f"annihilator rank {len(got)} != {dim - rank_HDR(n)}")
            named = [v for _, v in named_relations(n)]
            if not span_equal(got, saturate(named, dim), dim):
                chk.fail(rec, "exact relations differ from the named span")
            for m in moduli:
                cong = [f.vector() for f in hdr_congruences(n, m)]
                expected = [v for _, v in named_relations(n, m)]
                if mod_span(cong, m, dim) != mod_span(expected, m, dim):
                    chk.fail(rec, f"congruences mod {m} differ from the named span")
                parity = (0,) * (n + 1) ** 2 + parity_vector(n, m)
                has_parity = m % 2 == 0 and mod_span(cong + [parity], m, dim) == mod_span(cong, m, dim)
                if has_parity != (m % 2 == 0 and n % 2 == 1):
                    chk.fail(rec, f"parity relation mod {m}: present={has_parity}")
    return chk.finish()
