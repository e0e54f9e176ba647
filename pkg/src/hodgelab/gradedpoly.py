"""Sparse multivariate polynomials over Z with weighted variables.

A :class:`Ring` is an ordered tuple of :class:`Variable` objects, each with a
non-negative weight.  The weighted degree of a monomial is the sum of
``exponent * weight``; this is the grading used throughout the package
(``Z[x, y, z]`` with ``x, y`` of weight 0, ``Z[A, B, C, D]`` with weights
1, 1, 2, 2, ...).

Coefficients are plain Python ints, so nothing ever overflows.  Polynomials
are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

Exponent = tuple[int, ...]


class ContextMismatch(ValueError):
    """Raised when combining polynomials from different rings."""


class MissingImage(KeyError):
    """Raised by :func:`substitute` when a variable has no image."""


@dataclass(frozen=True)
class Variable:
    name: str
    weight: int = 1


class Ring:
    """Ordered list of weighted variables; the context of a :class:`Poly`."""

    __slots__ = ("variables", "_index")

    def __init__(self, variables: Iterable[Union[Variable, tuple[str, int], str]]):
        vs = []
        for v in variables:
            if isinstance(v, str):
                v = Variable(v)
            elif not isinstance(v, Variable):
                v = Variable(*v)
            if v.weight < 0:
                raise ValueError(f"negative weight for variable {v.name!r}")
            vs.append(v)
        names = [v.name for v in vs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.variables = tuple(vs)
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(v.weight for v in self.variables)

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        inner = ", ".join(f"{v.name}:{v.weight}" for v in self.variables)
        return f"Ring({inner})"

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.ngens: c})

    def monomial(self, exp: Iterable[int], coef: int = 1) -> Poly:
        return Poly(self, {tuple(exp): coef})

    def gen(self, name: str) -> Poly:
        exp = [0] * self.ngens
        exp[self._index[name]] = 1
        return Poly(self, {tuple(exp): 1})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.gen(n) for n in self.names)

    def weighted_degree(self, exp: Exponent) -> int:
        return sum(e * v.weight for e, v in zip(exp, self.variables))

    def monomials(self, degree: int) -> list[Exponent]:
        """All exponent vectors of weighted degree ``degree``, lex ascending.

        Only defined when every weight is positive (otherwise the set is
        infinite).
        """
        if any(v.weight == 0 for v in self.variables):
            raise ValueError("monomials() needs strictly positive weights")
        if degree < 0:
            return []
        out: list[Exponent] = []

        def rec(i: int, left: int, prefix: list[int]) -> None:
            if i == self.ngens:
                if left == 0:
                    out.append(tuple(prefix))
                return
            w = self.variables[i].weight
            for e in range(left // w + 1):
                prefix.append(e)
                rec(i + 1, left - e * w, prefix)
                prefix.pop()

        rec(0, degree, [])
        return sorted(out)

    def __call__(self, terms: Mapping[Exponent, int]) -> Poly:
        return Poly(self, terms)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to ints."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, int]):
        clean = {}
        n = ring.ngens
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {ring!r}")
            c = int(c)
            if c:
                clean[exp] = c
        self.ring = ring
        self._terms = clean
        self._hash = None

    # -- access -------------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exponent, int]]:
        """Terms in lexicographic exponent order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Exponent, int]]:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def coeff(self, exp: Iterable[int]) -> int:
        return self._terms.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {self.ring.weighted_degree(e) for e in self._terms}

    def degree(self) -> int:
        """Largest weighted degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def graded_piece(self, n: int) -> Poly:
        return graded_piece(self, n)

    def pieces(self) -> dict[int, Poly]:
        buckets: dict[int, dict[Exponent, int]] = {}
        for e, c in self._terms.items():
            buckets.setdefault(self.ring.weighted_degree(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(buckets.items())}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.ring, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def substitute(self, images: Mapping[str, Poly]) -> Poly:
        return substitute(self, images)

    # -- rendering / serialization -----------------------------------------

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly({render(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exp": list(e), "coef": str(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, ring: Ring, data: list[dict]) -> Poly:
        terms: dict[Exponent, int] = {}
        for entry in data:
            exp = tuple(int(e) for e in entry["exp"])
            terms[exp] = terms.get(exp, 0) + int(entry["coef"])
        return cls(ring, terms)


def _check(p: Poly, q: Poly) -> None:
    if p.ring != q.ring:
        raise ContextMismatch(f"{p.ring!r} vs {q.ring!r}")


def add(p: Poly, q: Poly) -> Poly:
    _check(p, q)
    out = dict(p._terms)
    for e, c in q._terms.items():
        out[e] = out.get(e, 0) + c
    return Poly(p.ring, out)


def mul(p: Poly, q: Poly) -> Poly:
    _check(p, q)
    out: dict[Exponent, int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return Poly(p.ring, out)


def graded_piece(p: Poly, n: int) -> Poly:
    """Terms of ``p`` whose weighted degree is exactly ``n``."""
    wd = p.ring.weighted_degree
    return Poly(p.ring, {e: c for e, c in p._terms.items() if wd(e) == n})


def substitute(p: Poly, images: Mapping[str, Poly]) -> Poly:
    """Evaluate the ring homomorphism sending each variable to its image.

    All images must live in a common target ring.  Variables that do not
    occur in ``p`` need no image.
    """
    used = [i for i in range(p.ring.ngens) if any(e[i] for e in p._terms)]
    names = p.ring.names
    for i in used:
        if names[i] not in images:
            raise MissingImage(names[i])
    rings = {img.ring for img in images.values()}
    if len(rings) != 1:
        if not images:
            raise ValueError("substitute needs at least one image to fix the target ring")
        raise ContextMismatch("images live in different rings")
    target = rings.pop()

    powers: dict[tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        if (i, k) not in powers:
            powers[(i, k)] = images[names[i]] ** k
        return powers[(i, k)]

    result = target.zero()
    for exp, c in p.items():
        term = target.const(c)
        for i in used:
            if exp[i]:
                term = term * power(i, exp[i])
        result = result + term
    return result


# -- rendering ----------------------------------------------------------------


def _mono(names: tuple[str, ...], exp: Exponent, sep: str) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return sep.join(parts)


def _signed_sum(items: list[tuple[int, str]], sep: str) -> str:
    out = []
    for k, (c, m) in enumerate(items):
        a = abs(c)
        if not m:
            body = str(a)
        elif a == 1:
            body = m
        else:
            body = f"{a}{sep}{m}"
        if c < 0:
            out.append("-" + body)
        else:
            out.append(body if k == 0 else "+" + body)
    return "".join(out)


def render(p: Poly) -> str:
    """Canonical text form, e.g. ``(1+2xy+x^2y^2)z^2`` or ``A^2-C``.

    Weight-0 variables are collected into a parenthesised coefficient of
    each monomial in the positive-weight variables.  Display order is by
    degree, then reverse lex in the declared variable order (so ``x``
    comes before ``y``).
    """
    if not p:
        return "0"
    ring = p.ring
    names = ring.names
    sep = "" if all(len(n) == 1 for n in names) else "*"
    inner_idx = [i for i, v in enumerate(ring.variables) if v.weight == 0]
    outer_idx = [i for i, v in enumerate(ring.variables) if v.weight > 0]
    inner_names = tuple(names[i] for i in inner_idx)
    outer_names = tuple(names[i] for i in outer_idx)

    groups: dict[Exponent, list[tuple[Exponent, int]]] = {}
    for exp, c in p._terms.items():
        outer = tuple(exp[i] for i in outer_idx)
        inner = tuple(exp[i] for i in inner_idx)
        groups.setdefault(outer, []).append((inner, c))

    def outer_key(o: Exponent):
        return (sum(e * ring.variables[i].weight for e, i in zip(o, outer_idx)),
                tuple(-e for e in o))

    def inner_key(item):
        e = item[0]
        return (sum(e), tuple(-x for x in e))

    pieces = []
    for outer in sorted(groups, key=outer_key):
        om = _mono(outer_names, outer, sep)
        inner = sorted(groups[outer], key=inner_key)
        if len(inner) == 1:
            e, c = inner[0]
            im = _mono(inner_names, e, sep)
            m = sep.join(s for s in (im, om) if s)
            pieces.append(_signed_sum([(c, m)], sep))
        else:
            body = _signed_sum([(c, _mono(inner_names, e, sep)) for e, c in inner], sep)
            pieces.append(f"({body}){sep}{om}" if om else body)
    out = pieces[0]
    for piece in pieces[1:]:
        out += piece if piece.startswith("-") else "+" + piece
    return out
