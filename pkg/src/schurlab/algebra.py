"""Exact arithmetic in the rational group algebra of Z x Z_n.

A group element ``a^k z^t`` is stored as the pair ``(t, k)`` with ``0 <= k < n``.
``n = 1`` is the infinite cyclic group itself; elements with ``t = 0`` form the
torsion part Z_n. Coefficients are Python ints or :class:`fractions.Fraction`,
never floats.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import ContextMismatch, SchurLabError

Number = Union[int, Fraction]


class GroupElement(NamedTuple):
    t: int
    k: int

    def __str__(self):
        parts = []
        if self.k:
            parts.append("a" if self.k == 1 else f"a^{self.k}")
        if self.t:
            parts.append("z" if self.t == 1 else f"z^{self.t}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class GroupContext:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise SchurLabError(f"torsion order must be a positive integer, got {self.n!r}")

    @property
    def identity(self) -> GroupElement:
        return GroupElement(0, 0)

    @property
    def z(self) -> GroupElement:
        return GroupElement(1, 0)

    @property
    def a(self) -> GroupElement:
        return GroupElement(0, 1 % self.n)

    def elem(self, t: int = 0, k: int = 0) -> GroupElement:
        return GroupElement(t, k % self.n)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return GroupElement(g.t + h.t, (g.k + h.k) % self.n)

    def inv(self, g: GroupElement) -> GroupElement:
        return GroupElement(-g.t, -g.k % self.n)

    def power(self, g: GroupElement, m: int) -> GroupElement:
        return GroupElement(m * g.t, m * g.k % self.n)

    def torsion(self) -> list[GroupElement]:
        return [GroupElement(0, k) for k in range(self.n)]

    def coset(self, t: int) -> list[GroupElement]:
        """The torsion coset ``z^t Z_n``."""
        return [GroupElement(t, k) for k in range(self.n)]

    def window(self, N: int) -> list[GroupElement]:
        """All elements with ``|t| <= N`` in canonical order."""
        return [GroupElement(t, k) for t in range(-N, N + 1) for k in range(self.n)]

    def units(self) -> list[int]:
        return [m for m in range(1, self.n + 1) if gcd(m, self.n) == 1] if self.n > 1 else [1]


def _normalize(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise SchurLabError(f"coefficients must be int or Fraction, got {type(c).__name__}")
    return c


class GroupAlgebraElement:
    """Finite-support element of Q[Z x Z_n]; immutable, zero coefficients never stored."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: GroupContext, terms: Mapping[GroupElement, Number] | None = None):
        self.ctx = ctx
        clean = {}
        for g, c in (terms or {}).items():
            c = _normalize(c)
            if c != 0:
                clean[GroupElement(g[0], g[1] % ctx.n)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = {g: _normalize(c) for g, c in terms.items() if c != 0}
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[GroupElement, Number]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (t, k) order."""
        return sorted(self._terms.items())

    def support(self) -> frozenset[GroupElement]:
        return frozenset(self._terms)

    def coeff(self, g) -> Number:
        return self._terms.get(GroupElement(g[0], g[1] % self.ctx.n), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        if not self._terms:
            return f"GroupAlgebraElement(n={self.ctx.n}, 0)"
        body = " + ".join(f"{c}*{g}" for g, c in self.items())
        return f"GroupAlgebraElement(n={self.ctx.n}, {body})"

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"contexts differ: n={self.ctx.n} vs n={other.ctx.n}")

    def __add__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for g, c in other._terms.items():
            out[g] = out.get(g, 0) + c
        return GroupAlgebraElement._raw(self.ctx, out)

    def __neg__(self):
        return GroupAlgebraElement._raw(self.ctx, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return convolve(self, other)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GroupAlgebraElement._raw(self.ctx, {g: c * other for g, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def to_record(self) -> dict:
        terms = []
        for g, c in self.items():
            c = Fraction(c)
            terms.append({"t": g.t, "k": g.k, "num": c.numerator, "den": c.denominator})
        return {"n": self.ctx.n, "terms": terms}

    @classmethod
    def from_record(cls, record: dict) -> "GroupAlgebraElement":
        ctx = GroupContext(int(record["n"]))
        terms: dict[GroupElement, Number] = defaultdict(int)
        for term in record["terms"]:
            g = ctx.elem(int(term["t"]), int(term["k"]))
            terms[g] += Fraction(int(term["num"]), int(term.get("den", 1)))
        return cls(ctx, terms)


def element(ctx: GroupContext, terms: Mapping | Iterable[tuple] = ()) -> GroupAlgebraElement:
    """Build an element from ``{(t, k): coeff}`` or an iterable of ``((t, k), coeff)``."""
    if isinstance(terms, Mapping):
        terms = terms.items()
    acc: dict[GroupElement, Number] = defaultdict(int)
    for g, c in terms:
        acc[ctx.elem(*g)] += c
    return GroupAlgebraElement(ctx, acc)


def simple(ctx: GroupContext, subset: Iterable) -> GroupAlgebraElement:
    """The simple quantity: sum of the elements of a finite subset."""
    return GroupAlgebraElement._raw(ctx, {ctx.elem(*g): 1 for g in set(subset)})


def convolve(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    x._check(y)
    n = x.ctx.n
    out: dict[GroupElement, Number] = defaultdict(int)
    for (t1, k1), c1 in x._terms.items():
        for (t2, k2), c2 in y._terms.items():
            out[GroupElement(t1 + t2, (k1 + k2) % n)] += c1 * c2
    return GroupAlgebraElement._raw(x.ctx, out)


def hadamard(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    x._check(y)
    return GroupAlgebraElement._raw(
        x.ctx, {g: c * y._terms[g] for g, c in x._terms.items() if g in y._terms}
    )


def star(x: GroupAlgebraElement) -> GroupAlgebraElement:
    inv = x.ctx.inv
    return GroupAlgebraElement._raw(x.ctx, {inv(g): c for g, c in x._terms.items()})


def frobenius(x: GroupAlgebraElement, m: int) -> GroupAlgebraElement:
    """Linear extension of ``g -> g^m``; coefficients of colliding images add."""
    out: dict[GroupElement, Number] = defaultdict(int)
    for g, c in x._terms.items():
        out[x.ctx.power(g, m)] += c
    return GroupAlgebraElement._raw(x.ctx, out)


def frobenius_set(ctx: GroupContext, subset: Iterable, m: int) -> frozenset[GroupElement]:
    return frozenset(ctx.power(GroupElement(*g), m) for g in subset)


def stabilizer(ctx: GroupContext, subset: Iterable) -> frozenset[GroupElement]:
    """``{g : gC = C}`` for a nonempty finite C; always a torsion subgroup."""
    C = frozenset(ctx.elem(*g) for g in subset)
    if not C:
        raise SchurLabError("stabilizer of the empty set is undefined here")
    return frozenset(
        h for h in ctx.torsion() if all(ctx.mul(h, g) in C for g in C)
    )


def project_free(x: GroupAlgebraElement) -> GroupAlgebraElement:
    """Image under ``a -> 1``; the result lives in Q[Z] (context n=1)."""
    out: dict[GroupElement, Number] = defaultdict(int)
    for g, c in x._terms.items():
        out[GroupElement(g.t, 0)] += c
    return GroupAlgebraElement._raw(GroupContext(1), out)


def project_torsion(x: GroupAlgebraElement) -> GroupAlgebraElement:
    """Image under ``z -> 1``; stays in the same context with every ``t = 0``."""
    out: dict[GroupElement, Number] = defaultdict(int)
    for g, c in x._terms.items():
        out[GroupElement(0, g.k)] += c
    return GroupAlgebraElement._raw(x.ctx, out)


def naive_convolve(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    """Reference product: coefficient of g is sum over h of x_h * y_{h^-1 g}.

    Loops over every candidate output g in the sumset bounding box, so it shares
    no code path with :func:`convolve`.
    """
    x._check(y)
    ctx = x.ctx
    if not x or not y:
        return GroupAlgebraElement(ctx)
    ts = [g.t for g in x._terms] + [g.t for g in y._terms]
    lo, hi = 2 * min(ts), 2 * max(ts)
    out = {}
    for t in range(lo, hi + 1):
        for k in range(ctx.n):
            g = GroupElement(t, k)
            total = 0
            for h, c in x._terms.items():
                total += c * y.coeff(ctx.mul(ctx.inv(h), g))
            if total:
                out[g] = total
    return GroupAlgebraElement(ctx, out)
