"""Automorphisms of Z x Z_n as affine triples.

The triple ``(eps, m, i)`` acts by ``z -> a^i z^eps`` and ``a -> a^m``, so
``a^k z^t`` goes to ``a^(m k + i t) z^(eps t)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .algebra import GroupAlgebraElement, GroupContext, GroupElement
from .errors import ContextMismatch, SchurLabError


@dataclass(frozen=True, order=True)
class AffineAut:
    eps: int
    m: int
    i: int
    n: int = field(compare=True)

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise SchurLabError(f"eps must be +1 or -1, got {self.eps}")
        if self.n < 1:
            raise SchurLabError("n must be positive")
        object.__setattr__(self, "m", self.m % self.n)
        object.__setattr__(self, "i", self.i % self.n)
        if gcd(self.m, self.n) != 1:
            raise SchurLabError(f"m={self.m} is not a unit modulo {self.n}")

    @property
    def ctx(self) -> GroupContext:
        return GroupContext(self.n)

    def __call__(self, g):
        return apply(self, g)

    def __str__(self):
        return f"({'+' if self.eps > 0 else '-'}1, {self.m}, {self.i})"

    def to_record(self) -> dict:
        return {"eps": self.eps, "m": self.m, "i": self.i}

    @classmethod
    def from_record(cls, record: dict, n: int) -> "AffineAut":
        return cls(int(record["eps"]), int(record["m"]), int(record["i"]), n)


def identity(n: int) -> AffineAut:
    return AffineAut(1, 1, 0, n)


def rho(n: int) -> AffineAut:
    """``z -> a z``, ``a -> a``."""
    return AffineAut(1, 1, 1, n)


def sigma(m: int, n: int) -> AffineAut:
    """``z -> z``, ``a -> a^m``."""
    return AffineAut(1, m, 0, n)


def inversion(n: int) -> AffineAut:
    return AffineAut(-1, -1, 0, n)


def psi(n: int) -> AffineAut:
    """``z -> a z^-1``, ``a -> a``."""
    return AffineAut(-1, 1, 1, n)


def primitive_root(p: int) -> int:
    order = p - 1
    factors = {q for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, q))}
    for r in range(2, p):
        if all(pow(r, order // q, p) != 1 for q in factors):
            return r
    if p == 2:
        return 1
    raise SchurLabError(f"{p} has no primitive root")


def apply(tau: AffineAut, g) -> GroupElement:
    t, k = g
    return GroupElement(tau.eps * t, (tau.m * k + tau.i * t) % tau.n)


def apply_element(tau: AffineAut, x: GroupAlgebraElement) -> GroupAlgebraElement:
    if x.ctx.n != tau.n:
        raise ContextMismatch(f"automorphism over n={tau.n} applied in n={x.ctx.n}")
    return GroupAlgebraElement(x.ctx, {apply(tau, g): c for g, c in x.terms.items()})


def compose(s: AffineAut, t: AffineAut) -> AffineAut:
    """``compose(s, t)(g) == s(t(g))``."""
    if s.n != t.n:
        raise ContextMismatch(f"cannot compose automorphisms over n={s.n} and n={t.n}")
    return AffineAut(s.eps * t.eps, s.m * t.m, s.m * t.i + t.eps * s.i, s.n)


def invert(tau: AffineAut) -> AffineAut:
    m_inv = pow(tau.m, -1, tau.n) if tau.n > 1 else 0
    return AffineAut(tau.eps, m_inv, -m_inv * tau.eps * tau.i, tau.n)


@dataclass(frozen=True)
class AutSubgroup:
    n: int
    elements: tuple[AffineAut, ...]
    generators: tuple[AffineAut, ...]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, tau):
        return tau in self._element_set

    @property
    def _element_set(self):
        return frozenset(self.elements)

    def __eq__(self, other):
        if not isinstance(other, AutSubgroup):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def has_inversion_part(self) -> bool:
        """True when some element flips the free part (eps = -1)."""
        return any(tau.eps == -1 for tau in self.elements)

    def to_record(self) -> dict:
        return {"n": self.n, "generators": [g.to_record() for g in self.generators]}


def closure(generators: Sequence[AffineAut]) -> AutSubgroup:
    """Subgroup generated by ``generators`` (finite group, so composition closure suffices)."""
    gens = list(generators)
    if not gens:
        raise SchurLabError("closure needs at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ContextMismatch("generators live over different n")
    # raw (eps, m, i) triples: constructing AffineAut per product dominates otherwise
    raw = [(g.eps, g.m, g.i) for g in gens]
    e = (1, 1 % n, 0)
    seen = {e}
    queue = deque([e])
    while queue:
        xe, xm, xi = queue.popleft()
        for ge, gm, gi in raw:
            y = (ge * xe, gm * xm % n, (gm * xi + xe * gi) % n)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    elems = tuple(sorted(AffineAut(eps, m, i, n) for eps, m, i in seen))
    return AutSubgroup(n, elems, tuple(sorted(set(gens))))


def full_group(n: int) -> AutSubgroup:
    """All affine automorphisms of Z x Z_n, order 2 n phi(n)."""
    ctx = GroupContext(n)
    elems = sorted(
        AffineAut(eps, m, i, n) for eps in (1, -1) for m in ctx.units() for i in range(n)
    )
    return AutSubgroup(n, tuple(elems), tuple(elems))


def orbit(H: AutSubgroup, g) -> frozenset[GroupElement]:
    """Orbit of ``g`` by breadth-first search over the generators of ``H``."""
    start = GroupElement(*g)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for tau in H.generators:
            y = apply(tau, x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def conjugate_subgroup(tau: AffineAut, H: AutSubgroup) -> AutSubgroup:
    if tau.n != H.n:
        raise ContextMismatch("automorphism and subgroup over different n")
    tau_inv = invert(tau)
    conj = lambda s: compose(compose(tau, s), tau_inv)  # noqa: E731
    elems = tuple(sorted({conj(s) for s in H.elements}))
    gens = tuple(sorted({conj(s) for s in H.generators}))
    return AutSubgroup(H.n, elems, gens)


def all_subgroups(n: int) -> list[AutSubgroup]:
    """Every subgroup of Aut(Z x Z_n), found by joining cyclic subgroups to a fixpoint."""
    full = full_group(n)
    cyclic = {}
    for tau in full.elements:
        H = closure([tau])
        cyclic.setdefault(H.elements, H)
    cyclic_list = sorted(cyclic.values(), key=lambda H: (len(H), H.elements))
    found = dict(cyclic)
    frontier = list(cyclic.values())
    while frontier:
        new = []
        for A in frontier:
            A_set = set(A.elements)
            for C in cyclic_list:
                if C.generators[0] in A_set:
                    continue
                J = closure(list(A.generators) + list(C.generators))
                if J.elements not in found:
                    found[J.elements] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=lambda H: (len(H), H.elements))
