"""Schur rings over Z x Z_n given by class-membership functions.

A Schur ring over the infinite group has infinitely many classes, so it is
presented by ``class_of(g)``; axiom checks run on a window ``|t| <= N``.
"""

from __future__ import annotations

from collections import Counter
from math import gcd
from typing import Iterable

from . import automorphisms as aut
from .algebra import GroupContext, GroupElement, simple, convolve, star
from .cyclic import FinitePartition, verify_partition
from .errors import AxiomViolation, ContextMismatch, SchurLabError, WedgeCompatibilityError
from .structure import StructureConstants

FLAVORS = ("discrete", "symmetric")


class SchurOracle:
    """Base class; subclasses implement ``_class_of``. Results are memoized."""

    family = "abstract"

    def __init__(self, ctx: GroupContext):
        self.ctx = ctx
        self._memo: dict[GroupElement, frozenset[GroupElement]] = {}

    def class_of(self, g) -> frozenset[GroupElement]:
        g = GroupElement(g[0], g[1] % self.ctx.n)
        cls = self._memo.get(g)
        if cls is None:
            # memoize g only: propagating to members would hide inconsistent oracles
            cls = self._class_of(g)
            self._memo[g] = cls
        return cls

    def _class_of(self, g: GroupElement) -> frozenset[GroupElement]:
        raise NotImplementedError

    def to_spec(self) -> dict:
        raise SchurLabError(f"{type(self).__name__} has no JSON spec")

    def describe(self) -> str:
        return self.family

    def __repr__(self):
        return f"<{type(self).__name__} n={self.ctx.n} {self.describe()}>"


class AutomorphicOracle(SchurOracle):
    family = "automorphic"

    def __init__(self, H: aut.AutSubgroup, tag: str = "automorphic"):
        super().__init__(GroupContext(H.n))
        self.H = H
        self.family = tag

    def _class_of(self, g):
        return aut.orbit(self.H, g)

    def to_spec(self):
        if self.family in FLAVORS:
            return {"n": self.ctx.n, "family": self.family}
        return {
            "n": self.ctx.n,
            "family": "automorphic",
            "generators": [t.to_record() for t in self.H.generators],
        }

    def describe(self):
        if self.family in FLAVORS:
            return self.family
        return "automorphic<" + ", ".join(map(str, self.H.generators)) + ">"


def make_automorphic(H: aut.AutSubgroup) -> AutomorphicOracle:
    return AutomorphicOracle(H)


def discrete(n: int) -> AutomorphicOracle:
    return AutomorphicOracle(aut.closure([aut.identity(n)]), tag="discrete")


def symmetric(n: int) -> AutomorphicOracle:
    return AutomorphicOracle(aut.closure([aut.inversion(n)]), tag="symmetric")


def _outer_class(ctx, t, outer):
    if outer == "discrete" or t == 0:
        ts = (t,)
    else:
        ts = (t, -t)
    return frozenset(GroupElement(s, k) for s in ts for k in range(ctx.n))


def free_flavor(o: SchurOracle, probe: int = 3) -> str:
    """Whether the image of ``o`` in Q[Z] is discrete or symmetric.

    Raises :class:`WedgeCompatibilityError` when some class projects to a set that
    is neither ``{t}`` nor ``{t, -t}``.
    """
    seen = set()
    for t in range(1, probe + 1):
        for k in range(o.ctx.n):
            C = o.class_of((t, k))
            ts = {g.t for g in C}
            if ts == {t}:
                seen.add("discrete")
            elif ts == {t, -t}:
                seen.add("symmetric")
            else:
                raise WedgeCompatibilityError(
                    "class does not project onto a class of Z",
                    {"class": sorted(map(list, C)), "free_exponents": sorted(ts)},
                )
    if len(seen) != 1:
        raise WedgeCompatibilityError("free image mixes discrete and symmetric classes", {})
    return seen.pop()


class WedgeOracle(SchurOracle):
    """Inner ring on ``<z^s> x Z_n`` (re-indexed by ``z^s -> z``) glued to a free outer ring."""

    family = "wedge"

    def __init__(self, inner: SchurOracle, s: int, outer: str):
        super().__init__(inner.ctx)
        self.inner, self.s, self.outer = inner, s, outer

    def _class_of(self, g):
        if g.t % self.s == 0:
            C = self.inner.class_of((g.t // self.s, g.k))
            return frozenset(GroupElement(h.t * self.s, h.k) for h in C)
        return _outer_class(self.ctx, g.t, self.outer)

    def to_spec(self):
        return {
            "n": self.ctx.n,
            "family": "wedge",
            "s": self.s,
            "outer": self.outer,
            "inner": self.inner.to_spec(),
        }

    def describe(self):
        return f"wedge(s={self.s}, outer={self.outer}, inner={self.inner.describe()})"


def make_wedge(inner: SchurOracle, s: int, outer: str) -> WedgeOracle:
    """Wedge product with H = Z^(s) x Z_n and K = Z_n."""
    if outer not in FLAVORS:
        raise SchurLabError(f"outer flavor must be one of {FLAVORS}")
    if s < 2:
        raise SchurLabError("wedge needs a proper free subgroup: s >= 2")
    if inner.ctx.n < 2:
        raise SchurLabError("wedge needs a nontrivial torsion subgroup K = Z_n")
    inner_flavor = free_flavor(inner)
    if inner_flavor != outer:
        C = inner.class_of((1, 0))
        raise WedgeCompatibilityError(
            f"inner ring projects to the {inner_flavor} ring of Z but outer is {outer}",
            {"class": sorted(list(GroupElement(h.t * s, h.k)) for h in C)},
        )
    return WedgeOracle(inner, s, outer)


class LiftOracle(SchurOracle):
    """A Schur ring on Z_n wedged with a free outer ring: classes off Z_n are whole cosets."""

    family = "finite-lift"

    def __init__(self, torsion: FinitePartition, outer: str):
        super().__init__(GroupContext(torsion.n))
        self.torsion, self.outer = torsion, outer
        self._owner = torsion.block_of()

    def _class_of(self, g):
        if g.t == 0:
            return frozenset(GroupElement(0, k) for k in self._owner[g.k])
        return _outer_class(self.ctx, g.t, self.outer)

    def to_spec(self):
        return {
            "n": self.ctx.n,
            "family": "finite-lift",
            "outer": self.outer,
            "classes": [list(b) for b in self.torsion.blocks],
        }

    def describe(self):
        return f"finite-lift(outer={self.outer}, torsion={[list(b) for b in self.torsion.blocks]})"


def make_lift(torsion: FinitePartition, outer: str) -> LiftOracle:
    if outer not in FLAVORS:
        raise SchurLabError(f"outer flavor must be one of {FLAVORS}")
    verify_partition(torsion)
    return LiftOracle(torsion, outer)


class TransformedOracle(SchurOracle):
    family = "transformed"

    def __init__(self, tau: aut.AffineAut, base: SchurOracle):
        super().__init__(base.ctx)
        self.tau, self.base = tau, base
        self._tau_inv = aut.invert(tau)

    def _class_of(self, g):
        C = self.base.class_of(aut.apply(self._tau_inv, g))
        return frozenset(aut.apply(self.tau, h) for h in C)

    def to_spec(self):
        return {
            "n": self.ctx.n,
            "family": "transformed",
            "tau": self.tau.to_record(),
            "base": self.base.to_spec(),
        }

    def describe(self):
        return f"{self.tau}({self.base.describe()})"


def transform_oracle(tau: aut.AffineAut, o: SchurOracle) -> SchurOracle:
    if tau.n != o.ctx.n:
        raise ContextMismatch("automorphism and oracle over different n")
    if isinstance(o, AutomorphicOracle):
        return AutomorphicOracle(aut.conjugate_subgroup(tau, o.H))
    return TransformedOracle(tau, o)


class OverrideOracle(SchurOracle):
    """``base`` with some classes replaced explicitly; used for negative controls."""

    family = "override"

    def __init__(self, base: SchurOracle, classes: Iterable[Iterable]):
        super().__init__(base.ctx)
        self.base = base
        self._fixed = {}
        for C in classes:
            C = frozenset(GroupElement(h[0], h[1] % self.ctx.n) for h in C)
            for h in C:
                self._fixed[h] = C

    def _class_of(self, g):
        return self._fixed.get(g) or self.base.class_of(g)

    def to_spec(self):
        classes = sorted({tuple(sorted(C)) for C in self._fixed.values()})
        return {
            "n": self.ctx.n,
            "family": "override",
            "base": self.base.to_spec(),
            "classes": [[list(h) for h in C] for C in classes],
        }

    def describe(self):
        return f"override({self.base.describe()})"


def move_element(o: SchurOracle, x, target) -> OverrideOracle:
    """Move ``x`` out of its class into the class of ``target``."""
    x = GroupElement(x[0], x[1] % o.ctx.n)
    src = o.class_of(x)
    dst = o.class_of(target)
    if x in dst:
        raise SchurLabError("element already belongs to the target class")
    classes = [dst | {x}]
    if len(src) > 1:
        classes.append(src - {x})
    return OverrideOracle(o, classes)


def class_key(C) -> GroupElement:
    return min(C)


def _check_class(o, g, C):
    ctx = o.ctx
    if g not in C:
        raise AxiomViolation("class_of(g) does not contain g", {"g": list(g), "class": _rec(C)})
    for h in C:
        if o.class_of(h) != C:
            raise AxiomViolation(
                "classes overlap",
                {"g": list(g), "h": list(h), "class_of_g": _rec(C), "class_of_h": _rec(o.class_of(h))},
            )
    if g == ctx.identity and C != {g}:
        raise AxiomViolation("axiom (i): identity class is not {1}", {"axiom": "i", "class": _rec(C)})
    inv = frozenset(ctx.inv(h) for h in C)
    if o.class_of(ctx.inv(g)) != inv:
        raise AxiomViolation(
            "axiom (ii): inverse of a class is not a class",
            {"axiom": "ii", "C": _rec(C), "C_star": _rec(inv), "class_of_inverse": _rec(o.class_of(ctx.inv(g)))},
        )


def _rec(C):
    return [list(h) for h in sorted(C)]


def _product_counts(ctx, C, D) -> Counter:
    n = ctx.n
    return Counter((c[0] + d[0], (c[1] + d[1]) % n) for c in C for d in D)


def _decompose_counts(o, counts, C, D):
    out = {}
    seen = set()
    for x in sorted(counts):
        if x in seen:
            continue
        E = o.class_of(GroupElement(*x))
        seen |= E
        coeffs = {h: counts.get(h, 0) for h in E}
        values = set(coeffs.values())
        if len(values) != 1:
            items = sorted(coeffs.items())
            h1, c1 = items[0]
            h2, c2 = next((h, c) for h, c in items if c != c1)
            raise AxiomViolation(
                "axiom (iii): product is not constant on a class",
                {
                    "axiom": "iii",
                    "C": _rec(C),
                    "D": _rec(D),
                    "E": _rec(E),
                    "elements": [list(h1), list(h2)],
                    "coefficients": [c1, c2],
                },
            )
        out[E] = values.pop()
    return out


def decompose_product(o: SchurOracle, C, D) -> list[tuple[frozenset, int]]:
    """Class decomposition of ``C D`` as ``[(E, lambda)]`` sorted by class key."""
    C = frozenset(GroupElement(*h) for h in C)
    D = frozenset(GroupElement(*h) for h in D)
    for X in (C, D):
        if o.class_of(min(X)) != X:
            raise SchurLabError(f"{_rec(X)} is not a class of the oracle")
    dec = _decompose_counts(o, _product_counts(o.ctx, C, D), C, D)
    return sorted(dec.items(), key=lambda item: class_key(item[0]))


def window_classes(o: SchurOracle, N: int) -> list[frozenset]:
    seen = {}
    for g in o.ctx.window(N):
        C = o.class_of(g)
        seen.setdefault(class_key(C), C)
    return [seen[k] for k in sorted(seen)]


def verify_on_window(o: SchurOracle, N: int) -> StructureConstants:
    """Check axioms (i)-(iii) for every pair of classes meeting ``|t| <= N``.

    Products are read wherever they land (at most ``|t| <= 2N`` for the
    families here); touched classes are checked in full.
    """
    if N < 0:
        raise SchurLabError("window bound must be nonnegative")
    ctx = o.ctx
    for g in ctx.window(N):
        _check_class(o, g, o.class_of(g))
    classes = window_classes(o, N)
    table = {}
    known = {class_key(C): tuple(sorted(C)) for C in classes}
    for i, C in enumerate(classes):
        for D in classes[i:]:
            dec = _decompose_counts(o, _product_counts(ctx, C, D), C, D)
            for E, lam in dec.items():
                ek = class_key(E)
                if ek not in known:
                    _check_class(o, ek, E)
                    known[ek] = tuple(sorted(E))
                table[(class_key(C), class_key(D), ek)] = lam
                table[(class_key(D), class_key(C), ek)] = lam
    return StructureConstants(
        ctx.n, known, table, window=N, notes={"window_contract": "pairs meeting |t|<=N; products read in full"}
    )


def multiplicity(ctx: GroupContext, X, Y, Z) -> int:
    """Coefficient of a fixed member of ``Z`` in ``X Y``; the structure constant when all are classes."""
    z0 = min(Z)
    Y = Y if isinstance(Y, (set, frozenset)) else set(Y)
    n = ctx.n
    return sum(1 for x in X if (z0[0] - x[0], (z0[1] - x[1]) % n) in Y)


def size_lemma_violations(o: SchurOracle, sc: StructureConstants) -> list[dict]:
    """Triples with ``lam(C,D,E)|E| != lam(D,E*,C*)|C|`` or ``!= lam(E*,C,D*)|D|``."""
    ctx = o.ctx
    bad = []
    cls = {k: frozenset(v) for k, v in sc.classes.items()}
    inv = {}

    def star_of(key):
        if key not in inv:
            inv[key] = frozenset(ctx.inv(h) for h in cls[key])
        return inv[key]

    for (c, d, e), value in sorted(sc.table.items()):
        C, D, E = cls[c], cls[d], cls[e]
        Cs, Es, Ds = star_of(c), star_of(e), star_of(d)
        a = value * len(E)
        b = multiplicity(ctx, D, Es, Cs) * len(C)
        c3 = multiplicity(ctx, Es, C, Ds) * len(D)
        if not a == b == c3:
            bad.append({"C": list(c), "D": list(d), "E": list(e), "products": [a, b, c3]})
    return bad


def tycoons(ctx: GroupContext, A, B) -> frozenset[GroupElement]:
    """Elements of ``A B*`` with multiplicity ``|A|``; ``x`` is one iff ``A = xB``."""
    A = frozenset(ctx.elem(*h) for h in A)
    B = frozenset(ctx.elem(*h) for h in B)
    if len(A) != len(B) or not A:
        raise SchurLabError("tycoons need nonempty sets of equal size")
    prod = convolve(simple(ctx, A), star(simple(ctx, B)))
    return frozenset(g for g, c in prod.terms.items() if c == len(A))


def detect_max_free_subgroup(o: SchurOracle, N: int) -> int | None:
    """Least ``s <= N`` with ``<z^s>`` an S-subgroup, i.e. class of ``z^s`` inside ``{z^s, z^-s}``."""
    for s in range(1, N + 1):
        C = o.class_of((s, 0))
        if C <= {GroupElement(s, 0), GroupElement(-s, 0)}:
            return s
    return None


def is_free_s_subgroup(o: SchurOracle, s: int) -> bool:
    C = o.class_of((s, 0))
    return C <= {GroupElement(s, 0), GroupElement(-s, 0)}


def window_key(o: SchurOracle, N: int) -> tuple:
    return tuple(tuple(sorted(o.class_of(g))) for g in o.ctx.window(N))


def oracles_equal_on_window(o1: SchurOracle, o2: SchurOracle, N: int) -> bool:
    if o1.ctx != o2.ctx:
        raise ContextMismatch("oracles over different n")
    return all(o1.class_of(g) == o2.class_of(g) for g in o1.ctx.window(N))


def first_difference(o1: SchurOracle, o2: SchurOracle, N: int) -> GroupElement | None:
    for g in o1.ctx.window(N):
        if o1.class_of(g) != o2.class_of(g):
            return g
    return None


def torsion_partition(o: SchurOracle) -> FinitePartition:
    """The induced partition of Z_n (classes of the torsion subring)."""
    blocks = {o.class_of((0, k)) for k in range(o.ctx.n)}
    for C in blocks:
        if any(h.t != 0 for h in C):
            raise AxiomViolation("torsion subgroup is not a union of classes", {"class": _rec(C)})
    return FinitePartition(o.ctx.n, [[h.k for h in C] for C in blocks])


def oracle_from_spec(spec: dict) -> SchurOracle:
    """Build an oracle from its JSON description."""
    try:
        n = int(spec["n"])
        family = spec["family"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchurLabError(f"oracle spec needs integer 'n' and 'family': {exc}") from exc
    if family == "discrete":
        return discrete(n)
    if family == "symmetric":
        return symmetric(n)
    if family == "automorphic":
        gens = [aut.AffineAut.from_record(r, n) for r in spec.get("generators", [])]
        return make_automorphic(aut.closure(gens or [aut.identity(n)]))
    if family == "wedge":
        inner = dict(spec["inner"])
        inner.setdefault("n", n)
        return make_wedge(oracle_from_spec(inner), int(spec["s"]), spec["outer"])
    if family == "finite-lift":
        return make_lift(FinitePartition(n, spec["classes"]), spec.get("outer", "discrete"))
    if family == "transformed":
        base = dict(spec["base"])
        base.setdefault("n", n)
        return transform_oracle(aut.AffineAut.from_record(spec["tau"], n), oracle_from_spec(base))
    if family == "override":
        base = dict(spec["base"])
        base.setdefault("n", n)
        return OverrideOracle(oracle_from_spec(base), spec["classes"])
    raise SchurLabError(f"unknown oracle family {family!r}")


def coset_intersection_sizes(C) -> set[int]:
    """Nonempty sizes of ``C`` intersected with the torsion cosets ``z^t Z_n``."""
    counts = Counter(h.t for h in C)
    return set(counts.values())


def frobenius_image_is_class(o: SchurOracle, C, k: int) -> bool:
    image = frozenset(o.ctx.power(h, k) for h in C)
    return o.class_of(min(image)) == image


def coprime_units(n: int) -> list[int]:
    return [k for k in range(1, max(n, 2)) if gcd(k, n) == 1]
