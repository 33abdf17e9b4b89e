"""Schur rings over finite cyclic groups Z_n, written additively on residues."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import AxiomViolation, SchurLabError
from .structure import StructureConstants

ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class FinitePartition:
    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        if n < 1:
            raise SchurLabError("modulus must be positive")
        clean = []
        seen: set[int] = set()
        for b in blocks:
            b = tuple(sorted({int(x) % n for x in b}))
            if not b:
                raise SchurLabError("empty block")
            if seen.intersection(b):
                raise SchurLabError(f"block {list(b)} overlaps an earlier block")
            seen.update(b)
            clean.append(b)
        if seen != set(range(n)):
            missing = sorted(set(range(n)) - seen)
            raise SchurLabError(f"blocks do not cover Z_{n}; missing {missing}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", tuple(sorted(clean)))

    def block_of(self) -> dict[int, tuple[int, ...]]:
        return {x: b for b in self.blocks for x in b}

    def __len__(self):
        return len(self.blocks)

    def to_record(self) -> dict:
        return {"n": self.n, "classes": [list(b) for b in self.blocks]}

    @classmethod
    def from_record(cls, record: dict) -> "FinitePartition":
        return cls(int(record["n"]), record["classes"])


def discrete_partition(n: int) -> FinitePartition:
    return FinitePartition(n, [[x] for x in range(n)])


def trivial_partition(n: int) -> FinitePartition:
    if n == 1:
        return FinitePartition(1, [[0]])
    return FinitePartition(n, [[0], range(1, n)])


def symmetric_partition(n: int) -> FinitePartition:
    return automorphic_partition(n, [n - 1] if n > 2 else [1])


def unit_group(n: int) -> list[int]:
    return [m for m in range(1, n) if gcd(m, n) == 1] if n > 1 else [0]


def automorphic_partition(n: int, gens: Sequence[int]) -> FinitePartition:
    """Orbits of the multiplicative subgroup generated by ``gens`` acting on Z_n."""
    gens = [g % n for g in gens]
    for g in gens:
        if gcd(g, n) != 1:
            raise SchurLabError(f"{g} is not a unit modulo {n}")
    seen: set[int] = set()
    blocks = []
    for x in range(n):
        if x in seen:
            continue
        orb = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                w = g * y % n
                if w not in orb:
                    orb.add(w)
                    queue.append(w)
        seen |= orb
        blocks.append(orb)
    return FinitePartition(n, blocks)


def unit_subgroups(n: int) -> list[tuple[int, ...]]:
    """All subgroups of the unit group of Z_n, as sorted tuples of residues."""
    units = unit_group(n)

    def gen(gs):
        H = {1 % n}
        frontier = list(H)
        while frontier:
            nxt = []
            for h in frontier:
                for g in gs:
                    w = g * h % n
                    if w not in H:
                        H.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(H))

    found = {gen([u]) for u in units}
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for u in units:
                if u not in A:
                    J = gen(list(A) + [u])
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda H: (len(H), H))


def _products(n, blocks):
    """Yield ``(i, j, Counter)`` for every ordered pair of blocks with i <= j."""
    for i, C in enumerate(blocks):
        for j in range(i, len(blocks)):
            D = blocks[j]
            yield i, j, Counter((c + d) % n for c in C for d in D)


def verify_partition(p: FinitePartition) -> StructureConstants:
    """Check axioms (i)-(iii); return the full multiplicity table or raise :class:`AxiomViolation`."""
    n = p.n
    blocks = p.blocks
    if (0,) not in blocks:
        raise AxiomViolation(
            "axiom (i): {0} is not a class",
            {"axiom": "i", "class_containing_identity": list(p.block_of()[0])},
        )
    block_set = set(blocks)
    for b in blocks:
        inv = tuple(sorted(-x % n for x in b))
        if inv not in block_set:
            raise AxiomViolation(
                f"axiom (ii): inverse of {list(b)} is not a class",
                {"axiom": "ii", "C": list(b), "C_star": list(inv)},
            )
    owner = p.block_of()
    table = {}
    for i, j, counts in _products(n, blocks):
        C, D = blocks[i], blocks[j]
        touched = {owner[x] for x in counts}
        for E in sorted(touched):
            coeffs = {x: counts.get(x, 0) for x in E}
            values = set(coeffs.values())
            if len(values) != 1:
                x, y = _disagreeing_pair(coeffs)
                raise AxiomViolation(
                    "axiom (iii): product is not constant on a class",
                    {
                        "axiom": "iii",
                        "C": list(C),
                        "D": list(D),
                        "E": list(E),
                        "elements": [x, y],
                        "coefficients": [coeffs[x], coeffs[y]],
                    },
                )
            lam = values.pop()
            table[(C[0], D[0], E[0])] = lam
            table[(D[0], C[0], E[0])] = lam
    return StructureConstants(n, {b[0]: b for b in blocks}, table)


def _disagreeing_pair(coeffs):
    items = sorted(coeffs.items())
    x, cx = items[0]
    for y, cy in items[1:]:
        if cy != cx:
            return x, y
    raise AssertionError("coefficients agree")


def is_schur_partition(p: FinitePartition) -> bool:
    try:
        verify_partition(p)
    except AxiomViolation:
        return False
    return True


def _inverse_closed_partitions(n: int):
    """Set partitions of Z_n with {0} a block and every block's inverse a block."""
    elems = list(range(1, n))
    label: dict[int, int] = {}
    partner: dict[int, int] = {}
    blocks: list[list[int]] = []

    def place(idx):
        if idx == len(elems):
            yield [[0]] + [list(b) for b in blocks]
            return
        x = elems[idx]
        nx = -x % n
        if nx < x:
            d = label[nx]
            if d in partner:
                choices = [partner[d]]
            else:
                choices = [c for c in range(len(blocks)) if c not in partner] + [len(blocks)]
        elif nx == x:
            choices = [c for c in range(len(blocks)) if partner.get(c, c) == c] + [len(blocks)]
        else:
            choices = list(range(len(blocks) + 1))
        for c in choices:
            new = c == len(blocks)
            if new:
                blocks.append([])
            blocks[c].append(x)
            label[x] = c
            added = []
            if nx < x and label[nx] not in partner:
                d = label[nx]
                partner[d] = c
                partner[c] = d
                added = [d, c]
            elif nx == x and c not in partner:
                partner[c] = c
                added = [c]
            yield from place(idx + 1)
            for key in added:
                partner.pop(key, None)
            del label[x]
            blocks[c].pop()
            if new:
                blocks.pop()

    yield from place(0)


def enumerate_schur_rings(n: int, limit: int = ENUMERATION_LIMIT) -> list[FinitePartition]:
    """All Schur rings over Z_n by exhaustive search over inverse-closed partitions."""
    if n < 1 or n > limit:
        raise SchurLabError(f"enumeration supports 1 <= n <= {limit}; got {n}")
    out = []
    for blocks in _inverse_closed_partitions(n):
        p = FinitePartition(n, blocks)
        if is_schur_partition(p):
            out.append(p)
    return sorted(out, key=_canonical_key)


def _canonical_key(p: FinitePartition):
    return (len(p.blocks), p.blocks)


def schur_closure(n: int, blocks: Iterable[Iterable[int]]) -> FinitePartition:
    """Coarsest Schur partition refining ``blocks`` (the Schur ring they generate).

    Refinement loop: split classes by inverse class and by every pairwise
    product coefficient until nothing changes.
    """
    label = [0] * n
    for idx, b in enumerate(blocks):
        for x in b:
            label[x % n] = idx + 1
    label[0] = -1
    label = _relabel(label)
    while True:
        parts = _parts(label)
        sig = [[label[x], label[-x % n]] for x in range(n)]
        for i in range(len(parts)):
            for j in range(i, len(parts)):
                counts = [0] * n
                for c in parts[i]:
                    for d in parts[j]:
                        counts[(c + d) % n] += 1
                for x in range(n):
                    sig[x].append(counts[x])
        new = _relabel([tuple(s) for s in sig])
        if len(set(new)) == len(parts):
            return FinitePartition(n, parts)
        label = new


def _relabel(keys):
    ids: dict = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def _parts(label):
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(label):
        groups.setdefault(lab, []).append(x)
    return sorted(groups.values())


def enumerate_by_closure(n: int) -> list[FinitePartition]:
    """All Schur rings over Z_n, built upward from the trivial ring.

    Each ring is refined by one arbitrary subset at a time and closed again;
    every Schur ring is reached because it is the closure of its own classes.
    """
    start = schur_closure(n, [range(1, n)])
    found = {start.blocks: start}
    queue = deque([start])
    subsets = [
        frozenset(c) for r in range(1, n) for c in combinations(range(1, n), r)
    ]
    while queue:
        R = queue.popleft()
        for X in subsets:
            blocks = [set(b) & X for b in R.blocks] + [set(b) - X for b in R.blocks]
            S = schur_closure(n, [b for b in blocks if b])
            if S.blocks not in found:
                found[S.blocks] = S
                queue.append(S)
    return sorted(found.values(), key=_canonical_key)


def subgroup(n: int, order: int) -> tuple[int, ...]:
    """The unique subgroup of Z_n of the given order."""
    if order < 1 or n % order:
        raise SchurLabError(f"Z_{n} has no subgroup of order {order}")
    step = n // order
    return tuple(range(0, n, step))


def s_subgroups(p: FinitePartition) -> list[int]:
    """Orders of subgroups of Z_n that are unions of classes."""
    owner = p.block_of()
    out = []
    for d in range(1, p.n + 1):
        if p.n % d:
            continue
        L = set(subgroup(p.n, d))
        if all(set(owner[x]) <= L for x in L):
            out.append(d)
    return out


@dataclass(frozen=True)
class TraditionalTag:
    kind: str
    witness: dict = field(default_factory=dict, hash=False, compare=False)

    def to_record(self) -> dict:
        return {"kind": self.kind, "witness": self.witness}


def classify_traditional(p: FinitePartition) -> TraditionalTag:
    """First matching form among trivial, automorphic, direct product, wedge."""
    n = p.n
    blocks = set(p.blocks)
    if n >= 2 and p.blocks == trivial_partition(n).blocks:
        return TraditionalTag("trivial", {})
    for H in unit_subgroups(n):
        if set(automorphic_partition(n, H).blocks) == blocks:
            return TraditionalTag("automorphic", {"unit_subgroup": list(H)})
    sub = s_subgroups(p)
    owner = p.block_of()
    for n1 in range(2, n):
        n2 = n // n1
        if n % n1 or n2 < 2 or gcd(n1, n2) != 1 or n1 not in sub or n2 not in sub:
            continue
        A, B = subgroup(n, n1), subgroup(n, n2)
        PA = {owner[x] for x in A}
        PB = {owner[x] for x in B}
        prod = {tuple(sorted({(c + d) % n for c in C for d in D})) for C in PA for D in PB}
        if prod == blocks:
            return TraditionalTag(
                "direct-product",
                {"orders": [n1, n2], "factors": [sorted(map(list, PA)), sorted(map(list, PB))]},
            )
    for k in sub:
        for h in sub:
            if not (1 < k <= h < n) or h % k:
                continue
            H, K = set(subgroup(n, h)), subgroup(n, k)
            if all(
                {(x + y) % n for x in C for y in K} == set(C)
                for C in p.blocks
                if not set(C) <= H
            ):
                return TraditionalTag("wedge", {"K_order": k, "H_order": h, "chain": [1, k, h, n]})
    return TraditionalTag("non-traditional", {})


def wedge_partition(
    inner: FinitePartition, quotient: FinitePartition, n: int, k_order: int
) -> FinitePartition:
    """Glue ``inner`` (a partition of H ~ Z_h) and ``quotient`` (a partition of Z_n/K).

    H is the order-``inner.n`` subgroup of Z_n, K its order-``k_order`` subgroup.
    """
    h = inner.n
    if n % h or h % k_order or not (1 < k_order <= h < n):
        raise SchurLabError(f"need 1 < |K| <= |H| < n with |K| | |H| | n; got {k_order}, {h}, {n}")
    if quotient.n != n // k_order:
        raise SchurLabError(f"quotient must be a partition of Z_{n // k_order}")
    embed = n // h
    K_inner = set(subgroup(h, k_order))
    inner_owner = inner.block_of()
    for x in K_inner:
        if not set(inner_owner[x]) <= K_inner:
            raise SchurLabError(
                f"K is not a union of inner classes (class {list(inner_owner[x])})"
            )
    q = n // k_order
    image = set(subgroup(q, h // k_order))
    q_owner = quotient.block_of()
    T_HK = {q_owner[x] for x in image}
    for D in T_HK:
        if not set(D) <= image:
            raise SchurLabError(f"H/K is not a union of quotient classes (class {list(D)})")
    phi_inner = {tuple(sorted({x * embed % q for x in C})) for C in inner.blocks}
    if phi_inner != T_HK:
        bad = sorted(phi_inner ^ T_HK)[0]
        raise SchurLabError(f"quotient restricted to H/K disagrees with the image of inner at {list(bad)}")
    blocks = [[x * embed for x in C] for C in inner.blocks]
    for D in quotient.blocks:
        if not set(D) <= image:
            blocks.append([x for x in range(n) if x % q in D])
    return FinitePartition(n, blocks)


@lru_cache(maxsize=None)
def schur_rings(n: int) -> tuple[FinitePartition, ...]:
    return tuple(enumerate_schur_rings(n))
