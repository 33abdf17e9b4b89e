"""Difference sets and difference partitions of Z_v."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import SchurLabError

ENUMERATION_LIMIT = 31


@dataclass(frozen=True)
class DifferenceSetCertificate:
    v: int
    D: tuple[int, ...]
    k: int
    lam: int

    @property
    def n_param(self) -> int:
        return self.k - self.lam

    def to_record(self) -> dict:
        return {"v": self.v, "D": list(self.D), "k": self.k, "lambda": self.lam, "n": self.n_param}


def difference_counts(D: Iterable[int], v: int) -> Counter:
    D = list(D)
    return Counter((x - y) % v for x in D for y in D)


def is_difference_set(D: Iterable[int], v: int) -> DifferenceSetCertificate | None:
    D = tuple(sorted({x % v for x in D}))
    if not D:
        raise SchurLabError("difference sets are nonempty")
    counts = difference_counts(D, v)
    values = {counts.get(x, 0) for x in range(1, v)}
    if len(values) > 1:
        return None
    lam = values.pop() if values else 0
    return DifferenceSetCertificate(v, D, len(D), lam)


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def paley_set(p: int) -> frozenset[int]:
    """Nonzero quadratic residues mod a prime ``p = 3 (mod 4)``."""
    if not is_prime(p) or p % 4 != 3:
        raise SchurLabError(f"Paley sets need a prime p = 3 mod 4; got {p}")
    return frozenset(x * x % p for x in range(1, p))


def admissible_sizes(v: int) -> list[int]:
    """Sizes ``k`` with ``v-1 | k(k-1)``."""
    return [k for k in range(1, v + 1) if v == 1 or k * (k - 1) % (v - 1) == 0]


def _search_with_zero(v: int, k: int, lam: int) -> list[tuple[int, ...]]:
    """All k-subsets containing 0 whose nonzero differences each occur exactly ``lam`` times."""
    counts = [0] * v
    chosen = [0]
    out = []

    def extend(start):
        if len(chosen) == k:
            if all(counts[x] == lam for x in range(1, v)):
                out.append(tuple(chosen))
            return
        for x in range(start, v - (k - len(chosen)) + 1):
            ok = True
            added = []
            for y in chosen:
                for d in ((x - y) % v, (y - x) % v):
                    counts[d] += 1
                    added.append(d)
                    if counts[d] > lam:
                        ok = False
            if ok:
                chosen.append(x)
                extend(x + 1)
                chosen.pop()
            for d in added:
                counts[d] -= 1

    extend(1)
    return out


@lru_cache(maxsize=None)
def _enumerate(v: int) -> tuple[DifferenceSetCertificate, ...]:
    found: set[tuple[int, ...]] = set()
    for k in admissible_sizes(v):
        if k <= 1 or k >= v - 1:
            found.update(combinations(range(v), k))
            continue
        if 2 * k > v:
            continue
        lam = k * (k - 1) // (v - 1)
        for base in _search_with_zero(v, k, lam):
            for g in range(v):
                D = tuple(sorted((x + g) % v for x in base))
                found.add(D)
                found.add(tuple(x for x in range(v) if x not in D))
    certs = [is_difference_set(D, v) for D in found]
    assert all(certs)
    return tuple(sorted(certs, key=lambda c: (c.k, c.D)))


def enumerate_difference_sets(v: int, limit: int = ENUMERATION_LIMIT) -> list[DifferenceSetCertificate]:
    """Every difference set of Z_v; complements of sets found for ``k <= v/2`` cover the rest."""
    if v < 1 or v > limit:
        raise SchurLabError(f"difference-set enumeration supports 1 <= v <= {limit}; got {v}")
    return list(_enumerate(v))


def is_trivial_difference_set(D, v: int) -> bool:
    return len(D) <= 1 or len(D) >= v - 1


@dataclass(frozen=True)
class DifferencePartition:
    v: int
    blocks: tuple[tuple[int, ...], ...]
    certificates: tuple[DifferenceSetCertificate, ...] = field(compare=False)

    @property
    def triviality(self) -> str:
        return classify_triviality(self)

    def to_record(self) -> dict:
        return {
            "v": self.v,
            "blocks": [list(b) for b in self.blocks],
            "certificates": [c.to_record() for c in self.certificates],
            "triviality": self.triviality,
        }


def make_difference_partition(v: int, blocks: Iterable[Iterable[int]]) -> DifferencePartition:
    blocks = tuple(sorted(tuple(sorted({x % v for x in b})) for b in blocks))
    flat = [x for b in blocks for x in b]
    if sorted(flat) != list(range(v)):
        raise SchurLabError("blocks must partition Z_v")
    certs = []
    for b in blocks:
        c = is_difference_set(b, v)
        if c is None:
            raise SchurLabError(f"block {list(b)} is not a difference set")
        certs.append(c)
    return DifferencePartition(v, blocks, tuple(certs))


def classify_triviality(dp: DifferencePartition) -> str:
    if len(dp.blocks) == 2 or any(is_trivial_difference_set(b, dp.v) for b in dp.blocks):
        return "trivial"
    return "non-trivial"


def size_multisets(total: int, sizes: list[int], min_parts: int = 3) -> list[tuple[int, ...]]:
    """Nonincreasing multisets from ``sizes`` summing to ``total`` with at least ``min_parts`` parts."""
    sizes = sorted(set(sizes), reverse=True)
    out = []

    def rec(rest, idx, acc):
        if rest == 0:
            if len(acc) >= min_parts:
                out.append(tuple(acc))
            return
        for j in range(idx, len(sizes)):
            s = sizes[j]
            if s <= rest:
                acc.append(s)
                rec(rest - s, j, acc)
                acc.pop()

    rec(total, 0, [])
    return out


def exact_covers(universe: Iterable, subsets: list[frozenset]):
    """Algorithm X: yield index tuples of ``subsets`` partitioning ``universe``.

    The branching element is always the least uncovered one, and candidate
    subsets are tried in list order, so each cover is produced once and the
    output order is reproducible.
    """
    universe = sorted(universe)
    X = {x: set() for x in universe}
    for i, S in enumerate(subsets):
        for x in S:
            if x not in X:
                raise SchurLabError(f"subset {sorted(S)} leaves the universe")
            X[x].add(i)
    chosen: list[int] = []

    def select(i):
        removed = []
        for x in subsets[i]:
            for j in X[x]:
                for y in subsets[j]:
                    if y != x:
                        X[y].discard(j)
            removed.append((x, X.pop(x)))
        return removed

    def deselect(i, removed):
        for x, cols in reversed(removed):
            X[x] = cols
            for j in cols:
                for y in subsets[j]:
                    if y != x:
                        X[y].add(j)

    def search():
        if not X:
            yield tuple(chosen)
            return
        x = min(X)
        for i in sorted(X[x]):
            chosen.append(i)
            removed = select(i)
            yield from search()
            deselect(i, removed)
            chosen.pop()

    yield from search()


@dataclass
class DifferencePartitionSearch:
    v: int
    mode: str
    library_sizes: dict[int, int]
    admissible_sizes: list[int]
    size_multisets: list[tuple[int, ...]]
    cover_count: int
    short_circuit: bool
    partitions: list[DifferencePartition]

    def to_record(self) -> dict:
        return {
            "v": self.v,
            "mode": self.mode,
            "library": {str(k): c for k, c in sorted(self.library_sizes.items())},
            "admissible_block_sizes": self.admissible_sizes,
            "size_multisets": [list(m) for m in self.size_multisets],
            "short_circuit": self.short_circuit,
            "exhaustive": True,
            "cover_count": self.cover_count,
            "partitions": [p.to_record() for p in self.partitions],
        }


def search_difference_partitions(v: int, mode: str = "all") -> DifferencePartitionSearch:
    """Exhaustive exact-cover search with a replayable record of what was searched."""
    if mode not in ("all", "non-trivial-only"):
        raise SchurLabError(f"unknown mode {mode!r}")
    library = enumerate_difference_sets(v)
    if mode == "non-trivial-only":
        library = [c for c in library if 2 <= c.k <= v - 2]
        sizes = sorted({c.k for c in library})
        multisets = size_multisets(v, sizes, 3)
    else:
        sizes = sorted({c.k for c in library})
        multisets = size_multisets(v, sizes, 1)
    lib_sizes = dict(Counter(c.k for c in library))
    if not multisets:
        return DifferencePartitionSearch(v, mode, lib_sizes, sizes, [], 0, True, [])
    subsets = [frozenset(c.D) for c in library]
    results = []
    count = 0
    for cover in exact_covers(range(v), subsets):
        count += 1
        if mode == "non-trivial-only" and len(cover) < 3:
            continue
        results.append(make_difference_partition(v, [library[i].D for i in cover]))
    results.sort(key=lambda p: (len(p.blocks), p.blocks))
    return DifferencePartitionSearch(v, mode, lib_sizes, sizes, multisets, count, False, results)


def find_difference_partitions(v: int, mode: str = "all") -> list[DifferencePartition]:
    return search_difference_partitions(v, mode).partitions
