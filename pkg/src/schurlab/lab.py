"""Replayable checks of the structural results on generated Schur rings.

Each ``lab_*`` function returns a :class:`LabReport` whose record depends only
on its parameters. Statements about Schur rings on the infinite group are
checked on a window ``|t| <= N``; reports say which window was used.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable

from . import automorphisms as aut
from . import oracles as O
from .algebra import GroupElement, stabilizer
from .cyclic import enumerate_schur_rings, schur_rings, verify_partition
from .diffsets import admissible_sizes, is_prime, search_difference_partitions
from .errors import AxiomViolation, SchurLabError

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"


@dataclass
class LabReport:
    check: str
    params: dict
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_record(self) -> dict:
        # timing is deliberately excluded: records must be byte-identical across runs
        return {
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def _timed(fn: Callable[..., LabReport]):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        if report.witnesses and report.verdict == PASS:
            raise AssertionError("a passing report cannot carry witnesses")
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _verdict(witnesses):
    return FAIL if witnesses else PASS


# -- finite cyclic groups ---------------------------------------------------


@_timed
def lab_size_lemma(n: int) -> LabReport:
    """``lam(C,D,E)|E| = lam(D,E*,C*)|C| = lam(E*,C,D*)|D|`` over every Schur ring of Z_n."""
    witnesses = []
    triples = 0
    for ring in schur_rings(n):
        sc = verify_partition(ring)
        inv = {b[0]: tuple(sorted(-x % n for x in b))[0] for b in ring.blocks}
        for (c, d, e), lam in sorted(sc.table.items()):
            triples += 1
            mu = sc[(d, inv[e], inv[c])]
            nu = sc[(inv[e], c, inv[d])]
            vals = [lam * sc.size(e), mu * sc.size(c), nu * sc.size(d)]
            if len(set(vals)) != 1:
                witnesses.append({"ring": ring.to_record(), "C": c, "D": d, "E": e, "products": vals})
    return LabReport(
        "size_lemma", {"n": n}, _verdict(witnesses), witnesses,
        {"rings": len(schur_rings(n)), "nonzero_triples": triples},
    )


@_timed
def lab_coprime_product(n: int) -> LabReport:
    """Classes of coprime sizes multiply to a multiple of a single class."""
    witnesses = []
    pairs = nontrivial = 0
    for ring in schur_rings(n):
        sc = verify_partition(ring)
        for c in sc.classes:
            for d in sc.classes:
                if gcd(sc.size(c), sc.size(d)) != 1:
                    continue
                pairs += 1
                if c != 0 and d != 0:
                    nontrivial += 1
                targets = [e for (c2, d2, e) in sc.table if (c2, d2) == (c, d)]
                if len(targets) != 1:
                    witnesses.append({"ring": ring.to_record(), "C": c, "D": d, "classes": sorted(targets)})
    details = {"rings": len(schur_rings(n)), "coprime_pairs": pairs, "non_identity_pairs": nontrivial}
    if nontrivial == 0:
        details["note"] = "vacuous beyond pairs involving the identity class"
    return LabReport("coprime_product", {"n": n}, _verdict(witnesses), witnesses, details)


# -- census of the families over Z x Z_p ------------------------------------


@dataclass
class CensusMember:
    form: str
    params: dict
    oracle: O.SchurOracle
    aliases: list = field(default_factory=list)

    def to_record(self, N: int) -> dict:
        multiset = sorted(
            len(C) for C in {self.oracle.class_of((1, k)) for k in range(self.oracle.ctx.n)}
        )
        return {
            "form": self.form,
            "params": self.params,
            "spec": self.oracle.to_spec(),
            "class_sizes_at_t1": multiset,
            "aliases": self.aliases,
        }


@lru_cache(maxsize=None)
def _subgroups(n):
    return tuple(aut.all_subgroups(n))


def generate_family_members(p: int, bound: int) -> list[CensusMember]:
    """Forms (i)-(iii) of the classification, every parameter choice, no dedupe."""
    members = []
    for ring in schur_rings(p):
        for outer in O.FLAVORS:
            members.append(
                CensusMember("i", {"torsion": ring.to_record()["classes"], "outer": outer}, O.make_lift(ring, outer))
            )
    for s in range(2, bound + 1):
        for H in _subgroups(p):
            inner = O.make_automorphic(H)
            outer = O.free_flavor(inner)
            members.append(
                CensusMember(
                    "ii",
                    {"s": s, "outer": outer, "generators": [g.to_record() for g in H.generators]},
                    O.make_wedge(inner, s, outer),
                )
            )
    for H in _subgroups(p):
        members.append(
            CensusMember("iii", {"generators": [g.to_record() for g in H.generators]}, O.make_automorphic(H))
        )
    return members


@lru_cache(maxsize=None)
def census(p: int, bound: int, N: int) -> tuple[list[CensusMember], list[dict], int]:
    """Deduplicated family members, verification failures, and the raw member count.

    Members equal on ``|t| <= 2N`` give identical verification results, so each
    such group is verified once; display dedupe uses ``|t| <= N``.
    """
    raw = generate_family_members(p, bound)
    by_key: dict[tuple, CensusMember] = {}
    for m in raw:
        key = O.window_key(m.oracle, 2 * N)
        if key in by_key:
            by_key[key].aliases.append({"form": m.form, "params": m.params})
        else:
            by_key[key] = m
    failures = []
    for m in by_key.values():
        try:
            sc = O.verify_on_window(m.oracle, N)
        except AxiomViolation as exc:
            failures.append({"member": m.oracle.to_spec(), "error": str(exc), "witness": exc.witness})
            continue
        for bad in O.size_lemma_violations(m.oracle, sc):
            failures.append({"member": m.oracle.to_spec(), "size_lemma": bad})
        failures.extend(_standing_fact_failures(m.oracle, N))
    shown: dict[tuple, CensusMember] = {}
    for m in by_key.values():
        key = O.window_key(m.oracle, N)
        if key in shown:
            shown[key].aliases.append({"form": m.form, "params": m.params})
            shown[key].aliases.extend(m.aliases)
        else:
            shown[key] = m
    return list(shown.values()), failures, len(raw)


STANDING_FACTS = {
    "torsion_subring": "assumed + tested: Z_n is a union of classes and its classes form a Schur ring",
    "coset_intersections": "assumed + tested: a class meets every torsion coset it touches in the same number of elements",
}


def _standing_fact_failures(o: O.SchurOracle, N: int) -> list[dict]:
    """Facts used without proof, checked on each member instead."""
    out = []
    try:
        verify_partition(O.torsion_partition(o))
    except AxiomViolation as exc:
        out.append({"member": o.to_spec(), "standing_fact": "torsion_subring", "witness": exc.witness})
    for C in O.window_classes(o, N):
        sizes = O.coset_intersection_sizes(C)
        if len(sizes) != 1:
            out.append({"member": o.to_spec(), "standing_fact": "coset_intersections",
                        "class": sorted(map(list, C)), "sizes": sorted(sizes)})
    return out


@_timed
def lab_census(p: int, bound: int = 4, N: int = 6) -> LabReport:
    """Generate, verify and deduplicate every family member for Z x Z_p."""
    if not is_prime(p):
        return LabReport("census", {"p": p, "bound": bound, "window": N}, INAPPLICABLE, details={"reason": "p not prime"})
    members, failures, raw = census(p, bound, N)
    forms = sorted({m.form for m in members})
    details = {
        "generated": raw,
        "distinct_on_window": len(members),
        "forms": forms,
        "table": [m.to_record(N) for m in members],
        "dedupe_window": N,
        "verification_window": N,
        "standing_facts": STANDING_FACTS,
    }
    return LabReport("census", {"p": p, "bound": bound, "window": N}, _verdict(failures), failures, details)


def z2_forms(s: int = 2) -> list[tuple[str, O.SchurOracle]]:
    """The four listed forms over Z x Z_2, each in both variants, with H = Z^(s)."""
    psi = aut.closure([aut.psi(2)])
    disc_t = enumerate_schur_rings(2)[0]
    return [
        ("i:F[Z_2]^F[Z]", O.make_lift(disc_t, "discrete")),
        ("i:F[Z_2]^F[Z]pm", O.make_lift(disc_t, "symmetric")),
        ("ii:F[HxZ_2]^F[Z]", O.make_wedge(O.discrete(2), s, "discrete")),
        ("ii:F[HxZ_2]pm^F[Z]pm", O.make_wedge(O.symmetric(2), s, "symmetric")),
        ("iii:F[HxZ_2]^<psi>^F[Z]pm", O.make_wedge(O.make_automorphic(psi), s, "symmetric")),
        ("iii:F[ZxZ_2]^<psi>", O.make_automorphic(psi)),
        ("iv:F[ZxZ_2]", O.discrete(2)),
        ("iv:F[ZxZ_2]pm", O.symmetric(2)),
    ]


@_timed
def lab_z2_forms(N: int = 6, distinct_N: int = 2, s: int = 2) -> LabReport:
    witnesses = []
    forms = z2_forms(s)
    for name, o in forms:
        try:
            O.verify_on_window(o, N)
        except AxiomViolation as exc:
            witnesses.append({"form": name, "error": str(exc), "witness": exc.witness})
    for i, (n1, o1) in enumerate(forms):
        for n2, o2 in forms[i + 1:]:
            if O.oracles_equal_on_window(o1, o2, distinct_N):
                witnesses.append({"equal_on_window": [n1, n2]})
    return LabReport(
        "z2_forms", {"window": N, "distinct_window": distinct_N, "s": s}, _verdict(witnesses), witnesses,
        {"forms": [name for name, _ in forms]},
    )


# -- theorems about Z x Z_n, checked per oracle ------------------------------


def frobenius_primitivity(o: O.SchurOracle, N: int) -> LabReport:
    n = o.ctx.n
    params = {"spec": o.to_spec(), "window": N}
    if not O.is_free_s_subgroup(o, n):
        return LabReport(
            "frobenius_primitivity", params, INAPPLICABLE,
            details={"reason": f"Z^({n}) is not an S-subgroup", "class_of_z^n": sorted(map(list, o.class_of((n, 0))))},
        )
    witnesses = []
    units = O.coprime_units(n)
    ks = units + [-k for k in units]
    classes = O.window_classes(o, N)
    for C in classes:
        for k in ks:
            if not O.frobenius_image_is_class(o, C, k):
                image = sorted(map(list, {o.ctx.power(h, k) for h in C}))
                witnesses.append({"class": sorted(map(list, C)), "k": k, "image": image})
    return LabReport(
        "frobenius_primitivity", params, _verdict(witnesses), witnesses,
        {"classes": len(classes), "multipliers": sorted(ks)},
    )


@_timed
def lab_frobenius_primitivity(spec, N: int = 5) -> LabReport:
    o = spec if isinstance(spec, O.SchurOracle) else O.oracle_from_spec(spec)
    return frobenius_primitivity(o, N)


def wedge_structure(o: O.SchurOracle, N: int, detect_window: int | None = None) -> LabReport:
    """Classes outside ``K x Z_n`` must be unions of cosets of a nontrivial torsion S-subgroup.

    The maximal free S-subgroup ``Z^(s)`` is searched up to ``detect_window``
    (default ``4 n N``), which may exceed the class window ``N``.
    """
    n = o.ctx.n
    detect_window = detect_window or 4 * n * N
    s = O.detect_max_free_subgroup(o, detect_window)
    params = {"spec": o.to_spec(), "window": N, "detect_window": detect_window}
    if s is None:
        kstep = None
    elif s % n:
        return LabReport(
            "wedge_structure", params, INAPPLICABLE,
            details={"reason": f"n={n} does not divide [Z:H]", "max_free_subgroup_index": s},
        )
    else:
        kstep = s // n
    witnesses = []
    checked = 0
    for C in O.window_classes(o, N):
        if kstep is None:
            outside = [h for h in C if h.t != 0]
        else:
            outside = [h for h in C if h.t % kstep]
        if not outside:
            continue
        checked += 1
        stab = stabilizer(o.ctx, C)
        closed = all(o.class_of(h) <= stab for h in stab)
        if len(stab) == 1 or not closed:
            witnesses.append({"class": sorted(map(list, C)), "stabilizer": sorted(map(list, stab))})
    details = {
        "max_free_subgroup_index": s,
        "K_index": kstep,
        "classes_outside_K": checked,
    }
    if checked == 0:
        details["note"] = "vacuous: no class meets the window outside K x Z_n"
    return LabReport("wedge_structure", params, _verdict(witnesses), witnesses, details)


@_timed
def lab_wedge_structure(spec, N: int = 5) -> LabReport:
    o = spec if isinstance(spec, O.SchurOracle) else O.oracle_from_spec(spec)
    return wedge_structure(o, N)


@_timed
def lab_frobenius_census(p: int, bound: int = 4, N: int = 5) -> LabReport:
    """Frobenius primitivity on every census member; inapplicable members are listed."""
    members, _, _ = census(p, bound, N)
    witnesses, applicable, skipped = [], 0, 0
    for m in members:
        r = frobenius_primitivity(m.oracle, N)
        if r.verdict == INAPPLICABLE:
            skipped += 1
        else:
            applicable += 1
            witnesses.extend({"member": m.oracle.to_spec(), **w} for w in r.witnesses)
    return LabReport(
        "frobenius_census", {"p": p, "bound": bound, "window": N}, _verdict(witnesses), witnesses,
        {"members": len(members), "applicable": applicable, "inapplicable": skipped},
    )


@_timed
def lab_wedge_census(p: int, bound: int = 4, N: int = 5) -> LabReport:
    members, _, _ = census(p, bound, N)
    witnesses, applicable = [], 0
    for m in members:
        r = wedge_structure(m.oracle, N)
        if r.verdict != INAPPLICABLE:
            applicable += 1
            witnesses.extend({"member": m.oracle.to_spec(), **w} for w in r.witnesses)
    return LabReport(
        "wedge_census", {"p": p, "bound": bound, "window": N}, _verdict(witnesses), witnesses,
        {"members": len(members), "applicable": applicable},
    )


def is_fermat_prime(p: int) -> bool:
    if not is_prime(p):
        return False
    m = p - 1
    if m & (m - 1):
        return False
    e = m.bit_length() - 1
    return e == 0 or e & (e - 1) == 0


def is_safe_prime(p: int) -> bool:
    return is_prime(p) and p > 2 and is_prime((p - 1) // 2)


def _two_classes_cover_first_coset(o, flavor):
    ts = (1,) if flavor == "discrete" else (1, -1)
    region = {GroupElement(t, k) for t in ts for k in range(o.ctx.n)}
    classes = {o.class_of(g) for g in region}
    return all(C <= region for C in classes) and len(classes) == 2


@_timed
def lab_automorphic_conclusions(p: int, bound: int = 4, N: int = 5) -> LabReport:
    """Members meeting a hypothesis that forces an automorphic ring must equal one on the window."""
    members, _, _ = census(p, bound, N)
    auto_keys = {O.window_key(O.make_automorphic(H), N) for H in _subgroups(p)}
    special = is_fermat_prime(p) or is_safe_prime(p)
    witnesses = []
    hits: dict[str, int] = {}
    for m in members:
        o = m.oracle
        flavor = O.free_flavor(o)
        zp_free = O.is_free_s_subgroup(o, p)
        torsion_sizes = {len(o.class_of((0, k))) for k in range(1, p)}
        m_size = torsion_sizes.pop() if len(torsion_sizes) == 1 else None
        hyps = []
        if O.is_free_s_subgroup(o, 1):
            hyps.append("Z is an S-subgroup")
        for i in range(p):
            C = o.class_of((1, i))
            if C <= {GroupElement(1, i), GroupElement(-1, -i % p)}:
                hyps.append("<a^i z> is an S-subgroup")
                break
        if flavor == "symmetric" and any(
            len(o.class_of((1, k))) == 2 and {h.t for h in o.class_of((1, k))} <= {1, -1} for k in range(p)
        ):
            hyps.append("class of size 2 inside {z, z^-1}Z_p")
        if zp_free and m_size and _is_prime_power(m_size):
            hyps.append("Z^(p) S-subgroup and torsion class size a prime power")
        if zp_free and _two_classes_cover_first_coset(o, flavor):
            hyps.append("Z^(p) S-subgroup and first coset splits into two classes")
        if zp_free and special:
            hyps.append("Z^(p) S-subgroup with p Fermat or safe")
        for h in hyps:
            hits[h] = hits.get(h, 0) + 1
        if hyps and O.window_key(o, N) not in auto_keys:
            witnesses.append({"member": o.to_spec(), "hypotheses": hyps})
    return LabReport(
        "automorphic_conclusions", {"p": p, "bound": bound, "window": N}, _verdict(witnesses), witnesses,
        {"members": len(members), "hypothesis_hits": dict(sorted(hits.items()))},
    )


def _is_prime_power(m: int) -> bool:
    if m == 1:
        return True
    q = next(d for d in range(2, m + 1) if m % d == 0)
    while m % q == 0:
        m //= q
    return m == 1


@_timed
def lab_safe_prime_counting(p: int) -> LabReport:
    """Admissible difference-set sizes for Fermat and safe primes, and the empty search."""
    params = {"p": p}
    fermat, safe = is_fermat_prime(p), is_safe_prime(p)
    if not (fermat or safe):
        return LabReport("safe_prime_counting", params, INAPPLICABLE, details={"reason": "neither Fermat nor safe"})
    ks = [0] + admissible_sizes(p)
    witnesses = []
    details = {"fermat": fermat, "safe": safe, "admissible_k": ks}
    if safe:
        q = (p - 1) // 2
        allowed = {0, 1, q, q + 1, 2 * q, 2 * q + 1}
        details["case_analysis"] = sorted(allowed)
        extra = sorted(set(ks) - allowed)
        if extra:
            witnesses.append({"k_outside_case_analysis": extra})
    if fermat:
        middle = [k for k in ks if 2 <= k <= p - 2]
        details["nontrivial_admissible_k"] = middle
        if middle:
            witnesses.append({"nontrivial_admissible_k": middle})
    search = search_difference_partitions(p, "non-trivial-only")
    details["difference_partition_search"] = search.to_record()
    if search.partitions:
        witnesses.append({"non_trivial_difference_partitions": [d.to_record() for d in search.partitions]})
    return LabReport("safe_prime_counting", params, _verdict(witnesses), witnesses, details)


def _spec_arg(a):
    if a.spec is None:
        raise SchurLabError("this check needs an oracle spec (--file)")
    return a.spec


CHECKS = {
    "size_lemma": lambda a: lab_size_lemma(a.n or 10),
    "coprime_product": lambda a: lab_coprime_product(a.n or 10),
    "census": lambda a: lab_census(a.p or 3, a.bound or 4, a.window or 6),
    "z2_forms": lambda a: lab_z2_forms(a.window or 6),
    "frobenius_primitivity": lambda a: lab_frobenius_primitivity(_spec_arg(a), a.window or 5),
    "wedge_structure": lambda a: lab_wedge_structure(_spec_arg(a), a.window or 5),
    "frobenius_census": lambda a: lab_frobenius_census(a.p or 3, a.bound or 4, a.window or 5),
    "wedge_census": lambda a: lab_wedge_census(a.p or 3, a.bound or 4, a.window or 5),
    "automorphic_conclusions": lambda a: lab_automorphic_conclusions(a.p or 3, a.bound or 4, a.window or 5),
    "safe_prime_counting": lambda a: lab_safe_prime_counting(a.p or 11),
}


def default_jobs() -> list[tuple[str, tuple]]:
    """The ``(function name, args)`` list behind ``lab --all``."""
    jobs = []
    for n in range(2, 11):
        jobs.append(("lab_size_lemma", (n,)))
        jobs.append(("lab_coprime_product", (n,)))
    for p in (3, 5, 7, 11):
        jobs.append(("lab_census", (p, 4, 6)))
    jobs.append(("lab_z2_forms", ()))
    for p in (3, 5, 7):
        jobs.append(("lab_frobenius_census", (p, 4, 5)))
        jobs.append(("lab_wedge_census", (p, 4, 5)))
        jobs.append(("lab_automorphic_conclusions", (p, 4, 5)))
    for p in (3, 5, 7, 11, 13, 17, 23):
        jobs.append(("lab_safe_prime_counting", (p,)))
    return jobs


def _run_job(job):
    name, args = job
    return globals()[name](*args)


def run_all(jobs: int = 1) -> list[LabReport]:
    """Every default check; the merged order is canonical whatever ``jobs`` is."""
    work = default_jobs()
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_job, work))
    else:
        reports = [_run_job(j) for j in work]
    return sorted(reports, key=lambda r: (r.check, json.dumps(r.params, sort_keys=True)))
