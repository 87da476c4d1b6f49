"""The full reproduction suite: every construction, invariant and (non)isomorphism claim.

Each check returns a short detail string when it passes and raises
``CheckFailed`` otherwise.  A check that would build a design with more
blocks than the configured budget is reported as SKIPPED.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .designs import develop, intersection_profile, verify_2design
from .errors import BudgetExceeded
from .families import build_family
from .field import cyclotomic_matrix, make_field, uniform_cyclotomic_number
from .galois_ring import ideal_elements, make_ring, units
from .groups import field_index, ring_group
from .iso import are_isomorphic, automorphism_group_order, canonical, verify_isomorphism
from .properties import RING_LAWS, law_subring_sumset, law_translation_invariance
from .verification import check_edf_ddf_bridge, delta_plus_set, is_ddf, is_edf, is_relative_difference_set

DEFAULT_BUDGET = 1024

SWEEP = [
    ("wilson", dict(p=2, m=4, e=3)),
    ("wilson", dict(p=3, m=4, e=4)),
    ("wilson", dict(p=2, m=4, e=5)),
    ("wilson", dict(p=2, m=6, e=9)),
    ("wilson", dict(p=3, m=2, e=4)),
    ("wilson", dict(p=5, m=2, e=6)),
    ("momihara", dict(p=2, n=1)),
    ("momihara", dict(p=3, n=1)),
    ("davis", dict(p=2, r=2)),
    ("davis", dict(p=2, r=3)),
    ("davis", dict(p=3, r=1)),
    ("davis", dict(p=5, r=1)),
    ("davis", dict(p=3, r=2)),
]

UNIFORM_CASES = [(2, 4, 3), (2, 4, 5), (2, 6, 9), (3, 4, 4), (3, 4, 10), (2, 8, 17), (5, 4, 26)]

# the nine-point map from Z_9 onto Z_3 x Z_3, (a, b) read as a + b*alpha in GF(9)
NINE_POINT_MAP = [(0, 0), (0, 1), (1, 2), (1, 1), (2, 2), (2, 0), (1, 0), (2, 1), (0, 2)]


class CheckFailed(Exception):
    pass


@dataclass
class Settings:
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    threads: int = 1
    relabelings: int = 100


@dataclass
class Check:
    key: str
    claim: str
    limit: float
    fn: Callable[[Settings], str]
    tags: tuple[str, ...] = ()


@dataclass
class Outcome:
    key: str
    claim: str
    status: str
    seconds: float
    limit: float
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "claim": self.claim,
            "status": self.status,
            "seconds": round(self.seconds, 3),
            "limit": self.limit,
            "detail": self.detail,
        }


def _label(kind: str, kw: dict) -> str:
    return f"{kind}({','.join(str(v) for v in kw.values())})"


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise CheckFailed(msg)


def _dev(settings: Settings, kind: str, **kw):
    fam = build_family(kind, **kw)
    b = fam.b * fam.v
    if b > settings.budget:
        raise BudgetExceeded(f"{_label(kind, kw)} has {b} blocks, budget {settings.budget}")
    return develop(fam)


def _iso_kw(settings: Settings) -> dict:
    return {"max_blocks": settings.budget}


def _support(settings: Settings, design) -> tuple[int, ...]:
    return intersection_profile(design, threads=settings.threads).support


# -- the checks -------------------------------------------------------------


def check_ddf(settings: Settings) -> str:
    for kind, kw in SWEEP:
        fam = build_family(kind, **kw)
        lam = is_ddf(fam)
        _expect(lam == fam.k - 1, f"{_label(kind, kw)}: lambda {lam}, expected {fam.k - 1}")
        _expect(fam.is_near_complete(), f"{_label(kind, kw)} is not near-complete")
    return f"{len(SWEEP)} families, lambda = k - 1"


def check_edf(settings: Settings) -> str:
    for kind, kw in SWEEP:
        fam = build_family(kind, **kw)
        lam = is_edf(fam)
        _expect(lam == fam.v - fam.k - 1, f"{_label(kind, kw)}: EDF lambda {lam}")
        rep = check_edf_ddf_bridge(fam)
        _expect(rep.holds, f"{_label(kind, kw)}: bridge fails {rep}")
    return f"{len(SWEEP)} families, lambda = v - k - 1"


def check_uniform(settings: Settings) -> str:
    for p, m, e in UNIFORM_CASES:
        got = cyclotomic_matrix(make_field(p, m), e)
        want = np.array([[uniform_cyclotomic_number(p, m, e, i, j) for j in range(e)] for i in range(e)])
        _expect(np.array_equal(got, want), f"q={p**m}, e={e}: matrices differ")
    return "(q, e) in " + ", ".join(f"({p**m},{e})" for p, m, e in UNIFORM_CASES)


def check_momihara_profiles(settings: Settings) -> str:
    s_m = _support(settings, _dev(settings, "momihara", p=3, n=1))
    s_w = _support(settings, _dev(settings, "wilson", p=3, m=4, e=4))
    _expect(5 in s_m, f"momihara(3,1) support {s_m} lacks 5")
    _expect(set(s_w) == {1, 4, 6}, f"wilson(3,4,4) support is {set(s_w)}, expected {{1, 4, 6}}")
    return f"momihara(3,1) {s_m}, wilson(3,4,4) {s_w}"


def check_momihara_small(settings: Settings) -> str:
    dm = _dev(settings, "momihara", p=2, n=1)
    dw = _dev(settings, "wilson", p=2, m=4, e=3)
    _expect(_support(settings, dm) == _support(settings, dw), "supports differ")
    aw = automorphism_group_order(dw, **_iso_kw(settings))
    am = automorphism_group_order(dm, **_iso_kw(settings))
    _expect((aw, am) == (960, 192), f"orders {aw}, {am}")
    _expect(are_isomorphic(dm, dw, **_iso_kw(settings)) is None, "designs reported isomorphic")
    return f"|Aut| {aw} vs {am}, nonisomorphic"


def check_davis_2_2(settings: Settings) -> str:
    dd = _dev(settings, "davis", p=2, r=2)
    dw = _dev(settings, "wilson", p=2, m=4, e=5)
    want = {0: 1600, 1: 1440, 2: 120}
    for name, d in (("davis", dd), ("wilson", dw)):
        h = intersection_profile(d, threads=settings.threads).histogram
        _expect(h == want, f"{name} profile {h}")
    ad = automorphism_group_order(dd, **_iso_kw(settings))
    aw = automorphism_group_order(dw, **_iso_kw(settings))
    _expect((ad, aw) == (384, 5760), f"orders {ad}, {aw}")
    _expect(are_isomorphic(dd, dw, **_iso_kw(settings)) is None, "designs reported isomorphic")
    return f"profiles {want}, |Aut| {ad} vs {aw}, nonisomorphic"


def check_davis_2_3(settings: Settings) -> str:
    s_d = _support(settings, _dev(settings, "davis", p=2, r=3))
    s_w = _support(settings, _dev(settings, "wilson", p=2, m=6, e=9))
    _expect(2 in s_d, f"davis(2,3) support {s_d} lacks 2")
    _expect(set(s_w) == {0, 1, 6}, f"wilson(2,6,9) support {s_w}")
    return f"davis(2,3) {s_d}, wilson(2,6,9) {s_w}"


def check_davis_odd(settings: Settings) -> str:
    parts = []
    for p, r in ((5, 1), (3, 2)):
        q = p**r
        s_d = _support(settings, _dev(settings, "davis", p=p, r=r))
        s_w = _support(settings, _dev(settings, "wilson", p=p, m=2 * r, e=q + 1))
        _expect(any(1 < N < q - 2 for N in s_d), f"davis({p},{r}) support {s_d}")
        _expect(set(s_w) == {0, 1, q - 2}, f"wilson({p},{2 * r},{q + 1}) support {s_w}")
        parts.append(f"davis({p},{r}) {s_d}")
    return ", ".join(parts)


def check_davis_3_1(settings: Settings) -> str:
    dd = _dev(settings, "davis", p=3, r=1)
    dw = _dev(settings, "wilson", p=3, m=2, e=4)
    bij = are_isomorphic(dd, dw, **_iso_kw(settings))
    _expect(bij is not None, "designs reported nonisomorphic")
    _expect(verify_isomorphism(dd, dw, bij), "returned bijection fails")
    ctx = dw.group.ctx
    explicit = [field_index(ctx, a + 3 * b) for a, b in NINE_POINT_MAP]
    _expect(verify_isomorphism(dd, dw, explicit), "explicit nine-point map fails")
    return "search witness and explicit map both verified"


def check_rds(settings: Settings) -> str:
    for r in (2, 3, 4):
        ctx = make_ring(2, r)
        got = is_relative_difference_set(ring_group(ctx), ctx.teichmuller, ideal_elements(ctx))
        q = 2**r
        _expect(got == (q, q, q, 1), f"GR(4,{r}): {got}")
    return "T relative to I in GR(4, r), r = 2, 3, 4"


def check_sums(settings: Settings) -> str:
    for r in (2, 3):
        ctx = make_ring(2, r)
        group = ring_group(ctx)
        U, I = units(ctx), ideal_elements(ctx) - {0}
        tstar = np.array(ctx.teichmuller[1:])
        for a in ctx.teichmuller:
            A = ctx.mul(tstar, ctx.add(1, ctx.scale(a, 2))).tolist()
            mult = delta_plus_set(group, A).as_dict()
            _expect(all(mult[s] == 2 for s in mult if s in U), f"GR(4,{r}), a={a}: unit multiplicity")
            _expect(all(mult.get(s, 0) == 1 for s in I), f"GR(4,{r}), a={a}: ideal multiplicity")
    return "GR(4, 2) and GR(4, 3), every a in T"


def check_properties(settings: Settings) -> str:
    rings = sorted({(kw["p"], 2 * kw["n"]) if k == "momihara" else (kw["p"], kw["r"])
                    for k, kw in SWEEP if k != "wilson"})
    for p, r in rings + [(5, 2), (7, 1)]:
        ctx = make_ring(p, r)
        for name, law in RING_LAWS.items():
            if name == "unit-difference" and ctx.order > 256:
                continue
            bad = law(ctx)
            _expect(bad is None, f"GR({p}^2,{r}) {name}: {bad}")
    for p, r in ((2, 2), (3, 2)):
        bad = law_subring_sumset(make_ring(p, r))
        _expect(bad is None, f"subring sumset GR({p}^2,{r}): {bad}")
    rng = np.random.default_rng(settings.seed)
    for kind, kw in SWEEP:
        fam = build_family(kind, **kw)
        bad = law_translation_invariance(fam)
        _expect(bad is None, f"{_label(kind, kw)} translation invariance: {bad}")
        design = _dev(settings, kind, **kw)
        verify_2design(design)
        ref = canonical(design, **_iso_kw(settings))
        for _ in range(settings.relabelings):
            perm = rng.permutation(design.v)
            other = design.relabel(perm)
            order = rng.permutation(other.b)
            shuffled = type(other)(other.v, tuple(other.blocks[i] for i in order), other.origin)
            res = canonical(shuffled, **_iso_kw(settings))
            _expect(res.certificate == ref.certificate, f"{_label(kind, kw)}: certificate changed")
            _expect(res.group_order == ref.group_order, f"{_label(kind, kw)}: group order changed")
    return f"ring laws, sumset identity, {settings.relabelings} relabelings per design"


CHECKS = [
    Check("ddf", "near-complete DDF with lambda = k - 1", 10, check_ddf, ("wilson", "momihara", "davis")),
    Check("edf", "external difference family with lambda = v - k - 1", 10, check_edf, ("wilson", "momihara", "davis")),
    Check("cyclotomy", "uniform cyclotomic numbers", 30, check_uniform, ("wilson",)),
    Check("momihara-profile", "p^n = 3 profile supports separate the designs", 60, check_momihara_profiles, ("momihara", "wilson")),
    Check("momihara-small", "p^n = 2: equal supports, |Aut| 960 vs 192", 300, check_momihara_small, ("momihara", "wilson")),
    Check("davis-2-2", "p = 2, r = 2: equal profiles, |Aut| 384 vs 5760", 300, check_davis_2_2, ("davis", "wilson")),
    Check("davis-2-3", "p = 2, r = 3: intersection number 2 separates", 60, check_davis_2_3, ("davis", "wilson")),
    Check("davis-odd", "odd p: intersection number strictly between 1 and q - 2", 60, check_davis_odd, ("davis", "wilson")),
    Check("davis-3-1", "p = 3, r = 1: isomorphic, explicit map verified", 10, check_davis_3_1, ("davis", "wilson")),
    Check("rds", "T is a (2^r, 2^r, 2^r, 1) relative difference set", 10, check_rds, ("davis",)),
    Check("sums", "sum multiplicities 2 on units, 1 on the ideal", 10, check_sums, ("davis",)),
    Check("properties", "structural laws and certificate invariance", 300, check_properties,
          ("momihara", "davis", "wilson")),
]


def select(only: str | None) -> list[Check]:
    if not only:
        return list(CHECKS)
    words = {w.strip() for w in only.split(",") if w.strip()}
    return [c for c in CHECKS if c.key in words or words & set(c.tags)]


def run_check(check: Check, settings: Settings) -> Outcome:
    start = time.perf_counter()
    try:
        detail = check.fn(settings)
        status = "PASS"
    except BudgetExceeded as exc:
        detail, status = str(exc), "SKIPPED"
    except CheckFailed as exc:
        detail, status = str(exc), "FAIL"
    elapsed = time.perf_counter() - start
    if status == "PASS" and elapsed > check.limit:
        status, detail = "FAIL", f"took {elapsed:.1f} s, limit {check.limit} s"
    return Outcome(check.key, check.claim, status, elapsed, check.limit, detail)


def run(settings: Settings | None = None, only: str | None = None) -> list[Outcome]:
    settings = settings or Settings()
    return [run_check(c, settings) for c in select(only)]


def exit_status(outcomes: list[Outcome]) -> int:
    """0 when everything passed, 5 on any failure, otherwise 4 if something was skipped."""
    states = {o.status for o in outcomes}
    if "FAIL" in states:
        return 5
    if "SKIPPED" in states:
        return 4
    return 0
