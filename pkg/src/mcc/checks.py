"""Executable invariants for the whole pipeline, and the seeded test corpus."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .gf import FieldSpec
from .ideal import Code, span_closure
from .idealbasis import build_staircase, select_representatives
from .qring import RingElement, RingSpec, lt_plus
from .sepasdar import Member, Status, box_size, build_B, verify_independence

CORPUS_FIELDS = (2, 3)
CORPUS_RHOS = ((2, 2), (3, 2), (2, 2, 2), (3, 3))

INVARIANTS = (
    "independence",
    "membership",
    "box-count",
    "row-space",
    "regeneration",
    "layer-shape",
    "deg-prod",
    "shift-invariance",
)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class CaseReport:
    index: int
    label: str
    dimension: int
    size_B: int
    status: Status
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.ok), None)


@dataclass
class CorpusCase:
    index: int
    code: Code
    label: str


def sweep_cases(start: int = 0) -> list[CorpusCase]:
    """Every single-generator ideal of GF(2)[x1,x2]/<x1^2-1, x2^2-1>."""
    spec = RingSpec(FieldSpec(2), (2, 2))
    cases = []
    for i, bits in enumerate(itertools.product((0, 1), repeat=spec.n)):
        g = spec.element(bits)
        cases.append(CorpusCase(start + i, Code(spec, [g]), f"sweep GF(2) rho=(2,2) <{g}>"))
    return cases


def random_cases(seed: int, count: int, start: int = 0) -> list[CorpusCase]:
    rng = np.random.default_rng(seed)
    specs = {}
    cases = []
    for i in range(count):
        q = CORPUS_FIELDS[rng.integers(len(CORPUS_FIELDS))]
        rho = CORPUS_RHOS[rng.integers(len(CORPUS_RHOS))]
        spec = specs.setdefault((q, rho), RingSpec(FieldSpec(q), rho))
        ngens = int(rng.integers(1, 3))
        gens = [spec.random(rng, density=float(rng.uniform(0.15, 0.85))) for _ in range(ngens)]
        label = f"GF({q}) rho={rho} <" + ", ".join(str(g) for g in gens) + ">"
        cases.append(CorpusCase(start + i, Code(spec, gens), label))
    return cases


def corpus(seed: int = 0, count: int = 200, sweep: bool = True) -> list[CorpusCase]:
    cases = sweep_cases() if sweep else []
    return cases + random_cases(seed, count, start=len(cases))


def random_with_degree(spec: RingSpec, rank: int, rng: np.random.Generator) -> RingElement:
    """Random polynomial whose lex degree has the given lex rank."""
    q = spec.field.q
    coeffs = np.zeros(spec.n, dtype=np.int64)
    coeffs[:rank] = np.where(rng.random(rank) < 0.5, rng.integers(0, q, size=rank), 0)
    coeffs[rank] = rng.integers(1, q)
    return RingElement(spec, coeffs)


def degree_product_pair(spec: RingSpec, rng: np.random.Generator):
    """Nonzero f, g with deg f + deg g <+ rho."""
    rho = np.array(spec.rho)
    i = int(rng.integers(spec.n))
    df = spec.exps[i]
    ok = np.flatnonzero(np.all(spec.exps + df < rho, axis=1))
    j = int(ok[rng.integers(ok.size)])
    return random_with_degree(spec, i, rng), random_with_degree(spec, j, rng)


def check_degree_product(spec: RingSpec, rng: np.random.Generator, pairs: int) -> CheckResult:
    for _ in range(pairs):
        f, g = degree_product_pair(spec, rng)
        expected = tuple(int(a + b) for a, b in zip(f.degree(), g.degree()))
        assert lt_plus(expected, spec.rho)
        got = (f * g).degree().coords
        if got != expected:
            return CheckResult("deg-prod", False, f"deg(({f})*({g})) = {got}, expected {expected}")
    return CheckResult("deg-prod", True, f"{pairs} pairs")


def check_shift_invariance(code: Code, rng: np.random.Generator, samples: int) -> CheckResult:
    spec = code.spec
    words = code.random_codewords(rng, samples)
    for axis in range(spec.s):
        alpha = [0] * spec.s
        alpha[axis] = 1
        shifted = np.stack([spec.shift_codes(w, alpha) for w in words])
        bad = np.flatnonzero(~code.contains_rows(shifted))
        if bad.size:
            w = RingElement(spec, words[bad[0]])
            return CheckResult("shift-invariance", False, f"x{axis + 1}*({w}) not in I")
    return CheckResult("shift-invariance", True, f"{samples} codewords x {spec.s} axes")


def check_code(
    code: Code,
    strategy: str = "min_a_lex",
    rng: np.random.Generator | None = None,
    deg_pairs: int = 20,
    shift_samples: int = 100,
    fault: str | None = None,
) -> tuple[list[CheckResult], list, Status]:
    """Run every invariant on one code; returns (results, members of B, status).

    ``fault="independence"`` duplicates a member of B before checking, to
    exercise the failure path.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    spec = code.spec
    tables = spec.tables
    results = []

    sb = build_staircase(code)
    reps = select_representatives(sb, strategy)
    members = build_B(reps)
    if fault == "independence":
        dup = members[0] if members else Member(spec.one(), 0, (0,) * (spec.s - 1))
        members = members + [dup] if members else [dup, dup]
    elif fault is not None:
        raise ValueError(f"unknown fault {fault!r}")

    results.append(CheckResult("independence", verify_independence(members), f"|B| = {len(members)}"))

    polys = [m.poly for m in members]
    B = np.stack([p.coeffs for p in polys]) if polys else np.zeros((0, spec.n), dtype=np.int64)
    inside = code.contains_rows(B).all() if polys else True
    results.append(CheckResult("membership", bool(inside)))

    rho_sub = spec.rho[:-1]
    expected = sum(box_size(rho_sub, r.a) for r in reps.present())
    results.append(CheckResult("box-count", expected == len(members), f"{len(members)} vs {expected}"))

    dim = code.dimension
    status = Status.PROVEN if len(members) == dim else Status.INDEPENDENT_ONLY
    if status is Status.PROVEN:
        R, _ = kernels.rref(B, tables)
        same = R.shape == code.oracle_matrix.shape and np.array_equal(R, code.oracle_matrix)
        results.append(CheckResult("row-space", bool(same)))
    else:
        results.append(CheckResult("row-space", True, "skipped: not a proven basis"))

    Rg, _ = span_closure(spec, sb.polynomials())
    regen = Rg.shape == code.oracle_matrix.shape and np.array_equal(Rg, code.oracle_matrix)
    results.append(CheckResult("regeneration", bool(regen)))

    shape_ok = True
    for k, layer in enumerate(sb.layers):
        for e in layer:
            if e.poly.xs_order() != k or e.lead.degree().coords != e.a:
                shape_ok = False
        if len({e.a for e in layer}) != len(layer):
            shape_ok = False
    results.append(CheckResult("layer-shape", shape_ok))

    results.append(check_degree_product(spec, rng, deg_pairs))
    results.append(check_shift_invariance(code, rng, shift_samples))
    return results, members, status


def _run_case(case: CorpusCase, seed: int, strategy: str, fault: str | None) -> CaseReport:
    rng = np.random.default_rng([seed, case.index])
    results, members, status = check_code(case.code, strategy, rng, fault=fault)
    return CaseReport(case.index, case.label, case.code.dimension, len(members), status, results)


def run_corpus(
    seed: int = 0,
    count: int = 200,
    strategy: str = "min_a_lex",
    workers: int = 1,
    fault: str | None = None,
) -> list[CaseReport]:
    """Check every corpus case; reports come back ordered by case index."""
    cases = corpus(seed, count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda c: _run_case(c, seed, strategy, fault), cases))
    else:
        reports = [_run_case(c, seed, strategy, fault) for c in cases]
    return sorted(reports, key=lambda r: r.index)
