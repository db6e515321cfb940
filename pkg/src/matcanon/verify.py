"""Exhaustive and randomized verification of the canonical-form claims.

Each ``check_*`` function compares a library decision procedure against the
brute-force orbit partition (or, where no finite field qualifies, against
random group actions) and returns a :class:`CheckResult`.  The CLI ``verify``
verb and the acceptance tests both run these.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .census import (MatrixSpace, brute_orbits, count_alt_orbits, count_sym_orbits,
                     enumerate_canforms, same_partition)
from .congr import (b_congr_canonical_alt, b_congr_canonical_sym, b_congr_canonical_sym_char2,
                    u_congr_canonical_alt, u_congr_canonical_sym, u_congr_canonical_sym_char2)
from .equiv import b_equiv_canonical, u_equiv_canonical
from .field import TowerField, field_from_spec
from .matrix import Matrix, is_one_minus_one, is_pseudo_permutation, pair_structure
from .parabolic import (all_parabolics, block_rank_table, cross_counts,
                        inclusion_exclusion_holds, p_congruent, p_equivalent,
                        reduced_permutation)


@dataclass
class VerifyConfig:
    seed: int = 20240601
    random_cases: int = 10_000
    tower_levels: int = 3


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    failures: list = field(default_factory=list, repr=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.seconds:.1f}s) {self.detail}"


class _Checker:
    def __init__(self, name: str):
        self.name = name
        self.failures: list[str] = []
        self.notes: list[str] = []
        self.t0 = time.perf_counter()

    def expect(self, cond, msg: str):
        if not cond:
            self.failures.append(msg)

    def result(self) -> CheckResult:
        detail = "; ".join(self.notes)
        if self.failures:
            detail = f"{len(self.failures)} failures, first: {self.failures[0]}"
        return CheckResult(self.name, not self.failures, detail,
                           time.perf_counter() - self.t0, self.failures)


def _canonical_index(space: MatrixSpace, canon: Callable) -> np.ndarray:
    out = np.empty(space.size, dtype=np.int64)
    for t, m in enumerate(space):
        out[t] = space.index(canon(m))
    return out


def _shape_mask(space: MatrixSpace, pred: Callable[[Matrix], bool]) -> np.ndarray:
    return np.fromiter((pred(m) for m in space), dtype=bool, count=space.size)


def orbit_uniqueness(chk: _Checker, label: str, part, canon: Callable,
                     shape: Callable[[Matrix], bool], expected_count: int | None = None):
    """Every orbit holds exactly one matrix of ``shape`` and ``canon`` maps
    every member onto it."""
    labels = part.labels
    can = _canonical_index(part.space, canon)
    mask = _shape_mask(part.space, shape)
    per_orbit = np.bincount(labels[mask], minlength=part.space.size)
    reps = part.rep_indices
    chk.expect(np.all(per_orbit[reps] == 1),
               f"{label}: orbit without exactly one canonical-shape member")
    chk.expect(np.all(labels[can] == labels), f"{label}: canonical form outside the orbit")
    chk.expect(np.all(can == can[labels]), f"{label}: canonical form not constant on an orbit")
    chk.expect(np.all(mask[can]), f"{label}: canonical form has the wrong shape")
    if expected_count is not None:
        chk.expect(part.count == expected_count,
                   f"{label}: {part.count} orbits, expected {expected_count}")
    chk.notes.append(f"{label}: {part.count} orbits")


def _fn(canon):
    return lambda m: canon(m, False)[0]


def _is_subperm_01(m: Matrix) -> bool:
    return m.is_sub_permutation() and m.is_zero_one()


def _is_specialized(m: Matrix) -> bool:
    return is_pseudo_permutation(m) and not pair_structure(m).problematic


def _is_specialized_01(m: Matrix) -> bool:
    return m.is_zero_one() and _is_specialized(m)


# ---------------------------------------------------------------------------


def check_equivalence_uniqueness(cfg: VerifyConfig | None = None) -> CheckResult:
    """B- and U-equivalence: GF(2) n=3,4 and GF(3) n=3."""
    chk = _Checker("B/U-equivalence canonical forms are unique per orbit")
    for spec, n in (("GF(2)", 3), ("GF(2)", 4), ("GF(3)", 3)):
        part = brute_orbits(n, spec, "B", "equivalence")
        orbit_uniqueness(chk, f"B {spec} n={n}", part, _fn(b_equiv_canonical), _is_subperm_01)
        part = brute_orbits(n, spec, "U", "equivalence")
        orbit_uniqueness(chk, f"U {spec} n={n}", part, _fn(u_equiv_canonical),
                         lambda m: m.is_sub_permutation())
    return chk.result()


def check_u_congruence_odd(cfg: VerifyConfig | None = None) -> CheckResult:
    """U-congruence over GF(3), n=3: symmetric and alternating classes."""
    chk = _Checker("U-congruence (char != 2) canonical forms are unique per orbit")
    for cls, canon in (("symmetric", u_congr_canonical_sym), ("alternating", u_congr_canonical_alt)):
        part = brute_orbits(3, "GF(3)", "U", "congruence", cls)
        orbit_uniqueness(chk, f"{cls} GF(3) n=3", part, _fn(canon),
                         lambda m: m.is_sub_permutation())
    return chk.result()


def check_alternating_b_congruence(cfg: VerifyConfig | None = None) -> CheckResult:
    """B-congruence of alternating matrices: one (1,-1)-matrix per orbit, C(n) orbits."""
    chk = _Checker("alternating B-congruence: one (1,-1)-matrix per orbit, C(n) orbits")
    for spec in ("GF(2)", "GF(3)", "GF(5)"):
        for n in range(1, 5):
            part = brute_orbits(n, spec, "B", "congruence", "alternating")
            orbit_uniqueness(chk, f"{spec} n={n}", part, _fn(b_congr_canonical_alt),
                             is_one_minus_one, count_alt_orbits(n))
    return chk.result()


def check_char2_symmetric_congruence(cfg: VerifyConfig | None = None) -> CheckResult:
    """Characteristic 2: specialized pseudo-permutations under U- and B-congruence."""
    chk = _Checker("char-2 symmetric U/B-congruence: one specialized pseudo-permutation per orbit")
    cases = [("GF(2)", n) for n in range(1, 5)] + [("GF(4)", 3)]
    for spec, n in cases:
        part = brute_orbits(n, spec, "U", "congruence", "symmetric")
        orbit_uniqueness(chk, f"U {spec} n={n}", part, _fn(u_congr_canonical_sym_char2),
                         _is_specialized,
                         enumerate_canforms(n, "specialized_pseudo_perm", spec)[0])
        part = brute_orbits(n, spec, "B", "congruence", "symmetric")
        orbit_uniqueness(chk, f"B {spec} n={n}", part, _fn(b_congr_canonical_sym_char2),
                         _is_specialized_01,
                         enumerate_canforms(n, "specialized_pseudo_perm_01", spec)[0])
    f2 = field_from_spec("GF(2)")
    x = Matrix.from_values(f2, [[0, 0, 1], [0, 1, 0], [1, 0, 1]])
    y = Matrix.from_values(f2, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
    chk.expect(u_congr_canonical_sym_char2(x)[0] == Matrix.antidiagonal(f2, 3),
               "3x3 example does not reach the antidiagonal")
    chk.expect(u_congr_canonical_sym_char2(y)[0] == Matrix.from_values(
        f2, [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 1, 0], [1, 0, 0, 0]]),
        "4x4 example does not reach its specialized form")
    return chk.result()


def _random_borel(ctx, n, rng, level):
    rows = [[ctx.zero] * n for _ in range(n)]
    for i in range(n):
        d = ctx.zero
        while d == ctx.zero:
            d = ctx.random(rng, level=level)
        rows[i][i] = d
        for j in range(i + 1, n):
            rows[i][j] = ctx.random(rng, level=level)
    return Matrix(ctx, rows)


def random_symmetric(ctx, n, rng, level=0):
    rows = [[ctx.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = ctx.random(rng, level=level)
    return Matrix(ctx, rows)


def check_tower_symmetric_b_congruence(cfg: VerifyConfig | None = None) -> CheckResult:
    """Symmetric B-congruence over the square-closed tower on GF(3), randomized."""
    cfg = cfg or VerifyConfig()
    chk = _Checker("tower(3) symmetric B-congruence: class invariance and witnesses")
    t = field_from_spec("TOWER(3)")
    rng = random.Random(cfg.seed)
    for case in range(cfg.random_cases):
        n = 2 + case % 3
        x = random_symmetric(t, n, rng, 0)
        b = _random_borel(t, n, rng, 1)
        xb = b.T @ x @ b
        y1, w1 = b_congr_canonical_sym(x)
        y2, w2 = b_congr_canonical_sym(xb)
        if not (y1 == y2 and w1.check(x, y1) and w2.check(xb, y2)
                and y1.is_symmetric() and _is_subperm_01(y1)):
            chk.expect(False, f"case {case}: {x!r} / {b!r}")
    chk.notes.append(f"{cfg.random_cases} random cases")
    return chk.result()


def _partition_from_keys(keys) -> np.ndarray:
    ids: dict = {}
    return np.array([ids.setdefault(k, len(ids)) for k in keys], dtype=np.int64)


def _w_class_key(y: Matrix, p, space: MatrixSpace) -> int:
    group = list(p.weyl_group())
    n = y.n
    best = None
    for w1 in group:
        for w2 in group:
            m = Matrix(y.ctx, [[y.rows[w1[a]][w2[b]] for b in range(n)] for a in range(n)])
            k = space.index(m)
            best = k if best is None or k < best else best
    return best


def check_parabolic_equivalence(cfg: VerifyConfig | None = None) -> CheckResult:
    """GF(2), n=4, every standard parabolic: orbit membership, block ranks,
    W-equivalence of canonical forms and cross counts define one partition."""
    chk = _Checker("P-equivalence criteria (orbits, block ranks, W-equivalence, cross counts) agree")
    ctx = field_from_spec("GF(2)")
    n = 4
    space = MatrixSpace(ctx, n)
    mats = list(space)
    canon = [b_equiv_canonical(m, False)[0] for m in mats]
    subperms = sorted(set(canon), key=space.index)
    chk.expect(len(subperms) == 209, f"{len(subperms)} distinct B-canonical forms, expected 209")
    for p in all_parabolics(n):
        part = brute_orbits(n, ctx, "P", "equivalence", parabolic=p)
        by_rank = _partition_from_keys(block_rank_table(m, p) for m in mats)
        cc = {y: cross_counts(y, p) for y in subperms}
        wkey = {y: _w_class_key(y, p, space) for y in subperms}
        by_cross = _partition_from_keys(cc[y] for y in canon)
        by_w = _partition_from_keys(wkey[y] for y in canon)
        tag = f"P={p}"
        chk.expect(same_partition(part.labels, by_rank), f"{tag}: block ranks != orbits")
        chk.expect(same_partition(part.labels, by_cross), f"{tag}: cross counts != orbits")
        chk.expect(same_partition(part.labels, by_w), f"{tag}: W-equivalence != orbits")
        for y in subperms:
            chk.expect(inclusion_exclusion_holds(y, p), f"{tag}: inclusion-exclusion fails for {y!r}")
        reps = part.representatives()
        for a_i, a in enumerate(reps):
            for b_i, b in enumerate(reps):
                related, _ = p_equivalent(a, b, p, w_search=True)
                chk.expect(related == (a_i == b_i), f"{tag}: p_equivalent wrong on {a!r}, {b!r}")
        chk.notes.append(f"{tag}: {part.count}")
    return chk.result()


def check_parabolic_congruence(cfg: VerifyConfig | None = None) -> CheckResult:
    """Alternating matrices over GF(2), GF(3), n=4, every standard parabolic:
    P-congruence orbits = P-equivalence classes = the W-conjugacy condition."""
    chk = _Checker("alternating P-congruence = P-equivalence = W-conjugacy condition")
    n = 4
    for spec in ("GF(2)", "GF(3)"):
        ctx = field_from_spec(spec)
        space = MatrixSpace(ctx, n, "alternating")
        mats = list(space)
        canon = [b_congr_canonical_alt(m, False)[0] for m in mats]
        invertible = np.array([m.is_invertible() for m in mats])
        for p in all_parabolics(n):
            tag = f"{spec} P={p}"
            part = brute_orbits(n, ctx, "P", "congruence", "alternating", parabolic=p)
            by_rank = _partition_from_keys(block_rank_table(m, p) for m in mats)
            cond_a, cond_a_nodiag = [], []
            for y in canon:
                cc = cross_counts(y, p)
                crossing = tuple(sorted(reduced_permutation(y, p).crossing_counts(p).items()))
                diag = tuple(cc[i, i] for i in range(p.r))
                cond_a.append((crossing, diag))
                cond_a_nodiag.append(crossing)
            by_a = _partition_from_keys(cond_a)
            chk.expect(same_partition(part.labels, by_rank), f"{tag}: P-equivalence != P-congruence")
            chk.expect(same_partition(part.labels, by_a), f"{tag}: W-conjugacy condition != orbits")
            inv = np.flatnonzero(invertible)
            if len(inv):
                chk.expect(same_partition(by_a[inv], _partition_from_keys(
                    cond_a_nodiag[i] for i in inv)), f"{tag}: diagonal counts needed on invertibles")
            reps = part.representatives()
            for a_i, a in enumerate(reps):
                for b_i, b in enumerate(reps):
                    rel = p_congruent(a, b, p, "alternating", report=True)
                    chk.expect(rel == (a_i == b_i), f"{tag}: p_congruent wrong on {a!r}, {b!r}")
            chk.notes.append(f"{tag}: {part.count}")
    return chk.result()


def check_recurrences(cfg: VerifyConfig | None = None) -> CheckResult:
    chk = _Checker("orbit-count recurrences match enumerated canonical shapes (n <= 8)")
    alt = [count_alt_orbits(n) for n in range(9)]
    sym = [count_sym_orbits(n) for n in range(9)]
    chk.expect(alt == [1, 1, 2, 4, 10, 26, 76, 232, 764], f"C(n) = {alt}")
    chk.expect(sym == [1, 2, 5, 14, 43, 142, 499, 1850, 7193], f"D(n) = {sym}")
    for n in range(9):
        chk.expect(enumerate_canforms(n, "alt_one_minus_one")[0] == alt[n], f"alt n={n}")
        chk.expect(enumerate_canforms(n, "sym_zero_one_subperm")[0] == sym[n], f"sym n={n}")
    chk.notes.append(f"C={alt}, D={sym}")
    return chk.result()


def _field_cases():
    yield "GF(2)", field_from_spec("GF(2)"), {}
    yield "GF(3)", field_from_spec("GF(3)"), {}
    yield "GF(5)", field_from_spec("GF(5)"), {}
    yield "GF(7)", field_from_spec("GF(7)"), {}
    yield "GF(4)", field_from_spec("GF(4)"), {}
    yield "GF(8)", field_from_spec("GF(8)"), {}


def check_field_layer(cfg: VerifyConfig | None = None) -> CheckResult:
    """Field axioms, square roots, Frobenius and tower normalization."""
    cfg = cfg or VerifyConfig()
    chk = _Checker("field axioms and square roots")
    rng = random.Random(cfg.seed)
    cases = list(_field_cases())
    tower = field_from_spec("TOWER(3)")
    cases += [(f"TOWER(3) level {L}", tower, {"level": L}) for L in range(cfg.tower_levels + 1)]
    for name, ctx, kw in cases:
        bad = 0
        for _ in range(cfg.random_cases):
            a, b, c = (ctx.random(rng, **kw) for _ in range(3))
            add, mul = ctx.add, ctx.mul
            ok = (add(add(a, b), c) == add(a, add(b, c))
                  and mul(mul(a, b), c) == mul(a, mul(b, c))
                  and mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                  and add(a, ctx.neg(a)) == ctx.zero
                  and (a == ctx.zero or mul(a, ctx.inv(a)) == ctx.one)
                  and ctx.parse(ctx.format(a)) == a)
            if ctx.square_closed:
                s = ctx.sqrt(a)
                ok = ok and mul(s, s) == a
            else:
                sq = mul(a, a)
                s = ctx.sqrt(sq)
                ok = ok and mul(s, s) == sq
            if ctx.char == 2:
                ok = ok and mul(add(a, b), add(a, b)) == add(mul(a, a), mul(b, b))
            if isinstance(ctx, TowerField):
                top = ctx.max_level if kw["level"] == ctx.max_level else kw["level"] + 1
                lifted = ctx.lift(a, top)
                ok = ok and ctx.normalize(lifted) == a and ctx.normalize(ctx.normalize(lifted)) == a
            bad += not ok
        chk.expect(bad == 0, f"{name}: {bad} failing cases")
    chk.notes.append(f"{len(cases)} fields x {cfg.random_cases} cases")
    return chk.result()


SUITES: dict[str, list[Callable]] = {
    "field": [check_field_layer],
    "equiv": [check_equivalence_uniqueness],
    "congr": [check_u_congruence_odd, check_alternating_b_congruence,
              check_char2_symmetric_congruence, check_tower_symmetric_b_congruence],
    "parabolic": [check_parabolic_equivalence, check_parabolic_congruence],
    "census": [check_recurrences],
}
SUITES["all"] = [f for key in ("field", "equiv", "congr", "parabolic", "census") for f in SUITES[key]]


def run_suite(name: str = "all", cfg: VerifyConfig | None = None, echo=None) -> list[CheckResult]:
    cfg = cfg or VerifyConfig()
    results = []
    for fn in SUITES[name]:
        res = fn(cfg)
        if echo:
            echo(res.line())
        results.append(res)
    return results
