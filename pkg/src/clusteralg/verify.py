"""Exchange-graph exploration and machine checks of the g-vector theorems.

explore() walks the mutation tree breadth-first, never undoing the edge just
used, and deduplicates seeds by canonical form (cluster sorted, matrix
permuted along).  Branches whose Laurent data outgrow the term budget are cut
and reported as truncated, not failed.  Output is canonically sorted, so runs
are byte-identical across thread counts.

The checkers return VerificationReport values whose render() emits one
machine-readable line per check:

    CHECK <name> PASS|FAIL|SKIP [witness=<history>]

A FAIL witness is always replayable: mutate the reported matrix along the
history to reproduce it.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product

from .errors import (BudgetExceeded, ClusterError, InvalidMatrix,
                     NonExactDivision, NotMutable)
from .exchange import ExchangeMatrix, is_acyclic, mutate
from .seed import (Seed, c_matrix, canonical_key, f_polynomial, g_matrix,
                   g_recurrence_step, g_vector, initial_seed, mutate_seed)
from .unfolding import (Covering, covering_seed, fold, fold_g_vector,
                        orbit_mutate, orbit_mutate_seed, project)

DEFAULT_DEPTH = 6
DEFAULT_BUDGET = 10 ** 6
CHECK_NAMES = ("laurent", "sign-coherence", "basis", "recurrence", "f-const", "c-sign")
COVERING_CHECK_NAMES = ("covering-commutation", "projection", "lambda-grading",
                        "orbit-sign-coherence", "min-sum", "orbit-recurrence")


# ---------------------------------------------------------------------------
# exploration

@dataclass(frozen=True)
class ExploreResult:
    seeds: tuple[Seed, ...]                       # canonically sorted
    edges: tuple[tuple[int, int, int], ...]       # (i, j, k) with i < j
    truncated: tuple[tuple[tuple[int, ...], str], ...]
    depth: int


def _hist_str(history) -> str:
    return " ".join(str(k) for k in history) if history else "-"


def explore(B: ExchangeMatrix, depth: int, max_terms: int | None = DEFAULT_BUDGET,
            threads: int = 1) -> ExploreResult:
    """All seeds reachable from the principal seed at B in at most `depth`
    mutations, deduplicated by canonical form."""
    s0 = initial_seed(B)
    n = s0.n
    keys = {canonical_key(s0): 0}
    seeds = [s0]
    frontier = [(0, s0)]
    truncated: list = []
    edge_set: set = set()

    def expand(job):
        _, s, k = job
        try:
            return "ok", mutate_seed(s, k, max_terms)
        except BudgetExceeded as exc:
            return "budget", str(exc)
        except ClusterError as exc:
            return "err", exc

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for _ in range(depth):
            jobs = []
            for idx, s in frontier:
                last = s.history[-1] if s.history else 0
                jobs.extend((idx, s, k) for k in range(1, n + 1) if k != last)
            if not jobs:
                break
            results = pool.map(expand, jobs) if pool else map(expand, jobs)
            frontier = []
            for (pidx, s, k), (tag, val) in zip(jobs, results):
                if tag == "err":
                    val.history = s.history + (k,)
                    val.args = (f"{val} [witness: history={_hist_str(val.history)}]",)
                    raise val
                if tag == "budget":
                    truncated.append((s.history + (k,), val))
                    continue
                child = val
                ck = canonical_key(child)
                cidx = keys.get(ck)
                if cidx is None:
                    cidx = len(seeds)
                    keys[ck] = cidx
                    seeds.append(child)
                    frontier.append((cidx, child))
                edge_set.add((min(pidx, cidx), max(pidx, cidx), k))
    finally:
        if pool:
            pool.shutdown(wait=False)

    order = sorted(range(len(seeds)), key=lambda i: canonical_key(seeds[i]))
    new_of_old = {old: new for new, old in enumerate(order)}
    sorted_seeds = tuple(seeds[i] for i in order)
    edges = sorted((min(new_of_old[a], new_of_old[b]), max(new_of_old[a], new_of_old[b]), k)
                   for a, b, k in edge_set)
    return ExploreResult(sorted_seeds, tuple(edges), tuple(sorted(truncated)), depth)


def to_dot(result: ExploreResult) -> str:
    """Plain DOT text dump of the explored exchange graph."""
    lines = ["graph exchange {"]
    for i, s in enumerate(result.seeds):
        label = " ".join(str(k) for k in s.history) or "start"
        lines.append(f'  s{i} [label="{label}"];')
    for a, b, k in result.edges:
        lines.append(f'  s{a} -- s{b} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# elementary exact helpers

def det_bareiss(rows) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            row = a[i]
            aik = row[k]
            for j in range(k + 1, n):
                row[j] = (row[j] * pk - aik * rk[j]) // prev
            row[k] = 0
        prev = pk
    return sign * a[-1][-1]


def rows_sign_coherent(rows):
    """1-based index of the first row mixing strict signs, or None."""
    for i, row in enumerate(rows, 1):
        if any(e > 0 for e in row) and any(e < 0 for e in row):
            return i
    return None


def _transpose(cols):
    return tuple(tuple(col[i] for col in cols) for i in range(len(cols[0])))


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str             # PASS / FAIL / SKIP
    witness: str | None = None
    detail: str | None = None

    def line(self) -> str:
        s = f"CHECK {self.name} {self.status}"
        if self.witness is not None:
            s += f" witness={self.witness}"
        return s


@dataclass
class VerificationReport:
    label: str
    checks: list[CheckResult] = field(default_factory=list)
    seed_count: int = 0
    truncated: int = 0
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status != "FAIL" for c in self.checks)

    def render(self) -> str:
        lines = [f"MATRIX {self.label}"]
        for c in self.checks:
            lines.append(c.line())
            if c.status == "FAIL" and c.detail:
                lines.append(f"  {c.detail}")
        lines.append(f"SEEDS {self.seed_count} TRUNCATED {self.truncated}")
        return "\n".join(lines)


def matrix_label(M: ExchangeMatrix) -> str:
    return f"{M.m}x{M.n} " + ";".join(" ".join(str(e) for e in row) for row in M.rows)


# ---------------------------------------------------------------------------
# per-seed checkers

def check_sign_coherence(seeds) -> VerificationReport:
    """Each row of every seed's g-matrix must be all >= 0 or all <= 0."""
    rep = VerificationReport("sign-coherence")
    t0 = time.perf_counter()
    for s in seeds:
        rep.seed_count += 1
        cols = g_matrix(s)
        bad = rows_sign_coherent(_transpose(cols))
        if bad is not None:
            rep.checks.append(CheckResult(
                "sign-coherence", "FAIL", _hist_str(s.history),
                f"g-matrix row {bad} mixes signs: columns {cols}"))
            rep.wall_time = time.perf_counter() - t0
            return rep
    rep.checks.append(CheckResult("sign-coherence", "PASS"))
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_basis(seeds) -> VerificationReport:
    """|det| of every seed's g-matrix must be exactly 1."""
    rep = VerificationReport("basis")
    t0 = time.perf_counter()
    for s in seeds:
        rep.seed_count += 1
        cols = g_matrix(s)
        d = det_bareiss(_transpose(cols))
        if d not in (1, -1):
            rep.checks.append(CheckResult(
                "basis", "FAIL", _hist_str(s.history),
                f"det(g-matrix) = {d}, columns {cols}"))
            rep.wall_time = time.perf_counter() - t0
            return rep
    rep.checks.append(CheckResult("basis", "PASS"))
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_f_constant(seeds) -> VerificationReport:
    """Every F-polynomial has constant term exactly 1."""
    rep = VerificationReport("f-const")
    t0 = time.perf_counter()
    for s in seeds:
        rep.seed_count += 1
        for p in range(1, s.n + 1):
            f = f_polynomial(s, p)
            if f.constant_term() != 1:
                rep.checks.append(CheckResult(
                    "f-const", "FAIL", _hist_str(s.history),
                    f"position {p}: F-polynomial {f} has constant term {f.constant_term()}"))
                rep.wall_time = time.perf_counter() - t0
                return rep
    rep.checks.append(CheckResult("f-const", "PASS"))
    rep.wall_time = time.perf_counter() - t0
    return rep


def check_c_sign(seeds) -> VerificationReport:
    """Every c-matrix column is nonzero and all >= 0 or all <= 0."""
    rep = VerificationReport("c-sign")
    t0 = time.perf_counter()
    for s in seeds:
        rep.seed_count += 1
        rows = c_matrix(s)
        cols = tuple(tuple(r[j] for r in rows) for j in range(s.n))
        for j, col in enumerate(cols, 1):
            if not any(col):
                rep.checks.append(CheckResult(
                    "c-sign", "FAIL", _hist_str(s.history), f"c-vector {j} is zero"))
                rep.wall_time = time.perf_counter() - t0
                return rep
        bad = rows_sign_coherent(cols)
        if bad is not None:
            rep.checks.append(CheckResult(
                "c-sign", "FAIL", _hist_str(s.history),
                f"c-vector {bad} mixes signs: {cols[bad - 1]}"))
            rep.wall_time = time.perf_counter() - t0
            return rep
    rep.checks.append(CheckResult("c-sign", "PASS"))
    rep.wall_time = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# the two-base-point recurrence

def check_recurrence(B: ExchangeMatrix, depth: int,
                     max_terms: int | None = DEFAULT_BUDGET) -> VerificationReport:
    """Dual-path check of the base-change recurrence.

    For every mutation path from B and every edge (t_r, t_{r+1}) along it, the
    g-vectors of the endpoint seed with respect to base t_{r+1} (obtained by
    replaying the remaining path from a fresh principal seed at t_{r+1}'s
    matrix) must equal the recurrence step applied to the base-t_r g-vectors.
    """
    rep = VerificationReport("recurrence")
    t0 = time.perf_counter()
    n = B.n
    state = {"fail": None, "nodes": 0, "truncated": 0}

    def dfs(path, mats, rebased):
        state["nodes"] += 1
        for r, k in enumerate(path):
            for a in range(1, n + 1):
                g1 = g_vector(rebased[r], a)
                g2 = g_vector(rebased[r + 1], a)
                if g_recurrence_step(g1, mats[r], k) != g2:
                    state["fail"] = (path, r, a, g1, g2, mats[r])
                    return
        if len(path) == depth:
            return
        last = path[-1] if path else 0
        for k in range(1, n + 1):
            if k == last:
                continue
            try:
                nm = mutate(mats[-1], k)
                nr = [mutate_seed(s, k, max_terms) for s in rebased]
            except BudgetExceeded:
                state["truncated"] += 1
                continue
            nr.append(initial_seed(nm, require_acyclic=False))
            dfs(path + (k,), mats + [nm], nr)
            if state["fail"]:
                return

    dfs((), [B], [initial_seed(B)])
    rep.seed_count = state["nodes"]
    rep.truncated = state["truncated"]
    if state["fail"]:
        path, r, a, g1, g2, m = state["fail"]
        rep.checks.append(CheckResult(
            "recurrence", "FAIL", _hist_str(path),
            f"edge {r + 1} (direction {path[r]}), position {a}: "
            f"step({g1}) != {g2} with base matrix {m.rows}"))
    else:
        rep.checks.append(CheckResult("recurrence", "PASS"))
    rep.wall_time = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# covering suite

def check_covering_suite(cov: Covering, depth: int,
                         max_terms: int | None = DEFAULT_BUDGET) -> VerificationReport:
    """Run fold commutation, projection, g-vector folding, orbit
    sign-coherence, the min-sum identity, and the orbit recurrence over all
    orbit sequences up to the depth."""
    rep = VerificationReport("covering-suite")
    t0 = time.perf_counter()
    a = cov.action
    fails: dict[str, CheckResult] = {}
    state = {"nodes": 0, "truncated": 0}

    def fail(name, witness, detail):
        if name not in fails:
            fails[name] = CheckResult(name, "FAIL", witness, detail)

    def seqstr(seq):
        return " ".join(f"[{o[0]}]" for o in seq) if seq else "-"

    # seed-level machinery needs principal coefficients on the covering
    seed_level = True
    skip_reason = None
    if a.frozen:
        seed_level = False
        skip_reason = "covering has frozen vertices; seed-level checks need principal coefficients"
    else:
        try:
            cs0 = covering_seed(cov)
            fs0 = initial_seed(cov.folded)
        except InvalidMatrix as exc:
            seed_level = False
            skip_reason = f"covering seed unavailable: {exc}"

    try:
        base_fold = fold(cov.quiver, a)
        if base_fold.rows != cov.folded.rows:
            fail("covering-commutation", "-", "cached fold differs from recomputed fold")
    except ClusterError as exc:
        fail("covering-commutation", "-", str(exc))
        base_fold = None

    orbit_positions = None
    if seed_level:
        orbit_positions = [tuple(a.vertices.index(v) for v in o) for o in a.mutable_orbits]

    def seed_checks(cs, fs, seq):
        w = seqstr(seq)
        gs = []
        for p, v in enumerate(a.vertices, 1):
            col = a.orbit_column(v)
            if project(cs.cluster[p - 1], a) != fs.cluster[col - 1]:
                fail("projection", w, f"vertex {v}: projected variable differs from folded side")
            g = g_vector(cs, p)
            gs.append(g)
            if fold_g_vector(g, a) != g_vector(fs, col):
                fail("lambda-grading", w,
                     f"vertex {v}: folded degree {fold_g_vector(g, a)} != {g_vector(fs, col)}")
        for g in gs:
            for orb, idxs in zip(a.mutable_orbits, orbit_positions):
                coords = [g[i] for i in idxs]
                if any(c > 0 for c in coords) and any(c < 0 for c in coords):
                    fail("orbit-sign-coherence", w,
                         f"orbit [{orb[0]}] coordinates {coords} mix signs")
                if sum(min(c, 0) for c in coords) != min(sum(coords), 0):
                    fail("min-sum", w,
                         f"orbit [{orb[0]}]: sum of min {coords} != min of sum")

    def walk(q, f, cs, fs, seq):
        state["nodes"] += 1
        if seed_level:
            seed_checks(cs, fs, seq)
        if len(seq) == depth:
            return
        for orb in a.mutable_orbits:
            if seq and seq[-1] == orb:
                continue
            w2 = seq + (orb,)
            try:
                q2 = orbit_mutate(q, a, orb[0])
                f2 = mutate(f, a.orbit_column(orb[0]))
                refold = fold(q2, a)
            except BudgetExceeded:
                state["truncated"] += 1
                continue
            except ClusterError as exc:
                fail("covering-commutation", seqstr(w2), str(exc))
                continue
            if refold.rows != f2.rows:
                fail("covering-commutation", seqstr(w2),
                     "fold after orbit mutation differs from matrix mutation of the fold")
                continue
            if seed_level:
                try:
                    cs2 = orbit_mutate_seed(cs, a, orb[0], max_terms)
                    fs2 = mutate_seed(fs, a.orbit_column(orb[0]), max_terms)
                except BudgetExceeded:
                    state["truncated"] += 1
                    continue
                except ClusterError as exc:
                    fail("projection", seqstr(w2), str(exc))
                    continue
            else:
                cs2 = fs2 = None
            walk(q2, f2, cs2, fs2, w2)

    if base_fold is not None:
        walk(cov.quiver, cov.folded, cs0 if seed_level else None,
             fs0 if seed_level else None, ())

    # orbit recurrence: one base change at the root, any continuation
    if seed_level and "orbit-recurrence" not in fails:
        b = cov.quiver.b

        def orec_walk(s1, s2, kidx, korb, seq):
            for p in range(1, len(a.vertices) + 1):
                g1 = g_vector(s1, p)
                g2 = g_vector(s2, p)
                for u in range(len(a.vertices)):
                    if u in kidx:
                        want = -g1[u]
                    else:
                        want = g1[u] + sum(max(b[u][w], 0) * g1[w] for w in kidx) \
                            - sum(b[u][w] * min(g1[w], 0) for w in kidx)
                    if g2[u] != want:
                        fail("orbit-recurrence", f"[{korb[0]}] then {seqstr(seq)}",
                             f"position {p}, coordinate {u + 1}: {g2[u]} != {want}")
                        return
            if len(seq) >= depth - 1:
                return
            for orb in a.mutable_orbits:
                if seq and seq[-1] == orb:
                    continue
                try:
                    n1 = orbit_mutate_seed(s1, a, orb[0], max_terms)
                    n2 = orbit_mutate_seed(s2, a, orb[0], max_terms)
                except BudgetExceeded:
                    state["truncated"] += 1
                    continue
                except ClusterError as exc:
                    fail("orbit-recurrence", f"[{korb[0]}] then {seqstr(seq + (orb,))}", str(exc))
                    continue
                orec_walk(n1, n2, kidx, korb, seq + (orb,))
                if "orbit-recurrence" in fails:
                    return

        for korb in a.mutable_orbits:
            try:
                q2 = orbit_mutate(cov.quiver, a, korb[0])
                s2 = covering_seed(Covering(q2, a, cov.folded), require_acyclic=False)
                s2 = orbit_mutate_seed(s2, a, korb[0], max_terms)
                s1 = covering_seed(cov, require_acyclic=False)
            except ClusterError as exc:
                fail("orbit-recurrence", f"[{korb[0]}]", str(exc))
                continue
            kidx = set(a.vertices.index(v) for v in korb)
            orec_walk(s1, s2, kidx, korb, ())
            if "orbit-recurrence" in fails:
                break

    seedlike = ("projection", "lambda-grading", "orbit-sign-coherence",
                "min-sum", "orbit-recurrence")
    for name in COVERING_CHECK_NAMES:
        if name in fails:
            rep.checks.append(fails[name])
        elif name in seedlike and not seed_level:
            rep.checks.append(CheckResult(name, "SKIP", None, skip_reason))
        else:
            rep.checks.append(CheckResult(name, "PASS"))
    rep.seed_count = state["nodes"]
    rep.truncated = state["truncated"]
    rep.wall_time = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# composite runner and default corpus

def run_checks(B: ExchangeMatrix, depth: int = DEFAULT_DEPTH,
               checks=CHECK_NAMES, max_terms: int | None = DEFAULT_BUDGET,
               threads: int = 1) -> VerificationReport:
    """Explore B and run the requested checks; one report per matrix."""
    wanted = [c for c in CHECK_NAMES if c in set(checks)]
    unknown = set(checks) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    rep = VerificationReport(matrix_label(B))
    t0 = time.perf_counter()
    seeds = ()
    explode = None
    try:
        res = explore(B, depth, max_terms, threads)
        seeds = res.seeds
        rep.seed_count = len(seeds)
        rep.truncated = len(res.truncated)
    except (NotMutable, NonExactDivision) as exc:
        explode = exc
    for name in wanted:
        if name == "laurent":
            if explode is None:
                rep.checks.append(CheckResult("laurent", "PASS"))
            else:
                rep.checks.append(CheckResult(
                    "laurent", "FAIL", _hist_str(getattr(explode, "history", ())),
                    str(explode)))
        elif explode is not None:
            rep.checks.append(CheckResult(name, "SKIP", None, "exploration failed"))
        elif name == "sign-coherence":
            rep.checks.extend(check_sign_coherence(seeds).checks)
        elif name == "basis":
            rep.checks.extend(check_basis(seeds).checks)
        elif name == "f-const":
            rep.checks.extend(check_f_constant(seeds).checks)
        elif name == "c-sign":
            rep.checks.extend(check_c_sign(seeds).checks)
        elif name == "recurrence":
            rep.checks.extend(check_recurrence(B, depth, max_terms).checks)
    rep.wall_time = time.perf_counter() - t0
    return rep


def default_corpus() -> list[ExchangeMatrix]:
    """The two worked examples plus every acyclic sign-skew-symmetric 3x3
    matrix with entries in [-3, 3], one representative per simultaneous
    row/column permutation class, in sorted order."""
    a2 = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
    worked3 = ExchangeMatrix.from_rows([[0, 1, 2], [-2, 0, 3], [-1, -1, 0]])
    mats = [a2, worked3]
    have = {a2.rows, worked3.rows}
    opts = [(0, 0)] + [(s * p, -s * q) for s in (1, -1) for p in (1, 2, 3) for q in (1, 2, 3)]
    perms = list(permutations(range(3)))
    seen = set()
    family = []
    for o12, o13, o23 in product(opts, repeat=3):
        rows = ((0, o12[0], o13[0]), (o12[1], 0, o23[0]), (o13[1], o23[1], 0))
        M = ExchangeMatrix(rows, 3)
        if not is_acyclic(M):
            continue
        canon = min(tuple(tuple(rows[p[i]][p[j]] for j in range(3)) for i in range(3))
                    for p in perms)
        if canon in seen:
            continue
        seen.add(canon)
        family.append(canon)
    family.sort()
    mats.extend(ExchangeMatrix(rows, 3) for rows in family if rows not in have)
    return mats


@dataclass
class CorpusStats:
    matrices: int = 0
    seeds: int = 0
    truncated: int = 0
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    wall_time: float = 0.0


def verify_corpus(matrices=None, depth: int = DEFAULT_DEPTH, checks=CHECK_NAMES,
                  max_terms: int | None = DEFAULT_BUDGET, threads: int = 1):
    """Run the checks over a whole corpus; returns (canonical report text, stats).

    The text contains no timing, so identical inputs give byte-identical
    output regardless of thread count.
    """
    if matrices is None:
        matrices = default_corpus()
    t0 = time.perf_counter()
    stats = CorpusStats()
    blocks = []
    for i, M in enumerate(matrices):
        rep = run_checks(M, depth, checks, max_terms, threads)
        stats.matrices += 1
        stats.seeds += rep.seed_count
        stats.truncated += rep.truncated
        for c in rep.checks:
            if c.status == "PASS":
                stats.passed += 1
            elif c.status == "FAIL":
                stats.failed += 1
            else:
                stats.skipped += 1
        blocks.append(rep.render())
    stats.wall_time = time.perf_counter() - t0
    summary = (f"SUMMARY matrices={stats.matrices} seeds={stats.seeds} "
               f"truncated={stats.truncated} pass={stats.passed} "
               f"fail={stats.failed} skip={stats.skipped}")
    return "\n".join(blocks + [summary]) + "\n", stats
