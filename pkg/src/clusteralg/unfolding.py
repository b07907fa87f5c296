"""Ice quivers with finite group actions: orbit mutation, folding, coverings.

An IceQuiver stores a skew-symmetric integer arrow matrix over a finite
ordered vertex set plus a frozen subset (no arrows between frozen vertices).
A GroupAction is a finite permutation group given by generators that fix the
frozen set; its orbits index the rows/columns of the folded exchange matrix

    b_[i][j] = sum over i' in [i] of b_{i'j}   (any representative j).

Orbit mutation mutates a whole orbit simultaneously; it is obstructed by an
orbit loop (an arrow inside one orbit) or an orbit 2-cycle (arrows i -> j and
j -> i'' with i'' in the orbit of i, j outside it).  A Covering packages a
quiver and action whose fold equals a given matrix; verify_covering replays
orbit mutations against plain matrix mutation of the fold and reports the
first divergence.

Seed-level operations (project, fold_g_vector, orbit_mutate_seed,
verify_projection) put principal coefficients on the covering, which requires
a covering without frozen vertices; the coefficient variable y_p then plays
the role of a frozen copy of vertex p.

Quiver file format:

    quiver 3
    vertices 1 2a 2b
    frozen
    arrows
    1 2a 1
    1 2b 1
    group
    (2a 2b)

Arrow lines read "i j m" meaning b_ij = m (m may be negative); generators are
written in cycle notation over vertex names, one per line, possibly "()".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (InvalidMatrix, NotSignSkewSymmetric, OrbitNotMutable,
                     RepresentativeDependent, UnsupportedCovering)
from .exchange import (ExchangeMatrix, is_sign_skew_symmetric, mutate)
from .laurent import LaurentPoly, substitute, x_id, x_poly, y_id, y_poly
from .seed import Seed, initial_seed, mutate_seed

GROUP_CAP = 10_000
_NAME = re.compile(r"[A-Za-z0-9_.]+\Z")


@dataclass(frozen=True)
class IceQuiver:
    vertices: tuple[str, ...]
    b: tuple[tuple[int, ...], ...]
    frozen: frozenset[str]

    def __post_init__(self):
        names = self.vertices
        if len(set(names)) != len(names):
            raise ValueError("duplicate vertex names")
        for v in names:
            if not _NAME.match(v):
                raise ValueError(f"bad vertex name {v!r}")
        nv = len(names)
        if len(self.b) != nv or any(len(r) != nv for r in self.b):
            raise ValueError("arrow matrix does not match vertex count")
        if not self.frozen <= set(names):
            raise ValueError("frozen set contains unknown vertices")
        fro = [v in self.frozen for v in names]
        for i in range(nv):
            if self.b[i][i] != 0:
                raise ValueError(f"loop at {names[i]}")
            for j in range(i + 1, nv):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError(f"arrow matrix not skew-symmetric at ({names[i]},{names[j]})")
                if fro[i] and fro[j] and self.b[i][j] != 0:
                    raise ValueError(f"arrow between frozen vertices {names[i]},{names[j]}")

    def index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise ValueError(f"unknown vertex {v!r}") from None


class GroupAction:
    """Finite permutation group on a vertex set, given by generators.

    Generators must fix the frozen subset setwise.  The full element set is
    enumerated eagerly (hard cap 10000) and the orbit partition is derived;
    orbits are ordered by their minimal vertex in the input order, mutable
    orbits before frozen ones, matching fold's row order.
    """

    def __init__(self, vertices: tuple[str, ...], frozen: frozenset[str],
                 generators: tuple[tuple[int, ...], ...]):
        self.vertices = tuple(vertices)
        self.frozen = frozenset(frozen)
        nv = len(self.vertices)
        fro = [v in self.frozen for v in self.vertices]
        gens = []
        for g in generators:
            g = tuple(g)
            if sorted(g) != list(range(nv)):
                raise ValueError(f"generator {g} is not a permutation of {nv} vertices")
            for i in range(nv):
                if fro[i] != fro[g[i]]:
                    raise ValueError("generator does not preserve the frozen set")
            gens.append(g)
        self.generators = tuple(gens)
        self.elements = self._closure(nv)
        self._orbits, self._orbit_of = self._partition(nv, fro)

    def _closure(self, nv: int) -> tuple[tuple[int, ...], ...]:
        ident = tuple(range(nv))
        els = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for g in self.generators:
                for h in frontier:
                    c = tuple(g[h[i]] for i in range(nv))
                    if c not in els:
                        els.add(c)
                        nxt.append(c)
                        if len(els) > GROUP_CAP:
                            raise ValueError(f"group exceeds {GROUP_CAP} elements")
            frontier = nxt
        return tuple(sorted(els))

    def _partition(self, nv: int, fro):
        seen = [False] * nv
        orbits = []
        for i in range(nv):
            if seen[i]:
                continue
            stack = [i]
            seen[i] = True
            orb = [i]
            while stack:
                u = stack.pop()
                for g in self.generators:
                    w = g[u]
                    if not seen[w]:
                        seen[w] = True
                        orb.append(w)
                        stack.append(w)
            orbits.append(tuple(sorted(orb)))
        orbits.sort(key=lambda o: (fro[o[0]], o[0]))
        names = self.vertices
        named = tuple(tuple(names[i] for i in o) for o in orbits)
        orbit_of = {}
        for o in named:
            for v in o:
                orbit_of[v] = o
        return named, orbit_of

    @property
    def orbits(self) -> tuple[tuple[str, ...], ...]:
        return self._orbits

    @property
    def mutable_orbits(self) -> tuple[tuple[str, ...], ...]:
        return tuple(o for o in self._orbits if o[0] not in self.frozen)

    @property
    def frozen_orbits(self) -> tuple[tuple[str, ...], ...]:
        return tuple(o for o in self._orbits if o[0] in self.frozen)

    def orbit_of(self, v) -> tuple[str, ...]:
        """Orbit of a vertex; tuples of vertex names pass through unchanged."""
        if isinstance(v, tuple):
            return v
        try:
            return self._orbit_of[v]
        except KeyError:
            raise ValueError(f"unknown vertex {v!r}") from None

    def orbit_column(self, v) -> int:
        """1-based column of the orbit of v in the folded matrix."""
        o = self.orbit_of(v if not isinstance(v, tuple) else v[0])
        return self.mutable_orbits.index(o) + 1

    @classmethod
    def from_cycles(cls, vertices, frozen, cycle_lines) -> "GroupAction":
        idx = {v: i for i, v in enumerate(vertices)}
        gens = []
        for line in cycle_lines:
            perm = list(range(len(vertices)))
            for cyc in re.findall(r"\(([^()]*)\)", line):
                names = cyc.split()
                if not names:
                    continue
                for v in names:
                    if v not in idx:
                        raise ValueError(f"unknown vertex {v!r} in cycle {line!r}")
                if len(set(names)) != len(names):
                    raise ValueError(f"repeated vertex in cycle {line!r}")
                for a, b in zip(names, names[1:] + names[:1]):
                    perm[idx[a]] = idx[b]
            gens.append(tuple(perm))
        return cls(tuple(vertices), frozenset(frozen), tuple(gens))

    def cycle_strings(self) -> tuple[str, ...]:
        """Canonical cycle notation for each generator ("()" for identity)."""
        out = []
        for g in self.generators:
            seen = set()
            cycles = []
            for i in range(len(g)):
                if i in seen or g[i] == i:
                    continue
                cyc = [i]
                seen.add(i)
                j = g[i]
                while j != i:
                    cyc.append(j)
                    seen.add(j)
                    j = g[j]
                cycles.append(cyc)
            if not cycles:
                out.append("()")
            else:
                cycles.sort(key=lambda c: c[0])
                out.append("".join(
                    "(" + " ".join(self.vertices[i] for i in c) + ")" for c in cycles))
        return tuple(out)


def _check_equivariance(q: IceQuiver, a: GroupAction):
    if q.vertices != a.vertices:
        raise ValueError("quiver and action have different vertex sets")
    b = q.b
    nv = len(q.vertices)
    for g in a.generators:
        for i in range(nv):
            gi = g[i]
            for j in range(i + 1, nv):
                if b[gi][g[j]] != b[i][j]:
                    raise RepresentativeDependent(
                        f"action does not preserve arrows: b[{q.vertices[gi]}]"
                        f"[{q.vertices[g[j]]}] != b[{q.vertices[i]}][{q.vertices[j]}]")


def has_orbit_loop(q: IceQuiver, a: GroupAction, i) -> bool:
    """True iff some arrow joins two vertices of the orbit of i."""
    orb = [q.index(v) for v in a.orbit_of(i)]
    b = q.b
    return any(b[u][w] != 0 for u in orb for w in orb)


def has_orbit_two_cycle(q: IceQuiver, a: GroupAction, i) -> bool:
    """True iff there are arrows u -> j and j -> w with u, w in the orbit of i
    and j outside it."""
    orb = [q.index(v) for v in a.orbit_of(i)]
    inside = set(orb)
    b = q.b
    for j in range(len(q.vertices)):
        if j in inside:
            continue
        if any(b[u][j] > 0 for u in orb) and any(b[j][w] > 0 for w in orb):
            return True
    return False


def orbit_mutate(q: IceQuiver, a: GroupAction, i) -> IceQuiver:
    """Mutate simultaneously at every vertex of the orbit of i.

    b'_jk = -b_jk when j or k lies in the orbit, otherwise b_jk plus the sum
    over orbit members i' of (|b_{ji'}| b_{i'k} + b_{ji'} |b_{i'k}|)/2.
    Entries between two frozen vertices stay zero (they carry no meaning).
    """
    _check_equivariance(q, a)
    orb_names = a.orbit_of(i)
    if orb_names[0] in q.frozen:
        raise ValueError(f"cannot mutate frozen orbit [{orb_names[0]}]")
    if has_orbit_loop(q, a, orb_names[0]):
        raise OrbitNotMutable(f"orbit loop at [{orb_names[0]}]")
    if has_orbit_two_cycle(q, a, orb_names[0]):
        raise OrbitNotMutable(f"orbit 2-cycle at [{orb_names[0]}]")
    orb = [q.index(v) for v in orb_names]
    inside = set(orb)
    nv = len(q.vertices)
    fro = [v in q.frozen for v in q.vertices]
    b = q.b
    new = []
    for j in range(nv):
        row = []
        for k in range(nv):
            if j == k:
                row.append(0)
            elif j in inside or k in inside:
                row.append(-b[j][k])
            elif fro[j] and fro[k]:
                row.append(0)
            else:
                s = b[j][k]
                for u in orb:
                    bju, buk = b[j][u], b[u][k]
                    if bju and buk:
                        s += (abs(bju) * buk + bju * abs(buk)) // 2
                row.append(s)
        new.append(tuple(row))
    out = IceQuiver(q.vertices, tuple(new), q.frozen)
    _check_equivariance(out, a)
    return out


def fold(q: IceQuiver, a: GroupAction) -> ExchangeMatrix:
    """Sum arrow counts over row orbits, one column per mutable orbit.

    The entry must not depend on which column representative is used
    (RepresentativeDependent otherwise) and the resulting top block must be
    sign-skew-symmetric (NotSignSkewSymmetric otherwise).
    """
    _check_equivariance(q, a)
    mut = a.mutable_orbits
    if not mut:
        raise InvalidMatrix("no mutable orbits to fold")
    all_orbits = mut + a.frozen_orbits
    b = q.b
    rows = []
    for orow in all_orbits:
        src = [q.index(v) for v in orow]
        row = []
        for ocol in mut:
            reps = [q.index(v) for v in ocol]
            val = sum(b[u][reps[0]] for u in src)
            for r in reps[1:]:
                if sum(b[u][r] for u in src) != val:
                    raise RepresentativeDependent(
                        f"folded entry ([{orow[0]}],[{ocol[0]}]) depends on the representative")
            row.append(val)
        rows.append(tuple(row))
    M = ExchangeMatrix(tuple(rows), len(mut))
    if not is_sign_skew_symmetric(M):
        raise NotSignSkewSymmetric("folded matrix is not sign-skew-symmetric")
    return M


@dataclass(frozen=True)
class Covering:
    """A group-acted ice quiver together with its cached fold."""
    quiver: IceQuiver
    action: GroupAction
    folded: ExchangeMatrix

    @classmethod
    def build(cls, quiver: IceQuiver, action: GroupAction) -> "Covering":
        for orb in action.mutable_orbits:
            if has_orbit_loop(quiver, action, orb[0]):
                raise OrbitNotMutable(f"orbit loop at [{orb[0]}]")
            if has_orbit_two_cycle(quiver, action, orb[0]):
                raise OrbitNotMutable(f"orbit 2-cycle at [{orb[0]}]")
        return cls(quiver, action, fold(quiver, action))


@dataclass(frozen=True)
class CoveringReport:
    ok: bool
    sequence: tuple
    steps_applied: int
    mismatch: tuple | None = None  # (step, row_orbit, col_orbit, folded, expected)

    def message(self) -> str:
        if self.ok:
            return f"fold commutes with orbit mutation along {_seq_str(self.sequence)}"
        step, ro, co, got, want = self.mismatch
        return (f"divergence after step {step} of {_seq_str(self.sequence)}: "
                f"folded entry ([{ro}],[{co}]) = {got}, matrix mutation gives {want}")


def _seq_str(seq) -> str:
    return " ".join(f"[{o[0]}]" for o in seq) if seq else "(empty)"


def verify_covering(c: Covering, seq) -> CoveringReport:
    """Apply orbit mutations in order, folding after each step, and compare
    entrywise with matrix mutation of the fold.  OrbitNotMutable is re-raised
    with the failing prefix attached."""
    a = c.action
    orbits = tuple(a.orbit_of(o) for o in seq)
    q = c.quiver
    f = c.folded
    for step, orb in enumerate(orbits, 1):
        try:
            q = orbit_mutate(q, a, orb[0])
        except OrbitNotMutable as exc:
            raise OrbitNotMutable(
                f"{exc} (after prefix {_seq_str(orbits[:step - 1])})") from None
        f = mutate(f, a.orbit_column(orb[0]))
        folded = fold(q, a)
        if folded.rows != f.rows:
            allo = a.mutable_orbits + a.frozen_orbits
            for r in range(folded.m):
                for col in range(folded.n):
                    if folded.rows[r][col] != f.rows[r][col]:
                        return CoveringReport(False, orbits, step,
                                              (step, allo[r][0], allo[col][0],
                                               folded.rows[r][col], f.rows[r][col]))
    return CoveringReport(True, orbits, len(orbits))


def _fiber_names(i: int, size: int) -> list[str]:
    if size == 1:
        return [str(i)]
    if size <= 26:
        return [f"{i}{chr(ord('a') + r)}" for r in range(size)]
    return [f"{i}_{r}" for r in range(size)]


def standard_covering(B: ExchangeMatrix) -> Covering:
    """Covering of a square sign-skew-symmetric matrix by the classical blow-up.

    A positive diagonal D with d_i b_ij = -d_j b_ji is found by exact ratio
    propagation over the nonzero pattern; entries above 12 (or an infeasible
    pattern) raise UnsupportedCovering.  Vertex i becomes a fiber of
    lcm(D)/d_i copies, arrows follow the gcd pattern (copy r of i points at
    copy s of j when r = s modulo gcd of the fiber sizes), and the group is
    generated by the simultaneous rotation of all fibers.  Skew-symmetric
    input yields the trivial covering of its own quiver.
    """
    if B.m != B.n:
        raise InvalidMatrix("standard covering needs a square matrix")
    if not is_sign_skew_symmetric(B):
        raise InvalidMatrix("matrix is not sign-skew-symmetric")
    n = B.n
    b = B.rows
    d: list = [None] * n
    di = [0] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for v in range(n):
                if b[u][v] == 0:
                    continue
                ratio = Fraction(abs(b[u][v]), abs(b[v][u]))
                val = d[u] * ratio
                if d[v] is None:
                    d[v] = val
                    comp.append(v)
                    stack.append(v)
                elif d[v] != val:
                    raise UnsupportedCovering("no positive diagonal skew-symmetrizer exists")
        # smallest positive integer solution on this component
        scale = lcm(*(d[v].denominator for v in comp))
        ints = [int(d[v] * scale) for v in comp]
        g = gcd(*ints)
        for v, val in zip(comp, ints):
            di[v] = val // g
    if max(di) > 12:
        raise UnsupportedCovering(f"skew-symmetrizer entries exceed 12: {di}")
    for i in range(n):
        for j in range(n):
            if di[i] * b[i][j] != -di[j] * b[j][i]:
                raise UnsupportedCovering("no positive diagonal skew-symmetrizer exists")

    N = lcm(*di)
    fiber = [N // x for x in di]
    names = []
    base = []  # first covering index of each fiber
    for i in range(n):
        base.append(len(names))
        names.extend(_fiber_names(i + 1, fiber[i]))
    nv = len(names)
    bc = [[0] * nv for _ in range(nv)]
    for i in range(n):
        for j in range(n):
            if b[i][j] <= 0:
                continue
            gij = gcd(fiber[i], fiber[j])
            t = b[i][j] * gij // fiber[i]
            if t * fiber[i] != b[i][j] * gij or t * fiber[j] != -b[j][i] * gij:
                raise UnsupportedCovering("gcd arrow pattern does not exist")
            for r in range(fiber[i]):
                for s in range(fiber[j]):
                    if (r - s) % gij == 0:
                        bc[base[i] + r][base[j] + s] = t
                        bc[base[j] + s][base[i] + r] = -t
    quiver = IceQuiver(tuple(names), tuple(tuple(row) for row in bc), frozenset())
    if N == 1:
        action = GroupAction(quiver.vertices, frozenset(), ())
    else:
        rot = [0] * nv
        for i in range(n):
            for r in range(fiber[i]):
                rot[base[i] + r] = base[i] + (r + 1) % fiber[i]
        action = GroupAction(quiver.vertices, frozenset(), (tuple(rot),))
    cov = Covering.build(quiver, action)
    if cov.folded.rows != B.rows:
        raise AssertionError("blow-up covering does not fold back to the input")
    return cov


def _require_plain(a: GroupAction, what: str):
    if a.frozen:
        raise ValueError(f"{what} needs a covering without frozen vertices "
                         "(principal coefficients supply the frozen copies)")


def projection_map(a: GroupAction) -> dict[int, LaurentPoly]:
    """Variable map identifying each covering vertex with its orbit column:
    x_p and y_p of vertex position p go to x_q and y_q of orbit column q."""
    _require_plain(a, "projection")
    m = {}
    for p, v in enumerate(a.vertices, 1):
        q = a.orbit_column(v)
        m[x_id(p)] = x_poly(q)
        m[y_id(p)] = y_poly(q)
    return m


def project(p: LaurentPoly, a: GroupAction) -> LaurentPoly:
    """The algebra homomorphism induced by vertex -> orbit identification."""
    return substitute(p, projection_map(a))


def fold_g_vector(g: tuple[int, ...], a: GroupAction) -> tuple[int, ...]:
    """Sum covering g-vector coordinates over each orbit."""
    _require_plain(a, "g-vector folding")
    out = [0] * len(a.mutable_orbits)
    for p, v in enumerate(a.vertices):
        out[a.orbit_column(v) - 1] += g[p]
    return tuple(out)


def covering_seed(c: Covering, require_acyclic: bool = True) -> Seed:
    """Principal-coefficients seed on the covering quiver itself."""
    _require_plain(c.action, "covering seed")
    q = c.quiver
    return initial_seed(ExchangeMatrix(q.b, len(q.vertices)), require_acyclic)


def orbit_mutate_seed(cs: Seed, a: GroupAction, i, max_terms: int | None = None) -> Seed:
    """Mutate a covering seed at every vertex of the orbit of i.

    With no orbit loop the per-vertex exchanges commute; both orders are
    computed and compared, so order dependence cannot pass silently.
    """
    _require_plain(a, "orbit seed mutation")
    orb = a.orbit_of(i)
    top = cs.matrix.rows
    idxs = sorted(a.vertices.index(v) for v in orb)
    for u in idxs:
        if a.vertices[u] in a.frozen:
            raise ValueError(f"cannot mutate frozen vertex {a.vertices[u]}")
        for w in idxs:
            if top[u][w] != 0:
                raise OrbitNotMutable(f"orbit loop at [{orb[0]}]")
    fwd = cs
    for u in idxs:
        fwd = mutate_seed(fwd, u + 1, max_terms)
    if len(idxs) > 1:
        rev = cs
        for u in reversed(idxs):
            rev = mutate_seed(rev, u + 1, max_terms)
        if rev.cluster != fwd.cluster or rev.matrix != fwd.matrix:
            raise OrbitNotMutable(f"orbit mutation at [{orb[0]}] is order-dependent")
    return fwd


@dataclass(frozen=True)
class ProjectionReport:
    ok: bool
    sequence: tuple
    vertex: str
    left: LaurentPoly
    right: LaurentPoly

    def message(self) -> str:
        head = (f"projection of {self.vertex} after {_seq_str(self.sequence)}")
        if self.ok:
            return f"{head} matches the folded mutation"
        return f"{head} diverges: covering side {self.left}, folded side {self.right}"


def verify_projection(c: Covering, seq, a_vertex: str,
                      max_terms: int | None = None) -> ProjectionReport:
    """Compare project(orbit mutations of x_a) with the same mutations done
    directly on the folded principal seed."""
    a = c.action
    orbits = tuple(a.orbit_of(o) for o in seq)
    cs = covering_seed(c, require_acyclic=False)
    for orb in orbits:
        cs = orbit_mutate_seed(cs, a, orb[0], max_terms)
    pos = a.vertices.index(a_vertex) + 1
    left = project(cs.cluster[pos - 1], a)
    fs = initial_seed(c.folded, require_acyclic=False)
    for orb in orbits:
        fs = mutate_seed(fs, a.orbit_column(orb[0]), max_terms)
    right = fs.cluster[a.orbit_column(a_vertex) - 1]
    return ProjectionReport(left == right, orbits, a_vertex, left, right)


def orbit_sequences(a: GroupAction, depth: int):
    """All sequences of mutable orbits up to the given length that never
    repeat the orbit just used, in lexicographic order."""
    mut = a.mutable_orbits

    def walk(prefix):
        if prefix:
            yield prefix
        if len(prefix) == depth:
            return
        for o in mut:
            if prefix and prefix[-1] == o:
                continue
            yield from walk(prefix + (o,))

    yield from walk(())


def parse_orbit_sequence(text: str, a: GroupAction) -> tuple[tuple[str, ...], ...]:
    """Parse "[2a] [1]" style tokens; a bracketed integer that is not a vertex
    name selects the orbit by its 1-based folded column."""
    out = []
    for tok in text.split():
        m = re.fullmatch(r"\[([A-Za-z0-9_.]+)\]", tok)
        if not m:
            raise ValueError(f"bad orbit token {tok!r}; expected like [2a]")
        name = m.group(1)
        if name in a.vertices:
            out.append(a.orbit_of(name))
        elif name.isdigit():
            k = int(name)
            mut = a.mutable_orbits
            if not 1 <= k <= len(mut):
                raise ValueError(f"orbit index {k} out of range 1..{len(mut)}")
            out.append(mut[k - 1])
        else:
            raise ValueError(f"unknown vertex or orbit {name!r}")
    return tuple(out)


def write_quiver(q: IceQuiver, a: GroupAction) -> str:
    lines = [f"quiver {len(q.vertices)}"]
    lines.append("vertices " + " ".join(q.vertices))
    lines.append(("frozen " + " ".join(v for v in q.vertices if v in q.frozen)).rstrip())
    lines.append("arrows")
    nv = len(q.vertices)
    for i in range(nv):
        for j in range(i + 1, nv):
            if q.b[i][j] != 0:
                lines.append(f"{q.vertices[i]} {q.vertices[j]} {q.b[i][j]}")
    lines.append("group")
    lines.extend(a.cycle_strings())
    return "\n".join(lines) + "\n"


def read_quiver(text: str) -> tuple[IceQuiver, GroupAction]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("quiver"):
        raise ValueError("expected 'quiver <nv>' header")
    nv = int(lines[0].split()[1])
    if not lines[1].startswith("vertices"):
        raise ValueError("expected 'vertices' line")
    vertices = tuple(lines[1].split()[1:])
    if len(vertices) != nv:
        raise ValueError(f"expected {nv} vertices, found {len(vertices)}")
    if not lines[2].startswith("frozen"):
        raise ValueError("expected 'frozen' line")
    frozen = frozenset(lines[2].split()[1:])
    if lines[3] != "arrows":
        raise ValueError("expected 'arrows' line")
    idx = {v: i for i, v in enumerate(vertices)}
    b = [[0] * nv for _ in range(nv)]
    pos = 4
    while pos < len(lines) and lines[pos] != "group":
        parts = lines[pos].split()
        if len(parts) != 3:
            raise ValueError(f"bad arrow line {lines[pos]!r}")
        i, j, mlt = parts
        if i not in idx or j not in idx:
            raise ValueError(f"unknown vertex in arrow line {lines[pos]!r}")
        if b[idx[i]][idx[j]] != 0:
            raise ValueError(f"duplicate arrow entry for {i} {j}")
        b[idx[i]][idx[j]] = int(mlt)
        b[idx[j]][idx[i]] = -int(mlt)
        pos += 1
    if pos >= len(lines) or lines[pos] != "group":
        raise ValueError("expected 'group' line")
    quiver = IceQuiver(vertices, tuple(tuple(r) for r in b), frozen)
    action = GroupAction.from_cycles(vertices, frozen, lines[pos + 1:])
    return quiver, action
