"""Seeds with principal coefficients.

A seed carries a 2n x n extended exchange matrix (exchangeable block on top,
coefficient rows below, starting as the identity), a cluster of n Laurent
polynomials written in the initial variables x1..xn and coefficients y1..yn,
and the mutation history that produced it.  The exchange relation

    x'_k = ( prod_j yj^[c_jk]+ * prod_i xi^[b_ik]+
           + prod_j yj^[-c_jk]+ * prod_i xi^[-b_ik]+ ) / x_k

is evaluated inside the Laurent ring of the initial variables: the current
cluster entries stand in for the xi symbols, the coefficient rows supply the
y exponents, and the division by the old entry must be exact.  At the initial
seed the k-th coefficient is y_k and it multiplies the [b_ik]+ monomial; this
convention is what makes every cluster variable homogeneous under the grading
deg(x_i) = e_i, deg(y_j) = -(j-th column of the initial matrix), and it is
asserted on a rank-2 example at import time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InhomogeneityBug, InvalidMatrix, NonExactDivision
from .exchange import (ExchangeMatrix, is_acyclic, is_sign_skew_symmetric,
                       mutate, principal_extension, read_matrix, write_matrix)
from .laurent import (Budget, Inhomogeneous, LaurentPoly, add, degree_vector,
                      div_exact, mono, mono_poly, mul, parse_poly, poly_pow,
                      substitute, x_id, x_poly, y_id, ONE)


@dataclass(frozen=True)
class Seed:
    matrix: ExchangeMatrix            # 2n x n, principal shape
    cluster: tuple[LaurentPoly, ...]  # n entries in initial variables
    history: tuple[int, ...]          # 1-based mutation directions
    b0: ExchangeMatrix                # initial n x n block, fixes the grading
    # term-work consumed building this seed from the initial one; the budget
    # in mutate_seed is a cap on this total, so blowing-up branches truncate
    work: int = field(default=0, compare=False)

    @property
    def n(self) -> int:
        return self.matrix.n


def initial_seed(B: ExchangeMatrix, require_acyclic: bool = True) -> Seed:
    """Principal-coefficients seed at B: cluster (x1..xn), matrix B over I_n.

    Acyclicity guarantees total mutability; pass require_acyclic=False to
    start from a matrix that is only mutation-equivalent to an acyclic one
    (failures then surface later as NotMutable / NonExactDivision).
    """
    if B.m != B.n:
        raise InvalidMatrix(f"initial matrix must be square, got {B.m}x{B.n}")
    if not is_sign_skew_symmetric(B):
        raise InvalidMatrix("initial matrix is not sign-skew-symmetric")
    if require_acyclic and not is_acyclic(B):
        raise InvalidMatrix("initial matrix is not acyclic")
    n = B.n
    cluster = tuple(x_poly(i) for i in range(1, n + 1))
    return Seed(principal_extension(B), cluster, (), B)


def mutate_seed(s: Seed, k: int, max_terms: int | None = None) -> Seed:
    """Exchange the k-th cluster variable (1-based) and mutate the matrix.

    max_terms is a work budget for the whole exchange step (BudgetExceeded
    past it); None computes without limit.
    """
    n = s.n
    if not 1 <= k <= n:
        raise ValueError(f"position {k} out of range 1..{n}")
    budget = None
    if max_terms is not None:
        budget = Budget(max_terms)
        budget.charge(s.work)
    kk = k - 1
    rows = s.matrix.rows
    pos_y = []
    neg_y = []
    for j in range(n, 2 * n):
        c = rows[j][kk]
        if c > 0:
            pos_y.append((y_id(j - n + 1), c))
        elif c < 0:
            neg_y.append((y_id(j - n + 1), -c))
    pos = mono_poly(mono(pos_y))
    neg = mono_poly(mono(neg_y))
    for i in range(n):
        b = rows[i][kk]
        if b > 0:
            pos = mul(pos, poly_pow(s.cluster[i], b, budget), budget)
        elif b < 0:
            neg = mul(neg, poly_pow(s.cluster[i], -b, budget), budget)
    num = add(pos, neg, budget)
    try:
        new_var = div_exact(num, s.cluster[kk], budget)
    except NonExactDivision as exc:
        raise NonExactDivision(
            f"exchange at {k} after history {list(s.history)} is not exact: {exc}") from None
    new_cluster = s.cluster[:kk] + (new_var,) + s.cluster[kk + 1:]
    return Seed(mutate(s.matrix, k), new_cluster, s.history + (k,), s.b0,
                budget.used if budget is not None else s.work)


def mutate_seed_sequence(s: Seed, seq, max_terms: int | None = None) -> Seed:
    for k in seq:
        s = mutate_seed(s, k, max_terms)
    return s


def grading_of(B0: ExchangeMatrix) -> dict[int, tuple[int, ...]]:
    """deg(x_i) = e_i, deg(y_j) = minus the j-th column of B0."""
    n = B0.n
    g = {}
    for i in range(1, n + 1):
        g[x_id(i)] = tuple(1 if r == i - 1 else 0 for r in range(n))
    for j in range(1, n + 1):
        g[y_id(j)] = tuple(-B0.rows[r][j - 1] for r in range(n))
    return g


def g_vector(s: Seed, position: int) -> tuple[int, ...]:
    """Degree of the cluster entry under the fixed initial grading."""
    if not 1 <= position <= s.n:
        raise ValueError(f"position {position} out of range 1..{s.n}")
    d = degree_vector(s.cluster[position - 1], grading_of(s.b0))
    if isinstance(d, Inhomogeneous):
        raise InhomogeneityBug(
            f"cluster entry {position} after history {list(s.history)} is inhomogeneous: {d}")
    return d


def g_matrix(s: Seed) -> tuple[tuple[int, ...], ...]:
    """The n g-vectors of the seed, as columns ordered by cluster position."""
    grading = grading_of(s.b0)
    cols = []
    for p in range(s.n):
        d = degree_vector(s.cluster[p], grading)
        if isinstance(d, Inhomogeneous):
            raise InhomogeneityBug(
                f"cluster entry {p + 1} after history {list(s.history)} is inhomogeneous: {d}")
        cols.append(d)
    return tuple(cols)


def c_matrix(s: Seed) -> tuple[tuple[int, ...], ...]:
    """Bottom n rows of the extended matrix; the columns are the c-vectors."""
    return s.matrix.rows[s.n:]


def f_polynomial(s: Seed, position: int) -> LaurentPoly:
    """Specialize every initial cluster variable to 1; a polynomial in y only."""
    if not 1 <= position <= s.n:
        raise ValueError(f"position {position} out of range 1..{s.n}")
    mapping = {x_id(i): ONE for i in range(1, s.n + 1)}
    return substitute(s.cluster[position - 1], mapping)


def g_recurrence_step(g: tuple[int, ...], B1: ExchangeMatrix, k: int) -> tuple[int, ...]:
    """One base change across the edge k: coordinate k is negated and
    coordinate i gains [b_ik]+ g_k - b_ik min(g_k, 0), with b read from B1
    (the exchange matrix at the old base point)."""
    n = B1.n
    if len(g) != n:
        raise ValueError(f"g-vector length {len(g)} does not match n={n}")
    kk = k - 1
    gk = g[kk]
    mn = min(gk, 0)
    out = []
    for i in range(n):
        if i == kk:
            out.append(-gk)
        else:
            b = B1.rows[i][kk]
            out.append(g[i] + max(b, 0) * gk - b * mn)
    return tuple(out)


def canonical_key(s: Seed):
    """Dedup key of the unlabeled seed: cluster sorted canonically with the
    matrix rows/columns permuted accordingly (coefficient rows keep their
    labels, so only their columns move)."""
    n = s.n
    order = sorted(range(n), key=lambda i: s.cluster[i].key())
    ck = tuple(s.cluster[i].key() for i in order)
    rows = s.matrix.rows
    top = tuple(tuple(rows[order[r]][order[c]] for c in range(n)) for r in range(n))
    bot = tuple(tuple(row[order[c]] for c in range(n)) for row in rows[n:])
    return ck, top + bot


def write_seed(s: Seed) -> str:
    lines = ["seed"]
    lines.append(("hist " + " ".join(str(k) for k in s.history)).rstrip())
    lines.append(write_matrix(s.matrix).rstrip("\n"))
    for p, entry in enumerate(s.cluster, 1):
        lines.append(f"var {p}: {entry}")
    return "\n".join(lines) + "\n"


def read_seed(text: str) -> Seed:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "seed":
        raise ValueError("expected 'seed' header")
    if not lines[1].startswith("hist"):
        raise ValueError("expected 'hist' line")
    history = tuple(int(t) for t in lines[1].split()[1:])
    head = lines[2].split()
    if head[0] != "exchange":
        raise ValueError("expected matrix block")
    m = int(head[1])
    matrix = read_matrix("\n".join(lines[2:3 + m]))
    n = matrix.n
    if m != 2 * n:
        raise ValueError(f"seed matrix must be 2n x n, got {m}x{n}")
    cluster = []
    for p, ln in enumerate(lines[3 + m:], 1):
        prefix = f"var {p}:"
        if not ln.startswith(prefix):
            raise ValueError(f"expected {prefix!r}, got {ln!r}")
        cluster.append(parse_poly(ln[len(prefix):]))
    if len(cluster) != n:
        raise ValueError(f"expected {n} cluster entries, found {len(cluster)}")
    m0 = matrix
    for k in reversed(history):
        m0 = mutate(m0, k)
    b0 = ExchangeMatrix(m0.rows[:n], n)
    return Seed(matrix, tuple(cluster), history, b0)


def _convention_self_check():
    # One exchange on the 2x2 rank example; a wrong coefficient convention
    # would make the new variable inhomogeneous and fail loudly here.
    B = ExchangeMatrix.from_rows([[0, 1], [-1, 0]])
    s = mutate_seed(initial_seed(B), 1)
    expected = parse_poly("x1^-1*x2 + x1^-1*y1")
    if s.cluster[0] != expected or g_vector(s, 1) != (-1, 1):
        raise AssertionError("exchange-relation coefficient convention is wrong")


_convention_self_check()
