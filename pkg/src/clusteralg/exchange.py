"""Exchange matrices: sign-skew-symmetry, acyclicity, mutation, extensions.

An exchange matrix is an m x n integer matrix with m >= n.  The first n rows
form the exchangeable block; the remaining m - n rows are frozen bookkeeping
(coefficient rows).  Mutation directions and all external formats are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMutable


@dataclass(frozen=True)
class ExchangeMatrix:
    rows: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one exchangeable column")
        if len(self.rows) < self.n:
            raise ValueError(f"{len(self.rows)} rows but {self.n} exchangeable columns")
        for r in self.rows:
            if len(r) != self.n:
                raise ValueError("ragged rows")
            for e in r:
                if not isinstance(e, int):
                    raise ValueError(f"non-integer entry {e!r}")

    @classmethod
    def from_rows(cls, rows, n: int | None = None) -> "ExchangeMatrix":
        t = tuple(tuple(int(e) for e in r) for r in rows)
        if n is None:
            n = len(t[0]) if t else 0
        return cls(t, n)

    @property
    def m(self) -> int:
        return len(self.rows)

    def top(self) -> tuple[tuple[int, ...], ...]:
        return self.rows[: self.n]

    def column(self, k: int) -> tuple[int, ...]:
        """Column k (1-based), over all m rows."""
        return tuple(r[k - 1] for r in self.rows)


def is_sign_skew_symmetric(M: ExchangeMatrix) -> bool:
    """True iff the top n x n block has zero diagonal and strictly opposite-sign
    (or jointly zero) off-diagonal pairs."""
    b = M.rows
    n = M.n
    for i in range(n):
        if b[i][i] != 0:
            return False
        for j in range(i + 1, n):
            p, q = b[i][j], b[j][i]
            if (p == 0) != (q == 0):
                return False
            if p and (p > 0) == (q > 0):
                return False
    return True


def is_acyclic(M: ExchangeMatrix) -> bool:
    """True iff the digraph on 1..n with an arrow i -> j whenever b_ij > 0 has
    no directed cycle (Kahn's algorithm on the top block)."""
    n = M.n
    b = M.top()
    indeg = [0] * n
    for i in range(n):
        for j in range(n):
            if b[i][j] > 0:
                indeg[j] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for j in range(n):
            if b[v][j] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
    return seen == n


def mutate(M: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Mutate in direction k (1-based), transforming all m rows.

    b'_jl = -b_jl when j = k or l = k, else b_jl + (|b_jk| b_kl + b_jk |b_kl|)/2.
    Raises NotMutable if the result's top block loses sign-skew-symmetry.
    """
    n = M.n
    if not 1 <= k <= n:
        raise ValueError(f"mutation direction {k} out of range 1..{n}")
    kk = k - 1
    row_k = M.rows[kk]
    new = []
    for j, row in enumerate(M.rows):
        if j == kk:
            new.append(tuple(-e for e in row))
            continue
        bjk = row[kk]
        if bjk == 0:
            new.append(tuple(-e if l == kk else e for l, e in enumerate(row)))
            continue
        abjk = abs(bjk)
        r = []
        for l, e in enumerate(row):
            if l == kk:
                r.append(-e)
            else:
                bkl = row_k[l]
                r.append(e + (abjk * bkl + bjk * abs(bkl)) // 2)
        new.append(tuple(r))
    out = ExchangeMatrix(tuple(new), n)
    if not is_sign_skew_symmetric(out):
        raise NotMutable(f"mutation at {k} breaks sign-skew-symmetry")
    return out


def mutate_sequence(M: ExchangeMatrix, seq) -> ExchangeMatrix:
    for k in seq:
        M = mutate(M, k)
    return M


def principal_extension(B: ExchangeMatrix) -> ExchangeMatrix:
    """Stack the n x n identity below a square matrix; the identity rows then
    track c-vectors under mutation."""
    if B.m != B.n:
        raise ValueError("principal extension needs a square matrix")
    n = B.n
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return ExchangeMatrix(B.rows + ident, n)


def square_extension(M: ExchangeMatrix) -> ExchangeMatrix:
    """Complete an m x n matrix (B over B') to the square m x m matrix

        ( B   -B'^T )
        ( B'    0   )

    used to treat frozen rows as genuine vertices."""
    n, m = M.n, M.m
    if m == n:
        return M
    top = M.top()
    bot = M.rows[n:]
    rows = []
    for i in range(n):
        rows.append(top[i] + tuple(-bot[j][i] for j in range(m - n)))
    for j in range(m - n):
        rows.append(bot[j] + (0,) * (m - n))
    return ExchangeMatrix(tuple(rows), m)


def parse_sequence(text: str, n: int | None = None) -> tuple[int, ...]:
    """Parse a 1-based mutation sequence like "1 2 1"."""
    out = []
    for tok in text.split():
        try:
            k = int(tok)
        except ValueError:
            raise ValueError(f"bad mutation index {tok!r}") from None
        if k < 1 or (n is not None and k > n):
            raise ValueError(f"mutation index {k} out of range 1..{n}")
        out.append(k)
    return tuple(out)


def write_matrix(M: ExchangeMatrix) -> str:
    lines = [f"exchange {M.m} {M.n}"]
    lines.extend(" ".join(str(e) for e in row) for row in M.rows)
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> ExchangeMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "exchange":
        raise ValueError(f"bad header {lines[0]!r}: expected 'exchange <m> <n>'")
    m, n = int(head[1]), int(head[2])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        row = [int(t) for t in ln.split()]
        if len(row) != n:
            raise ValueError(f"ragged row {ln!r}: expected {n} entries")
        rows.append(tuple(row))
    return ExchangeMatrix(tuple(rows), n)
