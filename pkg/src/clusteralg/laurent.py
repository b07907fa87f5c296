"""Exact multivariate Laurent polynomial arithmetic over big integers.

Two families of formal variables share one id space:

  cluster variables  x1, x2, ...   (invertible, exponents may be negative)
  coefficients       y1, y2, ...   (ordinary, exponents must stay >= 0)

An id is a single non-negative integer: x_i gets id 2*i, y_j gets id 2*j+1,
so the kind is recoverable from the id alone and ids never depend on the
number of variables in play.

A Monomial is a tuple of (id, exponent) pairs sorted by id with no zero
exponents.  A LaurentPoly maps monomials to nonzero int coefficients; the
empty dict is zero.  Values are immutable once built, so they can be shared
freely across threads.  Equality and hashing are structural on the canonical
form.

Text format, produced by str() and read back by parse_poly():

    5*x1*x2^-1 + y3

Terms are sorted by the canonical order (lexicographic on the sorted
(id, exponent) pairs); within a term the factors print x's first.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from operator import add as _int_add

from .errors import BudgetExceeded, NonExactDivision, NonMonomialInverse

Monomial = tuple  # tuple[tuple[int, int], ...]

# products with more term-pairs than this leave the sparse pair-merge path
# for packed-integer exponent keys (monomial product = one int addition)
_DENSE_CUTOFF = 1024
_BIAS_CACHE: dict = {}


def _bias_all(w: int, field: int) -> int:
    b = _BIAS_CACHE.get((w, field))
    if b is None:
        b = sum(1 << (field * i + field - 1) for i in range(w))
        _BIAS_CACHE[(w, field)] = b
    return b


class Budget:
    """Shared work meter: charges accumulate across operations and raise
    BudgetExceeded past the limit.  Passing a plain int to an operation makes
    a fresh single-operation budget; passing a Budget shares it."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def charge(self, n: int):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"term budget {self.limit} exhausted")


def _as_budget(b) -> Budget | None:
    if b is None or isinstance(b, Budget):
        return b
    return Budget(b)


def x_id(i: int) -> int:
    return 2 * i


def y_id(j: int) -> int:
    return 2 * j + 1


def is_coeff_var(v: int) -> bool:
    return bool(v & 1)


def var_name(v: int) -> str:
    return ("y" if v & 1 else "x") + str(v >> 1)


def mono(items) -> Monomial:
    """Build a canonical monomial from (id, exponent) pairs or a dict.

    Duplicate ids are merged, zero exponents dropped.  Raises ValueError if a
    coefficient variable ends up with a negative exponent.
    """
    if isinstance(items, dict):
        items = items.items()
    acc: dict[int, int] = {}
    for v, e in items:
        acc[v] = acc.get(v, 0) + e
    pairs = tuple(sorted((v, e) for v, e in acc.items() if e != 0))
    for v, e in pairs:
        if v < 0:
            raise ValueError(f"negative variable id {v}")
        if (v & 1) and e < 0:
            raise ValueError(f"coefficient variable {var_name(v)} with negative exponent {e}")
    return pairs


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    factors = sorted(m, key=lambda ve: (ve[0] & 1, ve[0] >> 1))
    return "*".join(var_name(v) + (f"^{e}" if e != 1 else "") for v, e in factors)


class LaurentPoly:
    """Canonical Laurent polynomial: monomial -> nonzero int coefficient."""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms: dict | None = None, _trusted: bool = False):
        if terms is None:
            terms = {}
        if not _trusted:
            terms = {m: c for m, c in terms.items() if c != 0}
        self._terms = terms
        self._key = None

    @property
    def terms(self) -> dict:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def key(self):
        """Hashable canonical form: term items sorted by monomial."""
        k = self._key
        if k is None:
            k = tuple(sorted(self._terms.items()))
            self._key = k
        return k

    def constant_term(self) -> int:
        return self._terms.get((), 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self.key())

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, e):
        return poly_pow(self, e)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.key():
            mag = abs(c)
            if not m:
                chunk = str(mag)
            elif mag == 1:
                chunk = mono_str(m)
            else:
                chunk = f"{mag}*{mono_str(m)}"
            if not parts:
                parts.append(("-" if c < 0 else "") + chunk)
            else:
                parts.append((" - " if c < 0 else " + ") + chunk)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


ZERO = LaurentPoly({})
ONE = LaurentPoly({(): 1})


def int_poly(c: int) -> LaurentPoly:
    return LaurentPoly({(): c})


def mono_poly(m: Monomial, c: int = 1) -> LaurentPoly:
    return LaurentPoly({m: c})


def x_poly(i: int) -> LaurentPoly:
    return LaurentPoly({((x_id(i), 1),): 1}, _trusted=True)


def y_poly(j: int) -> LaurentPoly:
    return LaurentPoly({((y_id(j), 1),): 1}, _trusted=True)


def add(p: LaurentPoly, q: LaurentPoly, max_terms=None) -> LaurentPoly:
    a, b = p._terms, q._terms
    if not a:
        return q
    if not b:
        return p
    budget = _as_budget(max_terms)
    if budget is not None:
        budget.charge(min(len(a), len(b)))
    if len(b) > len(a):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return LaurentPoly(out, _trusted=True)


def neg(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({m: -c for m, c in p._terms.items()}, _trusted=True)


def _vars_of(terms) -> list[int]:
    vs: set[int] = set()
    for m in terms:
        for v, _ in m:
            vs.add(v)
    return sorted(vs)


def _max_abs_exp(terms) -> int:
    m = 0
    for t in terms:
        for _, e in t:
            if e > m:
                m = e
            elif -e > m:
                m = -e
    return m


def _pack(terms, vidx, bias, field):
    out = {}
    for m, c in terms.items():
        k = bias
        for v, e in m:
            k += e << (field * vidx[v])
        out[k] = c
    return out


def _unpack(packed, vars_, w, field):
    fmask = (1 << field) - 1
    half = 1 << (field - 1)
    out = {}
    for key, c in packed.items():
        if not c:
            continue
        pairs = []
        for i in range(w):
            e = ((key >> (field * i)) & fmask) - half
            if e:
                pairs.append((vars_[i], e))
        out[tuple(pairs)] = c
    return out


def mul(p: LaurentPoly, q: LaurentPoly, max_terms=None) -> LaurentPoly:
    a, b = p._terms, q._terms
    if not a or not b:
        return ZERO
    cost = len(a) * len(b)
    budget = _as_budget(max_terms)
    if budget is not None:
        budget.charge(cost)
    if cost > _DENSE_CUTOFF:
        # packed keys: monomial product is one integer addition; the field
        # width is sized so exponent sums can never reach a neighbour field
        vars_ = _vars_of(a) if a is b else sorted(set(_vars_of(a)) | set(_vars_of(b)))
        vidx = {v: i for i, v in enumerate(vars_)}
        w = len(vars_)
        field = max(16, _max_abs_exp(a).bit_length() + 3,
                    (0 if a is b else _max_abs_exp(b)).bit_length() + 3)
        bias = _bias_all(w, field)
        da = _pack(a, vidx, bias, field)
        db = da if a is b else _pack(b, vidx, bias, field)
        if len(db) > len(da):
            da, db = db, da
        out: dict = {}
        get = out.get
        items = list(da.items())
        for kb, cb in db.items():
            kb -= bias
            for ka, ca in items:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return LaurentPoly(_unpack(out, vars_, w, field), _trusted=True)
    if len(b) > len(a):
        a, b = b, a
    out = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = mono_mul(ma, mb)
            s = get(m, 0) + ca * cb
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return LaurentPoly(out, _trusted=True)


def poly_pow(p: LaurentPoly, e: int, max_terms=None) -> LaurentPoly:
    if e < 0:
        raise ValueError("negative power of a general Laurent polynomial")
    budget = _as_budget(max_terms)
    result = ONE
    base = p
    while e:
        if e & 1:
            result = mul(result, base, budget)
        e >>= 1
        if e:
            base = mul(base, base, budget)
    return result


def unit_monomial_of(p: LaurentPoly):
    """Return (monomial, +-1) if p is a single term with unit coefficient, else None."""
    if len(p._terms) != 1:
        return None
    (m, c), = p._terms.items()
    if c in (1, -1):
        return m, c
    return None


def exact_div(p: LaurentPoly, m: Monomial) -> LaurentPoly:
    """Divide by a one-variable monomial in a cluster variable (always exact)."""
    if len(m) != 1:
        raise ValueError(f"divisor must be a single-variable monomial, got {mono_str(m)}")
    (v, e), = m
    if is_coeff_var(v):
        raise ValueError(f"cannot invert coefficient variable {var_name(v)}")
    inv = ((v, -e),)
    return LaurentPoly({mono_mul(t, inv): c for t, c in p._terms.items()}, _trusted=True)


def _mono_valid(m: Monomial) -> bool:
    return all(e >= 0 or not (v & 1) for v, e in m)


def div_exact(p: LaurentPoly, q: LaurentPoly, max_terms=None) -> LaurentPoly:
    """Exact division p / q inside Z[y][x^(+-1)]; raises NonExactDivision otherwise."""
    if q.is_zero():
        raise NonExactDivision("division by zero")
    if p.is_zero():
        return ZERO
    budget = _as_budget(max_terms)
    single = None
    if len(q._terms) == 1:
        single = next(iter(q._terms.items()))
    if single is not None:
        qm, qc = single
        inv = tuple((v, -e) for v, e in qm)
        out = {}
        for t, c in p._terms.items():
            d, r = divmod(c, qc)
            if r:
                raise NonExactDivision(f"coefficient {c} not divisible by {qc}")
            nm = mono_mul(t, inv)
            if not _mono_valid(nm):
                raise NonExactDivision("quotient leaves coefficient-variable exponent negative")
            out[nm] = d
        return LaurentPoly(out, _trusted=True)

    # General case, on packed exponent keys.  p and q are first shifted
    # independently so every per-variable minimum exponent is 0 (minima of an
    # exact quotient then also start at 0, because min exponents of a product
    # add).  Division then cancels leading terms under the packed-key order,
    # which is lexicographic with the last variable most significant; a
    # max-heap tracks the current leading monomial of the remainder.
    vars_ = sorted({v for t in p._terms for v, _ in t} | {v for t in q._terms for v, _ in t})
    vidx = {v: i for i, v in enumerate(vars_)}
    w = len(vars_)
    field = max(16, (2 * max(_max_abs_exp(p._terms), _max_abs_exp(q._terms))).bit_length() + 4)
    fmask = (1 << field) - 1
    half = 1 << (field - 1)
    bias = _bias_all(w, field)

    def shifted_packed(poly):
        # per-variable minimum exponent, counting absent variables as 0
        lo = [None] * w
        hits = [0] * w
        nterms = len(poly._terms)
        for m in poly._terms:
            for v, e in m:
                i = vidx[v]
                hits[i] += 1
                if lo[i] is None or e < lo[i]:
                    lo[i] = e
        mins = [0 if hits[i] == 0 else (lo[i] if hits[i] == nterms else min(lo[i], 0))
                for i in range(w)]
        shift = sum(mins[i] << (field * i) for i in range(w))
        d = {}
        for m, c in poly._terms.items():
            k = bias - shift
            for v, e in m:
                k += e << (field * vidx[v])
            d[k] = c
        return d, mins

    pd, pmin = shifted_packed(p)
    qd, qmin = shifted_packed(q)
    back = [a - b for a, b in zip(pmin, qmin)]

    lead = max(qd)
    cq = qd[lead]
    rest = [(k - bias, c) for k, c in qd.items() if k != lead]
    lead -= bias
    r = dict(pd)
    h: dict = {}
    heap = [-k for k in pd]
    heapq.heapify(heap)
    while r:
        if not heap:
            raise NonExactDivision("remainder left after division")
        lr = -heapq.heappop(heap)
        cr = r.get(lr)
        if not cr:
            continue
        t = lr - lead
        for i in range(w):
            if ((t >> (field * i)) & fmask) < half:
                raise NonExactDivision("leading monomial not divisible")
        c, rem = divmod(cr, cq)
        if rem:
            raise NonExactDivision(f"leading coefficient {cr} not divisible by {cq}")
        h[t] = c
        del r[lr]
        for mq, cq2 in rest:
            k = t + mq
            s = r.get(k, 0) - c * cq2
            if s:
                if k not in r:
                    heapq.heappush(heap, -k)
                r[k] = s
            elif k in r:
                del r[k]
        if budget is not None:
            budget.charge(1 + len(rest))

    out = {}
    for key, c in h.items():
        t = []
        for i in range(w):
            e = ((key >> (field * i)) & fmask) - half + back[i]
            if e:
                t.append((vars_[i], e))
        t = tuple(t)
        if not _mono_valid(t):
            raise NonExactDivision("quotient leaves coefficient-variable exponent negative")
        out[t] = c
    return LaurentPoly(out, _trusted=True)


def substitute(p: LaurentPoly, mapping: dict[int, LaurentPoly],
               max_terms=None) -> LaurentPoly:
    """Ring-homomorphic substitution; unmapped variables stay themselves.

    A variable occurring with a negative exponent must map to a unit (a single
    term with coefficient +-1 whose inverse stays inside Z[y][x^(+-1)]), else
    NonMonomialInverse is raised.
    """
    if not mapping:
        return p
    if all(len(img._terms) == 1 for img in mapping.values()):
        return _substitute_monomial(p, mapping)
    budget = _as_budget(max_terms)
    acc = ZERO
    for m, c in p._terms.items():
        term = int_poly(c)
        for v, e in m:
            img = mapping.get(v)
            if img is None:
                term = mul(term, mono_poly(((v, e),)), budget)
            elif e >= 0:
                term = mul(term, poly_pow(img, e, budget), budget)
            else:
                um = unit_monomial_of(img)
                if um is None:
                    raise NonMonomialInverse(
                        f"{var_name(v)} has exponent {e} but maps to the non-unit {img}")
                mu, cu = um
                powered = tuple(sorted((vv, ee * e) for vv, ee in mu))
                if not _mono_valid(powered):
                    raise NonMonomialInverse(
                        f"inverse of image of {var_name(v)} leaves Z[y][x^(+-1)]")
                term = mul(term, mono_poly(powered, cu if e % 2 else 1), budget)
        acc = add(acc, term, budget)
    return acc


def _substitute_monomial(p: LaurentPoly, mapping: dict[int, LaurentPoly]) -> LaurentPoly:
    # Every image is a single term: one linear rewrite pass over p.
    images = {}
    for v, img in mapping.items():
        (m, c), = img._terms.items()
        images[v] = (m, c)
    out: dict = {}
    for m, coeff in p._terms.items():
        pairs: list = []
        for v, e in m:
            img = images.get(v)
            if img is None:
                pairs.append((v, e))
                continue
            im, ic = img
            if e < 0 and ic not in (1, -1):
                raise NonMonomialInverse(
                    f"{var_name(v)} has exponent {e} but maps to non-unit coefficient {ic}")
            if ic == -1 and e % 2:
                coeff = -coeff
            elif ic not in (1, -1):
                coeff *= ic ** e
            for vv, ee in im:
                pairs.append((vv, ee * e))
        try:
            nm = mono(pairs)
        except ValueError:
            raise NonMonomialInverse(
                f"substitution leaves a coefficient-variable exponent negative") from None
        s = out.get(nm, 0) + coeff
        if s:
            out[nm] = s
        elif nm in out:
            del out[nm]
    return LaurentPoly(out, _trusted=True)


@dataclass(frozen=True)
class Inhomogeneous:
    """Witness that a polynomial is not homogeneous under a grading."""
    monomial_a: Monomial
    degree_a: tuple
    monomial_b: Monomial
    degree_b: tuple

    def __str__(self):
        return (f"term {mono_str(self.monomial_a)} has degree {self.degree_a} "
                f"but term {mono_str(self.monomial_b)} has degree {self.degree_b}")


def degree_vector(p: LaurentPoly, grading: dict[int, tuple]):
    """Common degree of all terms under the grading, or an Inhomogeneous witness.

    The grading maps variable ids to integer vectors and must cover every
    variable of p.  The zero polynomial has no degree.
    """
    if p.is_zero():
        raise ValueError("zero polynomial is not graded")
    dim = len(next(iter(grading.values()))) if grading else 0

    def mdeg(m):
        d = [0] * dim
        for v, e in m:
            try:
                g = grading[v]
            except KeyError:
                raise ValueError(f"grading not defined for {var_name(v)}") from None
            for i, gi in enumerate(g):
                d[i] += e * gi
        return tuple(d)

    it = iter(p._terms)
    m0 = next(it)
    d0 = mdeg(m0)
    for m in it:
        d = mdeg(m)
        if d != d0:
            return Inhomogeneous(m0, d0, m, d)
    return d0


_TOKEN = re.compile(r"[xy]\d+|\d+|[-+*^]")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the textual polynomial format produced by str()."""
    toks = _TOKEN.findall(text)
    if "".join(toks) != re.sub(r"\s+", "", text):
        raise ValueError(f"bad polynomial text: {text!r}")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def parse_int():
        s = 1
        if peek() == "-":
            take()
            s = -1
        t = peek()
        if t is None or not t.isdigit():
            raise ValueError(f"expected integer in {text!r}")
        return s * int(take())

    terms: dict = {}
    sign = 1
    if peek() == "-":
        take()
        sign = -1
    elif peek() == "+":
        take()
    while True:
        coeff = 1
        pairs: list[tuple[int, int]] = []
        while True:
            t = peek()
            if t is None:
                raise ValueError(f"unexpected end of input in {text!r}")
            if t.isdigit():
                coeff *= int(take())
            elif t[0] in "xy":
                name = take()
                vid = (int(name[1:]) * 2) + (1 if name[0] == "y" else 0)
                e = 1
                if peek() == "^":
                    take()
                    e = parse_int()
                pairs.append((vid, e))
            else:
                raise ValueError(f"unexpected token {t!r} in {text!r}")
            if peek() == "*":
                take()
                continue
            break
        m = mono(pairs)
        c = terms.get(m, 0) + sign * coeff
        if c:
            terms[m] = c
        elif m in terms:
            del terms[m]
        nxt = peek()
        if nxt is None:
            break
        if nxt == "+":
            take()
            sign = 1
        elif nxt == "-":
            take()
            sign = -1
        else:
            raise ValueError(f"unexpected token {nxt!r} in {text!r}")
    return LaurentPoly(terms)
