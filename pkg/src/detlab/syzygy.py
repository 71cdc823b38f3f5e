"""Graded syzygies: linear part by exact degree-wise kernels, full first
syzygy modules by module Groebner bases, Fitting-height checks, and small
minimal free resolutions with graded Betti numbers.

Module terms are (component, exponent) pairs under position-over-term with
the ambient order inside each component; the product (coprime) criterion is
unsound for modules, so pair pruning uses the chain criterion only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd

from .config import Budget, Config, ComputationTimeout, DEFAULT_CONFIG
from .linalg import SparseEliminator, dense_rank, nonzero_minor_witness
from .groebner import Ideal, hilbert_data, _content_strip, _divides
from .polyring import Polynomial, Ring
from .structmat import PolyMatrix, determinant


# ---------------------------------------------------------------------------
# module Groebner engine over integer coefficients

class _VEntry:
    __slots__ = ("lt", "lc", "tail", "mask", "sugar")

    def __init__(self, terms: dict, keyf, shifts, sugar=None):
        lt = max(terms, key=keyf)
        lc = terms[lt]
        if lc < 0:
            terms = {t: -c for t, c in terms.items()}
            lc = -lc
        self.lt = lt
        self.lc = lc
        self.tail = {t: c for t, c in terms.items() if t != lt}
        m = 0
        for i, v in enumerate(lt[1]):
            if v:
                m |= 1 << i
        self.mask = m
        if sugar is None:
            sugar = max(sum(e) + shifts[c] for (c, e) in terms)
        self.sugar = sugar

    def full(self):
        d = dict(self.tail)
        d[self.lt] = self.lc
        return d


def _vkeyf(order_keyf):
    def kf(term):
        c, e = term
        return (-c,) + order_keyf(e)
    return kf


def _vnormal_form(terms: dict, basis: list[_VEntry], kf, budget: Budget,
                  skip: int = -1) -> dict:
    coeffs = dict(terms)
    heap = [(tuple(-v for v in kf(t)), t) for t in coeffs]
    heapify(heap)
    out: dict = {}
    while heap:
        _, t = heappop(heap)
        c = coeffs.pop(t, 0)
        if not c:
            continue
        comp, e = t
        emask = 0
        for i, v in enumerate(e):
            if v:
                emask |= 1 << i
        red = None
        for idx, g in enumerate(basis):
            if idx == skip:
                continue
            if g.lt[0] != comp or (g.mask & ~emask):
                continue
            if _divides(g.lt[1], e):
                red = g
                break
        if red is None:
            out[t] = c
            continue
        budget.tick(1, "module reduction")
        d = gcd(abs(c), red.lc)
        mult = c // d
        sc = red.lc // d
        if sc != 1:
            for k in coeffs:
                coeffs[k] *= sc
            for k in out:
                out[k] *= sc
        shift = tuple(a - b for a, b in zip(e, red.lt[1]))
        for (tc_comp, te), tc in red.tail.items():
            nt = (tc_comp, tuple(a + b for a, b in zip(te, shift)))
            prev = coeffs.get(nt)
            if prev is None:
                coeffs[nt] = -mult * tc
                heappush(heap, (tuple(-v for v in kf(nt)), nt))
            else:
                nv = prev - mult * tc
                if nv:
                    coeffs[nt] = nv
                else:
                    del coeffs[nt]
    return _content_strip(out)


def _vspoly(gi: _VEntry, gj: _VEntry):
    (c, ei), (_, ej) = gi.lt, gj.lt
    lcm = tuple(x if x > y else y for x, y in zip(ei, ej))
    d = gcd(gi.lc, gj.lc)
    mi = gj.lc // d
    mj = gi.lc // d
    si = tuple(a - b for a, b in zip(lcm, ei))
    sj = tuple(a - b for a, b in zip(lcm, ej))
    out: dict = {}
    for (tc, te), v in gi.tail.items():
        out[(tc, tuple(a + b for a, b in zip(te, si)))] = mi * v
    for (tc, te), v in gj.tail.items():
        nt = (tc, tuple(a + b for a, b in zip(te, sj)))
        nv = out.get(nt, 0) - mj * v
        if nv:
            out[nt] = nv
        else:
            out.pop(nt, None)
    sugar = max(gi.sugar + sum(si), gj.sugar + sum(sj))
    return out, sugar


def module_groebner(int_vectors: list[dict], order_keyf, shifts, budget: Budget) -> list[_VEntry]:
    """Reduced module Groebner basis of integer term-dict vectors."""
    kf = _vkeyf(order_keyf)
    seeds = [_VEntry(_content_strip(dict(v)), kf, shifts) for v in int_vectors if v]
    seeds.sort(key=lambda g: kf(g.lt))
    basis: list[_VEntry] = []
    pairs: dict[tuple, tuple] = {}
    heap: list = []

    def add(h: _VEntry):
        n = len(basis)
        cand = {}
        for i, g in enumerate(basis):
            if g.lt[0] == h.lt[0]:
                cand[i] = tuple(x if x > y else y for x, y in zip(g.lt[1], h.lt[1]))
        drop = set()
        for i, li in cand.items():
            for j, lj in cand.items():
                if i != j and j not in drop and li != lj and _divides(lj, li):
                    drop.add(i)
                    break
        seen: dict[tuple, int] = {}
        for i in sorted(cand):
            if i in drop:
                continue
            li = cand[i]
            if li in seen:
                drop.add(i)
            else:
                seen[li] = i
        for (i, j), (lij, _s) in list(pairs.items()):
            gi, gj = basis[i], basis[j]
            if gi.lt[0] == h.lt[0] and _divides(h.lt[1], lij):
                lih = tuple(x if x > y else y for x, y in zip(gi.lt[1], h.lt[1]))
                ljh = tuple(x if x > y else y for x, y in zip(gj.lt[1], h.lt[1]))
                if lih != lij and ljh != lij:
                    del pairs[(i, j)]
        basis.append(h)
        for i, li in cand.items():
            if i in drop:
                continue
            si = tuple(a - b for a, b in zip(li, basis[i].lt[1]))
            sn = tuple(a - b for a, b in zip(li, h.lt[1]))
            sugar = max(basis[i].sugar + sum(si), h.sugar + sum(sn))
            pairs[(i, n)] = (li, sugar)
            heappush(heap, (sugar, kf((h.lt[0], li)), i, n))

    for s in seeds:
        rem = _vnormal_form(s.full(), basis, kf, budget)
        if rem:
            add(_VEntry(rem, kf, shifts, s.sugar))

    while heap:
        sugar, _lk, i, j = heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        budget.tick(1, "module Buchberger")
        sp, sp_sugar = _vspoly(basis[i], basis[j])
        if not sp:
            continue
        rem = _vnormal_form(sp, basis, kf, budget)
        if rem:
            add(_VEntry(rem, kf, shifts, sp_sugar))

    order_idx = sorted(range(len(basis)), key=lambda i: kf(basis[i].lt))
    kept: list[int] = []
    for i in order_idx:
        c, e = basis[i].lt
        if not any(basis[k].lt[0] == c and _divides(basis[k].lt[1], e) for k in kept):
            kept.append(i)
    minimal = [basis[i] for i in kept]
    reduced = []
    for pos in range(len(minimal)):
        rem = _vnormal_form(minimal[pos].full(), minimal, kf, budget=budget, skip=pos)
        reduced.append(_VEntry(rem, kf, shifts, minimal[pos].sugar))
    reduced.sort(key=lambda g: kf(g.lt))
    return reduced


# ---------------------------------------------------------------------------
# conversions

def _column_to_int_vector(col: list[Polynomial]) -> dict:
    out: dict = {}
    den = 1
    for a in col:
        for c in a.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
    for comp, a in enumerate(col):
        for e, c in a.terms.items():
            out[(comp, e)] = int(c * den)
    return _content_strip(out)


def _int_vector_to_column(vec: dict, ring: Ring, rank: int) -> list[Polynomial]:
    cols = [dict() for _ in range(rank)]
    for (comp, e), c in vec.items():
        cols[comp][e] = c
    return [Polynomial(ring, d, _clean=True) for d in cols]


class ModuleBasis:
    """Reduced module GB wrapper for membership/normal-form queries."""

    def __init__(self, columns: list[list[Polynomial]], shifts: list[int],
                 budget: Budget | None = None, config: Config | None = None):
        if not columns:
            raise ValueError("empty module")
        self.ring = columns[0][0].ring
        self.rank = len(columns[0])
        self.shifts = list(shifts)
        config = config or DEFAULT_CONFIG
        b = budget or config.budget()
        vecs = [_column_to_int_vector(c) for c in columns]
        self._kf = _vkeyf(self.ring.order.keyfn())
        self.entries = module_groebner(vecs, self.ring.order.keyfn(), self.shifts, b)
        self._budget = b

    def normal_form_vector(self, col: list[Polynomial]) -> list[Polynomial]:
        vec = _column_to_int_vector(col)
        rem = _vnormal_form(vec, self.entries, self._kf, self._budget)
        return _int_vector_to_column(rem, self.ring, self.rank)

    def contains(self, col: list[Polynomial]) -> bool:
        return all(a.is_zero() for a in self.normal_form_vector(col))


# ---------------------------------------------------------------------------
# first syzygies

class GradedSyzygyMatrix:
    """Columns are exact syzygies of the target forms.

    column_degrees holds the graded degree of each column as an element of
    the shifted free module (entry degree + target degree); for equal-degree
    targets d the linear columns are those of degree d+1.
    """

    def __init__(self, target_degrees: list[int], columns: list[list[Polynomial]],
                 column_degrees: list[int]):
        self.target_degrees = list(target_degrees)
        self.columns = columns
        self.column_degrees = list(column_degrees)

    def __len__(self):
        return len(self.columns)

    def entry_degree(self, i: int) -> int:
        """Degree of the entries of column i over equal-degree targets."""
        d = set(self.target_degrees)
        if len(d) != 1:
            raise ValueError("entry degree needs equal target degrees")
        return self.column_degrees[i] - d.pop()

    def verify(self, forms: list[Polynomial]) -> bool:
        """Exact dot products: every column annihilates the forms."""
        for col in self.columns:
            acc = forms[0].ring.zero()
            for a, f in zip(col, forms):
                acc = acc + a * f
            if not acc.is_zero():
                return False
        return True

    def linear_part(self) -> "GradedSyzygyMatrix":
        keep = [i for i in range(len(self.columns)) if self.entry_degree(i) == 1]
        return GradedSyzygyMatrix(self.target_degrees,
                                  [self.columns[i] for i in keep],
                                  [self.column_degrees[i] for i in keep])

    def as_poly_matrix(self) -> PolyMatrix:
        rows = len(self.target_degrees)
        ring = self.columns[0][0].ring if self.columns else None
        ents = []
        for r in range(rows):
            for col in self.columns:
                ents.append(col[r])
        return PolyMatrix(rows, len(self.columns), ents, "syzygy")


def syzygy_basis_in_degree(forms: list[Polynomial], shift_degree: int,
                           budget: Budget | None = None) -> list[list[Polynomial]]:
    """k-basis of syzygies whose entries have the given degree, by exact
    linear algebra on coefficient space."""
    ring = forms[0].ring
    nv = ring.nvars
    monos = list(_monomials_of_degree(nv, shift_degree))
    cols = {}
    for i, f in enumerate(forms):
        for mi, mono in enumerate(monos):
            cols[(i, mi)] = {
                tuple(a + b for a, b in zip(e, mono)): c for e, c in f.terms.items()}
    colindex = sorted(cols)
    rows: dict[tuple, dict] = {}
    for ci, key in enumerate(colindex):
        for mono, c in cols[key].items():
            rows.setdefault(mono, {})[ci] = c
    elim = SparseEliminator(len(colindex), budget)
    for mono in sorted(rows):
        elim.add_row(rows[mono])
    basis = elim.kernel_basis()
    out = []
    pos = {key: ci for ci, key in enumerate(colindex)}
    for vec in basis:
        col = []
        for i in range(len(forms)):
            terms = {}
            for mi, mono in enumerate(monos):
                v = vec.get(pos[(i, mi)])
                if v:
                    terms[mono] = v
            col.append(Polynomial(ring, terms))
        # exact dot product before emission
        acc = ring.zero()
        for a, f in zip(col, forms):
            acc = acc + a * f
        if not acc.is_zero():
            raise ArithmeticError("kernel vector fails exact verification")
        out.append(col)
    return out


def _monomials_of_degree(nvars: int, d: int):
    if d < 0:
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def linear_syzygies(forms: list[Polynomial], budget: Budget | None = None,
                    config: Config | None = None) -> tuple[GradedSyzygyMatrix, "RankResult"]:
    """Basis of the linear syzygy space and the rank of its column matrix."""
    degs = {f.degree for f in forms}
    if len(degs) != 1:
        raise ValueError("forms must be homogeneous of one degree")
    if not all(f.is_homogeneous() for f in forms):
        raise ValueError("forms must be homogeneous")
    cols = syzygy_basis_in_degree(forms, 1, budget)
    d = degs.pop()
    mat = GradedSyzygyMatrix([d] * len(forms), cols, [d + 1] * len(cols))
    rank = poly_matrix_rank(mat.as_poly_matrix(), config=config) if cols else \
        RankResult(0, "proved", None)
    return mat, rank


class RankResult:
    __slots__ = ("rank", "certainty", "witness", "per_trial_bound")

    def __init__(self, rank: int, certainty: str, witness, per_trial_bound=None):
        self.rank = rank
        self.certainty = certainty  # 'proved' | 'probabilistic'
        self.witness = witness
        self.per_trial_bound = per_trial_bound

    def __repr__(self):
        return f"RankResult({self.rank}, {self.certainty})"


def poly_matrix_rank(M: PolyMatrix, trials: int = 3, config: Config | None = None,
                     exact_size_cap: int = 120) -> RankResult:
    """Rank over the fraction field.

    Random evaluations over a ~2^61 prime field give a certified lower
    bound (a minor nonzero mod p is a nonzero rational).  Full row or
    column rank at a point is already exact; otherwise a fraction-free
    symbolic echelon pass settles the value when the matrix is within
    budget, and the result is labeled probabilistic beyond it.
    """
    from .modp import PRIME_61
    config = config or DEFAULT_CONFIG
    rng = config.rng("poly-matrix-rank")
    p = PRIME_61
    nv = M.ring.nvars
    maxdeg = max((int(e.degree) for e in M.entries if not e.is_zero()), default=0)
    bound = min(M.rows, M.cols) * maxdeg / p
    Mp = [[M[i, j].reduce_mod(p) for j in range(M.cols)] for i in range(M.rows)]
    best = 0
    witness = None
    for _ in range(trials):
        pt = [rng.randrange(0, p) for _ in range(nv)]
        num = [[Mp[i][j].evaluate(pt) for j in range(M.cols)] for i in range(M.rows)]
        r = dense_rank(num, p)
        if r > best:
            best = r
            witness = {"point": pt, "prime": p,
                       "minor": nonzero_minor_witness(num, r, p)}
        if best == min(M.rows, M.cols):
            return RankResult(best, "proved", witness, bound)
    if M.rows * M.cols <= exact_size_cap:
        exact = _poly_matrix_rank_exact(M)
        # the evaluation bound never exceeds the true rank
        return RankResult(exact, "proved", witness, bound)
    return RankResult(best, "probabilistic", witness, bound)


def _poly_matrix_rank_exact(M: PolyMatrix) -> int:
    ring = M.ring
    m = [[M[i, j] for j in range(M.cols)] for i in range(M.rows)]
    from .polyring import exact_divide, NOT_DIVISIBLE
    rank = 0
    prev = ring.one()
    r = 0
    for c in range(M.cols):
        piv = None
        for i in range(r, M.rows):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pk = m[r][c]
        for i in range(r + 1, M.rows):
            for j in range(c + 1, M.cols):
                num = pk * m[i][j] - m[i][c] * m[r][j]
                q = exact_divide(num, prev)
                if q is NOT_DIVISIBLE:
                    raise ArithmeticError("fraction-free elimination mismatch")
                m[i][j] = q
            m[i][c] = ring.zero()
        prev = pk
        r += 1
        rank += 1
        if r == M.rows:
            break
    return rank


def first_syzygy_module(forms: list[Polynomial], budget: Budget | None = None,
                        config: Config | None = None,
                        minimalize: bool = True) -> GradedSyzygyMatrix:
    """Generating set of the full first syzygy module of ring elements."""
    cols = [[f] for f in forms]
    shifts0 = [0]
    return module_syzygies(cols, shifts0, budget, config, minimalize)


def module_syzygies(columns: list[list[Polynomial]], target_shifts: list[int],
                    budget: Budget | None = None, config: Config | None = None,
                    minimalize: bool = True) -> GradedSyzygyMatrix:
    """Syzygies of column vectors in a shifted free module.

    Graph-module elimination: compute a module GB of {col_j ⊕ e_j} with the
    target components dominant; basis elements supported purely on the tag
    components are exactly a generating set of the syzygy module.
    """
    if not columns:
        return GradedSyzygyMatrix([], [], [])
    ring = columns[0][0].ring
    config = config or DEFAULT_CONFIG
    b = budget or config.budget()
    r = len(target_shifts)
    k = len(columns)
    col_degs = []
    for col in columns:
        ds = {a.degree + target_shifts[i] for i, a in enumerate(col) if not a.is_zero()}
        if len(ds) != 1:
            raise ValueError("columns must be homogeneous w.r.t. the shifts")
        col_degs.append(ds.pop())
    shifts = list(target_shifts) + col_degs
    vecs = []
    for j, col in enumerate(columns):
        den = 1
        for a in col:
            for c in a.terms.values():
                if isinstance(c, Fraction):
                    den = den * c.denominator // gcd(den, c.denominator)
        vec = {}
        for comp, a in enumerate(col):
            for e, c in a.terms.items():
                vec[(comp, e)] = int(c * den)
        vec[(r + j, ring._zero_exp)] = den
        vecs.append(vec)
    gb = module_groebner(vecs, ring.order.keyfn(), shifts, b)
    syz_cols = []
    syz_degs = []
    for g in gb:
        full = g.full()
        if all(t[0] >= r for t in full):
            col = [dict() for _ in range(k)]
            for (comp, e), c in full.items():
                col[comp - r][e] = c
            polys = [Polynomial(ring, d, _clean=True) for d in col]
            # exact dot product against the targets before emission
            for comp in range(r):
                acc = ring.zero()
                for a, target_col in zip(polys, columns):
                    acc = acc + a * target_col[comp]
                if not acc.is_zero():
                    raise ArithmeticError("computed relation fails exact verification")
            ds = {a.degree + col_degs[i] for i, a in enumerate(polys) if not a.is_zero()}
            syz_cols.append(polys)
            syz_degs.append(ds.pop())
    result = GradedSyzygyMatrix(col_degs, syz_cols, syz_degs)
    if minimalize and syz_cols:
        result = minimal_generators(result, budget=b)
    return result


def minimal_generators(syz: GradedSyzygyMatrix, budget: Budget | None = None) -> GradedSyzygyMatrix:
    """Graded minimal generating subset via degreewise exact linear algebra.

    An element of degree j is a new generator iff it is independent of
    (chosen generators of lower degree) * monomials plus same-degree picks.
    """
    if not syz.columns:
        return syz
    ring = syz.columns[0][0].ring
    order_degs = sorted(set(syz.column_degrees))
    chosen: list[int] = []
    out_cols = []
    out_degs = []
    for j in order_degs:
        cand = [i for i, d in enumerate(syz.column_degrees) if d == j]
        elim = SparseEliminator(10 ** 9, budget)
        index: dict = {}

        def vec_of(col) -> dict:
            v = {}
            den = 1
            for a in col:
                for c in a.terms.values():
                    if isinstance(c, Fraction):
                        den = den * c.denominator // gcd(den, c.denominator)
            for comp, a in enumerate(col):
                for e, c in a.terms.items():
                    key = (comp, e)
                    if key not in index:
                        index[key] = len(index)
                    v[index[key]] = int(c * den)
            return v

        for i in chosen:
            g = syz.columns[i]
            dg = syz.column_degrees[i]
            if dg >= j:
                continue
            for mono in _monomials_of_degree(ring.nvars, j - dg):
                shifted = [Polynomial(ring, {tuple(a + b for a, b in zip(e, mono)): c
                                             for e, c in p.terms.items()}, _clean=True)
                           for p in g]
                elim.add_row(vec_of(shifted))
        for i in cand:
            if elim.add_row(vec_of(syz.columns[i])):
                chosen.append(i)
                out_cols.append(syz.columns[i])
                out_degs.append(j)
    return GradedSyzygyMatrix(syz.target_degrees, out_cols, out_degs)


# ---------------------------------------------------------------------------
# Fitting condition and Betti tables

class FittingReport:
    def __init__(self, rank: int, rows: list[dict], passed: bool):
        self.rank = rank
        self.rows = rows  # per-t: {"t", "height", "required", "pass", "status"}
        self.passed = passed

    def __repr__(self):
        return f"FittingReport(rank={self.rank}, pass={self.passed})"


def fitting_condition_F1(forms: list[Polynomial], budget: Budget | None = None,
                         config: Config | None = None) -> FittingReport:
    """Height of each Fitting ideal of the presentation vs rank - t + 2."""
    config = config or DEFAULT_CONFIG
    b = budget or config.budget()
    syz = first_syzygy_module(forms, b, config)
    phi = syz.as_poly_matrix()
    rank = poly_matrix_rank(phi, config=config).rank
    ring = phi.ring
    rows = []
    passed = True
    for t in range(1, rank + 1):
        required = rank - t + 2
        try:
            gens = []
            for rsel in itertools.combinations(range(phi.rows), t):
                for csel in itertools.combinations(range(phi.cols), t):
                    b.tick(1, "Fitting minors")
                    d = determinant(phi.submatrix(rsel, csel), enforce_budget=False)
                    if not d.is_zero():
                        gens.append(d)
            if not gens:
                ht = 0
            else:
                I = Ideal(ring, gens)
                if I.is_unit(b, config):
                    ht = ring.nvars  # unit Fitting ideal: condition holds trivially
                else:
                    ht = ring.nvars - hilbert_data(I, None, b, config).dimension
            ok = ht >= required or not gens and required <= 0
            rows.append({"t": t, "height": ht, "required": required,
                         "pass": bool(ok), "status": "complete"})
            passed = passed and ok
        except ComputationTimeout:
            rows.append({"t": t, "height": None, "required": required,
                         "pass": False, "status": "timeout"})
            passed = False
    return FittingReport(rank, rows, passed)


class BettiTable:
    """(homological index, internal degree) -> rank.

    `complete` records whether the resolution terminated below the
    homological cap; alternating sums only reproduce the Hilbert numerator
    for complete tables."""

    def __init__(self, data: dict[tuple[int, int], int], complete: bool = True):
        self.data = dict(data)
        self.complete = complete

    def __getitem__(self, key):
        return self.data.get(key, 0)

    def items(self):
        return self.data.items()

    def alternating_sum(self) -> dict[int, int]:
        """K-polynomial coefficients sum_i (-1)^i beta_{i,j} t^j."""
        out: dict[int, int] = {}
        for (i, j), b in self.data.items():
            v = out.get(j, 0) + ((-1) ** i) * b
            if v:
                out[j] = v
            else:
                out.pop(j, None)
        return out

    def max_index(self) -> int:
        return max((i for i, _ in self.data), default=0)

    def __repr__(self):
        rows = sorted(self.data.items())
        return "BettiTable(" + ", ".join(f"b[{i},{j}]={v}" for (i, j), v in rows) + ")"


def graded_betti(I: Ideal, hom_cap: int = 4, deg_cap: int = 40,
                 budget: Budget | None = None, config: Config | None = None
                 ) -> tuple[BettiTable, list[GradedSyzygyMatrix]]:
    """Minimal graded Betti numbers of R/I by iterated syzygies.

    Returns the table and the list of minimal presentation matrices
    (stage k holds the differential F_{k+1} -> F_k).
    """
    config = config or DEFAULT_CONFIG
    b = budget or config.budget()
    if I.ring.nvars > 7:
        raise ValueError("Betti computation capped at 7 ambient variables")
    gens0 = GradedSyzygyMatrix([0], [[g] for g in I.gens], [g.degree for g in I.gens])
    gens = minimal_generators(gens0, b)
    data: dict[tuple[int, int], int] = {(0, 0): 1}
    stages = []
    cur_cols = gens.columns
    cur_shifts = [0]
    cur_degs = gens.column_degrees
    for d in cur_degs:
        data[(1, d)] = data.get((1, d), 0) + 1
    stages.append(gens)
    level = 1
    complete = not cur_cols
    while cur_cols and level < hom_cap:
        syz = module_syzygies(cur_cols, cur_shifts, b, config, minimalize=True)
        if not syz.columns:
            complete = True
            break
        level += 1
        for d in syz.column_degrees:
            if d <= deg_cap:
                data[(level, d)] = data.get((level, d), 0) + 1
        stages.append(syz)
        cur_shifts = cur_degs
        cur_cols = syz.columns
        cur_degs = syz.column_degrees
    return BettiTable(data, complete), stages


# ---------------------------------------------------------------------------
# bigraded blowup-equation pieces by exact linear algebra
#
# A bihomogeneous element F(y, x) of y-degree s lies in the blowup ideal of
# the forms iff F(f, x) == 0, so each bidegree piece is the kernel of an
# exact linear map on coefficient space.  This is the degree-capped route
# when full elimination is out of reach; results are exact, flagged
# truncated at the ideal level.

def _ymonomials(k: int, s: int):
    return _monomials_of_degree(k, s)


def rees_bigraded_kernel(forms: list[Polynomial], xdeg: int, ydeg: int,
                         budget: Budget | None = None) -> list[Polynomial]:
    """k-basis of bidegree (xdeg, ydeg) elements of the blowup ideal,
    returned in the y,x ring."""
    from .groebner import rees_ring
    ring = forms[0].ring
    k = len(forms)
    target = rees_ring(ring, k)
    xmonos = list(_monomials_of_degree(ring.nvars, xdeg))
    ymonos = list(_ymonomials(k, ydeg))
    # y-power products of the forms, cached
    prod_cache: dict[tuple, Polynomial] = {}

    def yprod(beta: tuple) -> Polynomial:
        got = prod_cache.get(beta)
        if got is not None:
            return got
        acc = ring.one()
        for i, e in enumerate(beta):
            for _ in range(e):
                acc = acc * forms[i]
        prod_cache[beta] = acc
        return acc

    colkeys = [(a, b) for b in ymonos for a in xmonos]
    rows: dict[tuple, dict] = {}
    for ci, (alpha, beta) in enumerate(colkeys):
        if budget is not None:
            budget.tick(1, "bigraded kernel assembly")
        g = yprod(beta)
        for e, c in g.terms.items():
            mono = tuple(a + b for a, b in zip(e, alpha))
            row = rows.setdefault(mono, {})
            row[ci] = row.get(ci, 0) + c
    elim = SparseEliminator(len(colkeys), budget)
    for mono in sorted(rows):
        elim.add_row(rows[mono])
    basis = elim.kernel_basis()
    out = []
    for vec in basis:
        terms: dict = {}
        for ci, v in vec.items():
            alpha, beta = colkeys[ci]
            terms[tuple(beta) + tuple(alpha)] = v
        out.append(Polynomial(target, terms))
    return out


def rees_minimal_bidegree12(forms: list[Polynomial], budget: Budget | None = None,
                            config: Config | None = None):
    """Minimal generators of the blowup ideal in bidegree (1,2).

    Returns (new_generators, kernel_dim, old_span_dim): the kernel of the
    (1,2) evaluation map modulo y-multiples of syzygy forms and x-multiples
    of bidegree (0,2) relations.
    """
    from .groebner import rees_ring
    config = config or DEFAULT_CONFIG
    b = budget or config.budget()
    ring = forms[0].ring
    k = len(forms)
    target = rees_ring(ring, k)
    kernel = rees_bigraded_kernel(forms, 1, 2, b)
    lin, _rank = linear_syzygies(forms, b, config)
    old: list[Polynomial] = []
    for col in lin.columns:
        sigma = target.zero()
        for i, a in enumerate(col):
            if not a.is_zero():
                from .polyring import morph
                sigma = sigma + morph(a, target) * target.var(i)
        for j in range(k):
            old.append(sigma * target.var(j))
    for tau in rees_bigraded_kernel(forms, 0, 2, b):
        for v in range(ring.nvars):
            old.append(tau * target.var(k + v))
    # constant-coefficient linear relations would multiply in as well
    for rho in rees_bigraded_kernel(forms, 0, 1, b):
        for v in range(ring.nvars):
            for j in range(k):
                old.append(rho * target.var(k + v) * target.var(j))

    index: dict = {}

    def vec_of(g: Polynomial) -> dict:
        v = {}
        den = 1
        for c in g.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        for e, c in g.terms.items():
            if e not in index:
                index[e] = len(index)
            v[index[e]] = int(c * den)
        return v

    elim = SparseEliminator(10 ** 9, b)
    for g in old:
        elim.add_row(vec_of(g))
    old_dim = elim.rank
    new_gens = []
    for g in kernel:
        if elim.add_row(vec_of(g)):
            new_gens.append(g)
    return new_gens, len(kernel), old_dim
