"""Buchberger engine and the ideal-theoretic query layer.

The engine works on primitive integer term dicts (denominators cleared,
content stripped) so reduction arithmetic stays in Z; reduced bases are
returned monic over Q.  Pair management uses the normal (sugar) selection
strategy with the standard coprimality and chain elimination criteria.
Every heavy query runs under a Budget and raises ComputationTimeout rather
than returning a wrong answer.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from fractions import Fraction
from heapq import heapify, heappop, heappush
from math import gcd

from .config import Budget, Config, DEFAULT_CONFIG
from .polyring import (
    Polynomial, Ring, MonomialOrder, block_order, morph,
    parse_polynomial, format_polynomial, exact_divide, NOT_DIVISIBLE,
)

# ---------------------------------------------------------------------------
# integer term-dict helpers

def _mask(e: tuple) -> int:
    m = 0
    for i, v in enumerate(e):
        if v:
            m |= 1 << i
    return m


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _content_strip(d: dict) -> dict:
    g = 0
    for v in d.values():
        g = gcd(g, abs(v))
        if g == 1:
            return d
    if g > 1:
        for k in d:
            d[k] //= g
    return d


def to_int_terms(poly: Polynomial) -> dict:
    """Primitive integer form of a rational polynomial (content 1)."""
    if poly.ring.prime is not None:
        raise ValueError("Groebner engine runs over the rationals")
    den = 1
    for c in poly.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    out = {e: int(c * den) for e, c in poly.terms.items()}
    return _content_strip(out)


def from_int_terms(ring: Ring, terms: dict, order: MonomialOrder, monic: bool = True) -> Polynomial:
    if not terms:
        return ring.zero()
    if monic:
        keyf = order.keyfn()
        lt = max(terms, key=keyf)
        lc = terms[lt]
        poly_terms = {}
        for e, c in terms.items():
            q = Fraction(c, lc)
            poly_terms[e] = q.numerator if q.denominator == 1 else q
        return Polynomial(ring, poly_terms, _clean=True)
    return Polynomial(ring, dict(terms), _clean=True)


class _Entry:
    """A basis element: leading data plus tail, all integer coefficients."""

    __slots__ = ("lt", "lc", "tail", "mask", "sugar")

    def __init__(self, terms: dict, keyf, sugar: int | None = None):
        lt = max(terms, key=keyf)
        lc = terms[lt]
        if lc < 0:
            terms = {e: -c for e, c in terms.items()}
            lc = -lc
        self.lt = lt
        self.lc = lc
        self.tail = {e: c for e, c in terms.items() if e != lt}
        self.mask = _mask(lt)
        self.sugar = sugar if sugar is not None else max(sum(e) for e in terms)

    def full(self) -> dict:
        d = dict(self.tail)
        d[self.lt] = self.lc
        return d


def _normal_form_int(terms: dict, basis: list[_Entry], keyf, budget: Budget,
                     skip: int = -1) -> tuple[dict, int]:
    """Full reduction of an integer term dict; returns (remainder, scale).

    The invariant is scale * input == remainder (mod ideal).  The remainder
    has no term divisible by any basis leading monomial.
    """
    coeffs = dict(terms)
    heap = [(tuple(-v for v in keyf(e)), e) for e in coeffs]
    heapify(heap)
    out: dict = {}
    scale = 1
    scale_events = 0
    while heap:
        _, e = heappop(heap)
        c = coeffs.pop(e, 0)
        if not c:
            continue
        emask = _mask(e)
        red = None
        for idx, g in enumerate(basis):
            if idx == skip:
                continue
            if g.mask & ~emask:
                continue
            glt = g.lt
            ok = True
            for x, y in zip(glt, e):
                if x > y:
                    ok = False
                    break
            if ok:
                red = g
                break
        if red is None:
            out[e] = c
            continue
        budget.tick(1, "polynomial reduction")
        d = gcd(abs(c), red.lc)
        mult = c // d
        sc = red.lc // d
        if sc != 1:
            scale *= sc
            for k in coeffs:
                coeffs[k] *= sc
            for k in out:
                out[k] *= sc
            scale_events += 1
            if scale_events % 32 == 0 and abs(scale) > 1 << 2048:
                # strip only factors shared with the scalar, keeping the
                # invariant scale * input == remainder exact
                g = abs(scale)
                for v in coeffs.values():
                    g = gcd(g, abs(v))
                    if g == 1:
                        break
                if g > 1:
                    for v in out.values():
                        g = gcd(g, abs(v))
                        if g == 1:
                            break
                if g > 1:
                    for k in coeffs:
                        coeffs[k] //= g
                    for k in out:
                        out[k] //= g
                    scale //= g
        shift = tuple(a - b for a, b in zip(e, red.lt))
        for te, tc in red.tail.items():
            ne = tuple(a + b for a, b in zip(te, shift))
            prev = coeffs.get(ne)
            if prev is None:
                coeffs[ne] = -mult * tc
                heappush(heap, (tuple(-v for v in keyf(ne)), ne))
            else:
                nv = prev - mult * tc
                if nv:
                    coeffs[ne] = nv
                else:
                    del coeffs[ne]
    return out, scale


def _spoly(gi: _Entry, gj: _Entry) -> tuple[dict, int]:
    """Integer s-polynomial and its sugar degree."""
    lcm = _lcm_exp(gi.lt, gj.lt)
    d = gcd(gi.lc, gj.lc)
    mi = gj.lc // d
    mj = gi.lc // d
    si = tuple(a - b for a, b in zip(lcm, gi.lt))
    sj = tuple(a - b for a, b in zip(lcm, gj.lt))
    out: dict = {}
    for e, c in gi.tail.items():
        out[tuple(a + b for a, b in zip(e, si))] = mi * c
    for e, c in gj.tail.items():
        ne = tuple(a + b for a, b in zip(e, sj))
        v = out.get(ne, 0) - mj * c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    sugar = max(gi.sugar + sum(si), gj.sugar + sum(sj))
    return out, sugar


def groebner_entries(int_gens: list[dict], keyf, budget: Budget) -> list[_Entry]:
    """Reduced Groebner basis as integer entries (primitive, positive lc)."""
    seeds = []
    for d in int_gens:
        if d:
            seeds.append(_Entry(_content_strip(dict(d)), keyf))
    seeds.sort(key=lambda g: (keyf(g.lt), sorted(g.tail.items())))

    basis: list[_Entry] = []
    pairs: dict[tuple, tuple] = {}  # (i,j) -> (lcm, sugar)
    heap: list = []

    def coprime(a: tuple, b: tuple) -> bool:
        for x, y in zip(a, b):
            if x and y:
                return False
        return True

    def add_element(h: _Entry):
        n = len(basis)
        new_pairs = {}
        for i, g in enumerate(basis):
            new_pairs[i] = _lcm_exp(g.lt, h.lt)
        # chain criterion against new element: drop (i,n) when another new
        # pair lcm properly divides it
        drop = set()
        for i, li in new_pairs.items():
            for j, lj in new_pairs.items():
                if i == j or j in drop:
                    continue
                if li != lj and _divides(lj, li):
                    drop.add(i)
                    break
        # keep one representative per equal lcm, preferring coprime drop
        seen: dict[tuple, int] = {}
        for i in sorted(new_pairs):
            if i in drop:
                continue
            li = new_pairs[i]
            if coprime(basis[i].lt, h.lt):
                drop.add(i)
                seen.setdefault(li, -1)  # coprime kills the whole class
                continue
            if li in seen:
                drop.add(i)
            else:
                seen[li] = i
        # prune old pairs by the chain criterion through lt(h)
        for (i, j), (lij, _s) in list(pairs.items()):
            if _divides(h.lt, lij) and _lcm_exp(basis[i].lt, h.lt) != lij \
                    and _lcm_exp(basis[j].lt, h.lt) != lij:
                del pairs[(i, j)]
        basis.append(h)
        for i, li in new_pairs.items():
            if i in drop:
                continue
            si = tuple(a - b for a, b in zip(li, basis[i].lt))
            sn = tuple(a - b for a, b in zip(li, h.lt))
            sugar = max(basis[i].sugar + sum(si), h.sugar + sum(sn))
            pairs[(i, n)] = (li, sugar)
            heappush(heap, (sugar, keyf(li), i, n))

    for s in seeds:
        rem, _ = _normal_form_int(s.full(), basis, keyf, budget)
        if rem:
            add_element(_Entry(_content_strip(rem), keyf, s.sugar))

    while heap:
        sugar, lk, i, j = heappop(heap)
        info = pairs.pop((i, j), None)
        if info is None:
            continue
        budget.tick(1, "Buchberger")
        sp, sp_sugar = _spoly(basis[i], basis[j])
        if not sp:
            continue
        rem, _ = _normal_form_int(sp, basis, keyf, budget)
        if rem:
            add_element(_Entry(_content_strip(rem), keyf, sp_sugar))

    # minimalize: drop entries whose lt is divisible by another kept lt
    order_idx = sorted(range(len(basis)), key=lambda i: keyf(basis[i].lt))
    kept: list[int] = []
    for i in order_idx:
        lt = basis[i].lt
        if not any(_divides(basis[k].lt, lt) for k in kept):
            kept.append(i)
    minimal = [basis[i] for i in kept]
    # tail-reduce each against the others (reduced basis)
    reduced: list[_Entry] = []
    for pos in range(len(minimal)):
        rem, _ = _normal_form_int(minimal[pos].full(), minimal, keyf, skip=pos,
                                  budget=budget)
        reduced.append(_Entry(_content_strip(rem), keyf, minimal[pos].sugar))
    reduced.sort(key=lambda g: keyf(g.lt))
    return reduced


# ---------------------------------------------------------------------------
# GB cache (in-memory + optional content-addressed disk cache)

_MEMORY_CACHE: dict[str, list[str]] = {}


def _cache_key(ring: Ring, order: MonomialOrder, gens: list[Polynomial]) -> str:
    mode = "QQ" if ring.prime is None else f"GF{ring.prime}"
    body = "|".join([mode, ",".join(ring.variables), order.id,
                     ";".join(sorted(format_polynomial(g) for g in gens))])
    return hashlib.sha256(body.encode()).hexdigest()


def _disk_get(cache_dir: str, key: str) -> list[str] | None:
    path = os.path.join(cache_dir, key + ".gb")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return [line.strip() for line in fh if line.strip()]
    except OSError:
        return None


def _disk_put(cache_dir: str, key: str, lines: list[str]) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".gb")
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)  # atomic single-writer discipline
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# Ideal

class Ideal:
    """Generator list plus per-order cached reduced Groebner bases."""

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        clean = []
        seen = set()
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be polynomials")
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                continue
            s = format_polynomial(g)
            if s not in seen:
                seen.add(s)
                clean.append(g)
        self.gens = clean
        self._gb: dict[str, tuple[list[Polynomial], list[_Entry]]] = {}

    def __repr__(self):
        show = ", ".join(str(g) for g in self.gens[:4])
        more = "" if len(self.gens) <= 4 else f", ... ({len(self.gens)} gens)"
        return f"Ideal({show}{more})"

    def is_zero(self) -> bool:
        return not self.gens

    def _resolve(self, order: MonomialOrder | None) -> MonomialOrder:
        return order if order is not None else self.ring.order

    def groebner_basis(self, order: MonomialOrder | None = None,
                       budget: Budget | None = None,
                       config: Config | None = None) -> list[Polynomial]:
        """Reduced (monic) Groebner basis; deterministic given order."""
        order = self._resolve(order)
        config = config or DEFAULT_CONFIG
        if order.id in self._gb:
            return self._gb[order.id][0]
        if not self.gens:
            self._gb[order.id] = ([], [])
            return []
        key = _cache_key(self.ring, order, self.gens)
        lines = _MEMORY_CACHE.get(key)
        if lines is None and config.cache_dir:
            lines = _disk_get(config.cache_dir, key)
        keyf = order.keyfn()
        if lines is not None:
            polys = [parse_polynomial(self.ring, s) for s in lines]
            entries = [_Entry(to_int_terms(p), keyf) for p in polys]
            self._gb[order.id] = (polys, entries)
            _MEMORY_CACHE[key] = lines
            return polys
        if budget is None:
            budget = config.budget()
        entries = groebner_entries([to_int_terms(g) for g in self.gens], keyf, budget)
        polys = [from_int_terms(self.ring, e.full(), order) for e in entries]
        self._gb[order.id] = (polys, entries)
        lines = [format_polynomial(p) for p in polys]
        _MEMORY_CACHE[key] = lines
        if config.cache_dir:
            _disk_put(config.cache_dir, key, lines)
        return polys

    def _entries(self, order, budget=None, config=None) -> list[_Entry]:
        order = self._resolve(order)
        self.groebner_basis(order, budget, config)
        return self._gb[order.id][1]

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None,
                    budget: Budget | None = None, config: Config | None = None) -> Polynomial:
        """Canonical remainder of f under full reduction."""
        order = self._resolve(order)
        entries = self._entries(order, budget, config)
        if f.is_zero() or not entries:
            return f
        config = config or DEFAULT_CONFIG
        if budget is None:
            budget = config.budget()
        den = 1
        for c in f.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in f.terms.items()}
        rem, scale = _normal_form_int(ints, entries, order.keyfn(), budget)
        total = den * scale
        return Polynomial(self.ring, {e: Fraction(c, total) for e, c in rem.items()})

    def contains(self, f: Polynomial, order=None, budget=None, config=None) -> bool:
        return self.normal_form(f, order, budget, config).is_zero()

    def contains_ideal(self, other: "Ideal", order=None, budget=None, config=None) -> bool:
        return all(self.contains(g, order, budget, config) for g in other.gens)

    def leading_monomials(self, order=None, budget=None, config=None) -> list[tuple]:
        entries = self._entries(self._resolve(order), budget, config)
        return [g.lt for g in entries]

    def initial_ideal(self, order=None, budget=None, config=None) -> "Ideal":
        """Monomial ideal of leading terms of the reduced basis."""
        order = self._resolve(order)
        lms = self.leading_monomials(order, budget, config)
        return Ideal(self.ring, [self.ring.monomial(e) for e in lms])

    def is_unit(self, budget=None, config=None) -> bool:
        gb = self.groebner_basis(None, budget, config)
        return any(g.is_constant() and not g.is_zero() for g in gb)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    gens = []
    seen = set()
    for a in I.gens:
        for b in J.gens:
            g = a * b
            s = format_polynomial(g)
            if s not in seen:
                seen.add(s)
                gens.append(g)
    return Ideal(I.ring, gens)


def ideal_power(I: Ideal, k: int) -> Ideal:
    if k < 0:
        raise ValueError("negative ideal power")
    if k == 0:
        return Ideal(I.ring, [I.ring.one()])
    acc = I
    for _ in range(k - 1):
        acc = ideal_product(acc, I)
    return acc


def ideal_equal(I: Ideal, J: Ideal, budget=None, config=None) -> bool:
    """Mutual membership of generators."""
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    return I.contains_ideal(J, budget=budget, config=config) and \
        J.contains_ideal(I, budget=budget, config=config)


# ---------------------------------------------------------------------------
# elimination, intersection, colon, saturation

def _fresh_names(base: str, count: int, taken) -> list[str]:
    out = []
    i = 0
    while len(out) < count:
        name = base if i == 0 else f"{base}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def eliminate(I: Ideal, keep_indices, budget=None, config=None) -> Ideal:
    """I ∩ k[kept variables], returned over the subring of kept variables."""
    ring = I.ring
    keep = sorted(keep_indices)
    drop = [i for i in range(ring.nvars) if i not in keep]
    if not drop:
        return Ideal(ring, list(I.gens))
    order = block_order([drop, keep])
    gb = I.groebner_basis(order, budget, config)
    keepset = set(keep)
    sub = Ring(tuple(ring.variables[i] for i in keep), prime=ring.prime)
    out = []
    for g in gb:
        if g.support_vars() <= keepset:
            out.append(morph(g, sub))
    return Ideal(sub, out)


def intersect(I: Ideal, J: Ideal, budget=None, config=None) -> Ideal:
    """Tag-variable elimination: (u*I + (1-u)*J) ∩ k[x]."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    tag = _fresh_names("u", 1, ring.variables)[0]
    ext = Ring((tag,) + ring.variables, prime=ring.prime)
    u = ext.var(0)
    gi = I.groebner_basis(None, budget, config)
    gj = J.groebner_basis(None, budget, config)
    gens = [u * morph(g, ext) for g in gi]
    gens += [(ext.one() - u) * morph(g, ext) for g in gj]
    K = Ideal(ext, gens)
    elim = eliminate(K, range(1, ext.nvars), budget, config)
    return Ideal(ring, [morph(g, ring) for g in elim.gens])


def colon_poly(I: Ideal, g: Polynomial, budget=None, config=None) -> Ideal:
    """I : (g) via intersection with the principal ideal then exact division."""
    if g.is_zero():
        raise ZeroDivisionError("colon by zero polynomial")
    K = intersect(I, Ideal(I.ring, [g]), budget, config)
    out = []
    for h in K.gens:
        q = exact_divide(h, g)
        if q is NOT_DIVISIBLE:
            raise ArithmeticError("intersection generator not divisible; internal error")
        out.append(q)
    return Ideal(I.ring, out)


def colon(I: Ideal, J, budget=None, config=None) -> Ideal:
    """I : J; a non-principal J is handled generator by generator."""
    if isinstance(J, Polynomial):
        return colon_poly(I, J, budget, config)
    if J.is_zero():
        raise ZeroDivisionError("colon by the zero ideal")
    gens = J.groebner_basis(None, budget, config)
    if len(J.gens) < len(gens):
        gens = J.gens
    acc: Ideal | None = None
    for g in gens:
        c = colon_poly(I, g, budget, config)
        acc = c if acc is None else intersect(acc, c, budget, config)
        # the result always contains I; once acc == I it cannot shrink further
        if acc is not None and I.contains_ideal(acc, budget=budget, config=config):
            return acc
    return acc if acc is not None else Ideal(I.ring, [I.ring.one()])


def saturation(I: Ideal, J, budget=None, config=None) -> tuple[Ideal, int]:
    """Stabilized iterated colon; returns (saturation, number of steps)."""
    steps = 0
    cur = I
    while True:
        nxt = colon(cur, J, budget, config)
        steps += 1
        if ideal_equal(nxt, cur, budget, config):
            return cur, steps
        cur = nxt


def radical_membership(f: Polynomial, I: Ideal, budget=None, config=None) -> bool:
    """True iff 1 ∈ I + (1 - w*f) in the ring extended by a tag variable."""
    ring = I.ring
    if f.is_zero():
        return True
    tag = _fresh_names("w", 1, ring.variables)[0]
    ext = Ring(ring.variables + (tag,), prime=ring.prime)
    w = ext.var(ext.nvars - 1)
    gens = [morph(g, ext) for g in I.gens]
    gens.append(ext.one() - w * morph(f, ext))
    return Ideal(ext, gens).is_unit(budget, config)


# ---------------------------------------------------------------------------
# Hilbert series of monomial quotients, dimension, multiplicity

class HilbertData:
    """dimension, multiplicity and the Hilbert numerator N with
    HS(R/I) = N(t) / (1-t)^{#vars}."""

    __slots__ = ("dimension", "multiplicity", "numerator")

    def __init__(self, dimension: int, multiplicity: int, numerator: dict[int, int]):
        self.dimension = dimension
        self.multiplicity = multiplicity
        self.numerator = numerator

    def numerator_string(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for d in sorted(self.numerator):
            c = self.numerator[d]
            mono = "1" if d == 0 else ("t" if d == 1 else f"t^{d}")
            body = mono if abs(c) == 1 and d else (str(abs(c)) if d == 0 else f"{abs(c)}*{mono}")
            parts.append(("-" if c < 0 else ("+" if parts else "")) + body)
        return " ".join(parts)

    def __repr__(self):
        return (f"HilbertData(dim={self.dimension}, mult={self.multiplicity}, "
                f"N={self.numerator_string()})")


def _minimalize_monomials(gens) -> tuple:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(out)


def _poly_t_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            v = out.get(d, 0) + ca * cb
            if v:
                out[d] = v
            else:
                out.pop(d, None)
    return out


def _hilbert_numerator(gens: tuple, nvars: int, memo: dict, budget: Budget) -> dict:
    gens = _minimalize_monomials(gens)
    if gens in memo:
        return memo[gens]
    budget.tick(1, "Hilbert series")
    if not gens:
        return {0: 1}
    if any(sum(e) == 0 for e in gens):
        return {}
    # disjoint supports: Koszul product formula
    seen_vars = 0
    disjoint = True
    for e in gens:
        m = _mask(e)
        if m & seen_vars:
            disjoint = False
            break
        seen_vars |= m
    if disjoint:
        acc = {0: 1}
        for e in gens:
            acc = _poly_t_mul(acc, {0: 1, sum(e): -1})
        memo[gens] = acc
        return acc
    # pivot on the most frequent variable
    counts = [0] * nvars
    for e in gens:
        for i, v in enumerate(e):
            if v:
                counts[i] += 1
    piv = max(range(nvars), key=lambda i: counts[i])
    # I + (x_piv) and I : x_piv
    plus = tuple(e for e in gens if not e[piv]) + (
        tuple(1 if i == piv else 0 for i in range(nvars)),)
    quot = tuple(e[:piv] + (e[piv] - 1 if e[piv] else 0,) + e[piv + 1:] for e in gens)
    n_plus = _hilbert_numerator(plus, nvars, memo, budget)
    n_quot = _hilbert_numerator(quot, nvars, memo, budget)
    out = dict(n_plus)
    for d, c in n_quot.items():
        v = out.get(d + 1, 0) + c
        if v:
            out[d + 1] = v
        else:
            out.pop(d + 1, None)
    memo[gens] = out
    return out


def _divide_out_one_minus_t(num: dict) -> tuple[dict, int]:
    """Write num = (1-t)^c * Q with Q(1) != 0; returns (Q, c)."""
    def at_one(d):
        return sum(d.values())

    c = 0
    cur = dict(num)
    while cur and at_one(cur) == 0:
        # synthetic division by (1 - t): q_d = sum_{j<=d} cur_j
        degs = sorted(cur)
        maxd = degs[-1]
        q: dict = {}
        acc = 0
        for d in range(0, maxd):
            acc += cur.get(d, 0)
            if acc:
                q[d] = acc
        cur = q
        c += 1
    return cur, c


def hilbert_data(I: Ideal, order=None, budget=None, config=None) -> HilbertData:
    """Dimension, multiplicity, Hilbert numerator of R/I via in(I)."""
    config = config or DEFAULT_CONFIG
    if budget is None:
        budget = config.budget()
    nvars = I.ring.nvars
    if I.is_zero():
        return HilbertData(nvars, 1, {0: 1})
    lms = I.leading_monomials(order, budget, config)
    num = _hilbert_numerator(tuple(lms), nvars, {}, budget)
    if not num:
        return HilbertData(-1, 0, {})
    q, c = _divide_out_one_minus_t(num)
    mult = sum(q.values())
    return HilbertData(nvars - c, abs(mult), num)


def krull_dimension(I: Ideal, budget=None, config=None) -> int:
    return hilbert_data(I, None, budget, config).dimension


def height(I: Ideal, budget=None, config=None) -> int:
    """Codimension of I in its ambient polynomial ring."""
    return I.ring.nvars - hilbert_data(I, None, budget, config).dimension


# ---------------------------------------------------------------------------
# Rees ideal by tag elimination

class ReesResult:
    """Blowup-equation ideal in k[y, x]; y_i corresponds to forms[i]."""

    __slots__ = ("ideal", "ny", "nx", "truncated")

    def __init__(self, ideal: Ideal, ny: int, nx: int, truncated: bool = False):
        self.ideal = ideal
        self.ny = ny
        self.nx = nx
        self.truncated = truncated

    def bidegree(self, g: Polynomial) -> tuple[int, int]:
        """(x-degree, y-degree) of a bihomogeneous element."""
        bids = set()
        for e in g.terms:
            yd = sum(e[:self.ny])
            xd = sum(e[self.ny:])
            bids.add((xd, yd))
        if len(bids) != 1:
            raise ValueError("element is not bihomogeneous")
        return bids.pop()

    def generators_of_y_degree(self, s: int) -> list[Polynomial]:
        return [g for g in self.ideal.gens if self.bidegree(g)[1] == s]


def rees_ring(ring: Ring, nforms: int) -> Ring:
    yvars = tuple(f"y{i}" for i in range(nforms))
    return Ring(yvars + ring.variables, prime=ring.prime)


def rees_ideal(forms: list[Polynomial], budget=None, config=None) -> ReesResult:
    """Kernel of y_i -> t*f_i, by eliminating t with block order t >> y >> x."""
    if not forms:
        raise ValueError("need at least one form")
    ring = forms[0].ring
    degs = {f.degree for f in forms}
    if len(degs) != 1 or not all(f.is_homogeneous() for f in forms):
        raise ValueError("forms must be homogeneous of one degree")
    n = len(forms)
    ext = Ring(("t",) + tuple(f"y{i}" for i in range(n)) + ring.variables,
               prime=ring.prime)
    order = block_order([[0], list(range(1, n + 1)), list(range(n + 1, ext.nvars))])
    t = ext.var(0)
    gens = []
    for i, f in enumerate(forms):
        gens.append(ext.var(1 + i) - t * morph(f, ext))
    K = Ideal(ext, gens)
    gb = K.groebner_basis(order, budget, config)
    target = rees_ring(ring, n)
    out = []
    for g in gb:
        if 0 not in g.support_vars():
            out.append(morph(g, target))
    return ReesResult(Ideal(target, out), n, ring.nvars, truncated=False)


def symmetric_algebra_ideal(forms: list[Polynomial], syzygy_columns) -> ReesResult:
    """Ideal of 1-forms sum_i a_i y_i from syzygy columns (a_0..a_n)."""
    ring = forms[0].ring
    n = len(forms)
    target = rees_ring(ring, n)
    gens = []
    for col in syzygy_columns:
        acc = target.zero()
        for i, a in enumerate(col):
            if not a.is_zero():
                acc = acc + morph(a, target) * target.var(i)
        if not acc.is_zero():
            gens.append(acc)
    return ReesResult(Ideal(target, gens), n, ring.nvars, truncated=True)


# ---------------------------------------------------------------------------
# self-certification

def certify_groebner(I: Ideal, order=None, budget=None, config=None) -> bool:
    """All s-polynomials of basis pairs reduce to zero."""
    order = I._resolve(order)
    entries = I._entries(order, budget, config)
    config = config or DEFAULT_CONFIG
    if budget is None:
        budget = config.budget()
    keyf = order.keyfn()
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            sp, _ = _spoly(entries[i], entries[j])
            if not sp:
                continue
            rem, _ = _normal_form_int(sp, entries, keyf, budget)
            if rem:
                return False
    return True
