"""Bracket combinatorics for the anti-diagonal (Hankel) family: maximal
minors of the associated rectangular matrix, their componentwise partial
order, the expansion of the determinant's partials into incomparable
brackets, quadratic (Pluecker) relations, radical certification, and the
colon-filtration conjecture checker.

Bracket indices are 1-based, mirroring the classical diagrams.  Bracket
formulas are verified up to one global sign per partial derivative; the
sign is recorded, never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .config import Budget, Config, ComputationTimeout, DEFAULT_CONFIG
from .groebner import (Ideal, colon, ideal_power, ideal_product,
                       ideal_equal, radical_membership)
from .linalg import kernel_basis
from .polyring import Polynomial
from .structmat import build_structured, build_gp_associated, determinant, minor, minors_ideal_gens


def bracket_minor(m: int, r: int, cols: tuple[int, ...]) -> Polynomial:
    """Maximal minor of the (m-1) x (m+r) associated matrix on 1-based columns."""
    G = build_gp_associated(m, r)
    cols = tuple(cols)
    if len(cols) != m - 1 or any(not 1 <= c <= m + r for c in cols) or \
            list(cols) != sorted(set(cols)):
        raise ValueError(f"bad bracket {cols} for ({m},{r})")
    return minor(G, range(m - 1), [c - 1 for c in cols])


def bracket_compare(a: tuple, b: tuple) -> str:
    """Componentwise order: 'le', 'ge', 'equal' or 'incomparable'."""
    if len(a) != len(b):
        raise ValueError("bracket length mismatch")
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    if le and ge:
        return "equal"
    if le:
        return "le"
    if ge:
        return "ge"
    return "incomparable"


@dataclass
class BracketExpansion:
    """Signed integer combination of brackets equal to a partial derivative."""

    m: int
    j: int
    coefficients: list[tuple[int, tuple]]
    epsilon: int  # global sign making the identity exact

    def brackets(self) -> list[tuple]:
        return [b for _, b in self.coefficients]

    def pairwise_incomparable(self) -> bool:
        bs = self.brackets()
        for x, y in itertools.combinations(bs, 2):
            if bracket_compare(x, y) != "incomparable":
                return False
        return True

    def value(self) -> Polynomial:
        acc = None
        for c, b in self.coefficients:
            t = bracket_minor(self.m, 1, b) * c
            acc = t if acc is None else acc + t
        return acc * self.epsilon


def _omit(m: int, omitted: tuple[int, int]) -> tuple:
    a, b = omitted
    return tuple(c for c in range(1, m + 2) if c not in (a, b))


def star_expansion(m: int, j: int) -> BracketExpansion:
    """Expansion of the j-th partial of the anti-diagonal determinant into
    incomparable brackets, with the global sign solved, not assumed."""
    n = m  # the bracket formulas use the matrix size
    if not 0 <= j <= 2 * m - 2:
        raise ValueError("partial index out of range")
    combo: list[tuple[int, tuple]] = []
    if j < n:
        for i in range(0, j // 2 + 1):
            coeff = j + 1 - 2 * i
            omitted = (i + 1, j + 2 - i)
            if omitted[0] == omitted[1] or not all(1 <= o <= n + 1 for o in omitted):
                continue
            combo.append((coeff, _omit(m, omitted)))
    else:
        for i in range(1, (2 * n - j) // 2 + 1):
            coeff = 2 * n + 1 - j - 2 * i
            omitted = (i + 1 + j - n, n + 2 - i)
            if omitted[0] == omitted[1] or not all(1 <= o <= n + 1 for o in omitted):
                continue
            combo.append((coeff, _omit(m, omitted)))
    H = build_structured("hankel", m=m)
    f = determinant(H)
    target = f.diff(j)
    acc = None
    for c, b in combo:
        t = bracket_minor(m, 1, b) * c
        acc = t if acc is None else acc + t
    if acc == target:
        eps = 1
    elif -acc == target:
        eps = -1
    else:
        raise ArithmeticError(f"bracket expansion mismatch for partial {j}")
    return BracketExpansion(m, j, combo, eps)


# ---------------------------------------------------------------------------
# minor-sum expansions of the partials

@dataclass
class GolbergReport:
    m: int
    partial_signs: list[int]
    partials_ok: bool
    delta_ok: bool
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.partials_ok and self.delta_ok


def _hankel_minor(H, k: int, l: int) -> Polynomial:
    """Submaximal minor omitting row l and column k (1-based, unsigned)."""
    m = H.rows
    rows = [i for i in range(m) if i != l - 1]
    cols = [i for i in range(m) if i != k - 1]
    return minor(H, rows, cols)


def delta_bracket_expansion(m: int, j: int, i: int) -> Polynomial:
    """Bracket combination carried by the minor omitting row i, column j:
    sum over valid l of [omit l, omit i+j+1-l]."""
    if j < i:
        j, i = i, j
    acc = None
    for l in range(max(1, i + j - m), min(i, (i + j) // 2) + 1):
        other = i + j + 1 - l
        if other <= l or other > m + 1:
            continue
        t = bracket_minor(m, 1, _omit(m, (l, other)))
        acc = t if acc is None else acc + t
    if acc is None:
        raise ValueError(f"empty bracket expansion for minor ({j},{i})")
    return acc


def golberg_delta_check(m: int) -> GolbergReport:
    """Partials as sums of submaximal minors along the anti-diagonal, and
    each minor as a bracket combination; both as exact identities."""
    if m > 5:
        raise ValueError("minor-sum check capped at m = 5")
    H = build_structured("hankel", m=m)
    f = determinant(H)
    signs = []
    partials_ok = True
    details = []
    for idx in range(2 * m - 1):
        acc = None
        for k in range(1, m + 1):
            l = idx + 2 - k
            if 1 <= l <= m:
                t = _hankel_minor(H, k, l)
                acc = t if acc is None else acc + t
        target = f.diff(idx)
        if acc == target:
            signs.append(1)
        elif -acc == target:
            signs.append(-1)
        else:
            signs.append(0)
            partials_ok = False
            details.append(f"partial {idx}: minor sum mismatch")
    delta_ok = True
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            direct = _hankel_minor(H, j, i)
            try:
                expanded = delta_bracket_expansion(m, j, i)
            except ValueError:
                delta_ok = False
                details.append(f"minor ({j},{i}): no bracket expansion")
                continue
            if direct != expanded and direct != -expanded:
                delta_ok = False
                details.append(f"minor ({j},{i}): bracket expansion mismatch")
    return GolbergReport(m, signs, partials_ok, delta_ok, details)


# ---------------------------------------------------------------------------
# quadratic bracket relations

def plucker_verify(m: int, r: int, terms: list[tuple[int | Fraction, tuple, tuple]]) -> bool:
    """Exact-zero test of a formal sum of bracket products."""
    acc = None
    for c, b1, b2 in terms:
        t = bracket_minor(m, r, b1) * bracket_minor(m, r, b2) * c
        acc = t if acc is None else acc + t
    return acc is not None and acc.is_zero()


def three_term_plucker(m: int, r: int, quad: tuple[int, int, int, int]) -> bool:
    """The classical 3-term relation on two-row matrices (m = 3)."""
    a, b, c, d = quad
    return plucker_verify(m, r, [
        (1, (a, b), (c, d)), (-1, (a, c), (b, d)), (1, (a, d), (b, c))])


@dataclass
class SolvedIdentity:
    coefficients: list[Fraction]
    verified: bool


def solve_bracket_identity(lhs: Polynomial, rhs_parts: list[Polynomial]) -> SolvedIdentity:
    """Solve lhs = sum_i c_i * rhs_parts[i] for rational constants exactly."""
    index: dict = {}
    rows: dict = {}

    def add(poly: Polynomial, col: int):
        for e, v in poly.terms.items():
            if e not in index:
                index[e] = len(index)
            rows.setdefault(index[e], {})[col] = rows.get(index[e], {}).get(col, 0) + v

    ncols = len(rhs_parts)
    for ci, g in enumerate(rhs_parts):
        add(g, ci)
    add(lhs, ncols)  # augmented column
    vecs = kernel_basis([rows[k] for k in sorted(rows)], ncols + 1)
    for vec in vecs:
        lam = vec.get(ncols, Fraction(0))
        if lam:
            coeffs = [-vec.get(i, Fraction(0)) / lam for i in range(ncols)]
            check = lhs
            for c, g in zip(coeffs, rhs_parts):
                check = check - g * c
            return SolvedIdentity(coeffs, check.is_zero())
    return SolvedIdentity([], False)


# ---------------------------------------------------------------------------
# radical and colon-filtration checks

@dataclass
class IntegralityReport:
    m: int
    minors_in_radical: bool
    gradient_inside_minors: bool
    quadratic_witnesses: list[dict] = field(default_factory=list)
    per_minor: list[tuple[tuple, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.minors_in_radical and self.gradient_inside_minors


def integrality_check(m: int, budget: Budget | None = None,
                      config: Config | None = None) -> IntegralityReport:
    """Radical of the gradient ideal equals the submaximal minor ideal,
    certified both ways, with the quadratic-equation witnesses at m = 3."""
    if m > 4:
        raise ValueError("radical check capped at m = 4")
    config = config or DEFAULT_CONFIG
    H = build_structured("hankel", m=m)
    f = determinant(H)
    ring = H.ring
    partials = [f.diff(i) for i in range(ring.nvars)]
    J = Ideal(ring, partials)
    P = Ideal(ring, minors_ideal_gens(H, m - 1))
    per_minor = []
    all_in = True
    for cols in itertools.combinations(range(1, m + 2), m - 1):
        g = bracket_minor(m, 1, cols)
        ok = radical_membership(g, J, budget, config)
        per_minor.append((cols, ok))
        all_in = all_in and ok
    inside = all(P.contains(p, budget=budget, config=config) for p in partials)
    witnesses = []
    if m == 3:
        JP = ideal_product(J, P)
        exp = star_expansion(3, 2)
        bs = exp.brackets()
        f2 = f.diff(2)
        for bidx, b in enumerate(bs):
            delta = bracket_minor(3, 1, b)
            other = bracket_minor(3, 1, bs[1 - bidx])
            sol = solve_bracket_identity(delta * delta, [f2 * delta, other * delta])
            member = JP.contains(delta * delta, budget=budget, config=config)
            witnesses.append({"bracket": b, "coefficients": [str(c) for c in sol.coefficients],
                              "identity": sol.verified, "square_in_JP": member})
    return IntegralityReport(m, all_in, inside, witnesses, per_minor)


@dataclass
class ReductionOutcome:
    m: int
    i: int
    status: str  # 'Equal' | 'NotEqual' | 'Timeout'
    witness: str | None = None


def reduction_conjecture_check(m: int, i: int, budget: Budget | None = None,
                               config: Config | None = None) -> ReductionOutcome:
    """Colon filtration J*P^i : P^{i+1} against the minor ideal ladder."""
    if m > 4:
        raise ValueError("conjecture checks capped at m = 4")
    if not 0 <= i <= m - 2:
        raise ValueError("filtration index out of range")
    config = config or DEFAULT_CONFIG
    H = build_structured("hankel", m=m)
    f = determinant(H)
    ring = H.ring
    partials = [f.diff(k) for k in range(ring.nvars)]
    J = Ideal(ring, partials)
    P = Ideal(ring, minors_ideal_gens(H, m - 1))
    t = m - 2 - i
    if t == 0:
        rhs = Ideal(ring, [ring.one()])
    else:
        rhs = Ideal(ring, minors_ideal_gens(H, t))
    try:
        lhs_ideal = J if i == 0 else ideal_product(J, ideal_power(P, i))
        pw = ideal_power(P, i + 1)
        got = colon(lhs_ideal, pw, budget, config)
        if ideal_equal(got, rhs, budget, config):
            return ReductionOutcome(m, i, "Equal")
        for g in got.gens:
            if not rhs.contains(g, budget=budget, config=config):
                return ReductionOutcome(m, i, "NotEqual", witness=str(g))
        for g in rhs.gens:
            if not got.contains(g, budget=budget, config=config):
                return ReductionOutcome(m, i, "NotEqual", witness=str(g))
        return ReductionOutcome(m, i, "NotEqual", witness="generator mismatch")
    except ComputationTimeout:
        return ReductionOutcome(m, i, "Timeout")
