"""Structured matrix constructors and exact determinant/minor machinery.

All constructors produce matrices whose entries are single variables or
zero over a fresh ring with the minimal variable set.  Determinants of
variable-entry matrices go through memoized cofactor expansion (the shared
subproblems across anti-diagonal patterns are massive); general polynomial
entries go through fraction-free Bareiss elimination.
"""

from __future__ import annotations

import itertools

from .config import Budget, ComputationTimeout
from .polyring import Polynomial, exact_divide, NOT_DIVISIBLE, xring, format_polynomial

# symbolic determinant size budget; larger matrices need probabilistic routes
DET_BUDGET_GENERAL = 5
DET_BUDGET_VARIABLE_ENTRY = 7


class PolyMatrix:
    """Rectangular matrix of polynomials with constructor provenance."""

    __slots__ = ("rows", "cols", "entries", "provenance", "ring")

    def __init__(self, rows: int, cols: int, entries: list[Polynomial],
                 provenance: str = "custom"):
        if rows <= 0 or cols <= 0:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError("entry count must equal rows*cols")
        self.rows = rows
        self.cols = cols
        self.entries = list(entries)
        self.provenance = provenance
        self.ring = entries[0].ring

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list[Polynomial]:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def column(self, c: int) -> list[Polynomial]:
        return [self.entries[r * self.cols + c] for r in range(self.rows)]

    def submatrix(self, rows, cols) -> "PolyMatrix":
        ents = [self[r, c] for r in rows for c in cols]
        return PolyMatrix(len(list(rows)), len(list(cols)), ents, "custom")

    def transpose(self) -> "PolyMatrix":
        ents = [self[r, c] for c in range(self.cols) for r in range(self.rows)]
        return PolyMatrix(self.cols, self.rows, ents, self.provenance)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_variable_entry(self) -> bool:
        """Every entry a single variable (coefficient 1) or zero."""
        for e in self.entries:
            if e.is_zero():
                continue
            if len(e.terms) != 1:
                return False
            (exp, c), = e.terms.items()
            if sum(exp) != 1 or c != 1:
                return False
        return True

    def evaluate(self, point) -> list[list]:
        return [[self[r, c].evaluate(point) for c in range(self.cols)]
                for r in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(", ".join(str(self[r, c]) for c in range(self.cols))
                         for r in range(self.rows))
        return f"PolyMatrix[{self.rows}x{self.cols}; {self.provenance}]({body})"


# ---------------------------------------------------------------------------
# constructors

def build_structured(kind: str, m: int | None = None, r: int | None = None,
                     n: int | None = None, overrides: dict | None = None) -> PolyMatrix:
    """Build one of the supported matrix families over its minimal ring.

    kinds: generic(m), symmetric(m), catalecticant(m, r), hankel(m),
    sub-hankel(n), degenerate-generic(m), sc3, plus per-entry overrides
    (position -> variable index or 0) giving provenance "custom".
    """
    kind = kind.lower().replace("_", "-")
    if kind == "hankel":
        mat = _catalecticant(m, 1)
    elif kind == "catalecticant":
        mat = _catalecticant(m, r)
    elif kind == "generic":
        mat = _catalecticant(m, m)
    elif kind == "symmetric":
        mat = _symmetric(m)
    elif kind == "sub-hankel":
        mat = _sub_hankel(n)
    elif kind == "degenerate-generic":
        mat = _degenerate_generic(m)
    elif kind == "sc3":
        mat = _sc3()
    else:
        raise ValueError(f"unknown matrix kind {kind!r}")
    if overrides:
        ents = list(mat.entries)
        ring = mat.ring
        for (i, j), v in overrides.items():
            if not (0 <= i < mat.rows and 0 <= j < mat.cols):
                raise ValueError(f"override position {(i, j)} out of range")
            ents[i * mat.cols + j] = ring.zero() if v in (0, "0", None) else ring.var(int(v))
        mat = PolyMatrix(mat.rows, mat.cols, ents, "custom")
    return mat


def _catalecticant(m: int, r: int) -> PolyMatrix:
    if m is None or r is None or m < 2 or not 1 <= r <= m:
        raise ValueError("catalecticant needs m >= 2 and 1 <= r <= m")
    nvars = (m - 1) * (r + 1) + 1
    ring = xring(nvars)
    ents = [ring.var(r * i + j) for i in range(m) for j in range(m)]
    name = {1: "hankel", m: "generic"}.get(r, "catalecticant")
    return PolyMatrix(m, m, ents, f"{name}({m},{r})" if name == "catalecticant" else f"{name}({m})")


def _symmetric(m: int) -> PolyMatrix:
    if m is None or m < 2:
        raise ValueError("symmetric needs m >= 2")
    ring = xring(m * (m + 1) // 2)

    def idx(i, j):
        if i > j:
            i, j = j, i
        return i * m - i * (i - 1) // 2 + (j - i)

    ents = [ring.var(idx(i, j)) for i in range(m) for j in range(m)]
    return PolyMatrix(m, m, ents, f"symmetric({m})")


def _sub_hankel(n: int) -> PolyMatrix:
    if n is None or n < 2:
        raise ValueError("sub-hankel needs n >= 2")
    ring = xring(n + 1)
    ents = [ring.var(i + j) if i + j <= n else ring.zero()
            for i in range(n) for j in range(n)]
    return PolyMatrix(n, n, ents, f"sub-hankel({n})")


def _degenerate_generic(m: int) -> PolyMatrix:
    if m is None or m < 3:
        raise ValueError("degenerate-generic needs m >= 3")
    ring = xring(m * m - 1)
    ents = []
    for i in range(m):
        for j in range(m):
            k = m * i + j
            ents.append(ring.zero() if k == m * m - 1 else ring.var(k))
    return PolyMatrix(m, m, ents, f"degenerate-generic({m})")


def _sc3() -> PolyMatrix:
    ring = xring(6)
    idxs = [0, 1, 2, 2, 3, 4, 4, 5, None]
    ents = [ring.zero() if k is None else ring.var(k) for k in idxs]
    return PolyMatrix(3, 3, ents, "sc3")


def build_gp_associated(m: int, r: int) -> PolyMatrix:
    """(m-1) x (m+r) matrix with entry (i,j) = x_{ri+j}, sharing the
    catalecticant's variable set; its maximal minors carry the submaximal
    minor combinatorics of the square matrix."""
    if m < 2 or not 1 <= r <= m - 1:
        raise ValueError("gp-associated needs m >= 2 and 1 <= r <= m-1")
    nvars = (m - 1) * (r + 1) + 1
    ring = xring(nvars)
    ents = [ring.var(r * i + j) for i in range(m - 1) for j in range(m + r)]
    return PolyMatrix(m - 1, m + r, ents, f"gp-associated({m},{r})")


# ---------------------------------------------------------------------------
# determinants

def _det_cofactor_memo(M: PolyMatrix, budget: Budget | None = None) -> Polynomial:
    """Memoized expansion along rows, keyed by the remaining column set.

    Valid for any matrix, but the memoization only pays off when distinct
    row prefixes share column subsets (variable-entry structured families).
    """
    n = M.rows
    ring = M.ring
    memo: dict[tuple, Polynomial] = {}

    def rec(cols: tuple) -> Polynomial:
        k = n - len(cols)
        if not cols:
            return ring.one()
        got = memo.get(cols)
        if got is not None:
            return got
        if budget is not None:
            budget.tick(1, "determinant expansion")
        acc = ring.zero()
        for pos, c in enumerate(cols):
            e = M[k, c]
            if e.is_zero():
                continue
            sub = rec(cols[:pos] + cols[pos + 1:])
            term = e * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return rec(tuple(range(n)))


def _det_bareiss(M: PolyMatrix, budget: Budget | None = None) -> Polynomial:
    """Fraction-free elimination; exact divisions stay in the ring."""
    n = M.rows
    ring = M.ring
    m = [[M[i, j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if not m[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return ring.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            if budget is not None:
                budget.tick(1, "Bareiss elimination")
            for j in range(k + 1, n):
                num = pk * m[i][j] - m[i][k] * m[k][j]
                q = exact_divide(num, prev)
                if q is NOT_DIVISIBLE:
                    raise ArithmeticError("Bareiss division failed; non-domain input?")
                m[i][j] = q
            m[i][k] = ring.zero()
        prev = pk
    return m[n - 1][n - 1] if sign == 1 else -m[n - 1][n - 1]


def determinant(M: PolyMatrix, budget: Budget | None = None,
                method: str | None = None, enforce_budget: bool = True) -> Polynomial:
    """Exact determinant; cofactor-memo for variable entries, Bareiss else."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    if method is None:
        method = "cofactor" if M.is_variable_entry() else "bareiss"
    if enforce_budget:
        cap = DET_BUDGET_VARIABLE_ENTRY if M.is_variable_entry() else DET_BUDGET_GENERAL
        if M.rows > cap:
            raise ComputationTimeout(
                f"symbolic determinant beyond {cap}x{cap} budget; "
                "use probabilistic identity tests")
    if method == "cofactor":
        return _det_cofactor_memo(M, budget)
    if method == "bareiss":
        return _det_bareiss(M, budget)
    raise ValueError(f"unknown determinant method {method!r}")


def cofactor_matrix(M: PolyMatrix, budget: Budget | None = None) -> PolyMatrix:
    """Adjugate: entry (i,j) = (-1)^{i+j} minor(delete row j, col i), so
    M * adj(M) = det(M) * Id and det(adj(M)) = det(M)^{m-1}."""
    if not M.is_square():
        raise ValueError("adjugate of a non-square matrix")
    n = M.rows
    if n < 2:
        raise ValueError("adjugate needs size >= 2")
    ents = []
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            minor = determinant(M.submatrix(rows, cols), budget, enforce_budget=False)
            ents.append(minor if (i + j) % 2 == 0 else -minor)
    return PolyMatrix(n, n, ents, f"adjugate[{M.provenance}]")


def minor(M: PolyMatrix, rows, cols, budget: Budget | None = None) -> Polynomial:
    return determinant(M.submatrix(rows, cols), budget, enforce_budget=False)


def minors_ideal_gens(M: PolyMatrix, t: int, budget: Budget | None = None) -> list[Polynomial]:
    """All t x t minors, canonical duplicates and zeros removed."""
    if not 1 <= t <= min(M.rows, M.cols):
        raise ValueError("minor size out of range")
    out = []
    seen = set()
    for rows in itertools.combinations(range(M.rows), t):
        for cols in itertools.combinations(range(M.cols), t):
            d = minor(M, rows, cols, budget)
            if d.is_zero():
                continue
            s = format_polynomial(d)
            if s not in seen:
                seen.add(s)
                out.append(d)
    return out


def minors_ideal(M: PolyMatrix, t: int, budget: Budget | None = None):
    from .groebner import Ideal
    return Ideal(M.ring, minors_ideal_gens(M, t, budget))


def partials_as_cofactor_sums(M: PolyMatrix, var_index: int,
                              budget: Budget | None = None) -> Polynomial:
    """Sum of signed cofactors over all positions holding the variable.

    Hypotheses: every entry is 0 or a variable, and no variable repeats
    within a row or column; then the sum equals d(det M)/d(x_i).
    """
    if not M.is_square():
        raise ValueError("cofactor sums need a square matrix")
    if not M.is_variable_entry():
        raise ValueError("entries must be single variables or zero")
    n = M.rows
    for r in range(n):
        row_vars = [next(iter(M[r, c].terms)) for c in range(n) if not M[r, c].is_zero()]
        if len(row_vars) != len(set(row_vars)):
            raise ValueError(f"variable repeated within row {r}")
    for c in range(n):
        col_vars = [next(iter(M[r, c].terms)) for r in range(n) if not M[r, c].is_zero()]
        if len(col_vars) != len(set(col_vars)):
            raise ValueError(f"variable repeated within column {c}")
    target = M.ring.var(var_index)
    acc = M.ring.zero()
    for i in range(n):
        for j in range(n):
            if M[i, j] == target:
                rows = [r for r in range(n) if r != i]
                cols = [c for c in range(n) if c != j]
                cof = determinant(M.submatrix(rows, cols), budget, enforce_budget=False)
                acc = acc + cof if (i + j) % 2 == 0 else acc - cof
    return acc


# ---------------------------------------------------------------------------
# matrix spec files (structured text) used by the CLI
#
#   kind = catalecticant
#   m = 3
#   r = 2
#   override = 2,2:0        # row,col:variable-index-or-0  (';'-separated)

def parse_matrix_spec(text: str) -> PolyMatrix:
    kv: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"bad matrix spec line: {line!r}")
        k, v = line.split("=", 1)
        kv[k.strip().lower()] = v.strip()
    kind = kv.get("kind")
    if not kind:
        raise ValueError("matrix spec needs a kind")
    overrides = {}
    if "override" in kv:
        for part in kv["override"].split(";"):
            part = part.strip()
            if not part:
                continue
            pos, val = part.split(":")
            i, j = (int(z) for z in pos.split(","))
            overrides[(i, j)] = 0 if val.strip() == "0" else int(val.strip().lstrip("x"))
    getint = lambda key: int(kv[key]) if key in kv else None
    if kind.lower() in ("gp-associated", "gp_associated"):
        return build_gp_associated(getint("m"), getint("r"))
    return build_structured(kind, m=getint("m"), r=getint("r"), n=getint("n"),
                            overrides=overrides or None)
