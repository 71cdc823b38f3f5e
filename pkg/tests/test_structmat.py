"""Structured matrix constructors, determinants, minors, cofactor sums."""

import random

import pytest

from detlab.polyring import xring
from detlab.structmat import (PolyMatrix, build_structured, build_gp_associated,
                              determinant, cofactor_matrix, minors_ideal_gens,
                              partials_as_cofactor_sums, parse_matrix_spec,
                              minor, DET_BUDGET_GENERAL)
from detlab.config import ComputationTimeout
from oracles import hankel_entry_dicts, leibniz_det


def _rows(M):
    return [[str(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


# ---------------------------------------------------------------------------
# constructors

def test_catalecticant_displays():
    H3 = build_structured("catalecticant", m=3, r=1)
    assert _rows(H3) == [["x0", "x1", "x2"], ["x1", "x2", "x3"], ["x2", "x3", "x4"]]
    C32 = build_structured("catalecticant", m=3, r=2)
    assert _rows(C32) == [["x0", "x1", "x2"], ["x2", "x3", "x4"], ["x4", "x5", "x6"]]
    SH3 = build_structured("sub-hankel", n=3)
    assert _rows(SH3) == [["x0", "x1", "x2"], ["x1", "x2", "x3"], ["x2", "x3", "0"]]


def test_gp_associated_displays():
    G1 = build_gp_associated(3, 1)
    assert _rows(G1) == [["x0", "x1", "x2", "x3"], ["x1", "x2", "x3", "x4"]]
    G2 = build_gp_associated(3, 2)
    assert _rows(G2)[0] == ["x0", "x1", "x2", "x3", "x4"]
    assert _rows(G2)[1] == ["x2", "x3", "x4", "x5", "x6"]
    G3 = build_gp_associated(4, 3)
    assert [r[0] for r in _rows(G3)] == ["x0", "x3", "x6"]
    assert G3.rows == 3 and G3.cols == 7


def test_variable_counts_and_degrees():
    for m in (2, 3, 4):
        for r in range(1, m + 1):
            C = build_structured("catalecticant", m=m, r=r)
            assert C.ring.nvars == (m - 1) * (r + 1) + 1
            d = determinant(C)
            assert d.is_homogeneous() and d.degree == m


def test_generic_equals_full_leap_and_parameter_validation():
    G = build_structured("generic", m=3)
    C = build_structured("catalecticant", m=3, r=3)
    assert _rows(G) == _rows(C)
    with pytest.raises(ValueError):
        build_structured("catalecticant", m=1, r=1)
    with pytest.raises(ValueError):
        build_structured("catalecticant", m=3, r=4)
    with pytest.raises(ValueError):
        build_structured("sub-hankel", n=1)
    with pytest.raises(ValueError):
        build_gp_associated(3, 3)


def test_degenerate_and_sc3_layouts():
    DG = build_structured("degenerate-generic", m=3)
    assert DG.ring.nvars == 8
    assert str(DG[2, 2]) == "0"
    SC = build_structured("sc3")
    assert _rows(SC) == [["x0", "x1", "x2"], ["x2", "x3", "x4"], ["x4", "x5", "0"]]


def test_overrides_and_spec_file():
    M = parse_matrix_spec("""
    kind = catalecticant
    m = 3
    r = 2
    override = 2,2:0
    """)
    assert str(M[2, 2]) == "0"
    assert M.provenance == "custom"
    M2 = parse_matrix_spec("kind = gp-associated\nm = 3\nr = 1\n")
    assert M2.cols == 4


# ---------------------------------------------------------------------------
# determinants

def test_det_2x2_formula():
    H = build_structured("hankel", m=2)
    assert str(determinant(H)) == "-x1^2 + x0*x2"


def test_det_hankel3_against_leibniz_oracle():
    want = leibniz_det(hankel_entry_dicts(3))
    H = build_structured("hankel", m=3)
    f = determinant(H)
    assert f.terms == want
    assert f == H.ring.from_string("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3")


def test_det_methods_agree():
    rng = random.Random(4)
    for kind, kw in (("hankel", {"m": 3}), ("hankel", {"m": 4}),
                     ("catalecticant", {"m": 3, "r": 2}),
                     ("sub-hankel", {"n": 4}), ("generic", {"m": 3}),
                     ("symmetric", {"m": 3})):
        M = build_structured(kind, **kw)
        assert determinant(M, method="cofactor") == determinant(M, method="bareiss")


def test_det_alternating_row_swap():
    for kind, kw in (("hankel", {"m": 3}), ("catalecticant", {"m": 3, "r": 2}),
                     ("sub-hankel", {"n": 3})):
        M = build_structured(kind, **kw)
        f = determinant(M)
        swapped = PolyMatrix(M.rows, M.cols,
                             M.row(1) + M.row(0) + sum((M.row(i) for i in
                                                        range(2, M.rows)), []),
                             "custom")
        assert determinant(swapped) == -f


def test_det_budget_enforced():
    R = xring(1)
    x = R.gens()[0]
    n = DET_BUDGET_GENERAL + 1
    ents = [x + i for i in range(n * n)]
    M = PolyMatrix(n, n, ents, "custom")
    with pytest.raises(ComputationTimeout):
        determinant(M)
    # variable-entry matrices get the larger cap
    H = build_structured("hankel", m=4)
    determinant(H)


def test_degenerate_generic_block_structure():
    DG = build_structured("degenerate-generic", m=3)
    f = determinant(DG)
    col_vars, row_vars, blk = {2, 5}, {6, 7}, {0, 1, 3, 4}
    for e in f.terms:
        sup = {i for i, v in enumerate(e) if v}
        assert len(sup & col_vars) == 1
        assert len(sup & row_vars) == 1
        assert len(sup & blk) == 1


# ---------------------------------------------------------------------------
# adjugate

def test_adjugate_2x2():
    R = xring(4)
    x = R.gens()
    M = PolyMatrix(2, 2, [x[0], x[1], x[2], x[3]], "custom")
    adj = cofactor_matrix(M)
    assert _rows(adj) == [["x3", "-x1"], ["-x2", "x0"]]


def test_adjugate_laplace_identity_and_cauchy():
    G = build_structured("generic", m=3)
    f = determinant(G)
    adj = cofactor_matrix(G)
    ring = G.ring
    for i in range(3):
        for j in range(3):
            s = ring.zero()
            for k in range(3):
                s = s + G[i, k] * adj[k, j]
            assert s == (f if i == j else ring.zero())
    assert determinant(adj) == f ** 2


def test_adjugate_errors():
    G = build_gp_associated(3, 1)
    with pytest.raises(ValueError):
        cofactor_matrix(G)


# ---------------------------------------------------------------------------
# minors

def test_minors_entries_ideal():
    H = build_structured("hankel", m=3)
    gens = minors_ideal_gens(H, 1)
    assert sorted(str(g) for g in gens) == ["x0", "x1", "x2", "x3", "x4"]


def test_minors_gp31_count():
    G = build_gp_associated(3, 1)
    gens = minors_ideal_gens(G, 2)
    assert len(gens) == 6  # C(4,2) brackets, all distinct


def test_minors_dedupe_symmetric():
    H = build_structured("hankel", m=3)
    gens = minors_ideal_gens(H, 2)
    # 9 pair-products collapse by symmetry
    assert len(gens) == len({str(g) for g in gens})
    assert len(gens) < 9 * 2


def test_minors_range_errors():
    H = build_structured("hankel", m=3)
    with pytest.raises(ValueError):
        minors_ideal_gens(H, 0)
    with pytest.raises(ValueError):
        minors_ideal_gens(H, 4)


def test_cat32_minor_exclusion_ideal_level():
    from detlab.groebner import Ideal, ideal_equal
    C = build_structured("catalecticant", m=3, r=2)
    G = build_gp_associated(3, 2)
    b = minor(G, range(2), [1, 3])
    I = Ideal(C.ring, minors_ideal_gens(C, 2))
    reduced = Ideal(C.ring, [g for g in minors_ideal_gens(G, 2) if g not in (b, -b)])
    assert ideal_equal(I, reduced)
    assert not I.contains(b)


# ---------------------------------------------------------------------------
# cofactor sums of partials

def test_partials_as_cofactor_sums_single_occurrence():
    G = build_structured("generic", m=3)
    f = determinant(G)
    for v in range(9):
        assert partials_as_cofactor_sums(G, v) == f.diff(v)


def test_partials_as_cofactor_sums_hankel_middle():
    H = build_structured("hankel", m=3)
    got = partials_as_cofactor_sums(H, 2)
    assert got == H.ring.from_string("x0*x4 + 2*x1*x3 - 3*x2^2")
    assert got == determinant(H).diff(2)


def test_partials_as_cofactor_sums_subhankel():
    M = build_structured("sub-hankel", n=3)
    f = determinant(M)
    for v in range(4):
        assert partials_as_cofactor_sums(M, v) == f.diff(v)


def test_partials_as_cofactor_sums_all_constructors():
    for kind, kw in (("hankel", {"m": 3}), ("hankel", {"m": 4}),
                     ("catalecticant", {"m": 3, "r": 2}),
                     ("sub-hankel", {"n": 4}),
                     ("degenerate-generic", {"m": 3}), ("sc3", {})):
        M = build_structured(kind, **kw)
        f = determinant(M)
        for v in range(M.ring.nvars):
            assert partials_as_cofactor_sums(M, v) == f.diff(v)


def test_partials_as_cofactor_sums_hypothesis_violation():
    R = xring(2)
    x = R.gens()
    M = PolyMatrix(2, 2, [x[0], x[0], x[1], x[0]], "custom")
    with pytest.raises(ValueError):
        partials_as_cofactor_sums(M, 0)


def test_gp_associated_minor_ideal_matches_square_for_unit_leap():
    # double inclusion: the rectangular maximal minors and the square
    # submaximal minors generate the same ideal when the leap is 1
    from detlab.groebner import Ideal, ideal_equal
    for m in (3, 4):
        H = build_structured("hankel", m=m)
        G = build_gp_associated(m, 1)
        A = Ideal(H.ring, minors_ideal_gens(H, m - 1))
        B = Ideal(H.ring, minors_ideal_gens(G, m - 1))
        assert A.contains_ideal(B) and B.contains_ideal(A)
