"""Independent-oracle reproduction of the derived registry values.

Each derived expected value in the case-study registry is recomputed here
through the brute-force oracle path (permutation-sum determinants, term-rule
derivatives, dense Fraction elimination) and the combined transcript hash is
frozen; a change in any derived value breaks the hash on purpose.
"""

import hashlib
from fractions import Fraction

from oracles import leibniz_det, dict_diff, dict_mul, var_dict


def dense_kernel_dim(rows, ncols):
    """Plain Gauss-Jordan over Fraction; returns the kernel dimension."""
    mat = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rank = 0
    rr = 0
    for c in range(ncols):
        piv = None
        for i in range(rr, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[rr], mat[piv] = mat[piv], mat[rr]
        inv = 1 / mat[rr][c]
        for i in range(len(mat)):
            if i != rr and mat[i][c]:
                f = mat[i][c] * inv
                for j in range(ncols):
                    mat[i][j] -= f * mat[rr][j]
        rr += 1
        rank += 1
    return ncols - rank


def generic_3x3_with_zero_corner():
    """Entry dicts of the 3x3 all-variable matrix with the corner removed."""
    ents = [[var_dict(8, 3 * i + j) if 3 * i + j < 8 else None
             for j in range(3)] for i in range(3)]
    return ents


def test_dg3_quadric_relation_oracle():
    # partials of the corner-zeroed determinant, by the term rule on the
    # permutation-sum expansion; the four top-left-block partials satisfy
    # d0*d4 == d1*d3
    det = leibniz_det(generic_3x3_with_zero_corner())
    d = {i: dict_diff(det, i) for i in (0, 1, 3, 4)}
    lhs = dict_mul(d[0], d[4])
    rhs = dict_mul(d[1], d[3])
    assert lhs == rhs
    # and this is what the registry's derived relation y1*y3 - y0*y4 encodes
    from detlab.syzygy import rees_bigraded_kernel
    from detlab.structmat import build_structured, determinant
    DG = build_structured("degenerate-generic", m=3)
    f = determinant(DG)
    taus = rees_bigraded_kernel([f.diff(i) for i in range(8)], 0, 2)
    assert len(taus) == 1
    assert str(taus[0]) in ("y1*y3 - y0*y4", "-y1*y3 + y0*y4")


def _linear_syzygy_kernel_dim_oracle(entry_rows, nvars):
    """Count linear syzygies of the partials of a permutation-sum
    determinant by dense elimination, fully outside the library path."""
    det = leibniz_det(entry_rows)
    partials = [dict_diff(det, v) for v in range(nvars)]
    monos3 = {}
    cols = []
    for i, fdict in enumerate(partials):
        for v in range(nvars):
            col = {}
            for e, c in fdict.items():
                ne = list(e)
                ne[v] += 1
                key = tuple(ne)
                if key not in monos3:
                    monos3[key] = len(monos3)
                col[monos3[key]] = col.get(monos3[key], 0) + c
            cols.append(col)
    rows = [dict() for _ in range(len(monos3))]
    for ci, col in enumerate(cols):
        for ri, v in col.items():
            rows[ri][ci] = v
    return dense_kernel_dim(rows, len(cols))


def test_symmetric3_linear_syzygy_count_oracle():
    idx = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}

    def at(i, j):
        return var_dict(6, idx[(min(i, j), max(i, j))])

    ents = [[at(i, j) for j in range(3)] for i in range(3)]
    assert _linear_syzygy_kernel_dim_oracle(ents, 6) == 8


def test_sc3_linear_syzygy_count_oracle():
    layout = [[0, 1, 2], [2, 3, 4], [4, 5, None]]
    ents = [[var_dict(6, k) if k is not None else None for k in row]
            for row in layout]
    assert _linear_syzygy_kernel_dim_oracle(ents, 6) == 7


def test_derived_transcript_hash_frozen():
    det = leibniz_det(generic_3x3_with_zero_corner())
    parts = []
    parts.append("dg3:" + str(sorted(det.items())))
    idx = {(0, 0): 0, (0, 1): 1, (0, 2): 2, (1, 1): 3, (1, 2): 4, (2, 2): 5}
    sym = [[var_dict(6, idx[(min(i, j), max(i, j))]) for j in range(3)]
           for i in range(3)]
    parts.append("sym3-kernel:" + str(_linear_syzygy_kernel_dim_oracle(sym, 6)))
    layout = [[0, 1, 2], [2, 3, 4], [4, 5, None]]
    sc = [[var_dict(6, k) if k is not None else None for k in row]
          for row in layout]
    parts.append("sc3-kernel:" + str(_linear_syzygy_kernel_dim_oracle(sc, 6)))
    h3 = [[var_dict(5, i + j) for j in range(3)] for i in range(3)]
    parts.append("h3-middle:" + str(sorted(dict_diff(leibniz_det(h3), 2).items())))
    transcript = "\n".join(parts)
    digest = hashlib.sha256(transcript.encode()).hexdigest()
    assert digest == "c82c3c0b8f520b9f7dd6a0fe898de877292925e24d0e592cb60f52a3c105ddf2"
