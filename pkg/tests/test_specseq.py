import json
import random
from fractions import Fraction

import pytest

from hyperhodge.errors import DimensionMismatch, InputError, InvalidComplex, TooManyFiltrationLevels
from hyperhodge.linalg import QMatrix, kernel_basis, span_basis
from hyperhodge.specseq import (
    CochainComplex,
    FilteredComplex,
    complex_from_dict,
    complex_to_dict,
    degeneration_page,
    dump_complex,
    e_infinity,
    infinity_index,
    load_complex,
    make_filtration,
    page,
    random_complex,
    random_filtered_complex,
    two_term_les,
)

F = Fraction


def acyclic_pair():
    return CochainComplex(0, (1, 1), (QMatrix.from_rows([[1]]),))


def trivially_filtered(K):
    return FilteredComplex(K, tuple((K.whole(m),) for m in K.degrees))


def test_acyclic_two_term():
    fc = trivially_filtered(acyclic_pair())
    assert all(v == 0 for v in e_infinity(fc).entries.values())
    # with F^1 = 0 the differential is already d_0, so E_1 is final
    assert degeneration_page(fc) == 1
    stupid = make_filtration(acyclic_pair(), "stupid")
    assert page(stupid, 1).entries[(0, 0)] == 1 and page(stupid, 1).entries[(1, 0)] == 1
    assert all(v == 0 for v in page(stupid, 2).entries.values())
    assert degeneration_page(stupid) == 2


def test_zero_differential_complex():
    K = CochainComplex(0, (2, 1, 3), (QMatrix.zeros(1, 2), QMatrix.zeros(3, 1)))
    fc = make_filtration(K, "stupid")
    e1, einf = page(fc, 1), e_infinity(fc)
    assert e1.entries == einf.entries
    assert degeneration_page(fc) == 1
    assert einf.entries[(0, 0)] == 2 and einf.entries[(1, 0)] == 1 and einf.entries[(2, 0)] == 3


def test_stupid_filtration_surjective_three_term():
    # Q^2 -> Q^2 -> Q, d^0 = [[1,0],[0,0]] rank 1, d^1 = [0, 1] rank 1
    d0 = QMatrix.from_rows([[1, 0], [0, 0]])
    d1 = QMatrix.from_rows([[0, 1]])
    K = CochainComplex(0, (2, 2, 1), (d0, d1))
    fc = make_filtration(K, "stupid")
    # hand computation: E_1^{p,0} = K^p, d_1 = d; E_2 = cohomology in each column
    e1 = page(fc, 1)
    assert [e1.entries[(p, 0)] for p in range(3)] == [2, 2, 1]
    e2 = page(fc, 2)
    assert [e2.entries[(p, 0)] for p in range(3)] == [1, 0, 0]
    assert degeneration_page(fc) == 2


def test_make_filtration_examples():
    K = random_complex(random.Random(1), max_degrees=4)
    triv = make_filtration(K, "stupid", cut=K.a)
    for m in K.degrees:
        assert len(triv.F(1, m)) == K.dim(m)
    whole = make_filtration(K, "canonical", cut=K.b)
    for m in K.degrees:
        assert len(whole.F(1, m)) == K.dim(m) if m < K.b else len(whole.F(1, m)) == len(K.cycles(m))


def test_canonical_truncation_kernel():
    d0 = QMatrix.from_rows([[1], [0], [0]])  # injective
    d1 = QMatrix.from_rows([[0, 1, 0], [0, 0, 1]])
    K = CochainComplex(0, (1, 3, 2), (d0, d1))
    fc = make_filtration(K, "canonical", cut=1)
    ker = kernel_basis(d1)
    assert span_basis(fc.F(1, 1), 3) == span_basis(ker, 3)
    assert fc.F(1, 2) == []
    assert len(fc.F(1, 0)) == 1


def test_invalid_complexes():
    d0 = QMatrix.from_rows([[1]])
    d1 = QMatrix.from_rows([[1]])
    with pytest.raises(InvalidComplex, match="d∘d"):
        trivially_filtered(CochainComplex(0, (1, 1, 1), (d0, d1)))
    K = acyclic_pair()
    with pytest.raises(InvalidComplex, match="compatible"):
        FilteredComplex(K, (([[1]], [[1]]), ([[1]],)))
    with pytest.raises(InvalidComplex, match="exhaustive"):
        FilteredComplex(K, (([],), ([[1]],)))
    K2 = CochainComplex(0, (2,), ())
    with pytest.raises(InvalidComplex, match="nested"):
        FilteredComplex(K2, (([[1, 0], [0, 1]], [[1, 0]], [[0, 1]]),))
    with pytest.raises(DimensionMismatch):
        CochainComplex(0, (1, 2), (QMatrix.from_rows([[1]]),))


def test_page_invariants_random():
    rng = random.Random(17)
    for _ in range(25):
        fc = random_filtered_complex(rng)
        H = fc.complex.cohomology_dims()
        einf = e_infinity(fc).total_dims()
        assert all(H[m] == einf.get(m, 0) for m in H)
        chis = {page(fc, r).euler_characteristic() for r in range(infinity_index(fc) + 1)}
        assert len(chis) == 1
        for r in range(3):
            pg = page(fc, r)
            nxt = page(fc, r + 1)
            for (p, q), dim in nxt.entries.items():
                out = pg.differentials[(p, q)]
                inc = pg.differentials.get((p - r, q + r - 1))
                rank_out = len(span_basis(out.columns(), out.rows)) if out.cols and out.rows else 0
                rank_in = len(span_basis(inc.columns(), inc.rows)) if inc is not None and inc.cols and inc.rows else 0
                assert dim == pg.entries[(p, q)] - rank_out - rank_in


def test_les_trivial_cases():
    rng = random.Random(2)
    K = random_complex(rng)
    zero_sub = trivially_filtered(K)
    les = two_term_les(zero_sub)
    assert les.exact
    assert all(les.h_total[m] == les.h_quot[m] == les.rank_j[m] for m in les.degrees)
    full = make_filtration(K, "stupid", cut=K.a)
    les = two_term_les(full)
    assert les.exact and all(v == 0 for v in les.h_quot.values())


def test_les_random_exact():
    rng = random.Random(23)
    for _ in range(40):
        fc = random_filtered_complex(rng, max_levels=2)
        les = two_term_les(fc)
        assert les.exact, les.failures


def test_les_rejects_three_levels():
    K = CochainComplex(0, (3,), ())
    fc = FilteredComplex(K, ((K.whole(0), K.whole(0)[:2], K.whole(0)[:1]),))
    with pytest.raises(TooManyFiltrationLevels):
        two_term_les(fc)


def test_json_roundtrip(tmp_path):
    rng = random.Random(5)
    fc = random_filtered_complex(rng)
    path = tmp_path / "c.json"
    dump_complex(fc, path)
    back = load_complex(path)
    assert complex_to_dict(back) == complex_to_dict(fc)
    text = json.loads(path.read_text())
    assert all(isinstance(x, str) for dm in text["differentials"] for x in dm)


def test_json_nested_rows_and_errors():
    data = {"degrees": [0, 1], "dims": [2, 1], "differentials": [[["1", "-1/2"]]]}
    fc = complex_from_dict(data)
    assert fc.complex.d(0).to_rows() == [[F(1), F(-1, 2)]]
    with pytest.raises(InputError):
        complex_from_dict({"degrees": [0, 1], "dims": [1, 1], "differentials": [[0.5]]})
    with pytest.raises(InputError):
        complex_from_dict({"dims": [1]})
    with pytest.raises(DimensionMismatch):
        complex_from_dict({"degrees": [0, 1], "dims": [1, 1], "differentials": [["1", "2"]]})
