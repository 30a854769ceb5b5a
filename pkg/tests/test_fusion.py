import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import spectral_product
from qtqft import (
    BoxContext,
    LaurentInt,
    QClass,
    QuantumRing,
    counit,
    giambelli_expand,
    poincare_pair,
    quantum_pieri,
    quantum_product,
    sigma,
    structure_table,
)
from qtqft.fusion import ContextMismatch, product_all, ring
from qtqft.laurent import ONE, Q


def test_pieri_examples(box11, box22):
    assert quantum_pieri(box11, 1, (1,)) == sigma(box11, (0,), Q)
    assert quantum_pieri(box22, 1, (2, 2)) == sigma(box22, (1, 0), Q)
    for ctx in (box11, box22, BoxContext(3, 2)):
        for k in range(1, ctx.s + 1):
            assert quantum_pieri(ctx, k, ctx.empty) == sigma(ctx, ctx.row(k))


def test_pieri_classical_horizontal_strips():
    ctx = BoxContext(3, 3)
    # sigma_2 * sigma_(2,1,0): strips of size 2 added to (2,1,0)
    got = quantum_pieri(ctx, 2, (2, 1, 0))
    assert got == sum((sigma(ctx, b) for b in [(3, 2, 0), (3, 1, 1), (2, 2, 1)]), QClass.zero(ctx))


def test_pieri_rejects_bad_index(box22):
    for k in (0, 3, -1):
        with pytest.raises(ValueError):
            quantum_pieri(box22, k, (1, 0))


def test_giambelli_expansion(box22):
    assert giambelli_expand(box22, (2, 0)) == [(1, (2,))]
    assert giambelli_expand(BoxContext(3, 3), (3, 0, 0)) == [(1, (3,))]
    assert sorted(giambelli_expand(box22, (1, 1))) == [(-1, (2,)), (1, (1, 1))]
    assert giambelli_expand(box22, (0, 0)) == [(1, ())]


@pytest.mark.parametrize("r,s", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_giambelli_reconstructs_basis(r, s):
    ctx = BoxContext(r, s)
    for a in ctx.partitions:
        total = QClass.zero(ctx)
        for coeff, factors in giambelli_expand(ctx, a):
            total = total + product_all(ctx, (sigma(ctx, (m,)) for m in factors)).scale(coeff)
        assert total == sigma(ctx, a)


def test_product_examples(box22):
    one = QClass.unit(box22)
    assert sigma(box22, (1, 1)) * sigma(box22, (2, 0)) == one.scale(Q)
    assert sigma(box22, (1, 1)) ** 4 == one.scale(Q**2)
    assert sigma(box22, (2, 1)) * sigma(box22, (1, 0)) == sigma(box22, (2, 2)) + one.scale(Q)


@pytest.mark.parametrize("r,s", [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_table_matches_spectral_oracle(r, s):
    ctx = BoxContext(r, s)
    table = structure_table(ctx)
    for a in ctx.partitions:
        for b in ctx.partitions:
            expected = {c: LaurentInt.monomial(k, e) for c, (e, k) in spectral_product(r, s, a, b).items()}
            assert table[a, b] == expected, (a, b)


def test_table_examples(box22):
    table = structure_table(box22)
    assert all(table[a, b] == table[b, a] for a in box22.partitions for b in box22.partitions)
    assert table[(1, 0), (1, 0)] == {(2, 0): ONE, (1, 1): ONE}


@pytest.mark.parametrize("r,s", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)])
def test_coefficients_nonnegative_and_graded(r, s):
    ctx = BoxContext(r, s)
    for (a, b), prod in structure_table(ctx).items():
        for c, coeff in prod.items():
            for e, v in coeff.items():
                assert v > 0
                assert sum(c) + e * ctx.n == sum(a) + sum(b)


def test_counit_and_pairing(box11, box22):
    assert counit(sigma(box22, (2, 2))) == 1
    assert counit(QClass.unit(box22)) == 0
    assert counit(sigma(box22, (2, 1)) * sigma(box22, (1, 0))) == 1
    assert poincare_pair(sigma(box11, (1,)), sigma(box11, (1,))) == 0
    assert poincare_pair(QClass.unit(box22), sigma(box22, (2, 2))) == 1
    from qtqft import complement
    for a in box22.partitions:
        for b in box22.partitions:
            expected = 1 if b == complement(box22, a) else 0
            assert poincare_pair(sigma(box22, a), sigma(box22, b)) == expected


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        quantum_product(sigma(BoxContext(2, 2), (1,)), sigma(BoxContext(2, 3), (1,)))


@pytest.mark.parametrize("r,s", [(1, 2), (2, 2), (2, 3), (3, 3)])
def test_column_shift_rule(r, s):
    # the cyclic rule holds with a_1 compared against s, not r
    ctx = BoxContext(r, s)
    col = sigma(ctx, ctx.column)
    for a in ctx.partitions:
        if a[0] < s:
            expected = sigma(ctx, tuple(x + 1 for x in a))
        else:
            expected = sigma(ctx, a[1:] + (0,), Q)
        assert col * sigma(ctx, a) == expected


def _qclasses(ctx):
    coeff = st.dictionaries(st.integers(-2, 2), st.integers(-5, 5), max_size=2).map(LaurentInt)
    return st.dictionaries(st.sampled_from(ctx.partitions), coeff, max_size=4).map(lambda d: QClass(ctx, d))


BOX = BoxContext(2, 3)


@settings(max_examples=60, deadline=None)
@given(_qclasses(BOX), _qclasses(BOX), _qclasses(BOX))
def test_general_classes_form_a_commutative_ring(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * QClass.unit(BOX) == x


def test_qclass_json_roundtrip(box22):
    x = sigma(box22, (2, 1)) * sigma(box22, (1, 0)) + sigma(box22, (1, 1), LaurentInt({-1: 3}))
    data = x.to_json()
    assert data[0] == {"partition": [0, 0], "laurent": {"1": "1"}}
    assert QClass.from_json(box22, data) == x


def test_multiplication_matrix_at_one(box22):
    m = ring(box22).multiplication_matrix(sigma(box22, (1, 0)))
    assert m.shape == (6, 6)
    # sigma_1 * sigma_(2,1) = sigma_(2,2) + q
    col = box22.index[(2, 1)]
    assert m[box22.index[(2, 2)], col] == 1 and m[box22.index[(0, 0)], col] == 1
    assert np.sum(m[:, col]) == 2


def test_concurrent_build_is_deterministic():
    ctx = BoxContext(3, 3)
    rg = QuantumRing(ctx)
    results = []
    threads = [threading.Thread(target=lambda: results.append(rg.table)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)
    assert results[0] == structure_table(ctx)
