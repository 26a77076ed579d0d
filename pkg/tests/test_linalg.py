import random

from twogroups.linalg import (
    Gf2Span,
    abelian_invariants_from_relations,
    gf2_kernel,
    gf2_rank,
    smith_normal_form,
)


def mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_smith_diag_divisibility_and_transforms():
    rng = random.Random(11)
    for _ in range(60):
        rows = rng.randrange(1, 6)
        cols = rng.randrange(1, 6)
        a = [[rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)]
        diag, v, vinv = smith_normal_form(a)
        ident = mat_mul(v, vinv)
        assert ident == [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]
        nonzero = [d for d in diag if d != 0]
        for x, y in zip(nonzero, nonzero[1:]):
            assert y % x == 0
        # rowspace is preserved: A*V has the diagonal as its Smith form again
        av = mat_mul(a, v)
        diag2, _, _ = smith_normal_form(av)
        assert diag2 == diag


def test_smith_known_values():
    diag, _, _ = smith_normal_form([[2, 0], [0, 4]])
    assert diag == [2, 4]
    diag, _, _ = smith_normal_form([[2, 4], [4, 2]])
    assert diag == [2, 6]
    diag, _, _ = smith_normal_form([[1, 0, 0]])
    assert diag == [1, 0, 0]


def test_abelian_invariants_from_relations():
    # Z^2 / <2e1, 4e2> = Z/2 + Z/4
    orders, gens = abelian_invariants_from_relations([[2, 0], [0, 4]], 2)
    assert sorted(orders) == [2, 4]
    # Z^2 / <e1 + e2> = Z  (one infinite factor)
    orders, gens = abelian_invariants_from_relations([[1, 1]], 2)
    assert orders == [0]


def test_gf2_span_solve_and_reduce():
    span = Gf2Span()
    assert span.add(0b011)
    assert span.add(0b110)
    assert not span.add(0b101)  # dependent
    combo = span.solve(0b101)
    assert combo == 0b011  # first two inserted vectors
    assert span.reduce(0b101) == 0
    assert span.reduce(0b100) != 0
    assert gf2_rank([0b011, 0b110, 0b101]) == 2


def test_gf2_kernel_orthogonality():
    rng = random.Random(5)
    for _ in range(50):
        ncols = rng.randrange(1, 10)
        rows = [rng.getrandbits(ncols) for _ in range(rng.randrange(0, 6))]
        kernel = gf2_kernel(rows, ncols)
        for k in kernel:
            for r in rows:
                assert (r & k).bit_count() % 2 == 0
        assert gf2_rank(rows) + len(kernel) == ncols
