import random
from fractions import Fraction

import pytest

from weilheis.exactalg import (
    QQ,
    Cyc,
    DomainMismatch,
    Fp,
    Matrix,
    MonomialMatrix,
    UnsupportedCharacteristic,
    cyc,
    cyc_reduce,
    gauss_sum,
    gf,
    kernel_dimension,
    monomial_hom_basis,
    rank,
    solve_linear,
)


def test_cyc_reduce_p3_zeta_squared():
    # zeta_3^2 = -1 - zeta_3
    x = cyc_reduce(3, {2: 1})
    assert x.num == (-1, -1) and x.den == 1


def test_cyc_reduce_zeta_p_to_the_p():
    assert cyc_reduce(5, {5: 1}) == Cyc.one(5)


def test_cyc_reduce_sum_of_all_roots_is_zero():
    assert not cyc_reduce(3, {0: 1, 1: 1, 2: 1})


def test_cyc_reduce_rejects_bad_characteristic():
    with pytest.raises(UnsupportedCharacteristic):
        cyc_reduce(2, {0: 1})
    with pytest.raises(UnsupportedCharacteristic):
        cyc_reduce(9, {0: 1})


def _samples(p):
    z = Cyc.zeta_pow(p, 1)
    return [Cyc.zero(p), Cyc.one(p), -Cyc.one(p), z, Cyc.one(p) + z]


@pytest.mark.parametrize("p", [3, 5])
def test_field_axioms_on_samples(p):
    xs = _samples(p)
    for a in xs:
        for b in xs:
            assert a + b == b + a
            assert a * b == b * a
            for c in xs:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c
    one, zero = Cyc.one(p), Cyc.zero(p)
    for a in xs:
        assert a + zero == a and a * one == a
        assert a - a == zero
        if a:
            assert a * a.inverse() == one


@pytest.mark.parametrize("p", [3, 5])
def test_conjugation_is_an_involutive_automorphism(p):
    xs = _samples(p)
    for a in xs:
        assert a.conj().conj() == a
        for b in xs:
            assert (a * b).conj() == a.conj() * b.conj()
            assert (a + b).conj() == a.conj() + b.conj()


def test_zeta_power_wraps_and_multiplies():
    p = 5
    for i in range(10):
        for j in range(10):
            assert Cyc.zeta_pow(p, i) * Cyc.zeta_pow(p, j) == Cyc.zeta_pow(p, i + j)


def test_gauss_sum_squares_to_signed_p():
    for p in [3, 5, 7, 11]:
        g = gauss_sum(p)
        sign = 1 if (p - 1) // 2 % 2 == 0 else -1
        assert g * g == Cyc.from_rational(p, sign * p)


def test_fp_arithmetic():
    a, b = Fp(7, 3), Fp(7, 5)
    assert a + b == Fp(7, 1)
    assert a * b == Fp(7, 1)
    assert a / b == a * Fp(7, 3)  # 5^-1 = 3 mod 7
    assert Fp(7, 2) * Fp(7, 4) == 1
    with pytest.raises(DomainMismatch):
        Fp(7, 1) + Fp(5, 1)
    with pytest.raises(UnsupportedCharacteristic):
        Fp(2, 1)


# ---------------------------------------------------------------------------
# elimination


def test_solve_identity_unique():
    a = Matrix.identity(QQ, 3)
    b = Matrix(QQ, [[Fraction(5)], [Fraction(-1)], [Fraction(2)]])
    sol = solve_linear(a, b)
    assert sol.particular == b
    assert sol.kernel_dim == 0


def test_solve_zero_matrix_kernel_dim_four():
    a = Matrix.zeros(QQ, 2, 2)
    b = Matrix.zeros(QQ, 2, 2)
    sol = solve_linear(a, b)
    assert sol.kernel_dim == 4


def test_solve_inconsistent():
    a = Matrix.from_int_rows(QQ, [[1, 1], [2, 2]])
    b = Matrix.from_int_rows(QQ, [[1], [3]])
    assert solve_linear(a, b) is None


def test_kernel_dimension_identity_and_zero():
    assert kernel_dimension(Matrix.identity(QQ, 4)) == 0
    assert kernel_dimension(Matrix.zeros(QQ, 3, 5)) == 5


def test_kernel_dimension_rank_two_outer_product_sum():
    # two independent rank-1 outer products u v^T + w x^T; independent oracle:
    # all 3x3 minors vanish while some 2x2 minor does not, so rank is 2 and
    # the kernel has dimension 4 - 2 = 2
    u, v = [1, 2, 0, 1], [1, 0, 1, 1]
    w, x = [0, 1, 1, 0], [2, 1, 0, 1]
    rows = [[u[i] * v[j] + w[i] * x[j] for j in range(4)] for i in range(4)]
    a = Matrix.from_int_rows(QQ, rows)

    def minor(rws, cls):
        sub = [[rows[r][c] for c in cls] for r in rws]
        if len(sub) == 2:
            return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
        d = 0
        for k in range(3):
            m2 = [[sub[r][c] for c in range(3) if c != k] for r in (1, 2)]
            d += (-1) ** k * sub[0][k] * (m2[0][0] * m2[1][1] - m2[0][1] * m2[1][0])
        return d

    import itertools

    assert all(
        minor(rws, cls) == 0
        for rws in itertools.combinations(range(4), 3)
        for cls in itertools.combinations(range(4), 3)
    )
    assert any(
        minor(rws, cls) != 0
        for rws in itertools.combinations(range(4), 2)
        for cls in itertools.combinations(range(4), 2)
    )
    assert rank(a) == 2
    assert kernel_dimension(a) == 2


@pytest.mark.parametrize("domain", [QQ, gf(3), gf(5), cyc(3), cyc(5)])
def test_solve_then_substitute_roundtrip(domain):
    rng = random.Random(20240809)
    for _ in range(100):
        n = rng.randrange(1, 4)
        m = rng.randrange(1, 4)
        a = Matrix(
            domain,
            [[domain.from_int(rng.randrange(-3, 4)) for _ in range(n)] for _ in range(n)],
        )
        x = Matrix(
            domain,
            [[domain.from_int(rng.randrange(-3, 4)) for _ in range(m)] for _ in range(n)],
        )
        b = a * x
        sol = solve_linear(a, b)
        assert sol is not None
        assert a * sol.particular == b
        for k in sol.kernel:
            assert a * k == Matrix.zeros(domain, n, m)
        assert rank(a) + kernel_dimension(a) == n


def test_solve_domain_mismatch():
    with pytest.raises(DomainMismatch):
        solve_linear(Matrix.identity(QQ, 2), Matrix.identity(gf(3), 2))


# ---------------------------------------------------------------------------
# monomial matrices


def test_monomial_roundtrip_and_products():
    d = cyc(3)
    z = Cyc.zeta_pow(3, 1)
    a = MonomialMatrix(d, (1, 2, 0), (z, d.one, -d.one))
    b = MonomialMatrix(d, (2, 0, 1), (d.one, z, z * z))
    assert (a * b).to_matrix() == a.to_matrix() * b.to_matrix()
    assert a * a.inverse() == MonomialMatrix.identity(d, 3)
    assert a.trace() == a.to_matrix().trace()
    assert a.det() == a.to_matrix().det()
    dense = a.to_matrix()
    assert (a * dense) == a.to_matrix() * dense
    assert (dense * a) == dense * a.to_matrix()


def test_monomial_hom_solver_matches_dense_solver():
    # commutant of a monomial representation: solve X A = A X via both paths
    d = cyc(3)
    z = Cyc.zeta_pow(3, 1)
    mats = [
        MonomialMatrix(d, (1, 2, 0), (d.one, d.one, z)),
        MonomialMatrix.diagonal(d, (d.one, z, z * z)),
    ]
    basis = monomial_hom_basis(3, 3, [(a, a) for a in mats], d)
    # dense route: vectorize X A - A X = 0
    rows = []
    for a in mats:
        am = a.to_matrix()
        for i in range(3):
            for j in range(3):
                row = [d.zero] * 9
                for k in range(3):
                    row[i * 3 + k] = row[i * 3 + k] + am.rows[k][j]
                    row[k * 3 + j] = row[k * 3 + j] - am.rows[i][k]
                rows.append(row)
    sys = Matrix(d, rows)
    assert len(basis) == kernel_dimension(sys)
    for x in basis:
        for a in mats:
            assert x * a == a.to_matrix() * x
