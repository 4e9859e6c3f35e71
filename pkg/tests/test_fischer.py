import random
from fractions import Fraction

import pytest

from fischerlab import (
    BasisOverflowError,
    ExactMatrix,
    FIELD_QI,
    FischerOperator,
    GAUSSIAN_I,
    GaussianRational,
    InconsistentSystemError,
    NoDecompositionFoundError,
    NOT_SURJECTIVE,
    Poly,
    SURJECTIVE,
    UNDETERMINED,
    coordinates,
    fischer_apply,
    fischer_decompose,
    fischer_theorem_check,
    filtered_basis,
    homogeneous_basis,
    khavinson_psi,
    operator_matrix,
    rank_profile,
    rref,
    solve,
    squared_norm,
)
from helpers import random_poly, random_scalar

X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)
CIRCLE = X * X + Y * Y - Poly.constant(2, 1)


def test_apply_norm_to_one():
    op = FischerOperator(squared_norm(2))
    assert op.apply(Poly.constant(2, 1)) == Poly.constant(2, 4)


def test_apply_xy_to_xy():
    op = FischerOperator(X * Y)
    assert op.apply(X * Y) == Poly.monomial(2, (2, 0), 2) + Poly.monomial(2, (0, 2), 2)


def test_apply_circle_to_x():
    # laplacian(x^3 + x*y^2 - x) = 6x + 2x
    assert fischer_apply(FischerOperator(CIRCLE), X) == X.scale(8)


def test_apply_matches_direct_laplacian():
    rng = random.Random(3)
    for _ in range(25):
        psi = random_poly(rng, 2, 3, nonzero=True)
        if psi.degree < 1:
            continue
        q = random_poly(rng, 2, 4)
        assert FischerOperator(psi).apply(q) == (psi * q).laplacian()


def test_linearity():
    rng = random.Random(5)
    op = FischerOperator(CIRCLE)
    for _ in range(20):
        a = random_scalar(rng)
        b = random_scalar(rng)
        q1 = random_poly(rng, 2, 4)
        q2 = random_poly(rng, 2, 4)
        assert op.apply(q1.scale(a) + q2.scale(b)) == op.apply(q1).scale(a) + op.apply(
            q2
        ).scale(b)


def test_degree_shift_for_laplacian_case():
    rng = random.Random(7)
    for _ in range(50):
        psi = random_poly(rng, 2, 4, nonzero=True)
        if psi.degree < 1:
            continue
        q = random_poly(rng, 2, 4, nonzero=True)
        image = FischerOperator(psi).apply(q)
        if image:
            assert image.degree <= psi.degree + q.degree - 2


def test_homogeneous_psi_maps_slices_without_overflow():
    rng = random.Random(9)
    for _ in range(20):
        k = rng.randint(1, 3)
        psi = random_poly(rng, 2, k, nonzero=True).homogeneous_component(k)
        if not psi:
            continue
        op = FischerOperator(psi)
        m = rng.randint(0, 4)
        target_degree = m + k - 2
        if target_degree < 0:
            continue
        matrix = operator_matrix(
            op, homogeneous_basis(2, m), homogeneous_basis(2, target_degree)
        )
        assert matrix.cols == len(homogeneous_basis(2, m))


def test_operator_validation():
    with pytest.raises(ValueError):
        FischerOperator(Poly.constant(2, 3))
    with pytest.raises(ValueError):
        FischerOperator(X, operator=Poly.constant(2, 2))
    with pytest.raises(ValueError):
        FischerOperator(X, operator=Poly.variable(3, 0))
    op = FischerOperator(CIRCLE)
    assert op.operator == squared_norm(2)
    with pytest.raises(ValueError):
        op.apply(Poly.variable(3, 0))


def test_matrix_on_constant_slice():
    op = FischerOperator(squared_norm(2))
    matrix = operator_matrix(op, homogeneous_basis(2, 0), homogeneous_basis(2, 0))
    assert matrix == ExactMatrix.from_rows([[4]])


def test_matrix_on_linear_slice_is_diag_8():
    op = FischerOperator(squared_norm(2))
    matrix = operator_matrix(op, homogeneous_basis(2, 1), homogeneous_basis(2, 1))
    assert matrix == ExactMatrix.from_rows([[8, 0], [0, 8]])


def test_circle_filtered_slice_is_invertible_6x6():
    op = FischerOperator(CIRCLE)
    basis = filtered_basis(2, 2)
    matrix = operator_matrix(op, basis, basis)
    assert (matrix.rows, matrix.cols) == (6, 6)
    assert rref(matrix).rank == 6


def test_matrix_overflow_error():
    op = FischerOperator(CIRCLE)
    with pytest.raises(BasisOverflowError):
        operator_matrix(op, filtered_basis(2, 2), homogeneous_basis(2, 2))


def test_matrix_is_consistent_with_apply():
    rng = random.Random(11)
    op = FischerOperator(CIRCLE)
    source = filtered_basis(2, 3)
    target = filtered_basis(2, 3)
    matrix = operator_matrix(op, source, target)
    for _ in range(100):
        q = random_poly(rng, 2, 3)
        lhs = matrix.mul_vector(coordinates(q, source))
        assert lhs == coordinates(op.apply(q), target)


def test_decompose_circle_x_squared():
    cert = fischer_decompose(CIRCLE, X * X)
    assert cert.q == Poly.constant(2, Fraction(1, 2))
    assert cert.h == (X * X - Y * Y + Poly.constant(2, 1)).scale(Fraction(1, 2))
    assert cert.identity_exact and cert.h_harmonic_exact
    assert cert.verify()


def test_decompose_harmonic_data_keeps_f():
    f = X * X - Y * Y
    cert = fischer_decompose(CIRCLE, f)
    assert cert.q == Poly.zero(2)
    assert cert.h == f


def test_decompose_norm_by_norm():
    norm = squared_norm(2)
    cert = fischer_decompose(norm, norm)
    assert cert.q == Poly.constant(2, 1)
    assert cert.h == Poly.zero(2)


def test_decompose_certificates_sound_on_randoms():
    rng = random.Random(13)
    for _ in range(25):
        psi = random_poly(rng, 2, 2, nonzero=True)
        if psi.degree < 1:
            continue
        f = random_poly(rng, 2, 4)
        try:
            cert = fischer_decompose(psi, f, slack=2)
        except NoDecompositionFoundError:
            continue
        assert not (cert.f - cert.psi * cert.q - cert.h)
        assert not cert.h.laplacian()


def test_decompose_inconclusive_at_slack_zero():
    # laplacian(x^3 * (a + b*x + c*y)) never has a constant term
    psi = Poly.monomial(2, (3, 0))
    with pytest.raises(NoDecompositionFoundError) as info:
        fischer_decompose(psi, Y * Y, slack=0)
    assert info.value.slack == 0


def test_decompose_validation():
    with pytest.raises(ValueError):
        fischer_decompose(Poly.constant(2, 2), X)
    with pytest.raises(ValueError):
        fischer_decompose(CIRCLE, X, slack=-1)
    with pytest.raises(ValueError):
        fischer_decompose(CIRCLE, Poly.variable(3, 0))


def test_rank_profile_circle_all_surjective_at_slack_zero():
    profile = rank_profile(CIRCLE, 5, slack=0)
    assert profile.all_surjective()
    for verdict in profile.verdicts:
        assert verdict.status == SURJECTIVE
        assert verdict.slack == 0
    # the filtered slices are square for a quadric
    for row in profile.rows:
        assert row.dim_source == row.dim_target
        assert row.rank == row.dim_source


def test_rank_profile_x1_homogeneous_surjective():
    profile = rank_profile(X, 6, mode="homogeneous")
    assert profile.all_surjective()
    for row in profile.rows:
        assert row.dim_target == row.target_degree + 1
        assert row.rank == row.dim_target


def test_rank_profile_x_cubed_homogeneous_is_conclusively_negative():
    # source homogeneous(n-1) has dimension n < n+1 = dim homogeneous(n)
    psi = Poly.monomial(2, (3, 0))
    profile = rank_profile(psi, 4, mode="homogeneous")
    for verdict, row in zip(profile.verdicts, profile.rows):
        assert verdict.status == NOT_SURJECTIVE
        assert verdict.witness is not None
        assert row.rank < row.dim_target
        if row.source_degree >= 0:
            # the witness is provably outside the image of its slice
            op = FischerOperator(psi)
            source = homogeneous_basis(2, row.source_degree)
            target = homogeneous_basis(2, row.target_degree)
            matrix = operator_matrix(op, source, target)
            with pytest.raises(InconsistentSystemError):
                solve(matrix, coordinates(verdict.witness, target))


def test_rank_profile_x_cubed_filtered_is_undetermined():
    psi = Poly.monomial(2, (3, 0))
    profile = rank_profile(psi, 2, slack=1)
    for verdict in profile.verdicts:
        assert verdict.status == UNDETERMINED
        assert verdict.witness is not None
        assert verdict.witness.degree <= verdict.target_degree


def test_rank_profile_ranks_monotone_in_source_degree():
    psi = Poly.monomial(2, (3, 0))
    profile = rank_profile(psi, 3, slack=3)
    by_target = {}
    for row in profile.rows:
        by_target.setdefault(row.target_degree, []).append(row)
    for rows in by_target.values():
        ranks = [r.rank for r in sorted(rows, key=lambda r: r.source_degree)]
        assert ranks == sorted(ranks)


def test_rank_profile_homogeneous_mode_requires_homogeneous_psi():
    with pytest.raises(ValueError):
        rank_profile(CIRCLE, 3, mode="homogeneous")
    with pytest.raises(ValueError):
        rank_profile(CIRCLE, 3, mode="graded")
    with pytest.raises(ValueError):
        rank_profile(CIRCLE, -1)


def test_rank_profile_khavinson_linear_phi_surjective_at_low_degrees():
    psi = khavinson_psi([0, 1])
    profile = rank_profile(psi, 2, slack=2)
    assert profile.all_surjective()
    assert all(v.slack == 0 for v in profile.verdicts)


def test_fischer_theorem_examples():
    cases = [
        Poly.variable(2, 0),
        Poly.monomial(2, (1, 1)),
        squared_norm(2),
    ]
    for p in cases:
        slices = fischer_theorem_check(p, 4)
        assert all(s.nonsingular for s in slices)
        assert all(s.rank == s.dimension for s in slices)


def test_fischer_theorem_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        fischer_theorem_check(CIRCLE, 3)
    with pytest.raises(ValueError):
        fischer_theorem_check(Poly.constant(2, 2), 3)


def test_khavinson_psi_linear_phi_expansion():
    # (x3 - x1 - i*x2)^2 expanded by hand
    x1 = Poly.variable(3, 0, FIELD_QI)
    x2 = Poly.variable(3, 1, FIELD_QI)
    x3 = Poly.variable(3, 2, FIELD_QI)
    expected = (
        x3 * x3
        + x1 * x1
        - x2 * x2
        - (x1 * x3).scale(2)
        - (x2 * x3).scale(GaussianRational(0, 2))
        + (x1 * x2).scale(GaussianRational(0, 2))
    )
    assert khavinson_psi([0, 1]) == expected


def test_khavinson_psi_quadratic_phi_independent_expansion():
    x1 = Poly.variable(3, 0, FIELD_QI)
    x2 = Poly.variable(3, 1, FIELD_QI)
    x3 = Poly.variable(3, 2, FIELD_QI)
    w = x1 + x2.scale(GAUSSIAN_I)
    expected = x3 * x3 - (x3 * (w * w)).scale(2) + (w * w) * (w * w)
    psi = khavinson_psi([0, 0, 1])
    assert psi == expected
    assert psi.degree == 4


def test_khavinson_psi_rejects_constant_phi():
    with pytest.raises(ValueError):
        khavinson_psi([Fraction(5)])
    with pytest.raises(ValueError):
        khavinson_psi([GaussianRational(1, 2), 0, 0])


def test_khavinson_psi_laplacian_is_two():
    # laplacian((x3 - phi(w))^2) = 2 for every phi: the gradient squares cancel
    for coeffs in ([0, 1], [0, 0, 1], [1, GaussianRational(0, 1), 0, Fraction(1, 2)]):
        psi = khavinson_psi(coeffs)
        assert psi.laplacian() == Poly.constant(3, 2, FIELD_QI)
