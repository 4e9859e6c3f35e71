"""Seeded random generators shared by the test modules."""

from fractions import Fraction

from fischerlab import (
    ExactMatrix,
    FIELD_Q,
    GaussianRational,
    Poly,
    QuadricDomain,
    filtered_basis,
)


def random_fraction(rng, max_abs=9, max_den=9, nonzero=False):
    while True:
        value = Fraction(rng.randint(-max_abs, max_abs), rng.randint(1, max_den))
        if value or not nonzero:
            return value


def random_gaussian(rng, max_abs=9, max_den=9, nonzero=False):
    while True:
        value = GaussianRational(
            random_fraction(rng, max_abs, max_den),
            random_fraction(rng, max_abs, max_den),
        )
        if value or not nonzero:
            return value


def random_scalar(rng, field=FIELD_Q, nonzero=False):
    if field == FIELD_Q:
        return random_fraction(rng, nonzero=nonzero)
    return random_gaussian(rng, nonzero=nonzero)


def random_poly(rng, arity, max_degree, field=FIELD_Q, max_terms=6, nonzero=False):
    basis = filtered_basis(arity, max_degree)
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            monomial = basis.monomials[rng.randrange(len(basis))]
            terms[monomial] = random_scalar(rng, field)
        p = Poly(arity, field, terms)
        if p or not nonzero:
            return p


def random_matrix(rng, rows, cols, field=FIELD_Q):
    entries = [random_scalar(rng, field) for _ in range(rows * cols)]
    return ExactMatrix(rows, cols, entries, field)


def random_ellipsoid(rng, arity):
    semi_axes = [
        Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(arity)
    ]
    return QuadricDomain.ellipsoid(semi_axes)
