"""Laplacian-composed multiplication operators on graded polynomial slices.

The central object is the linear map q -> P(D)(psi * q), with P defaulting
to the squared norm so that P(D) is the Laplacian.  This module realizes the
map as an exact matrix between graded slices, computes quotient/harmonic
decompositions f = psi*q + h, profiles degree-wise surjectivity with
machine-checkable verdicts, and checks slice-wise bijectivity for the
self-paired homogeneous case q -> P(D)(P*q).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoDecompositionFoundError, InconsistentSystemError
from .linalg import ExactMatrix, rref, solve
from .polyring import (
    FILTERED,
    HOMOGENEOUS,
    Poly,
    apply_operator,
    coordinates,
    filtered_basis,
    from_coordinates,
    homogeneous_basis,
    squared_norm,
)
from .scalars import FIELD_QI, GAUSSIAN_I, as_scalar

SURJECTIVE = "surjective"
UNDETERMINED = "undetermined"
NOT_SURJECTIVE = "not_surjective"


@dataclass(frozen=True)
class FischerOperator:
    """The linear map q -> operator(D)(psi * q) on polynomials.

    ``operator`` defaults to the squared norm, in which case the map is
    q -> laplacian(psi * q).  Both psi and operator must be non-constant.
    """

    psi: Poly
    operator: Poly = None

    def __post_init__(self):
        if self.operator is None:
            object.__setattr__(
                self, "operator", squared_norm(self.psi.arity, self.psi.field)
            )
        if self.psi.degree < 1:
            raise ValueError("psi must be non-constant")
        if self.operator.degree < 1:
            raise ValueError("the differential operator polynomial must be non-constant")
        if self.operator.arity != self.psi.arity:
            raise ValueError(
                f"arity mismatch: psi {self.psi.arity} vs operator {self.operator.arity}"
            )
        if self.operator.field != self.psi.field:
            raise ValueError(
                f"field mismatch: psi {self.psi.field} vs operator {self.operator.field}"
            )

    @property
    def arity(self):
        return self.psi.arity

    @property
    def field(self):
        return self.psi.field

    def apply(self, q):
        if q.arity != self.arity:
            raise ValueError(f"arity mismatch: operator {self.arity} vs q {q.arity}")
        if q.field != self.field:
            raise ValueError(f"field mismatch: operator {self.field} vs q {q.field}")
        return apply_operator(self.operator, self.psi * q)


def fischer_apply(op, q):
    """Apply the operator to q; equals laplacian(psi * q) for the default."""
    return op.apply(q)


def operator_matrix(op, source, target):
    """Matrix of the operator from one graded slice to another.

    Column j holds the target coordinates of the image of the j-th source
    monomial.  Raises BasisOverflowError if an image monomial falls outside
    the target slice.
    """
    if source.arity != op.arity or target.arity != op.arity:
        raise ValueError("basis arity does not match the operator")
    columns = [
        coordinates(op.apply(Poly.monomial(op.arity, m, 1, op.field)), target)
        for m in source.monomials
    ]
    return ExactMatrix.from_columns(columns, rows=len(target), field=op.field)


@dataclass(frozen=True)
class DecompositionCertificate:
    """The triple f = psi*q + h with recomputed exactness flags."""

    psi: Poly
    f: Poly
    q: Poly
    h: Poly
    identity_exact: bool
    h_harmonic_exact: bool

    @classmethod
    def build(cls, psi, f, q):
        h = f - psi * q
        cert = cls(
            psi=psi,
            f=f,
            q=q,
            h=h,
            identity_exact=not (f - psi * q - h),
            h_harmonic_exact=not h.laplacian(),
        )
        return cert

    def verify(self):
        """Re-run both exact checks from scratch, ignoring the stored flags."""
        return (not (self.f - self.psi * self.q - self.h)) and (not self.h.laplacian())


def fischer_decompose(psi, f, slack=0):
    """Find q with laplacian(psi*q) == laplacian(f) and return the certificate.

    The quotient is searched in filtered slices of degree
    deg f - deg psi + 2 + s for s = 0..slack, smallest s first, with free
    variables pinned to zero.  Failure raises NoDecompositionFoundError and
    is inconclusive: higher source degrees might still work.
    """
    if psi.arity != f.arity:
        raise ValueError(f"arity mismatch: psi {psi.arity} vs f {f.arity}")
    if psi.field != f.field:
        raise ValueError(f"field mismatch: psi {psi.field} vs f {f.field}")
    if psi.degree < 1:
        raise ValueError("psi must be non-constant")
    if not isinstance(slack, int) or slack < 0:
        raise ValueError(f"slack must be a non-negative int, got {slack!r}")
    lap_f = f.laplacian()
    if not lap_f:
        return DecompositionCertificate.build(psi, f, Poly.zero(f.arity, f.field))
    op = FischerOperator(psi)
    deg_psi = psi.degree
    for s in range(slack + 1):
        m = f.degree - deg_psi + 2 + s
        if m < 0:
            continue
        source = filtered_basis(f.arity, m)
        target = filtered_basis(f.arity, max(m + deg_psi - 2, lap_f.degree))
        matrix = operator_matrix(op, source, target)
        try:
            x = solve(matrix, coordinates(lap_f, target))
        except InconsistentSystemError:
            continue
        q = from_coordinates(x, source, f.field)
        return DecompositionCertificate.build(psi, f, q)
    raise NoDecompositionFoundError(slack)


@dataclass(frozen=True)
class RankProfileRow:
    """One tested (target degree, source degree) pair.

    dim_target and rank describe the matrix actually reduced: its codomain is
    the smallest filtered slice containing all images (degree n + s in
    filtered mode) or the homogeneous slice of degree n.  surjective records
    whether the image covers the degree-n slice under test.
    """

    target_degree: int
    source_degree: int
    dim_source: int
    dim_target: int
    rank: int
    surjective: bool


@dataclass(frozen=True)
class DegreeVerdict:
    """Per-target-degree outcome.

    status "surjective" carries the smallest successful slack;
    "undetermined" (filtered mode, slack exhausted) and "not_surjective"
    (homogeneous mode, conclusive) carry a witness polynomial provably
    outside the image of the last tested slice.
    """

    target_degree: int
    status: str
    slack: int | None = None
    witness: Poly | None = None


@dataclass(frozen=True)
class RankProfile:
    psi: Poly
    mode: str
    max_target_degree: int
    slack: int
    rows: tuple
    verdicts: tuple

    def all_surjective(self):
        return all(v.status == SURJECTIVE for v in self.verdicts)

    def verdict_for(self, target_degree):
        return self.verdicts[target_degree]


def _monomial_poly(arity, exponents, field):
    return Poly.monomial(arity, exponents, 1, field)


def _homogeneous_profile(psi, max_target_degree):
    op = FischerOperator(psi)
    deg_psi = psi.degree
    rows = []
    verdicts = []
    for n in range(max_target_degree + 1):
        target = homogeneous_basis(psi.arity, n)
        m = n - deg_psi + 2
        if m < 0:
            # no homogeneous slice maps into degree n; conclusively missed
            rows.append(RankProfileRow(n, m, 0, len(target), 0, False))
            witness = _monomial_poly(psi.arity, target.monomials[0], psi.field)
            verdicts.append(DegreeVerdict(n, NOT_SURJECTIVE, witness=witness))
            continue
        source = homogeneous_basis(psi.arity, m)
        matrix = operator_matrix(op, source, target)
        result = rref(matrix, want_transform=True)
        surjective = result.rank == len(target)
        rows.append(
            RankProfileRow(n, m, len(source), len(target), result.rank, surjective)
        )
        if surjective:
            verdicts.append(DegreeVerdict(n, SURJECTIVE, slack=0))
        else:
            y = result.transform.row(result.rank)
            j = next(i for i, v in enumerate(y) if v)
            witness = _monomial_poly(psi.arity, target.monomials[j], psi.field)
            verdicts.append(DegreeVerdict(n, NOT_SURJECTIVE, witness=witness))
    return rows, verdicts


def _filtered_profile(psi, max_target_degree, slack):
    op = FischerOperator(psi)
    deg_psi = psi.degree
    rows = []
    verdicts = []
    for n in range(max_target_degree + 1):
        tested_dim = len(filtered_basis(psi.arity, n))
        verdict = None
        witness = None
        for s in range(slack + 1):
            m = n - deg_psi + 2 + s
            if m < 0:
                # empty source slice: its image is {0}, so every monomial of
                # the tested block witnesses the miss
                rows.append(RankProfileRow(n, m, 0, tested_dim, 0, False))
                witness = _monomial_poly(psi.arity, (0,) * psi.arity, psi.field)
                continue
            source = filtered_basis(psi.arity, m)
            # images live in degree <= n + s; this slice also contains the
            # degree-n block being tested, as its first tested_dim monomials
            target = filtered_basis(psi.arity, m + deg_psi - 2)
            matrix = operator_matrix(op, source, target)
            block = ExactMatrix.from_columns(
                [
                    [1 if i == j else 0 for i in range(len(target))]
                    for j in range(tested_dim)
                ],
                rows=len(target),
                field=psi.field,
            )
            result = rref(matrix.hstack(block), want_transform=False)
            rank = sum(1 for p in result.pivot_cols if p < matrix.cols)
            missed = [p - matrix.cols for p in result.pivot_cols if p >= matrix.cols]
            surjective = not missed
            rows.append(
                RankProfileRow(n, m, len(source), len(target), rank, surjective)
            )
            if surjective:
                verdict = DegreeVerdict(n, SURJECTIVE, slack=s)
                break
            witness = _monomial_poly(psi.arity, target.monomials[missed[0]], psi.field)
        if verdict is None:
            verdict = DegreeVerdict(n, UNDETERMINED, witness=witness)
        verdicts.append(verdict)
    return rows, verdicts


def rank_profile(psi, max_target_degree, slack=0, mode=FILTERED):
    """Degree-wise surjectivity evidence for q -> laplacian(psi * q).

    Homogeneous mode (psi homogeneous) is conclusive per target degree: the
    slice map either is or is not onto.  Filtered mode climbs the slack
    ladder and reports UNDETERMINED with a witness when the ladder is
    exhausted, never a negative, since higher source degrees remain untried.
    """
    if psi.degree < 1:
        raise ValueError("psi must be non-constant")
    if not isinstance(max_target_degree, int) or max_target_degree < 0:
        raise ValueError("max_target_degree must be a non-negative int")
    if not isinstance(slack, int) or slack < 0:
        raise ValueError(f"slack must be a non-negative int, got {slack!r}")
    if mode == HOMOGENEOUS:
        if not psi.is_homogeneous():
            raise ValueError("homogeneous mode requires a homogeneous psi")
        rows, verdicts = _homogeneous_profile(psi, max_target_degree)
    elif mode == FILTERED:
        rows, verdicts = _filtered_profile(psi, max_target_degree, slack)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return RankProfile(
        psi=psi,
        mode=mode,
        max_target_degree=max_target_degree,
        slack=slack,
        rows=tuple(rows),
        verdicts=tuple(verdicts),
    )


@dataclass(frozen=True)
class BijectivitySlice:
    degree: int
    dimension: int
    rank: int
    nonsingular: bool


def fischer_theorem_check(p, max_degree):
    """Slice-wise nonsingularity of q -> p(D)(p * q) for homogeneous p.

    For every m <= max_degree the map sends the homogeneous slice of degree m
    to itself; each slice matrix is reduced and reported.  Expected outcome:
    nonsingular at every degree.
    """
    if not p.is_homogeneous() or p.degree < 1:
        raise ValueError("p must be homogeneous and non-constant")
    op = FischerOperator(psi=p, operator=p)
    slices = []
    for m in range(max_degree + 1):
        basis = homogeneous_basis(p.arity, m)
        matrix = operator_matrix(op, basis, basis)
        result = rref(matrix, want_transform=False)
        slices.append(
            BijectivitySlice(
                degree=m,
                dimension=len(basis),
                rank=result.rank,
                nonsingular=result.rank == len(basis),
            )
        )
    return tuple(slices)


def khavinson_psi(phi_coeffs):
    """Expand (x3 - phi(x1 + i*x2))^2 over the Gaussian rationals in d = 3.

    phi is given by its coefficient list a0, a1, ..., an and must be
    non-constant.
    """
    coeffs = [as_scalar(c, FIELD_QI) for c in phi_coeffs]
    if not any(coeffs[1:]):
        raise ValueError("phi must be non-constant (some a_k != 0 with k >= 1)")
    w = Poly.variable(3, 0, FIELD_QI) + Poly.variable(3, 1, FIELD_QI).scale(GAUSSIAN_I)
    phi_w = Poly.zero(3, FIELD_QI)
    for c in reversed(coeffs):
        phi_w = phi_w * w + Poly.constant(3, c, FIELD_QI)
    base = Poly.variable(3, 2, FIELD_QI) - phi_w
    return base * base
