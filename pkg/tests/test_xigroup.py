import math
import random
from fractions import Fraction

import numpy as np
import pytest

from leibkit.algebras import Algebra, GradedAlgebra, make_block_upper
from leibkit._tables import table_from_entries
from leibkit.linalg import Matrix, full_space, kernel, span
from leibkit.xigroup import (
    CoveringPair,
    LinearXiGroup,
    MatrixRealization,
    NoConstraints,
    NotAUnitError,
    NumericConstraints,
    OrthogonalConstraints,
    RankAmbiguityError,
    RealizationError,
    SamplingError,
    SpecialLinearConstraints,
    UnipotentConstraints,
    check_xi_group,
    constraint_family,
    exp_curve_check,
    expm,
    fitted_log_slope,
    invert_unit,
    mat_square_zero_extension,
    regular_realization,
    tangent_space,
    verify_group_closure,
    verify_tangent_huliu,
    xi,
)

G2, R2 = mat_square_zero_extension(2)
G3, R3 = mat_square_zero_extension(3)


def orth_group(n, odd_subspace=None):
    r = R2 if n == 2 else R3
    return LinearXiGroup(r, OrthogonalConstraints(n), odd_subspace)


def skew_dim_oracle(n):
    """dim{X : X^T + X = 0} by solving the linear system from scratch."""
    rows = []
    for a in range(n):
        for b in range(n):
            row = [Fraction(0)] * (n * n)
            row[a * n + b] += 1
            row[b * n + a] += 1
            rows.append(row)
    return kernel(Matrix(rows)).dim


def test_realization_verified_multiplicative():
    rng = random.Random(0)
    g = G2
    for _ in range(10):
        x = tuple(Fraction(rng.randint(-2, 2)) for _ in range(g.dim))
        y = tuple(Fraction(rng.randint(-2, 2)) for _ in range(g.dim))
        assert R2.realize(x) @ R2.realize(y) == R2.realize(g.multiply(x, y))


def test_realization_rejects_non_multiplicative(ut_model):
    bad = [Matrix.identity(2) for _ in range(3)]
    with pytest.raises(ValueError):
        MatrixRealization(ut_model, bad)


def test_realization_requires_unit():
    nil = Algebra(table_from_entries(2, [(0, 0, 1, 1)]))  # x^2 = y, no unit
    g = GradedAlgebra(nil, even=[0, 1])
    with pytest.raises(ValueError):
        regular_realization(g)


def test_invert_unit_examples(ut_model):
    r = regular_realization(ut_model)
    assert invert_unit(r, (1, 1, 0)) == (1, 1, 0)           # the unit itself
    assert invert_unit(r, (1, 1, 1)) == (1, 1, -1)          # [[1,1],[0,1]]^-1
    with pytest.raises(NotAUnitError):
        invert_unit(r, (0, 0, 1))                           # even part zero


def test_invert_unit_two_sided_random():
    rng = random.Random(4)
    g = G2
    unit = g.algebra.unit
    found = 0
    while found < 10:
        x = tuple(unit[i] + Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                  for i in range(g.dim))
        try:
            inv = invert_unit(R2, x)
        except NotAUnitError:
            continue
        found += 1
        assert g.multiply(x, inv) == unit and g.multiply(inv, x) == unit


def test_invert_unit_float_path():
    rng = np.random.default_rng(1)
    q, _ = np.linalg.qr(rng.standard_normal((2, 2)))
    x = np.zeros(8)
    x[:4] = q.reshape(-1)
    x[4:] = rng.standard_normal(4)
    inv = invert_unit(R2, x)
    assert np.allclose(R2.multiply_f(x, inv), R2.np_unit, atol=1e-12)
    assert np.allclose(R2.multiply_f(inv, x), R2.np_unit, atol=1e-12)


def test_xi_projection(ut_model):
    assert xi(ut_model, (1, 2, 0)) == (1, 2, 0)    # purely even fixed
    assert xi(ut_model, (0, 0, 5)) == (0, 0, 0)    # purely odd killed
    assert xi(ut_model, (1, 1, 1)) == (1, 1, 0)    # E11+E22+E12 -> E11+E22


def test_covering_pair_exact_laws():
    cp = CoveringPair(R2)
    assert cp.verify(samples=12, seed=5).holds
    assert cp.xi(cp.xi((1, 2, 3, 4, 5, 6, 7, 8))) == cp.xi((1, 2, 3, 4, 5, 6, 7, 8))


def test_check_xi_group_full_unit_group():
    g = LinearXiGroup(R2, NoConstraints())
    rep = check_xi_group(g, samples=100, seed=0)
    assert rep.holds and rep.worst_residual <= g.tolerance


def test_check_xi_group_orthogonal():
    rep = check_xi_group(orth_group(2), samples=200, seed=0)
    assert rep.holds and rep.worst_residual <= 1e-12


def test_check_xi_group_violation_witness():
    v1 = span([(1, 0, 0, 0)], 4)  # a single odd coordinate, not conjugation-stable
    g = orth_group(2, v1)
    rep = check_xi_group(g, samples=50, seed=0)
    assert not rep.holds
    assert rep.witness is not None and rep.witness[2] > g.tolerance


def test_group_closure_reports():
    assert verify_group_closure(orth_group(2), samples=20, seed=0).holds
    bad = orth_group(2, span([(1, 0, 0, 0)], 4))
    assert not verify_group_closure(bad, samples=20, seed=0).holds


def test_tangent_full_unit_group(ut_model):
    r = regular_realization(ut_model)
    t = tangent_space(LinearXiGroup(r, NoConstraints()))
    assert t.subspace == full_space(3) and t.exact


def test_tangent_orthogonal_dims():
    for n, r in ((2, R2), (3, R3)):
        g = LinearXiGroup(r, OrthogonalConstraints(n))
        t = tangent_space(g)
        assert t.exact
        assert t.subspace.dim == skew_dim_oracle(n) + n * n
        assert verify_tangent_huliu(t, r).holds
        # tangent space always contains the odd subspace
        for b in g.odd_subspace.basis:
            lifted = [Fraction(0)] * r.dim
            for c, i in zip(b, r.graded.odd):
                lifted[i] = c
            assert t.subspace.contains(lifted)


def test_tangent_special_linear():
    g = LinearXiGroup(R2, SpecialLinearConstraints(2))
    t = tangent_space(g)
    assert t.subspace.dim == 3 + 4  # traceless + all odd
    assert verify_tangent_huliu(t, R2).holds


def test_tangent_unipotent_block():
    g = make_block_upper(1, 2)
    r = regular_realization(g)
    v1 = span([(1, 0)], 2)
    grp = LinearXiGroup(r, UnipotentConstraints(), v1)
    t = tangent_space(grp)
    assert t.subspace.dim == 1
    assert verify_tangent_huliu(t, r).holds
    assert check_xi_group(grp, samples=20, seed=0).holds


def test_tangent_enlarged_by_symmetric_direction_fails():
    from leibkit.xigroup import TangentSpace
    t = tangent_space(orth_group(2))
    sym = [Fraction(0)] * 8
    sym[0] = Fraction(1)  # diag(1,0) is symmetric, not skew
    bigger = TangentSpace(t.subspace.sum(span([sym], 8)), exact=True)
    rep = verify_tangent_huliu(bigger, R2)
    assert not rep.holds
    assert "closure" in rep.identity


def test_expm_against_rotation():
    for t in (0.1, 0.7, 2.0):
        e = expm(t * np.array([[0.0, -1.0], [1.0, 0.0]]))
        expect = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        assert np.allclose(e, expect, atol=1e-14)


def test_expm_against_mpmath():
    import mpmath
    mpmath.mp.dps = 30
    rng = np.random.default_rng(3)
    for _ in range(5):
        a = rng.standard_normal((4, 4)) * 2
        ours = expm(a)
        theirs = mpmath.expm(mpmath.matrix(a.tolist()))
        ref = np.array([[float(theirs[i, j]) for j in range(4)] for i in range(4)])
        assert np.allclose(ours, ref, rtol=1e-12, atol=1e-12)


def test_exp_curve_zero_vector():
    # constantly the unit; only coordinate-mapping rounding noise remains
    rep = exp_curve_check(orth_group(2), np.zeros(8), [0.5, 1.0])
    assert rep.holds and rep.max_residual <= 1e-14


def test_exp_curve_skew_tangent():
    x = np.zeros(8)
    x[1], x[2] = -1.0, 1.0
    x[4:] = [0.3, -0.2, 0.1, 0.7]
    rep = exp_curve_check(orth_group(2), x, [0.1, 0.5, 1.0])
    assert rep.holds and rep.max_residual <= 1e-12


def test_exp_curve_symmetric_rejected():
    y = np.zeros(8)
    y[0] = 1.0
    rep = exp_curve_check(orth_group(2), y, [0.1, 0.5, 1.0])
    assert not rep.holds
    assert rep.residuals[1] > orth_group(2).tolerance  # already past tolerance at 0.5


def test_line_curve_slopes():
    ts = [1e-1, 1e-2, 1e-3, 1e-4]
    g = orth_group(2)
    skew = np.zeros(8)
    skew[1], skew[2] = -1.0, 1.0
    tangent_rep = exp_curve_check(g, skew, ts, curve="line")
    assert fitted_log_slope(ts, tangent_rep.residuals) >= 1.8
    sym = np.zeros(8)
    sym[0] = 1.0
    non_rep = exp_curve_check(g, sym, ts, curve="line")
    assert abs(fitted_log_slope(ts, non_rep.residuals) - 1.0) <= 0.1


def test_coords_from_matrix_rejects_outside_image():
    bad = np.zeros((4, 4))
    bad[0, 0], bad[2, 2] = 1.0, 2.0  # [[X,0],[0,Y]] with X != Y
    with pytest.raises(RealizationError):
        R2.coords_from_matrix(bad)


def test_numeric_constraint_path_matches_exact():
    exact = tangent_space(orth_group(2))
    fam = NumericConstraints(
        lambda x0: OrthogonalConstraints(2).evaluate(G2, x0), m=4)
    num = tangent_space(LinearXiGroup(R2, fam))
    assert not num.exact
    assert num.subspace.dim == exact.subspace.dim
    assert verify_tangent_huliu(num, R2).holds


def test_numeric_rank_ambiguity():
    def shaky(x0):
        return np.array([x0[0] - 1.0, 1e-9 * x0[1], 1e-11 * x0[2]])

    g = LinearXiGroup(R2, NumericConstraints(shaky, m=3))
    with pytest.raises(RankAmbiguityError) as exc:
        tangent_space(g)
    assert len(exc.value.singular_values) == 3


def test_identity_must_satisfy_constraints():
    with pytest.raises(ValueError):
        LinearXiGroup(R2, NumericConstraints(lambda x0: np.array([1.0]), m=1))


def test_sampler_missing_raises():
    fam = NumericConstraints(lambda x0: np.zeros(0), m=0)
    g = LinearXiGroup(R2, fam)
    with pytest.raises(SamplingError):
        check_xi_group(g, samples=2, seed=0)


def test_constraint_family_lookup():
    assert isinstance(constraint_family("none"), NoConstraints)
    assert isinstance(constraint_family("orthogonal", n=2), OrthogonalConstraints)
    assert isinstance(constraint_family("special-linear", n=3), SpecialLinearConstraints)
    assert isinstance(constraint_family("unipotent-block"), UnipotentConstraints)
    with pytest.raises(ValueError):
        constraint_family("frobnicate")


def test_orthogonal_requires_matrix_even_part(ut_model):
    r = regular_realization(ut_model)
    with pytest.raises(ValueError):
        LinearXiGroup(r, OrthogonalConstraints(2))
