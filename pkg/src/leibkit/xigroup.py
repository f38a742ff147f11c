"""Linear xi-groups: unit groups of matrix-realized graded algebras.

The unit group of a unital special graded algebra consists of the elements
whose even component is invertible; projecting away the odd component is an
idempotent group endomorphism, so the unit group together with that
projection covers every subgroup stable under conjugation by projected
elements.  Groups here are restricted to product form
``{x0 + x1 : p(x0) = 0, x1 in V1}`` with ``p`` drawn from named polynomial
constraint families; that keeps the tangent space computable as
(kernel of the constraint Jacobian at the unit) + V1, exactly when the
constraints are rational polynomials.

Exact data (structure tensors, embeddings, tangent bases) uses Fractions;
sampling, conjugation checks, and curve checks run in float64 with
residuals scaled by operator norms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebras import GradedAlgebra, make_trivial_extension, matrix_algebra
from .huliu import HL_IDENTITIES, HuLiuAlgebra, verify_huliu_identities, verify_lie
from .leibniz import LeibnizAlgebra, verify_right_leibniz
from .linalg import Matrix, Subspace, Vec, full_space, kernel, solve, span, vec, zeros
from .report import Report, fail, ok

DEFAULT_TOLERANCE = 1e-9
SV_GAP_RATIO = 1e6
_SAMPLE_RETRIES = 100


class NotAUnitError(ValueError):
    """The even component is singular, i.e. the element is not a unit."""


class SamplingError(RuntimeError):
    """The constraint sampler failed to produce a point."""


class RealizationError(RuntimeError):
    """A matrix could not be mapped back to algebra coordinates."""


class RankAmbiguityError(RuntimeError):
    """Numeric rank undecidable: the singular-value gap is too small."""

    def __init__(self, singular_values):
        self.singular_values = tuple(float(s) for s in singular_values)
        super().__init__(f"ambiguous numeric rank; singular values {self.singular_values}")


class MatrixRealization:
    """A verified embedding of a unital graded algebra into n x n matrices.

    The embedding must be linear, injective, multiplicative on basis pairs,
    send the unit to the identity matrix, and realize odd elements as
    square-zero matrices.  All of this is checked exactly at construction.
    """

    def __init__(self, graded: GradedAlgebra, embed: list[Matrix]):
        graded.validate()
        if graded.algebra.unit is None:
            raise ValueError("realization requires a unital algebra")
        self.graded = graded
        self.embed = tuple(embed)
        if len(self.embed) != graded.dim:
            raise ValueError("need one matrix per basis element")
        self.n = self.embed[0].rows
        if any(m.rows != self.n or m.cols != self.n for m in self.embed):
            raise ValueError("embedding matrices must be square of equal size")
        self._verify()
        self.np_tensor = np.array(
            [[[float(c) for c in v] for v in row] for row in graded.algebra.table]
        )
        self.np_embed = np.array(
            [[[float(c) for c in r] for r in m.data] for m in self.embed]
        )
        self._flat = self.np_embed.reshape(graded.dim, -1).T  # n^2 x dim
        self._flat_pinv = np.linalg.pinv(self._flat)
        self.np_unit = np.array([float(c) for c in graded.algebra.unit])

    def _verify(self):
        g = self.graded
        table = g.algebra.table
        for i in range(g.dim):
            for j in range(g.dim):
                prod = self.embed[i] @ self.embed[j]
                expect = Matrix.zero(self.n, self.n)
                for k, c in enumerate(table[i][j]):
                    if c:
                        expect = expect + self.embed[k].scale(c)
                if prod != expect:
                    raise ValueError(f"embedding not multiplicative at basis pair ({i},{j})")
        unit_mat = self.realize(g.algebra.unit)
        if unit_mat != Matrix.identity(self.n):
            raise ValueError("embedding does not send the unit to the identity")
        coord_rows = [[m.data[a][b] for a in range(self.n) for b in range(self.n)]
                      for m in self.embed]
        if Matrix(coord_rows).rank() != g.dim:
            raise ValueError("embedding is not injective")
        for i in g.odd:
            for j in g.odd:
                if not (self.embed[i] @ self.embed[j]).is_zero():
                    raise ValueError(f"odd image does not square to zero at ({i},{j})")

    @property
    def dim(self) -> int:
        return self.graded.dim

    def realize(self, x) -> Matrix:
        x = vec(x)
        acc = Matrix.zero(self.n, self.n)
        for c, m in zip(x, self.embed):
            if c:
                acc = acc + m.scale(c)
        return acc

    def realize_f(self, x) -> np.ndarray:
        return np.einsum("i,ijk->jk", np.asarray(x, dtype=float), self.np_embed)

    def coords_from_matrix(self, m: np.ndarray, tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
        """Invert the embedding numerically; the matrix must lie in its image."""
        coords = self._flat_pinv @ np.asarray(m, dtype=float).reshape(-1)
        recon = self._flat @ coords
        scale = max(1.0, float(np.linalg.norm(m)))
        err = float(np.linalg.norm(recon - np.asarray(m, dtype=float).reshape(-1)))
        if err > tol * scale:
            raise RealizationError(
                f"matrix leaves the realized subalgebra (residual {err:.3e})")
        return coords

    def op_norm(self, x) -> float:
        return float(np.linalg.norm(self.realize_f(x), 2))

    def multiply_f(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.np_tensor)


def regular_realization(g: GradedAlgebra) -> MatrixRealization:
    """Left-multiplication realization; faithful because the algebra is unital."""
    t = g.algebra.table
    embed = [Matrix.from_cols([t[i][j] for j in range(g.dim)]) for i in range(g.dim)]
    return MatrixRealization(g, embed)


def mat_square_zero_extension(n: int) -> tuple[GradedAlgebra, MatrixRealization]:
    """Mat(n) extended by itself as a bimodule, realized by 2n x 2n blocks
    [[X, M], [0, X]]; the odd block squares to zero structurally."""
    a0 = matrix_algebra(n)
    g = make_trivial_extension(a0, n * n, a0.table, a0.table)
    embed = []
    for i in range(n):
        for j in range(n):
            m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
            m[i][j] = Fraction(1)
            m[n + i][n + j] = Fraction(1)
            embed.append(Matrix(m))
    for i in range(n):
        for j in range(n):
            m = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
            m[i][n + j] = Fraction(1)
            embed.append(Matrix(m))
    return g, MatrixRealization(g, embed)


def xi(g: GradedAlgebra, x):
    """Even-component projection; idempotent and multiplicative on units."""
    if isinstance(x, np.ndarray):
        out = x.copy()
        out[list(g.odd)] = 0.0
        return out
    return g.even_part(x)


def _even_mult_matrix(g: GradedAlgebra, x0_even):
    """Left multiplication by x0 restricted to the even part (exact)."""
    table = g.algebra.table
    even = g.even
    rows = []
    for k in even:
        row = []
        for j in even:
            row.append(sum((x0_even[a] * table[i][j][k] for a, i in enumerate(even)),
                           Fraction(0)))
        rows.append(row)
    return Matrix(rows)


def invert_unit(r: MatrixRealization, x):
    """Inverse of a unit x0 + x1, namely x0^-1 - x0^-1 x1 x0^-1.

    Raises NotAUnitError exactly when the even component is not invertible;
    this is the unit-group membership criterion.  Works on exact rational
    coordinates and on float arrays.
    """
    g = r.graded
    if isinstance(x, np.ndarray) or (
        not isinstance(x, (tuple, list)) or any(isinstance(c, float) for c in x)
    ):
        return _invert_unit_f(r, np.asarray(x, dtype=float))
    x = vec(x)
    even = list(g.even)
    x0_even = [x[i] for i in even]
    m = _even_mult_matrix(g, x0_even)
    unit_even = [g.algebra.unit[i] for i in even]
    y = solve(m, unit_even)
    if y is None:
        raise NotAUnitError("even component is singular")
    x0_inv = [Fraction(0)] * g.dim
    for a, i in enumerate(even):
        x0_inv[i] = y[a]
    x0_inv = tuple(x0_inv)
    x1 = g.odd_part(x)
    mul = g.algebra.multiply
    inv = tuple(a - b for a, b in zip(x0_inv, mul(x0_inv, mul(x1, x0_inv))))
    unit = g.algebra.unit
    if mul(x, inv) != unit or mul(inv, x) != unit:
        raise RuntimeError("inverse formula failed; this is a bug")
    return inv


def _invert_unit_f(r: MatrixRealization, x: np.ndarray) -> np.ndarray:
    g = r.graded
    even = list(g.even)
    # left multiplication by the even part, restricted to even coordinates
    m = np.einsum("i,ijk->kj", x[even], r.np_tensor[np.ix_(even, even, even)])
    try:
        y = np.linalg.solve(m, r.np_unit[even])
    except np.linalg.LinAlgError as e:
        raise NotAUnitError(str(e)) from None
    x0_inv = np.zeros(g.dim)
    x0_inv[even] = y
    x1 = x.copy()
    x1[even] = 0.0
    inv = x0_inv - r.multiply_f(x0_inv, r.multiply_f(x1, x0_inv))
    resid = np.linalg.norm(r.multiply_f(x, inv) - r.np_unit)
    scale = max(1.0, float(np.linalg.norm(x)) * float(np.linalg.norm(inv)))
    if not np.isfinite(resid) or resid > 1e-6 * scale:
        raise NotAUnitError(f"even component numerically singular (residual {resid:.3e})")
    return inv


@dataclass(frozen=True)
class CoveringPair:
    """Unit group of a realized graded algebra with the even projection."""

    realization: MatrixRealization

    def xi(self, x):
        return xi(self.realization.graded, x)

    def product(self, x, y):
        return self.realization.graded.multiply(x, y)

    def inverse(self, x):
        return invert_unit(self.realization, x)

    def contains(self, x) -> bool:
        try:
            invert_unit(self.realization, x)
            return True
        except NotAUnitError:
            return False

    def verify(self, samples: int = 16, seed: int = 0) -> Report:
        """Exact spot-check that xi is an idempotent group endomorphism."""
        g = self.realization.graded
        rng = random.Random(seed)
        unit = g.algebra.unit

        def random_unit():
            for _ in range(_SAMPLE_RETRIES):
                x = tuple(unit[i] + Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                          for i in range(g.dim))
                try:
                    invert_unit(self.realization, x)
                    return x
                except NotAUnitError:
                    continue
            raise SamplingError("could not sample a unit")

        for _ in range(samples):
            x, y = random_unit(), random_unit()
            lhs = self.xi(self.product(x, y))
            rhs = self.product(self.xi(x), self.xi(y))
            if lhs != rhs:
                return fail("xi multiplicative", (x, y), lhs, rhs)
            if self.xi(self.xi(x)) != self.xi(x):
                return fail("xi idempotent", (x,), self.xi(self.xi(x)), self.xi(x))
            if not self.contains(self.xi(x)):
                return fail("xi lands in the unit group", (x,), self.xi(x), unit)
        return ok("covering pair")


# ---------------------------------------------------------------------------
# constraint families on the even part
# ---------------------------------------------------------------------------

class ConstraintFamily:
    """Polynomial conditions cutting the even-part group out of the units.

    ``evaluate`` takes the even coordinate vector (ordered like ``g.even``)
    and returns a residual vector; members satisfy residual = 0.  Families
    with rational-polynomial constraints provide an exact Jacobian at the
    unit, which makes tangent spaces exact.
    """

    name = "base"

    def check_compatible(self, g: GradedAlgebra):
        raise NotImplementedError

    def num_constraints(self, g: GradedAlgebra) -> int:
        raise NotImplementedError

    def evaluate(self, g: GradedAlgebra, x0_even: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def jacobian_at_unit(self, g: GradedAlgebra) -> Matrix | None:
        """Exact Jacobian (rows: constraints, cols: even coords) or None."""
        return None

    def sample(self, g: GradedAlgebra, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def params(self) -> dict:
        return {}


def _check_matrix_even_part(g: GradedAlgebra, n: int, family: str):
    if len(g.even) != n * n:
        raise ValueError(f"{family} constraints need an even part of dimension {n * n}")
    table = g.algebra.table
    even = g.even
    for s in range(n * n):
        for t in range(n * n):
            a, b = divmod(s, n)
            c, d = divmod(t, n)
            prod = table[even[s]][even[t]]
            expect = [Fraction(0)] * g.dim
            if b == c:
                expect[even[a * n + d]] = Fraction(1)
            if list(prod) != expect:
                raise ValueError(
                    f"{family} constraints need the even part to be the n x n "
                    f"matrix algebra in row-major basis order")


class NoConstraints(ConstraintFamily):
    """The full unit group: only invertibility of the even part."""

    name = "none"

    def check_compatible(self, g):
        return None

    def num_constraints(self, g):
        return 0

    def evaluate(self, g, x0_even):
        return np.zeros(0)

    def jacobian_at_unit(self, g):
        return Matrix([])

    def sample(self, g, rng):
        even = list(g.even)
        unit_even = np.array([float(g.algebra.unit[i]) for i in even])
        for _ in range(_SAMPLE_RETRIES):
            x0 = unit_even + 0.5 * rng.standard_normal(len(even))
            m = np.einsum("i,ijk->kj", x0,
                          np.array([[[float(c) for c in v] for v in row]
                                    for row in g.algebra.table])[np.ix_(even, even, even)])
            if abs(np.linalg.det(m)) > 1e-3:
                return x0
        raise SamplingError("could not sample an invertible even element")


class OrthogonalConstraints(ConstraintFamily):
    """Even part Mat(n), constraint X^T X = I."""

    name = "orthogonal"

    def __init__(self, n: int):
        self.n = n

    def check_compatible(self, g):
        _check_matrix_even_part(g, self.n, self.name)

    def num_constraints(self, g):
        return self.n * self.n

    def evaluate(self, g, x0_even):
        x = np.asarray(x0_even, dtype=float).reshape(self.n, self.n)
        return (x.T @ x - np.eye(self.n)).reshape(-1)

    def jacobian_at_unit(self, g):
        n = self.n
        rows = []
        for a in range(n):
            for b in range(n):
                row = [Fraction(0)] * (n * n)
                row[b * n + a] += Fraction(1)
                row[a * n + b] += Fraction(1)
                rows.append(row)
        return Matrix(rows)

    def sample(self, g, rng):
        q, r = np.linalg.qr(rng.standard_normal((self.n, self.n)))
        q = q * np.sign(np.diag(r))
        return q.reshape(-1)

    def params(self):
        return {"n": self.n}


class SpecialLinearConstraints(ConstraintFamily):
    """Even part Mat(n), constraint det X = 1."""

    name = "special-linear"

    def __init__(self, n: int):
        self.n = n

    def check_compatible(self, g):
        _check_matrix_even_part(g, self.n, self.name)

    def num_constraints(self, g):
        return 1

    def evaluate(self, g, x0_even):
        x = np.asarray(x0_even, dtype=float).reshape(self.n, self.n)
        return np.array([np.linalg.det(x) - 1.0])

    def jacobian_at_unit(self, g):
        n = self.n
        row = [Fraction(0)] * (n * n)
        for a in range(n):
            row[a * n + a] = Fraction(1)
        return Matrix([row])

    def sample(self, g, rng):
        for _ in range(_SAMPLE_RETRIES):
            x = rng.standard_normal((self.n, self.n))
            d = np.linalg.det(x)
            if abs(d) < 0.1:
                continue
            if d < 0:
                x[0] = -x[0]
                d = -d
            return (x / d ** (1.0 / self.n)).reshape(-1)
        raise SamplingError("could not sample a well-conditioned matrix")

    def params(self):
        return {"n": self.n}


class UnipotentConstraints(ConstraintFamily):
    """Even part pinned to the unit: the square-zero group 1 + V1."""

    name = "unipotent-block"

    def check_compatible(self, g):
        return None

    def num_constraints(self, g):
        return len(g.even)

    def evaluate(self, g, x0_even):
        unit_even = np.array([float(g.algebra.unit[i]) for i in g.even])
        return np.asarray(x0_even, dtype=float) - unit_even

    def jacobian_at_unit(self, g):
        return Matrix.identity(len(g.even))

    def sample(self, g, rng):
        return np.array([float(g.algebra.unit[i]) for i in g.even])


class NumericConstraints(ConstraintFamily):
    """Evaluator-only constraints: tangent spaces fall back to finite
    differences with singular-value rank decisions."""

    name = "numeric"

    def __init__(self, fn, m: int, sampler=None):
        self._fn = fn
        self._m = m
        self._sampler = sampler

    def check_compatible(self, g):
        return None

    def num_constraints(self, g):
        return self._m

    def evaluate(self, g, x0_even):
        return np.asarray(self._fn(np.asarray(x0_even, dtype=float)), dtype=float)

    def sample(self, g, rng):
        if self._sampler is None:
            raise SamplingError("no sampler for numeric constraints")
        return self._sampler(rng)


def constraint_family(name: str, **params) -> ConstraintFamily:
    if name == "none":
        return NoConstraints()
    if name == "orthogonal":
        return OrthogonalConstraints(int(params["n"]))
    if name == "special-linear":
        return SpecialLinearConstraints(int(params["n"]))
    if name == "unipotent-block":
        return UnipotentConstraints()
    raise ValueError(f"unknown constraint family {name!r}")


# ---------------------------------------------------------------------------
# linear xi-groups
# ---------------------------------------------------------------------------

class LinearXiGroup:
    """Product-form subgroup {x0 + x1 : p(x0) = 0, x1 in V1} of the units."""

    def __init__(self, realization: MatrixRealization, constraints: ConstraintFamily,
                 odd_subspace: Subspace | None = None,
                 tolerance: float = DEFAULT_TOLERANCE):
        g = realization.graded
        self.realization = realization
        self.constraints = constraints
        odd_dim = len(g.odd)
        self.odd_subspace = odd_subspace if odd_subspace is not None else full_space(odd_dim)
        if self.odd_subspace.ambient_dim != odd_dim:
            raise ValueError(
                f"odd subspace ambient {self.odd_subspace.ambient_dim} != {odd_dim}")
        self.tolerance = float(tolerance)
        constraints.check_compatible(g)
        self._even = list(g.even)
        self._odd = list(g.odd)
        unit_even = np.array([float(g.algebra.unit[i]) for i in self._even])
        resid = constraints.evaluate(g, unit_even)
        if resid.size and float(np.max(np.abs(resid))) > 1e-12:
            raise ValueError("the identity does not satisfy the constraints")
        self._v1 = np.array([[float(c) for c in b] for b in self.odd_subspace.basis])
        if self._v1.size:
            self._v1_proj = self._v1.T @ np.linalg.pinv(self._v1.T)
        else:
            self._v1_proj = np.zeros((odd_dim, odd_dim)) if odd_dim else np.zeros((0, 0))

    @property
    def graded(self) -> GradedAlgebra:
        return self.realization.graded

    def membership_residual(self, x: np.ndarray) -> float:
        """Distance from the defining conditions: constraints + odd subspace."""
        x = np.asarray(x, dtype=float)
        resid = self.constraints.evaluate(self.graded, x[self._even])
        c = float(np.max(np.abs(resid))) if resid.size else 0.0
        if self._odd:
            v = x[self._odd]
            d = float(np.linalg.norm(v - self._v1_proj @ v))
        else:
            d = 0.0
        return max(c, d)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        g = self.graded
        x = np.zeros(g.dim)
        x[self._even] = self.constraints.sample(g, rng)
        if self._v1.size:
            x[self._odd] = rng.standard_normal(self._v1.shape[0]) @ self._v1
        return x


@dataclass(frozen=True)
class XiGroupReport:
    holds: bool
    samples: int
    worst_residual: float
    witness: tuple | None = None  # (x, h, residual)


def check_xi_group(group: LinearXiGroup, samples: int = 1000, seed: int = 0) -> XiGroupReport:
    """Sampled conjugation-stability check: xi(x) h xi(x)^-1 must satisfy the
    group's membership conditions within tolerance, for sampled x, h."""
    rng = np.random.default_rng(seed)
    r = group.realization
    worst = 0.0
    witness = None
    for _ in range(samples):
        x = group.sample(rng)
        h = group.sample(rng)
        xe = xi(r.graded, x)
        xe_inv = invert_unit(r, xe)
        conj = r.multiply_f(r.multiply_f(xe, h), xe_inv)
        scale = max(1.0, r.op_norm(x) * r.op_norm(h) * r.op_norm(xe_inv))
        resid = group.membership_residual(conj) / scale
        if resid > worst:
            worst = resid
            if resid > group.tolerance:
                witness = (x, h, resid)
    return XiGroupReport(worst <= group.tolerance, samples, worst, witness)


def verify_group_closure(group: LinearXiGroup, samples: int = 32, seed: int = 0) -> Report:
    """Sampled closure of the product-form set under products and inverses."""
    rng = np.random.default_rng(seed)
    r = group.realization
    tol = group.tolerance
    for _ in range(samples):
        x = group.sample(rng)
        y = group.sample(rng)
        prod = r.multiply_f(x, y)
        scale = max(1.0, r.op_norm(x) * r.op_norm(y))
        if group.membership_residual(prod) > tol * scale:
            return fail("closure under product",
                        (vec(map(Fraction, x)), vec(map(Fraction, y))),
                        vec(map(Fraction, prod)), zeros(r.dim),
                        note=f"residual {group.membership_residual(prod):.3e}")
        inv = invert_unit(r, x)
        scale = max(1.0, r.op_norm(inv) ** 2)
        if group.membership_residual(inv) > tol * scale:
            return fail("closure under inverse", (vec(map(Fraction, x)),),
                        vec(map(Fraction, inv)), zeros(r.dim),
                        note=f"residual {group.membership_residual(inv):.3e}")
    return ok("group closure")


# ---------------------------------------------------------------------------
# tangent spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TangentSpace:
    """Derivatives at 0 of curves through the unit staying in the group.

    For product-form groups this is ker(constraint Jacobian at the unit) on
    the even side plus the whole odd subspace; ``exact`` is set when the
    Jacobian kernel was computed in rational arithmetic.
    """

    subspace: Subspace
    exact: bool


def _lift_even(g: GradedAlgebra, v) -> Vec:
    out = [Fraction(0)] * g.dim
    for c, i in zip(v, g.even):
        out[i] = c
    return tuple(out)


def _lift_odd(g: GradedAlgebra, v) -> Vec:
    out = [Fraction(0)] * g.dim
    for c, i in zip(v, g.odd):
        out[i] = c
    return tuple(out)


def _numeric_jacobian(group: LinearXiGroup) -> np.ndarray:
    g = group.graded
    even = list(g.even)
    u = np.array([float(g.algebra.unit[i]) for i in even])
    m = group.constraints.num_constraints(g)
    h = 1e-6
    cols = []
    for c in range(len(even)):
        e = np.zeros(len(even))
        e[c] = h
        fp = group.constraints.evaluate(g, u + e)
        fm = group.constraints.evaluate(g, u - e)
        cols.append((fp - fm) / (2 * h))
    return np.array(cols).T.reshape(m, len(even))


def _numeric_rank(j: np.ndarray) -> tuple[int, np.ndarray]:
    sigmas = np.linalg.svd(j, compute_uv=False) if j.size else np.zeros(0)
    if sigmas.size == 0 or sigmas[0] == 0.0:
        return 0, sigmas
    cutoff = sigmas[0] * 1e-10
    nonzero = sigmas[sigmas > cutoff]
    zero = sigmas[sigmas <= cutoff]
    if zero.size and nonzero.size and nonzero[-1] / max(zero[0], 1e-300) < SV_GAP_RATIO:
        raise RankAmbiguityError(sigmas)
    return int(nonzero.size), sigmas


def tangent_space(group: LinearXiGroup) -> TangentSpace:
    """Kernel of the even-constraint Jacobian at the unit, plus V1.

    Exact (rational) whenever the constraint family carries a symbolic
    Jacobian; otherwise the Jacobian is formed by central differences and its
    rank must be unambiguous at the configured singular-value gap ratio.
    """
    g = group.graded
    even_dim = len(g.even)
    m = group.constraints.num_constraints(g)
    if m == 0:
        even_ker = full_space(even_dim)
        exact = True
    else:
        j = group.constraints.jacobian_at_unit(g)
        if j is not None:
            if j.rows != m or j.cols != even_dim:
                raise RuntimeError("constraint Jacobian has the wrong shape; family bug")
            even_ker = kernel(j)
            exact = True
        else:
            jn = _numeric_jacobian(group)
            rank, sigmas = _numeric_rank(jn)
            snapped = Matrix([[Fraction(x).limit_denominator(10 ** 6)
                               if abs(x) > 1e-9 else Fraction(0) for x in row]
                              for row in jn])
            even_ker = kernel(snapped)
            if even_ker.dim != even_dim - rank:
                raise RankAmbiguityError(sigmas)
            exact = False
    vecs = [_lift_even(g, v) for v in even_ker.basis]
    vecs += [_lift_odd(g, b) for b in group.odd_subspace.basis]
    return TangentSpace(span(vecs, g.dim), exact)


def _derived_brackets_at(g: GradedAlgebra, u, v) -> tuple[Vec, Vec]:
    """Angle and square bracket of two coordinate vectors, exactly."""
    mul = g.algebra.multiply
    v0 = g.even_part(v)
    angle = tuple(a - b for a, b in zip(mul(u, v0), mul(v0, u)))
    square = tuple(a - b for a, b in zip(mul(u, v), mul(v, u)))
    return angle, square


def verify_tangent_huliu(t: TangentSpace, r: MatrixRealization,
                         tolerance: float = DEFAULT_TOLERANCE) -> Report:
    """Closure of the tangent space under both derived brackets, then the
    Leibniz / Lie / compatibility identities on its basis.

    Runs in exact arithmetic when the tangent space is exact, otherwise
    within ``tolerance``.  Failures are reported, never raised.
    """
    g = r.graded
    s = t.subspace
    if t.exact:
        k = s.dim
        angle_rows, square_rows = [], []
        for a in range(k):
            arow, srow = [], []
            for b in range(k):
                av, sv = _derived_brackets_at(g, s.basis[a], s.basis[b])
                ac, sc = s.coords(av), s.coords(sv)
                if ac is None or sc is None:
                    bad = av if ac is None else sv
                    which = "angle" if ac is None else "square"
                    return fail(f"closure under the {which} bracket",
                                (s.basis[a], s.basis[b]), bad, zeros(g.dim),
                                note="bracket value leaves the tangent space")
                arow.append(ac)
                srow.append(sc)
            angle_rows.append(tuple(arow))
            square_rows.append(tuple(srow))
        if k == 0:
            return ok("tangent Hu-Liu structure (trivial)")
        leib = LeibnizAlgebra(tuple(angle_rows))
        rep = verify_right_leibniz(leib)
        if not rep.holds:
            return rep
        rep = verify_lie(tuple(square_rows))
        if not rep.holds:
            return rep
        rep = verify_huliu_identities(HuLiuAlgebra(leib, tuple(square_rows)))
        if not rep.holds:
            return rep
        return ok("tangent Hu-Liu structure")
    return _verify_tangent_numeric(t, r, tolerance)


def _verify_tangent_numeric(t: TangentSpace, r: MatrixRealization, tol: float) -> Report:
    g = r.graded
    basis = np.array([[float(c) for c in b] for b in t.subspace.basis])
    k = basis.shape[0]
    if k == 0:
        return ok("tangent Hu-Liu structure (trivial)")
    pinv = np.linalg.pinv(basis.T)  # coords = pinv @ vector
    c = r.np_tensor
    even_mask = np.zeros(g.dim)
    even_mask[list(g.even)] = 1.0
    ang = np.zeros((k, k, k))
    sq = np.zeros((k, k, k))
    scale = max(1.0, float(np.max(np.abs(basis)))) ** 2
    for a in range(k):
        for b in range(k):
            u, v = basis[a], basis[b]
            v0 = v * even_mask
            av = r.multiply_f(u, v0) - r.multiply_f(v0, u)
            sv = r.multiply_f(u, v) - r.multiply_f(v, u)
            for val, target in ((av, ang), (sv, sq)):
                coords = pinv @ val
                if np.linalg.norm(basis.T @ coords - val) > tol * scale:
                    which = "angle" if target is ang else "square"
                    return fail(f"closure under the {which} bracket",
                                (vec(map(Fraction, u)), vec(map(Fraction, v))),
                                vec(map(Fraction, val)), zeros(g.dim),
                                note="bracket value leaves the tangent space")
                target[a, b] = coords
    residues = {
        "right Leibniz identity":
            np.einsum("ijl,lkm->ijkm", ang, ang)
            - np.einsum("jkl,ilm->ijkm", ang, ang)
            - np.einsum("ikl,ljm->ijkm", ang, ang),
        "antisymmetry": sq + sq.transpose(1, 0, 2),
        "Jacobi identity":
            np.einsum("ijl,lkm->ijkm", sq, sq)
            + np.einsum("jkl,lim->ijkm", sq, sq)
            + np.einsum("kil,ljm->ijkm", sq, sq),
        HL_IDENTITIES[0]:
            np.einsum("jkl,ilm->ijkm", sq, ang) - np.einsum("jkl,ilm->ijkm", ang, ang),
        HL_IDENTITIES[1]: (lambda u_: np.einsum("ijl,lkm->ijkm", u_, sq)
                           - np.einsum("ijl,lkm->ijkm", u_, ang))(ang + ang.transpose(1, 0, 2)),
        HL_IDENTITIES[2]:
            np.einsum("ijl,lkm->ijkm", sq, ang)
            + np.einsum("jkl,lim->ijkm", ang, sq)
            + np.einsum("ikl,jlm->ijkm", ang, sq),
        HL_IDENTITIES[3]:
            np.einsum("ijl,lkm->ijkm", ang, sq)
            + np.einsum("ijl,klm->ijkm", sq, sq)
            + np.einsum("jil,klm->ijkm", ang, sq)
            + np.einsum("ijl,klm->ijkm", ang, ang),
    }
    bracket_scale = max(1.0, float(np.max(np.abs(ang))), float(np.max(np.abs(sq)))) ** 2
    for name, res in residues.items():
        worst = float(np.max(np.abs(res))) if res.size else 0.0
        if worst > tol * bracket_scale:
            idx = np.unravel_index(np.argmax(np.abs(res)), res.shape)
            inputs = tuple(vec(map(Fraction, basis[i])) for i in idx[:-1])
            return fail(name, inputs, (Fraction(worst),), (Fraction(0),),
                        note=f"numeric residual {worst:.3e}")
    return ok("tangent Hu-Liu structure")


# ---------------------------------------------------------------------------
# curves through the identity
# ---------------------------------------------------------------------------

def expm(a: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a fixed [6/6] Pade
    approximant; adequate at double precision for norms up to ~10 after
    scaling."""
    a = np.asarray(a, dtype=float)
    norm = float(np.linalg.norm(a, 1))
    s = 0
    if norm > 0.5:
        s = int(np.ceil(np.log2(norm / 0.5)))
        a = a / (2.0 ** s)
    n = a.shape[0]
    ident = np.eye(n)
    # Pade [6/6] coefficients via the standard recurrence
    c = 1.0
    num = ident.copy()
    den = ident.copy()
    power = ident.copy()
    for k in range(1, 7):
        c = c * (7 - k) / (k * (13 - k))
        power = power @ a
        num = num + c * power
        den = den + ((-1) ** k) * c * power
    r = np.linalg.solve(den, num)
    for _ in range(s):
        r = r @ r
    return r


@dataclass(frozen=True)
class CurveReport:
    """Membership residuals of a one-parameter curve through the unit."""

    holds: bool
    curve: str
    t_grid: tuple[float, ...]
    residuals: tuple[float, ...]
    max_residual: float
    note: str = ""


def exp_curve_check(group: LinearXiGroup, x, t_grid, curve: str = "exp") -> CurveReport:
    """Walk a curve a(t) with a(0) = 1, a'(0) = x and measure how far it
    leaves the group (constraint residual plus odd-part distance from V1).

    ``curve="exp"``: a(t) = exp(t x) computed in the matrix realization and
    mapped back to coordinates.  For tangent x of a group whose constraints
    are preserved by exp (orthogonality from skewness, unit determinant from
    tracelessness) the residual stays at rounding level.  ``curve="line"``:
    a(t) = 1 + t x; its residual is quadratic in t exactly when x is tangent
    and linear when it is not, which is what the slope test fits.
    """
    r = group.realization
    xf = np.asarray([float(c) for c in x], dtype=float)
    ts = tuple(float(t) for t in t_grid)
    residuals = []
    scale = 1.0
    for t in ts:
        if curve == "exp":
            mat = expm(t * r.realize_f(xf))
            coords = r.coords_from_matrix(mat, tol=group.tolerance)
        elif curve == "line":
            coords = r.np_unit + t * xf
        else:
            raise ValueError(f"unknown curve kind {curve!r}")
        scale = max(scale, float(np.linalg.norm(coords)))
        residuals.append(group.membership_residual(coords))
    worst = max(residuals) if residuals else 0.0
    return CurveReport(worst <= group.tolerance * scale, curve, ts, tuple(residuals),
                       worst)


def fitted_log_slope(t_grid, residuals, floor: float = 1e-14) -> float:
    """Least-squares slope of log residual against log t.

    Residuals at or below ``floor`` are rounding noise and are dropped; if
    nothing remains the slope is reported as infinite (the curve sits in the
    group to machine precision).
    """
    pts = [(t, r) for t, r in zip(t_grid, residuals) if r > floor]
    if len(pts) < 2:
        return float("inf")
    lt = np.log10([p[0] for p in pts])
    lr = np.log10([p[1] for p in pts])
    slope, _ = np.polyfit(lt, lr, 1)
    return float(slope)
