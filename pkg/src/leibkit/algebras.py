"""Structure-constant algebras and square-zero even/odd gradings.

An :class:`Algebra` is a bilinear product stored as a dense dim^3 tensor of
rationals.  A :class:`GradedAlgebra` splits the basis into an even and an odd
part; the grading is *special*: products of two odd basis elements must
vanish, which is exactly what makes the derived bracket constructions work.
Verification is exhaustive over basis tuples and certificate-producing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ._tables import (
    Table,
    acc_basis_mul,
    acc_mul_basis,
    apply_table,
    int_scaled,
    table_from_dense,
    table_from_entries,
)
from .linalg import Matrix, Vec, is_zero_vec, solve, vec
from .report import Report, fail, ok


class BimoduleError(ValueError):
    """A claimed bimodule action fails one of the three compatibility axioms."""

    def __init__(self, axiom: str, indices: tuple, lhs: Vec, rhs: Vec):
        self.axiom = axiom
        self.indices = indices
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"bimodule axiom {axiom} fails at {indices}: {lhs} != {rhs}")


def basis_vec(dim: int, i: int) -> Vec:
    return tuple(Fraction(1 if k == i else 0) for k in range(dim))


class Algebra:
    """Finite-dimensional algebra given by structure constants.

    ``table[i][j]`` holds the coordinates of the product of basis elements
    i and j.  ``unit`` is the coordinate vector of an identity element when
    one exists (it need not be a basis element).
    """

    def __init__(self, table: Table, basis_names: Sequence[str] | None = None,
                 unit: Sequence | None = None):
        self.table = table if isinstance(table, tuple) else table_from_dense(table)
        self.dim = len(self.table)
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i}" for i in range(self.dim)
        )
        if len(self.basis_names) != self.dim:
            raise ValueError("basis_names length != dim")
        self.unit = vec(unit) if unit is not None else None
        if self.unit is not None and len(self.unit) != self.dim:
            raise ValueError("unit vector length != dim")
        self._assoc_report: Report | None = None

    def multiply(self, x: Sequence, y: Sequence) -> Vec:
        return apply_table(self.table, x, y)

    def basis_vector(self, i: int) -> Vec:
        return basis_vec(self.dim, i)

    def associative(self) -> bool:
        if self._assoc_report is None:
            self._assoc_report = verify_associative(self)
        return self._assoc_report.holds


def multiply(a: Algebra, x: Sequence, y: Sequence) -> Vec:
    """Bilinear extension of the structure tensor to coordinate vectors."""
    return a.multiply(x, y)


def verify_associative(a: Algebra) -> Report:
    """Check (ei ej) ek = ei (ej ek) for all basis triples."""
    (t,) = int_scaled([a.table])
    dim = a.dim
    rng = range(dim)
    for i in rng:
        tij_row = t[i]
        for j in rng:
            tij = tij_row[j]
            for k in rng:
                acc = [0] * dim
                acc_mul_basis(t, tij, k, acc, 1)
                acc_basis_mul(t, i, t[j][k], acc, -1)
                if any(acc):
                    ei, ej, ek = (basis_vec(dim, x) for x in (i, j, k))
                    lhs = a.multiply(a.table[i][j], ek)
                    rhs = a.multiply(ei, a.table[j][k])
                    rep = fail("associativity", (ei, ej, ek), lhs, rhs,
                               note=f"basis triple ({i},{j},{k})")
                    a._assoc_report = rep
                    return rep
    rep = ok("associativity")
    a._assoc_report = rep
    return rep


def find_unit(a: Algebra) -> Vec | None:
    """Solve for a two-sided identity element; None if there is none."""
    dim = a.dim
    rows, rhs = [], []
    for j in range(dim):
        for k in range(dim):
            rows.append([a.table[i][j][k] for i in range(dim)])
            rhs.append(Fraction(1 if j == k else 0))
            rows.append([a.table[j][i][k] for i in range(dim)])
            rhs.append(Fraction(1 if j == k else 0))
    sol = solve(Matrix(rows), rhs)
    return sol


class GradedAlgebra:
    """An algebra with an even/odd basis split subject to odd*odd = 0."""

    def __init__(self, algebra: Algebra, even: Sequence[int]):
        self.algebra = algebra
        self.even = tuple(sorted(set(even)))
        if any(i < 0 or i >= algebra.dim for i in self.even):
            raise ValueError("even index out of range")
        self.odd = tuple(i for i in range(algebra.dim) if i not in set(self.even))
        self._grading_report: Report | None = None
        self._valid: bool | None = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def even_part(self, v: Sequence) -> Vec:
        v = vec(v)
        odd = set(self.odd)
        return tuple(Fraction(0) if i in odd else x for i, x in enumerate(v))

    def odd_part(self, v: Sequence) -> Vec:
        v = vec(v)
        even = set(self.even)
        return tuple(Fraction(0) if i in even else x for i, x in enumerate(v))

    def multiply(self, x: Sequence, y: Sequence) -> Vec:
        return self.algebra.multiply(x, y)

    def validate(self) -> "GradedAlgebra":
        """Raise ValueError unless the algebra is associative and the grading holds."""
        if self._valid:
            return self
        rep = self.algebra._assoc_report or verify_associative(self.algebra)
        if not rep.holds:
            self._valid = False
            raise ValueError(f"not associative: witness {rep.witness.note}")
        rep = verify_special_grading(self)
        if not rep.holds:
            self._valid = False
            raise ValueError(
                f"grading violated ({rep.identity}): witness {rep.witness.note}"
            )
        self._valid = True
        return self

    def verified(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True


def verify_special_grading(g: GradedAlgebra) -> Report:
    """Check even*even even, mixed products odd, and odd*odd = 0 on the basis."""
    a = g.algebra
    dim = a.dim
    even, odd = set(g.even), set(g.odd)

    def clause_fail(name, i, j, allowed):
        prod = a.table[i][j]
        proj = tuple(c if k in allowed else Fraction(0) for k, c in enumerate(prod))
        rep = fail(name, (basis_vec(dim, i), basis_vec(dim, j)), prod, proj,
                   note=f"basis pair ({i},{j})")
        g._grading_report = rep
        return rep

    for i in range(dim):
        for j in range(dim):
            prod = a.table[i][j]
            if i in even and j in even:
                if any(prod[k] for k in odd):
                    return clause_fail("even*even in even", i, j, even)
            elif i in odd and j in odd:
                if not is_zero_vec(prod):
                    return clause_fail("odd*odd = 0", i, j, set())
            else:
                if any(prod[k] for k in even):
                    return clause_fail("mixed products in odd", i, j, odd)
    rep = ok("special grading")
    g._grading_report = rep
    return rep


def _action_matrices(tensor, p: int, q: int, left: bool) -> list[Matrix]:
    """One q x q matrix per even basis index; columns are images of module basis."""
    mats = []
    for i in range(p):
        cols = []
        for m in range(q):
            col = tensor[i][m] if left else tensor[m][i]
            col = vec(col)
            if len(col) != q:
                raise ValueError("action tensor has wrong inner dimension")
            cols.append(col)
        mats.append(Matrix.from_cols(cols))
    return mats


def make_trivial_extension(a0: Algebra, bimodule_dim: int,
                           left_action, right_action) -> GradedAlgebra:
    """Square-zero extension of ``a0`` by a bimodule.

    ``left_action[i][m]`` is the coordinate vector of (basis i of a0) acting on
    module basis m from the left; ``right_action[m][i]`` acts from the right.
    The bimodule axioms are verified on all basis triples before building.
    The product is (a+m)(b+n) = ab + (a.n + m.b); the odd part squares to zero.
    """
    p, q = a0.dim, bimodule_dim
    rep = verify_associative(a0)
    if not rep.holds:
        raise ValueError(f"base algebra not associative: {rep.witness.note}")
    lam = _action_matrices(left_action, p, q, left=True)
    rho = _action_matrices(right_action, p, q, left=False)

    def combo(mats: list[Matrix], coeffs: Vec) -> Matrix:
        acc = Matrix.zero(q, q)
        for c, m in zip(coeffs, mats):
            if c:
                acc = acc + m.scale(c)
        return acc

    for i in range(p):
        for j in range(p):
            cij = a0.table[i][j]
            lhs, rhs = lam[i] @ lam[j], combo(lam, cij)
            if lhs != rhs:
                m = next(m for m in range(q) if lhs.col(m) != rhs.col(m))
                raise BimoduleError("a.(b.m) = (ab).m", (i, j, m), lhs.col(m), rhs.col(m))
            lhs, rhs = rho[j] @ rho[i], combo(rho, cij)
            if lhs != rhs:
                m = next(m for m in range(q) if lhs.col(m) != rhs.col(m))
                raise BimoduleError("(m.a).b = m.(ab)", (i, j, m), lhs.col(m), rhs.col(m))
            lhs, rhs = rho[j] @ lam[i], lam[i] @ rho[j]
            if lhs != rhs:
                m = next(m for m in range(q) if lhs.col(m) != rhs.col(m))
                raise BimoduleError("(a.m).b = a.(m.b)", (i, j, m), lhs.col(m), rhs.col(m))

    dim = p + q
    entries = []
    for i in range(p):
        for j in range(p):
            for k, c in enumerate(a0.table[i][j]):
                if c:
                    entries.append((i, j, k, c))
        for m in range(q):
            for k in range(q):
                c = lam[i].data[k][m]
                if c:
                    entries.append((i, p + m, p + k, c))
                c = rho[i].data[k][m]
                if c:
                    entries.append((p + m, i, p + k, c))
    names = list(a0.basis_names) + [f"m{t}" for t in range(q)]
    algebra = Algebra(table_from_entries(dim, entries), names)
    algebra.unit = find_unit(algebra)
    return GradedAlgebra(algebra, even=range(p)).validate()


def matrix_algebra(n: int) -> Algebra:
    """Full n x n matrix algebra on the matrix-unit basis (row-major)."""
    dim = n * n
    entries = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                # E_ij E_jk = E_ik
                entries.append((i * n + j, j * n + k, i * n + k, 1))
    names = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    unit = [1 if i % (n + 1) == 0 else 0 for i in range(dim)]
    return Algebra(table_from_entries(dim, entries), names, unit=unit)


def make_block_upper(p: int, q: int) -> GradedAlgebra:
    """Block matrices [[X, M], [0, Y]]: even = diagonal blocks, odd = corner.

    A concrete model family: grading holds because upper-right blocks multiply
    to zero inside the ambient (p+q) x (p+q) matrix algebra.
    """
    if p < 1 or q < 1:
        raise ValueError("block sizes must be >= 1")
    n = p + q
    cells = (
        [(a, b) for a in range(p) for b in range(p)]
        + [(a, b) for a in range(p, n) for b in range(p, n)]
        + [(a, b) for a in range(p) for b in range(p, n)]
    )
    index = {cell: t for t, cell in enumerate(cells)}
    dim = len(cells)
    entries = []
    for (a, b), s in index.items():
        for (c, d), t in index.items():
            if b == c and (a, d) in index:
                entries.append((s, t, index[(a, d)], 1))

    def name(a, b):
        if a < p and b < p:
            return f"X{a + 1}{b + 1}"
        if a >= p and b >= p:
            return f"Y{a - p + 1}{b - p + 1}"
        return f"M{a + 1}{b - p + 1}"

    names = [name(a, b) for a, b in cells]
    unit = [Fraction(1 if a == b else 0) for a, b in cells]
    algebra = Algebra(table_from_entries(dim, entries), names, unit=unit)
    even = [index[c] for c in cells if not (c[0] < p <= c[1])]
    return GradedAlgebra(algebra, even=even).validate()


def upper_triangular_model() -> GradedAlgebra:
    """The 3-dim algebra of 2x2 upper-triangular matrices, basis E11, E22, E12."""
    g = make_block_upper(1, 1)
    g.algebra.basis_names = ("E11", "E22", "E12")
    return g


def dual_numbers() -> GradedAlgebra:
    """Basis (u, eps): u is a unit, eps^2 = 0; grading even = {u}, odd = {eps}."""
    one = Algebra(table_from_dense([[[1]]]), ["u"], unit=[1])
    return make_trivial_extension(one, 1, left_action=[[[1]]], right_action=[[[1]]])
