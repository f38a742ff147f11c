"""Hu-Liu Leibniz algebras: a Leibniz bracket coupled to a Lie bracket.

The pair must satisfy four compatibility identities on top of the right
Leibniz identity and the Lie axioms.  The identity quantifying a square
<x,x> is checked through its polarized bilinear form, which is complete
over characteristic zero; everything else runs on basis triples.
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
)
from .algebras import basis_vec
from .leibniz import (
    LeibnizAlgebra,
    SimplicityVerdict,
    annihilator,
    classify_simplicity,
    check_leibniz_homomorphism,
)
from .linalg import Matrix, Subspace, Vec, is_zero_vec, vadd, vscale, zeros
from .modules import NORTON_BUDGET, NORTON_MAX_WORD
from .report import HomReport, Report, fail, ok


class HuLiuAlgebra:
    """An angle (Leibniz) bracket and a square (Lie) bracket on the same space."""

    def __init__(self, angle: Table | LeibnizAlgebra, square: Table,
                 basis_names: Sequence[str] | None = None):
        if isinstance(angle, LeibnizAlgebra):
            self.leibniz = angle
        else:
            self.leibniz = LeibnizAlgebra(angle, basis_names)
        self.square = square if isinstance(square, tuple) else table_from_dense(square)
        if len(self.square) != self.leibniz.dim:
            raise ValueError("angle and square tables have different dimensions")
        self._lie_report: Report | None = None
        self._hl_report: Report | None = None

    @property
    def dim(self) -> int:
        return self.leibniz.dim

    @property
    def basis_names(self):
        return self.leibniz.basis_names

    def angle_bracket(self, x, y) -> Vec:
        return self.leibniz.bracket(x, y)

    def square_bracket(self, x, y) -> Vec:
        return apply_table(self.square, x, y)

    def validate(self) -> "HuLiuAlgebra":
        self.leibniz.validate()
        rep = verify_lie(self.square)
        if not rep.holds:
            raise ValueError(f"square bracket is not a Lie bracket: {rep.identity}")
        rep = verify_huliu_identities(self)
        if not rep.holds:
            raise ValueError(f"compatibility identity fails: {rep.identity}")
        return self

    def require_verified(self):
        self.leibniz.require_verified()
        if self._lie_report is None:
            self._lie_report = verify_lie(self.square)
        if not self._lie_report.holds:
            raise ValueError("operation requires a verified Lie bracket")
        if self._hl_report is None:
            self._hl_report = verify_huliu_identities(self)
        if not self._hl_report.holds:
            raise ValueError(
                f"operation requires the compatibility identities: {self._hl_report.identity}"
            )


def verify_lie(square: Table) -> Report:
    """Antisymmetry on basis pairs and the Jacobi identity on basis triples."""
    dim = len(square)
    for i in range(dim):
        for j in range(i, dim):
            if not is_zero_vec(vadd(square[i][j], square[j][i])):
                ei, ej = basis_vec(dim, i), basis_vec(dim, j)
                return fail("antisymmetry", (ei, ej), square[i][j],
                            vscale(-1, square[j][i]), note=f"basis pair ({i},{j})")
    (s,) = int_scaled([square])
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                acc = [0] * dim
                acc_mul_basis(s, s[i][j], k, acc, 1)
                acc_mul_basis(s, s[j][k], i, acc, 1)
                acc_mul_basis(s, s[k][i], j, acc, 1)
                if any(acc):
                    ei, ej, ek = (basis_vec(dim, x) for x in (i, j, k))
                    lhs = vadd(
                        vadd(apply_table(square, square[i][j], ek),
                             apply_table(square, square[j][k], ei)),
                        apply_table(square, square[k][i], ej))
                    return fail("Jacobi identity", (ei, ej, ek), lhs, zeros(dim),
                                note=f"basis triple ({i},{j},{k})")
    return ok("Lie bracket")


HL_IDENTITIES = (
    "angle absorbs square: <x,[y,z]> = <x,<y,z>>",
    "squares bracket alike (polarized): [<x,y>+<y,x>,z] = <<x,y>+<y,x>,z>",
    "mixed cycle: <[x,y],z> + [<y,z>,x] + [y,<x,z>] = 0",
    "mixed quadruple: [<x,y>,z] + [z,[x,y]] + [z,<y,x>] + <z,<x,y>> = 0",
)


def eval_huliu_identity(h: HuLiuAlgebra, which: int, x, y, z) -> tuple[Vec, Vec]:
    """lhs and rhs of compatibility identity ``which`` (0..3) at vectors."""
    a, s = h.angle_bracket, h.square_bracket
    if which == 0:
        return a(x, s(y, z)), a(x, a(y, z))
    if which == 1:
        u = vadd(a(x, y), a(y, x))
        return s(u, z), a(u, z)
    if which == 2:
        lhs = vadd(vadd(a(s(x, y), z), s(a(y, z), x)), s(y, a(x, z)))
        return lhs, zeros(h.dim)
    if which == 3:
        lhs = vadd(vadd(s(a(x, y), z), s(z, s(x, y))),
                   vadd(s(z, a(y, x)), a(z, a(x, y))))
        return lhs, zeros(h.dim)
    raise ValueError(f"no identity {which}")


def verify_huliu_identities(h: HuLiuAlgebra) -> Report:
    """Check the four compatibility identities; report the first that fails."""
    h.leibniz.require_verified()
    lie = verify_lie(h.square)
    if not lie.holds:
        raise ValueError("compatibility check requires a verified Lie bracket")
    g, s = int_scaled([h.leibniz.angle, h.square])
    dim = h.dim
    rng = range(dim)
    sym = [[[gi + gj for gi, gj in zip(g[i][j], g[j][i])] for j in rng] for i in rng]

    def witness(which, i, j, k):
        ei, ej, ek = (basis_vec(dim, x) for x in (i, j, k))
        lhs, rhs = eval_huliu_identity(h, which, ei, ej, ek)
        rep = fail(HL_IDENTITIES[which], (ei, ej, ek), lhs, rhs,
                   note=f"basis triple ({i},{j},{k})")
        h._hl_report = rep
        return rep

    for i in rng:
        for j in rng:
            for k in rng:
                acc = [0] * dim
                acc_basis_mul(g, i, s[j][k], acc, 1)
                acc_basis_mul(g, i, g[j][k], acc, -1)
                if any(acc):
                    return witness(0, i, j, k)
    for i in rng:
        for j in rng:
            u = sym[i][j]
            for k in rng:
                acc = [0] * dim
                acc_mul_basis(s, u, k, acc, 1)
                acc_mul_basis(g, u, k, acc, -1)
                if any(acc):
                    return witness(1, i, j, k)
    for i in rng:
        for j in rng:
            for k in rng:
                acc = [0] * dim
                acc_mul_basis(g, s[i][j], k, acc, 1)
                acc_mul_basis(s, g[j][k], i, acc, 1)
                acc_basis_mul(s, j, g[i][k], acc, 1)
                if any(acc):
                    return witness(2, i, j, k)
    for i in rng:
        for j in rng:
            for k in rng:
                acc = [0] * dim
                acc_mul_basis(s, g[i][j], k, acc, 1)
                acc_basis_mul(s, k, s[i][j], acc, 1)
                acc_basis_mul(s, k, g[j][i], acc, 1)
                acc_basis_mul(g, k, g[i][j], acc, 1)
                if any(acc):
                    return witness(3, i, j, k)
    rep = ok("compatibility identities")
    h._hl_report = rep
    return rep


def adjoint_operators(h: HuLiuAlgebra) -> tuple[Matrix, ...]:
    """Square-bracket adjoints ad_j: v -> [e_j, v] for all basis j."""
    s = h.square
    dim = h.dim
    return tuple(Matrix.from_cols([s[j][i] for i in range(dim)]) for j in range(dim))


def is_huliu_ideal(h: HuLiuAlgebra, sub: Subspace) -> bool:
    """True iff <I,L>, <L,I> and [L,I] all land in I."""
    if sub.ambient_dim != h.dim:
        raise ValueError(f"ambient mismatch: {sub.ambient_dim} vs {h.dim}")
    g, s = h.leibniz.angle, h.square
    for b in sub.basis:
        for j in range(h.dim):
            ej = basis_vec(h.dim, j)
            if not sub.contains(apply_table(g, b, ej)):
                return False
            if not sub.contains(apply_table(g, ej, b)):
                return False
            if not sub.contains(apply_table(s, ej, b)):
                return False
    return True


def is_huliu_subalgebra(h: HuLiuAlgebra, sub: Subspace) -> bool:
    """True iff both brackets of basis pairs of S stay in S."""
    if sub.ambient_dim != h.dim:
        raise ValueError(f"ambient mismatch: {sub.ambient_dim} vs {h.dim}")
    for a in sub.basis:
        for b in sub.basis:
            if not sub.contains(h.angle_bracket(a, b)):
                return False
            if not sub.contains(h.square_bracket(a, b)):
                return False
    return True


def classify_huliu_simplicity(h: HuLiuAlgebra, seed: int = 0,
                              budget: int = NORTON_BUDGET,
                              max_word: int = NORTON_MAX_WORD) -> SimplicityVerdict:
    """Same module-theoretic test, with the adjoint operators added."""
    h.require_verified()
    verdict = classify_simplicity(h.leibniz, seed=seed, budget=budget,
                                  max_word=max_word,
                                  extra_operators=adjoint_operators(h))
    if verdict.tag == "NotSimple" and verdict.certificate is not None:
        if not is_huliu_ideal(h, verdict.certificate):
            raise RuntimeError("certificate fails the two-bracket ideal test; classifier bug")
    return verdict


def check_huliu_homomorphism(h: HuLiuAlgebra, target: HuLiuAlgebra,
                             phi: Matrix) -> HomReport:
    """Check both bracket compatibilities; attach kernel and image.

    When the map is a homomorphism the kernel must be an ideal and the image
    a subalgebra; both facts are re-verified and a failure is a bug.
    """
    base = check_leibniz_homomorphism(h.leibniz, target.leibniz, phi)
    if not base.holds:
        return HomReport(False, "angle " + base.identity, base.witness,
                         base.injective, base.kernel, base.image)
    for i in range(h.dim):
        for j in range(h.dim):
            lhs = phi.matvec(h.square[i][j])
            rhs = apply_table(target.square, phi.col(i), phi.col(j))
            if lhs != rhs:
                ei, ej = basis_vec(h.dim, i), basis_vec(h.dim, j)
                return HomReport(
                    False, "square bracket compatibility",
                    fail("square bracket compatibility", (ei, ej), lhs, rhs,
                         note=f"basis pair ({i},{j})").witness,
                    base.injective, base.kernel, base.image)
    if not is_huliu_ideal(h, base.kernel):
        raise RuntimeError("homomorphism kernel is not an ideal; check is buggy")
    if not is_huliu_subalgebra(target, base.image):
        raise RuntimeError("homomorphism image is not a subalgebra; check is buggy")
    return HomReport(True, "both brackets", None, base.injective,
                     base.kernel, base.image)


def annihilator_abelian_check(h: HuLiuAlgebra) -> Report:
    """Check [a, b] = 0 over a basis of the annihilator.

    Runnable on a raw pair whose compatibility identities fail, as a
    diagnostic; only the Leibniz part must verify (the annihilator needs it).
    """
    ann = annihilator(h.leibniz)
    for a in ann.basis:
        for b in ann.basis:
            val = h.square_bracket(a, b)
            if not is_zero_vec(val):
                return fail("annihilator is abelian", (a, b), val, zeros(h.dim))
    return ok("annihilator is abelian")


def killing_form(h: HuLiuAlgebra) -> Matrix:
    """Trace form of the square-bracket adjoints."""
    ads = adjoint_operators(h)

    def trace(m: Matrix) -> Fraction:
        return sum((m.data[i][i] for i in range(m.rows)), Fraction(0))

    return Matrix([[trace(ads[i] @ ads[j]) for j in range(h.dim)] for i in range(h.dim)])


def annihilator_square_action_nonzero(h: HuLiuAlgebra) -> bool:
    """Informational flag: is [annihilator, L] nonzero?"""
    ann = annihilator(h.leibniz)
    return any(
        any(apply_table(h.square, b, basis_vec(h.dim, j)))
        for b in ann.basis
        for j in range(h.dim)
    )
