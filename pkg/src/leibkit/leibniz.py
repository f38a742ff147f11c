"""Right Leibniz algebras: identity checking, annihilator, ideals, simplicity.

The bracket is stored as a structure-constant table and is not assumed
antisymmetric.  Raw construction is deliberately allowed so the verifier has
something to run on; operations whose meaning depends on the bracket identity
(annihilator, simplicity, ...) insist on a verified algebra first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
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
from .linalg import Matrix, Subspace, Vec, span, vadd
from .modules import (
    NORTON_BUDGET,
    NORTON_MAX_WORD,
    OperatorModule,
    closure,
    equivariant_projection_kernel,
    is_invariant,
    lift_from_sub,
    norton_irreducible,
    quotient,
    restriction,
)
from .report import HomReport, Report, fail, ok


class LeibnizAlgebra:
    """A bilinear bracket on Q^dim, expected to satisfy the right Leibniz identity."""

    def __init__(self, angle: Table, basis_names: Sequence[str] | None = None):
        self.angle = angle if isinstance(angle, tuple) else table_from_dense(angle)
        self.dim = len(self.angle)
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i}" for i in range(self.dim)
        )
        if len(self.basis_names) != self.dim:
            raise ValueError("basis_names length != dim")
        self._report: Report | None = None
        self._ann: Subspace | None = None

    def bracket(self, x: Sequence, y: Sequence) -> Vec:
        return apply_table(self.angle, x, y)

    def basis_vector(self, i: int) -> Vec:
        return basis_vec(self.dim, i)

    def validate(self) -> "LeibnizAlgebra":
        rep = verify_right_leibniz(self)
        if not rep.holds:
            raise ValueError(f"right Leibniz identity fails: {rep.witness.note}")
        return self

    def require_verified(self):
        if self._report is None:
            self._report = verify_right_leibniz(self)
        if not self._report.holds:
            raise ValueError(
                f"operation requires a verified Leibniz algebra: {self._report.witness.note}"
            )


def verify_right_leibniz(algebra: LeibnizAlgebra) -> Report:
    """Check <<x,y>,z> = <x,<y,z>> + <<x,z>,y> on all basis triples."""
    (t,) = int_scaled([algebra.angle])
    dim = algebra.dim
    rng = range(dim)
    for i in rng:
        for j in rng:
            tij = t[i][j]
            for k in rng:
                acc = [0] * dim
                acc_mul_basis(t, tij, k, acc, 1)
                acc_basis_mul(t, i, t[j][k], acc, -1)
                acc_mul_basis(t, t[i][k], j, acc, -1)
                if any(acc):
                    ei, ej, ek = (basis_vec(dim, x) for x in (i, j, k))
                    lhs, rhs = eval_right_leibniz(algebra, ei, ej, ek)
                    rep = fail("right Leibniz identity", (ei, ej, ek), lhs, rhs,
                               note=f"basis triple ({i},{j},{k})")
                    algebra._report = rep
                    return rep
    rep = ok("right Leibniz identity")
    algebra._report = rep
    return rep


def eval_right_leibniz(algebra: LeibnizAlgebra, x, y, z) -> tuple[Vec, Vec]:
    """Both sides of the identity at arbitrary vectors (for witness replay)."""
    br = algebra.bracket
    lhs = br(br(x, y), z)
    rhs = vadd(br(x, br(y, z)), br(br(x, z), y))
    return lhs, rhs


def annihilator(algebra: LeibnizAlgebra) -> Subspace:
    """Span of all bracket squares <x,x>.

    Over Q the polarized generating set {<ei,ei>} + {<ei+ej,ei+ej>} spans the
    same space as the full sum over x; the symmetrized-bracket presentation
    span{<x,y>+<y,x>} is computed independently and must agree exactly --
    a mismatch is an internal bug, not bad input.
    """
    algebra.require_verified()
    if algebra._ann is not None:
        return algebra._ann
    t = algebra.angle
    dim = algebra.dim
    squares = [t[i][i] for i in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            squares.append(vadd(vadd(t[i][i], t[j][j]), vadd(t[i][j], t[j][i])))
    by_squares = span(squares, dim)
    symmetrized = [vadd(t[i][j], t[j][i]) for i in range(dim) for j in range(i, dim)]
    by_symmetrized = span(symmetrized, dim)
    if by_squares != by_symmetrized:
        raise RuntimeError(
            "annihilator presentations disagree; this is a bug in the bracket tables"
        )
    algebra._ann = by_squares
    return by_squares


def multiplication_operators(algebra: LeibnizAlgebra) -> tuple[Matrix, ...]:
    """Right and left multiplications by all basis elements, as matrices."""
    t = algebra.angle
    dim = algebra.dim
    right = [Matrix.from_cols([t[i][j] for i in range(dim)]) for j in range(dim)]
    left = [Matrix.from_cols([t[j][i] for i in range(dim)]) for j in range(dim)]
    return tuple(right + left)


def is_ideal(algebra: LeibnizAlgebra, sub: Subspace) -> bool:
    """True iff <I,L> and <L,I> both land in I, checked on bases."""
    if sub.ambient_dim != algebra.dim:
        raise ValueError(f"ambient mismatch: {sub.ambient_dim} vs {algebra.dim}")
    t = algebra.angle
    for b in sub.basis:
        for j in range(algebra.dim):
            ej = basis_vec(algebra.dim, j)
            if not sub.contains(apply_table(t, b, ej)):
                return False
            if not sub.contains(apply_table(t, ej, b)):
                return False
    return True


def ideal_closure(algebra: LeibnizAlgebra, seed_space: Subspace) -> Subspace:
    """Least ideal containing the given subspace (fixpoint of adding products)."""
    if seed_space.ambient_dim != algebra.dim:
        raise ValueError(
            f"ambient mismatch: {seed_space.ambient_dim} vs {algebra.dim}"
        )
    return closure(multiplication_operators(algebra), seed_space)


@dataclass(frozen=True)
class SimplicityVerdict:
    """Outcome of the simplicity test.

    NotSimple carries either a certificate ideal outside {0, annihilator, L}
    or the fact that the annihilator vanishes; Simple carries the chain of
    conditions that was established; Unknown names the inconclusive sub-test.
    """

    tag: str  # "Simple" | "NotSimple" | "Unknown"
    reason: str
    certificate: Subspace | None = None
    checks: tuple[str, ...] = ()
    note: str = ""


def _certified_not_simple(ops, ann, dim, cert: Subspace, reason: str, note: str = "") -> SimplicityVerdict:
    if not is_invariant(ops, cert):
        raise RuntimeError("simplicity certificate is not an ideal; classifier bug")
    if cert.dim in (0, dim) or cert == ann:
        raise RuntimeError("simplicity certificate is not a proper new ideal; classifier bug")
    return SimplicityVerdict("NotSimple", reason, certificate=cert, note=note)


def classify_simplicity(algebra: LeibnizAlgebra, seed: int = 0,
                        budget: int = NORTON_BUDGET,
                        max_word: int = NORTON_MAX_WORD,
                        extra_operators: tuple[Matrix, ...] = ()) -> SimplicityVerdict:
    """Decide whether the only ideals are 0, the annihilator, and everything.

    Ideals are exactly the subspaces invariant under the multiplication
    operators (plus ``extra_operators``, used for the two-bracket variant), so
    the test runs module-theoretically: the annihilator must be irreducible,
    the quotient by it must be irreducible, and it must admit no invariant
    complement.  Randomized sub-tests take an explicit seed; an exhausted
    budget yields Unknown, never a wrong answer.
    """
    algebra.require_verified()
    ann = annihilator(algebra)
    dim = algebra.dim
    ops = multiplication_operators(algebra) + tuple(extra_operators)
    mod = OperatorModule(dim, ops)
    rng = random.Random(seed)
    checks: list[str] = []

    if ann.dim == 0:
        return SimplicityVerdict("NotSimple", "annihilator is zero")

    if ann.dim == dim:
        note = ("annihilator equals the whole algebra; simplicity is read as "
                "having no proper nonzero ideals")
        status, wit = norton_irreducible(mod, rng, budget, max_word)
        if status == "reducible":
            return _certified_not_simple(
                ops, ann, dim, wit, "proper ideal strictly inside the annihilator", note)
        if status == "unknown":
            return SimplicityVerdict(
                "Unknown", "irreducibility of the annihilator undecided within budget",
                note=note)
        checks.append("annihilator module irreducible")
        return SimplicityVerdict("Simple", "only ideals are 0, the annihilator, and L",
                                 checks=tuple(checks), note=note)

    status, wit = norton_irreducible(restriction(mod, ann), rng, budget, max_word)
    if status == "reducible":
        cert = span([lift_from_sub(ann, c) for c in wit.basis], dim)
        return _certified_not_simple(
            ops, ann, dim, cert, "proper ideal strictly inside the annihilator")
    if status == "unknown":
        return SimplicityVerdict(
            "Unknown", "irreducibility of the annihilator undecided within budget")
    checks.append("annihilator module irreducible")

    quo = quotient(mod, ann)
    status, wit = norton_irreducible(quo.mod, rng, budget, max_word)
    if status == "reducible":
        cert = ann.sum(span([quo.lift(c) for c in wit.basis], dim))
        return _certified_not_simple(
            ops, ann, dim, cert, "ideal strictly between the annihilator and L")
    if status == "unknown":
        return SimplicityVerdict(
            "Unknown", "irreducibility of the quotient module undecided within budget")
    checks.append("quotient module irreducible")

    ker = equivariant_projection_kernel(mod, ann)
    if ker is not None:
        return _certified_not_simple(
            ops, ann, dim, ker, "annihilator has an invariant complement ideal")
    checks.append("no invariant complement of the annihilator")

    return SimplicityVerdict("Simple", "only ideals are 0, the annihilator, and L",
                             checks=tuple(checks))


def check_leibniz_homomorphism(algebra: LeibnizAlgebra, target: LeibnizAlgebra,
                               phi: Matrix) -> HomReport:
    """Check phi(<x,y>) = <phi x, phi y> on basis pairs; report injectivity too."""
    from .linalg import kernel as _kernel

    if phi.rows != target.dim or phi.cols != algebra.dim:
        raise ValueError(
            f"map shape {phi.rows}x{phi.cols} does not fit {algebra.dim} -> {target.dim}"
        )
    ker = _kernel(phi)
    image = span([phi.col(j) for j in range(phi.cols)], target.dim)
    injective = ker.dim == 0
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            lhs = phi.matvec(algebra.angle[i][j])
            rhs = apply_table(target.angle, phi.col(i), phi.col(j))
            if lhs != rhs:
                ei, ej = basis_vec(algebra.dim, i), basis_vec(algebra.dim, j)
                return HomReport(
                    False, "bracket compatibility",
                    fail("bracket compatibility", (ei, ej), lhs, rhs,
                         note=f"basis pair ({i},{j})").witness,
                    injective, ker, image)
    return HomReport(True, "bracket compatibility", None, injective, ker, image)


def direct_sum(a: LeibnizAlgebra, b: LeibnizAlgebra) -> LeibnizAlgebra:
    dim = a.dim + b.dim
    dense = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k, c in enumerate(a.angle[i][j]):
                dense[i][j][k] = c
    for i in range(b.dim):
        for j in range(b.dim):
            for k, c in enumerate(b.angle[i][j]):
                dense[a.dim + i][a.dim + j][a.dim + k] = c
    names = [f"a.{n}" for n in a.basis_names] + [f"b.{n}" for n in b.basis_names]
    return LeibnizAlgebra(table_from_dense(dense), names)


def annihilator_action_nonzero(algebra: LeibnizAlgebra) -> bool:
    """Informational flag: is <annihilator, L> nonzero?

    This is the hypothesis under which a simple algebra is claimed to be
    linear; the flag is reported, the conclusion is never asserted.
    """
    ann = annihilator(algebra)
    t = algebra.angle
    return any(
        any(apply_table(t, b, basis_vec(algebra.dim, j)))
        for b in ann.basis
        for j in range(algebra.dim)
    )
