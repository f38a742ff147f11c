"""Bracket constructions on a special graded associative algebra.

Any verified even/odd algebra carries a right Leibniz bracket
<x, y> = x y0 - y0 x (y0 the even component of y) and, together with the
plain commutator [x, y] = xy - yx, a full Hu-Liu Leibniz structure.  The
constructions here build those bracket tables and re-verify the advertised
identities; a failure after a verified input is a bug, not bad input.
Linearity of an abstract algebra is certified by an injective homomorphism
into a derived algebra -- only the witness is checked, never searched for.
"""

from __future__ import annotations

from fractions import Fraction

from .algebras import GradedAlgebra
from .huliu import (
    HuLiuAlgebra,
    check_huliu_homomorphism,
    verify_huliu_identities,
    verify_lie,
)
from .leibniz import LeibnizAlgebra, check_leibniz_homomorphism, verify_right_leibniz
from .linalg import Matrix, vsub
from .report import HomReport


def _commutator_table(g: GradedAlgebra, even_only: bool):
    t = g.algebra.table
    dim = g.dim
    even = set(g.even)
    zero = (Fraction(0),) * dim
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if even_only and j not in even:
                row.append(zero)
            else:
                row.append(vsub(t[i][j], t[j][i]))
        rows.append(tuple(row))
    return tuple(rows)


def derive_leibniz(g: GradedAlgebra) -> LeibnizAlgebra:
    """Angle bracket <x,y> = x y0 - y0 x on a verified graded algebra."""
    g.validate()
    out = LeibnizAlgebra(_commutator_table(g, even_only=True),
                         g.algebra.basis_names)
    rep = verify_right_leibniz(out)
    if not rep.holds:
        raise RuntimeError(
            f"derived bracket violates the Leibniz identity at {rep.witness.note}; "
            "this is a bug"
        )
    return out


def derive_huliu(g: GradedAlgebra) -> HuLiuAlgebra:
    """Angle bracket plus commutator square bracket, verified."""
    leib = derive_leibniz(g)
    square = _commutator_table(g, even_only=False)
    out = HuLiuAlgebra(leib, square)
    rep = verify_lie(square)
    if not rep.holds:
        raise RuntimeError(f"derived commutator violates {rep.identity}; this is a bug")
    rep = verify_huliu_identities(out)
    if not rep.holds:
        raise RuntimeError(
            f"derived pair violates: {rep.identity} at {rep.witness.note}; this is a bug"
        )
    return out


def verify_linear_embedding(algebra, g: GradedAlgebra, phi: Matrix) -> HomReport:
    """Certify linearity: phi must be an injective homomorphism into the
    algebra derived from ``g`` (both brackets when the input carries both)."""
    g.validate()
    if isinstance(algebra, HuLiuAlgebra):
        rep = check_huliu_homomorphism(algebra, derive_huliu(g), phi)
    elif isinstance(algebra, LeibnizAlgebra):
        rep = check_leibniz_homomorphism(algebra, derive_leibniz(g), phi)
    else:
        raise TypeError("expected a LeibnizAlgebra or HuLiuAlgebra")
    if rep.holds and not rep.injective:
        return HomReport(False, "injectivity violated (nonzero kernel)", None,
                         False, rep.kernel, rep.image)
    return rep
