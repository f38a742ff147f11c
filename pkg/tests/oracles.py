"""Independent brute-force oracles used by the tests.

Nothing here calls the classifiers under test; only the basic linear-algebra
kernel is reused.  The simplicity oracle for dimension <= 2 enumerates ideal
candidates two ways: closures of all small-coordinate vectors, and (for
dimension 2) the exact rational invariant lines of the multiplication
operators via eigenvalue analysis, which makes the search exhaustive.
"""

from fractions import Fraction
from itertools import product
from math import isqrt

from leibkit.linalg import Matrix, full_space, kernel, span


def bracket_operators(angle):
    dim = len(angle)
    right = [Matrix.from_cols([angle[i][j] for i in range(dim)]) for j in range(dim)]
    left = [Matrix.from_cols([angle[j][i] for i in range(dim)]) for j in range(dim)]
    return right + left


def naive_closure(ops, sub):
    cur = sub
    while True:
        extra = [t.matvec(b) for b in cur.basis for t in ops
                 if not cur.contains(t.matvec(b))]
        if not extra:
            return cur
        cur = cur.sum(span(extra, cur.ambient_dim))


def is_invariant(ops, sub):
    return all(sub.contains(t.matvec(b)) for b in sub.basis for t in ops)


def _is_scalar(m):
    n = m.rows
    d = m.data[0][0]
    return all(m.data[i][j] == (d if i == j else 0) for i in range(n) for j in range(n))


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    pn, qd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and qd * qd == x.denominator:
        return Fraction(pn, qd)
    return None


def invariant_lines_dim2(ops):
    """All 1-dim invariant subspaces of 2x2 operators, or 'all' when every
    operator is scalar (so every line is invariant)."""
    nonscalar = [t for t in ops if not _is_scalar(t)]
    if not nonscalar:
        return "all"
    t = nonscalar[0]
    tr = t.data[0][0] + t.data[1][1]
    det = t.data[0][0] * t.data[1][1] - t.data[0][1] * t.data[1][0]
    root = _rational_sqrt(tr * tr - 4 * det)
    if root is None:
        return []
    lines = []
    for lam in {(tr + root) / 2, (tr - root) / 2}:
        eig = kernel(t - Matrix.identity(2).scale(lam))
        for b in eig.basis:
            line = span([b], 2)
            if is_invariant(ops, line) and line not in lines:
                lines.append(line)
    return lines


def annihilator_by_symmetrization(angle):
    dim = len(angle)
    gens = [tuple(a + b for a, b in zip(angle[i][j], angle[j][i]))
            for i in range(dim) for j in range(i, dim)]
    return span(gens, dim)


def brute_force_simplicity(angle) -> str:
    """'Simple' or 'NotSimple' for a Leibniz bracket of dimension <= 2.

    Ideal candidates: closures of every vector with coordinates in
    {-1, 0, 1}, plus (dim 2) the exact invariant lines.  Exhaustive in
    dimension <= 2 because proper nonzero ideals are lines.
    """
    dim = len(angle)
    assert dim <= 2
    ops = bracket_operators(angle)
    ann = annihilator_by_symmetrization(angle)
    if ann.dim == 0:
        return "NotSimple"
    zero = span([], dim)
    allowed = {zero, ann, full_space(dim)}
    ideals = set()
    for coords in product((-1, 0, 1), repeat=dim):
        if any(coords):
            ideals.add(naive_closure(ops, span([coords], dim)))
    if dim == 2:
        lines = invariant_lines_dim2(ops)
        if lines == "all":
            # infinitely many ideal lines; at most one of them is the annihilator
            return "NotSimple"
        ideals.update(lines)
    return "Simple" if ideals <= allowed else "NotSimple"
