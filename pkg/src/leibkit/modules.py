"""Invariant subspaces of a finite set of linear operators.

This is the engine behind the simplicity classifiers: ideals of a bracket
algebra are exactly the subspaces invariant under its multiplication
operators, so deciding simplicity reduces to irreducibility of the modules
cut out by the annihilator.  Irreducibility is tested by a randomized
null-space/spin method; a nullity-one element whose kernel vector and
transpose-kernel vector both spin to the full space is a proof, any proper
spin is a counterexample, and an exhausted retry budget returns "unknown",
never a wrong answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Subspace, Vec, kernel, solve, span, vadd, vscale, zeros

NORTON_BUDGET = 64
NORTON_MAX_WORD = 8


@dataclass(frozen=True)
class OperatorModule:
    dim: int
    operators: tuple[Matrix, ...]


def closure(operators, s: Subspace) -> Subspace:
    """Least subspace containing s and invariant under all operators."""
    cur = s
    while True:
        new = []
        for b in cur.basis:
            for t in operators:
                w = t.matvec(b)
                if not cur.contains(w):
                    new.append(w)
        if not new:
            return cur
        cur = cur.sum(span(new, cur.ambient_dim))


def spin(mod: OperatorModule, vectors) -> Subspace:
    return closure(mod.operators, span(vectors, mod.dim))


def is_invariant(operators, s: Subspace) -> bool:
    return all(s.contains(t.matvec(b)) for b in s.basis for t in operators)


def restriction(mod: OperatorModule, s: Subspace) -> OperatorModule:
    """Operators restricted to an invariant subspace, in its RREF-basis coordinates."""
    mats = []
    for t in mod.operators:
        cols = []
        for b in s.basis:
            coords = s.coords(t.matvec(b))
            if coords is None:
                raise ValueError("subspace is not invariant")
            cols.append(coords)
        mats.append(Matrix.from_cols(cols) if cols else Matrix([]))
    return OperatorModule(s.dim, tuple(mats))


def lift_from_sub(s: Subspace, coords) -> Vec:
    v = zeros(s.ambient_dim)
    for c, b in zip(coords, s.basis):
        if c:
            v = vadd(v, vscale(c, b))
    return v


@dataclass(frozen=True)
class QuotientModule:
    """Module on the quotient by an invariant subspace.

    Quotient coordinates live on the non-pivot standard positions of the
    subspace's RREF basis; ``lift`` sends quotient coordinates back to
    representative vectors in the ambient space.
    """

    mod: OperatorModule
    free: tuple[int, ...]
    sub: Subspace

    @property
    def dim(self) -> int:
        return self.mod.dim

    def lift(self, coords) -> Vec:
        v = [Fraction(0)] * self.sub.ambient_dim
        for c, f in zip(coords, self.free):
            v[f] = c
        return tuple(v)


def quotient(mod: OperatorModule, s: Subspace) -> QuotientModule:
    pivots = set(s.pivots)
    free = tuple(j for j in range(mod.dim) if j not in pivots)

    def project(v: Vec) -> Vec:
        res = list(v)
        for p, b in zip(s.pivots, s.basis):
            c = res[p]
            if c:
                res = [x - c * y for x, y in zip(res, b)]
        return tuple(res[f] for f in free)

    mats = []
    for t in mod.operators:
        cols = [project(t.matvec(_unit(mod.dim, f))) for f in free]
        mats.append(Matrix.from_cols(cols) if cols else Matrix([]))
    return QuotientModule(OperatorModule(len(free), tuple(mats)), free, s)


def _unit(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def _random_algebra_element(ops: list[Matrix], rng: random.Random, max_word: int) -> Matrix:
    d = ops[0].rows
    acc = Matrix.zero(d, d)
    for _ in range(rng.randint(1, 3)):
        word = None
        for _ in range(rng.randint(1, max_word)):
            t = ops[rng.randrange(len(ops))]
            word = t if word is None else word @ t
        c = rng.choice((-3, -2, -1, 1, 2, 3))
        acc = acc + word.scale(c)
    return acc


def norton_irreducible(mod: OperatorModule, rng: random.Random,
                       budget: int = NORTON_BUDGET,
                       max_word: int = NORTON_MAX_WORD) -> tuple[str, Subspace | None]:
    """Decide irreducibility of the module.

    Returns ("irreducible", None), ("reducible", proper invariant subspace),
    or ("unknown", None) when the randomized budget is exhausted without a
    proof either way.
    """
    d = mod.dim
    if d == 0:
        raise ValueError("empty module")
    if d == 1:
        return "irreducible", None
    ops = [t for t in mod.operators if not t.is_zero()]
    if not ops:
        return "reducible", span([_unit(d, 0)], d)
    for _ in range(budget):
        theta = _random_algebra_element(ops, rng, max_word)
        ker = kernel(theta)
        if ker.dim == 0:
            continue
        for v in ker.basis:
            w = spin(mod, [v])
            if w.dim < d:
                return "reducible", w
        if ker.dim == 1:
            ops_t = [t.T for t in mod.operators]
            ker_t = kernel(theta.T)
            wt = closure(ops_t, span([ker_t.basis[0]], d))
            if wt.dim < d:
                # the annihilator of a proper dual submodule is a proper submodule
                perp = kernel(wt.matrix())
                return "reducible", perp
            return "irreducible", None
    return "unknown", None


def equivariant_projection_kernel(mod: OperatorModule, sub: Subspace) -> Subspace | None:
    """Kernel of a projection onto ``sub`` commuting with all operators.

    Solves the affine linear system P B = I, (B P) T = T (B P) for a
    coefficient matrix P; feasibility means ``sub`` has an invariant
    complement, returned as ker P.  Returns None when infeasible.
    """
    d, k = mod.dim, sub.dim
    if k == 0 or k == d:
        raise ValueError("complement question needs a proper nonzero subspace")
    b = Matrix.from_cols(list(sub.basis))  # d x k
    nunk = k * d
    rows, rhs = [], []
    for a in range(k):
        for bb in range(k):
            row = [Fraction(0)] * nunk
            for c in range(d):
                row[a * d + c] = b.data[c][bb]
            rows.append(row)
            rhs.append(Fraction(1 if a == bb else 0))
    for t in mod.operators:
        tb = t @ b  # d x k
        for i in range(d):
            for j in range(d):
                row = [Fraction(0)] * nunk
                for a in range(k):
                    for c in range(d):
                        row[a * d + c] += b.data[i][a] * t.data[c][j]
                    row[a * d + j] -= tb.data[i][a]
                if any(row):
                    rows.append(row)
                    rhs.append(Fraction(0))
    sol = solve(Matrix(rows), rhs)
    if sol is None:
        return None
    p = Matrix([sol[a * d:(a + 1) * d] for a in range(k)])
    return kernel(p)
