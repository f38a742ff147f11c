"""Dense structure-constant tables for bilinear products.

A table ``t`` encodes a bilinear product on a dim-dimensional space:
``t[i][j]`` is the coordinate vector of the product of basis elements i, j.
All the identities verified across the package are homogeneous in the table
entries, so checks clear denominators once and run over plain ints; any
witness is then re-evaluated with the original rational entries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Vec, rat, vec, zeros

Table = tuple[tuple[Vec, ...], ...]


def zero_table(dim: int) -> Table:
    z = zeros(dim)
    return tuple((z,) * dim for _ in range(dim))


def table_from_dense(entries: Sequence[Sequence[Sequence]]) -> Table:
    dim = len(entries)
    t = tuple(tuple(vec(entries[i][j]) for j in range(dim)) for i in range(dim))
    for row in t:
        for v in row:
            if len(v) != dim:
                raise ValueError("table is not dim x dim x dim")
    return t


def table_from_entries(dim: int, items: Iterable[tuple[int, int, int, object]]) -> Table:
    """Build a table from sparse (i, j, k, value) items; later items add up."""
    acc = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, val in items:
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise ValueError(f"index ({i},{j},{k}) out of range for dim {dim}")
        acc[i][j][k] += rat(val)
    return tuple(tuple(tuple(acc[i][j]) for j in range(dim)) for i in range(dim))


def table_entries(t: Table) -> list[tuple[int, int, int, Fraction]]:
    out = []
    for i, row in enumerate(t):
        for j, v in enumerate(row):
            for k, c in enumerate(v):
                if c:
                    out.append((i, j, k, c))
    return out


def apply_table(t: Table, x: Sequence, y: Sequence) -> Vec:
    """Bilinear product of coordinate vectors x and y."""
    dim = len(t)
    x = vec(x)
    y = vec(y)
    if len(x) != dim or len(y) != dim:
        raise ValueError(f"vector length mismatch for dim {dim}")
    acc = [Fraction(0)] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = t[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, v in enumerate(row[j]):
                if v:
                    acc[k] += c * v
    return tuple(acc)


def int_scaled(tables: Sequence[Table]) -> list[list[list[list[int]]]]:
    """Clear denominators jointly; returns nested int lists, one per table.

    A single common factor multiplies every table so that identities mixing
    two tables stay homogeneous of the same degree.
    """
    d = 1
    for t in tables:
        for row in t:
            for v in row:
                for c in v:
                    d = d * c.denominator // math.gcd(d, c.denominator)
    out = []
    for t in tables:
        out.append(
            [[[int(c * d) for c in v] for v in row] for row in t]
        )
    return out


def acc_mul_basis(t, v, k: int, acc, sign: int = 1) -> None:
    """acc += sign * t(v, e_k) for a coordinate vector v (int or Fraction)."""
    for l, c in enumerate(v):
        if c:
            row = t[l][k]
            c = sign * c
            for m, cm in enumerate(row):
                if cm:
                    acc[m] += c * cm


def acc_basis_mul(t, k: int, v, acc, sign: int = 1) -> None:
    """acc += sign * t(e_k, v)."""
    row_k = t[k]
    for l, c in enumerate(v):
        if c:
            rv = row_k[l]
            c = sign * c
            for m, cm in enumerate(rv):
                if cm:
                    acc[m] += c * cm
