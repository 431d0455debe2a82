"""Unimodular symmetric bilinear forms with b+ = 1 and integer vectors in them.

Classes are plain tuples of Python ints, written in the fixed basis of their
form:

* ``Odd(n)``   : H, E1, ..., En          (gram diag(1, -1, ..., -1))
* ``Even(q)``  : F, B, then 8 coordinates per copy of (-E8)
* ``Hyperbolic``: F, B                   (gram U = [[0, 1], [1, 0]])
* ``Vform``    : F, B                    (gram V = [[0, 1], [1, 1]])

The basis order is part of the public contract; reduced classes are defined
relative to it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
from functools import cached_property
from typing import Iterator, Sequence, Union

import numpy as np

__all__ = [
    "Odd", "Even", "Hyperbolic", "Vform", "FormTag",
    "IntersectionForm", "LatticeClass",
    "LatticeError", "InvalidParameterError", "RankMismatchError", "IntegerOverflowError",
    "E8_GRAM", "E8_ROOTS",
    "make_form", "pair", "norm", "is_characteristic", "characteristic_parity",
    "signature", "sigma", "congruence_diagonal", "unit_vector", "gcd_of", "grid_classes",
    "determinant",
]

LatticeClass = tuple[int, ...]

INT64_LIMIT = 2**63


class LatticeError(ValueError):
    pass


class InvalidParameterError(LatticeError):
    pass


class RankMismatchError(LatticeError):
    pass


class IntegerOverflowError(ArithmeticError):
    """An intermediate value left the signed 64-bit range."""


def _checked(value: int) -> int:
    if not -INT64_LIMIT <= value < INT64_LIMIT:
        raise IntegerOverflowError(f"value {value} does not fit in a signed 64-bit integer")
    return value


# Simple roots of E8 in the even coordinate system (D8 plus the glue vector
# 1/2*(1,...,1)), Bourbaki order.  Every root has norm 2.
_h = Fraction(1, 2)
E8_ROOTS: tuple[tuple[Fraction, ...], ...] = (
    (_h, -_h, -_h, -_h, -_h, -_h, -_h, _h),
    tuple(Fraction(x) for x in (1, 1, 0, 0, 0, 0, 0, 0)),
    tuple(Fraction(x) for x in (-1, 1, 0, 0, 0, 0, 0, 0)),
    tuple(Fraction(x) for x in (0, -1, 1, 0, 0, 0, 0, 0)),
    tuple(Fraction(x) for x in (0, 0, -1, 1, 0, 0, 0, 0)),
    tuple(Fraction(x) for x in (0, 0, 0, -1, 1, 0, 0, 0)),
    tuple(Fraction(x) for x in (0, 0, 0, 0, -1, 1, 0, 0)),
    tuple(Fraction(x) for x in (0, 0, 0, 0, 0, -1, 1, 0)),
)

E8_GRAM: tuple[tuple[int, ...], ...] = tuple(
    tuple(int(sum(x * y for x, y in zip(r, s))) for s in E8_ROOTS) for r in E8_ROOTS
)


@dataclass(frozen=True)
class Odd:
    """<1> + n<-1>."""
    n: int

    def __str__(self) -> str:
        return f"Odd({self.n})"


@dataclass(frozen=True)
class Even:
    """U + q(-E8)."""
    q: int

    def __str__(self) -> str:
        return f"Even({self.q})"


@dataclass(frozen=True)
class Hyperbolic:
    def __str__(self) -> str:
        return "Hyperbolic"


@dataclass(frozen=True)
class Vform:
    def __str__(self) -> str:
        return "Vform"


FormTag = Union[Odd, Even, Hyperbolic, Vform]


@dataclass(frozen=True)
class IntersectionForm:
    tag: FormTag
    gram: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def matrix(self) -> np.ndarray:
        """The Gram matrix as a read-only int64 array."""
        m = np.array(self.gram, dtype=np.int64).reshape(self.rank, self.rank)
        m.setflags(write=False)
        return m

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0
                   for i in range(self.rank) for j in range(self.rank) if i != j)

    def basis_labels(self) -> list[str]:
        if isinstance(self.tag, Odd):
            return ["H"] + [f"E{i}" for i in range(1, self.tag.n + 1)]
        labels = ["F", "B"]
        if isinstance(self.tag, Even):
            for k in range(self.tag.q):
                suffix = "" if self.tag.q == 1 else f"_{k + 1}"
                labels += [f"w{i}{suffix}" for i in range(1, 9)]
        return labels

    def __str__(self) -> str:
        return str(self.tag)


def _block_diag(*blocks: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    size = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b:
            rows.append((0,) * offset + tuple(r) + (0,) * (size - offset - len(b)))
        offset += len(b)
    return tuple(rows)


def make_form(tag: FormTag) -> IntersectionForm:
    """Build the form for ``tag`` in the documented basis."""
    if isinstance(tag, Odd):
        if not isinstance(tag.n, int) or tag.n < 0:
            raise InvalidParameterError(f"Odd(n) needs n >= 0, got {tag.n!r}")
        gram = _block_diag([[1]], *([[-1]] for _ in range(tag.n)))
    elif isinstance(tag, Even):
        if not isinstance(tag.q, int) or tag.q < 0:
            raise InvalidParameterError(f"Even(q) needs q >= 0, got {tag.q!r}")
        neg_e8 = [[-x for x in row] for row in E8_GRAM]
        gram = _block_diag([[0, 1], [1, 0]], *(neg_e8 for _ in range(tag.q)))
    elif isinstance(tag, Hyperbolic):
        gram = ((0, 1), (1, 0))
    elif isinstance(tag, Vform):
        gram = ((0, 1), (1, 1))
    else:
        raise InvalidParameterError(f"unsupported form tag {tag!r}")
    return IntersectionForm(tag, gram)


def _as_class(form: IntersectionForm, x: Sequence[int]) -> LatticeClass:
    x = tuple(int(v) for v in x)
    if len(x) != form.rank:
        raise RankMismatchError(f"class has {len(x)} coefficients, form {form} has rank {form.rank}")
    return x


def unit_vector(form: IntersectionForm, i: int) -> LatticeClass:
    return tuple(1 if j == i else 0 for j in range(form.rank))


def pair(form: IntersectionForm, x: Sequence[int], y: Sequence[int]) -> int:
    """x . y = x^T gram y."""
    x = _as_class(form, x)
    y = _as_class(form, y)
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = form.gram[i]
            total += xi * sum(g * yj for g, yj in zip(row, y) if g)
    return _checked(total)


def norm(form: IntersectionForm, x: Sequence[int]) -> int:
    return pair(form, x, x)


def characteristic_parity(form: IntersectionForm) -> LatticeClass:
    """The residues mod 2 shared by every characteristic vector.

    Unimodularity makes the gram matrix invertible over F2, so
    ``gram @ c = diag(gram) (mod 2)`` has exactly one solution mod 2.
    """
    n = form.rank
    rows = [[form.gram[i][j] % 2 for j in range(n)] + [form.gram[i][i] % 2] for i in range(n)]
    col = 0
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and rows[r][col]:
                rows[r] = [(u + v) % 2 for u, v in zip(rows[r], rows[col])]
    return tuple(rows[i][n] for i in range(n))


def is_characteristic(form: IntersectionForm, c: Sequence[int]) -> bool:
    """c . e_j == e_j . e_j (mod 2) on every basis vector."""
    c = _as_class(form, c)
    return all(
        (sum(g * cj for g, cj in zip(form.gram[j], c)) - form.gram[j][j]) % 2 == 0
        for j in range(form.rank)
    )


def congruence_diagonal(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal of a rational congruence diagonalisation P^T G P = D.

    Symmetric Gaussian elimination; a zero pivot is repaired by adding a later
    row/column (when that gives a nonzero pivot) before eliminating.
    """
    g = [[Fraction(v) for v in row] for row in gram]
    n = len(g)
    diag = []
    for k in range(n):
        if g[k][k] == 0:
            for j in range(k + 1, n):
                if g[j][j] != 0:
                    g[k], g[j] = g[j], g[k]
                    for row in g:
                        row[k], row[j] = row[j], row[k]
                    break
            else:
                j = next((j for j in range(k + 1, n) if g[k][j] != 0), None)
                if j is not None:
                    # e_k <- e_k + e_j makes the pivot 2*g[k][j] (g[j][j] == 0 here)
                    for i in range(n):
                        g[k][i] += g[j][i]
                    for i in range(n):
                        g[i][k] += g[i][j]
        p = g[k][k]
        diag.append(p)
        if p == 0:
            continue
        for i in range(k + 1, n):
            f = g[i][k] / p
            if f:
                for j in range(k, n):
                    g[i][j] -= f * g[k][j]
        for i in range(k + 1, n):
            g[k][i] = Fraction(0)
    return diag


def signature(form: IntersectionForm) -> tuple[int, int]:
    """(b+, b-) of the form, computed exactly."""
    d = congruence_diagonal(form.gram)
    return sum(1 for v in d if v > 0), sum(1 for v in d if v < 0)


def sigma(form: IntersectionForm) -> int:
    """Signature b+ - b- (cheap closed expression for the supported tags)."""
    tag = form.tag
    if isinstance(tag, Odd):
        return 1 - tag.n
    if isinstance(tag, Even):
        return -8 * tag.q
    bp, bm = signature(form)
    return bp - bm


def determinant(form: IntersectionForm) -> int:
    d = congruence_diagonal(form.gram)
    prod = Fraction(1)
    for v in d:
        prod *= v
    return int(prod)


def gcd_of(x: Sequence[int]) -> int:
    from math import gcd
    g = 0
    for v in x:
        g = gcd(g, int(v))
    return g


def grid_classes(form: IntersectionForm, grid: int, *, nonnegative: bool = True,
                 up_to_sign: bool = False, chunk: int = 1 << 18) -> Iterator[LatticeClass]:
    """Classes with coefficients in [-grid, grid], in lexicographic order.

    ``nonnegative`` keeps only A.A >= 0; ``up_to_sign`` keeps one of A, -A
    (the one whose first nonzero coefficient is positive, plus 0).
    """
    if grid < 0:
        raise InvalidParameterError(f"grid must be >= 0, got {grid}")
    n = form.rank
    side = 2 * grid + 1
    # split coordinates into a python-level prefix and a vectorised tail
    tail = n
    while tail > 0 and side ** tail > chunk:
        tail -= 1
    vals = np.arange(-grid, grid + 1, dtype=np.int64)
    T = np.array(np.meshgrid(*([vals] * tail), indexing="ij")).reshape(tail, -1).T \
        if tail else np.zeros((1, 0), dtype=np.int64)
    G = form.matrix
    Gtt = G[n - tail:, n - tail:]
    tt = np.einsum("ij,jk,ik->i", T, Gtt, T)
    for prefix in itertools.product(range(-grid, grid + 1), repeat=n - tail):
        p = np.array(prefix, dtype=np.int64)
        pp = int(p @ G[: n - tail, : n - tail] @ p) if len(p) else 0
        cross = 2 * (T @ (G[n - tail:, : n - tail] @ p)) if len(p) else 0
        sq = pp + cross + tt
        keep = sq >= 0 if nonnegative else np.ones(len(T), dtype=bool)
        if up_to_sign:
            lead = next((v for v in prefix if v), 0)
            if lead < 0:
                continue
            if lead == 0 and tail:
                nz = T != 0
                first = np.where(nz.any(axis=1), T[np.arange(len(T)), nz.argmax(axis=1)], 0)
                keep &= first >= 0
        for row in T[keep]:
            yield prefix + tuple(int(v) for v in row)
