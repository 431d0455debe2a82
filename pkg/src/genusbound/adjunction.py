"""Adjunction classes, the c-genus, and an exhaustive oracle for h.

``h_bruteforce`` maximises the c-genus over every adjunction class whose
coefficients lie in a box ``[-bound, bound]^rank``.  It never looks at closed
formulas or at orbit reduction, so it can be used to check both.

Maximising ``h_c(A) = 1 + (A.A - |c.A|)/2`` means minimising ``|c.A|``, and
that minimisation is what the three engines below solve exactly:

``box``
    materialise the whole box (characteristic parity already applied) with
    numpy and filter; fine up to a few hundred thousand points.
``separable``
    diagonal forms with T trivial: the norm and the pairing with A are sums of
    per-coordinate terms, so a max-plus table over coordinates (best norm
    reachable for each value of the pairing) decides feasibility exactly.
``search``
    depth-first search in lexicographic order with two exact prunings: the
    pairing with A must still be able to hit the target, and the norm must
    still be able to clear the threshold (maximum of a concave quadratic over
    the remaining coordinates when they span a negative definite block).

All engines return the lexicographically smallest minimiser as witness.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .algebra import AlgebraDescriptor, two_chi_three_sigma
from .lattice import (
    INT64_LIMIT, IntegerOverflowError, IntersectionForm, LatticeClass, LatticeError,
    RankMismatchError, characteristic_parity, is_characteristic, norm, pair,
)

__all__ = [
    "AdjunctionVerdict", "HWitness", "AdjunctionError",
    "is_adjunction_class", "c_genus", "h_bruteforce", "default_bound",
    "adjunction_classes", "characteristic_vectors",
]

BOX_LIMIT = 250_000


class AdjunctionError(LatticeError):
    pass


@dataclass(frozen=True)
class AdjunctionVerdict:
    type_one: bool
    type_two: bool

    @property
    def is_adjunction(self) -> bool:
        return self.type_one or self.type_two


@dataclass(frozen=True)
class HWitness:
    value: int
    witness: LatticeClass
    bound: int


def _check_rank(alg: AlgebraDescriptor, x: Sequence[int]) -> LatticeClass:
    x = tuple(int(v) for v in x)
    if len(x) != alg.form.rank:
        raise RankMismatchError(f"class has {len(x)} coefficients, form has rank {alg.form.rank}")
    return x


def is_adjunction_class(alg: AlgebraDescriptor, c: Sequence[int]) -> AdjunctionVerdict:
    """Type I: characteristic and c.c >= sigma + 8 (equivalent to c.c > sigma).

    Type II: characteristic, c.c >= 2chi~ + 3sigma and c.F != 0.  With T
    trivial there are no type II classes.
    """
    c = _check_rank(alg, c)
    if not is_characteristic(alg.form, c):
        return AdjunctionVerdict(False, False)
    cc = norm(alg.form, c)
    one = cc >= alg.sigma + 8
    two = (not alg.t_trivial
           and cc >= two_chi_three_sigma(alg)
           and pair(alg.form, c, alg.F) != 0)
    return AdjunctionVerdict(one, two)


def c_genus(alg: AlgebraDescriptor, c: Sequence[int], A: Sequence[int]) -> int:
    c = _check_rank(alg, c)
    A = _check_rank(alg, A)
    if not is_adjunction_class(alg, c).is_adjunction:
        raise AdjunctionError(f"{c} is not an adjunction class")
    aa = norm(alg.form, A)
    if aa < 0:
        raise AdjunctionError(f"A.A = {aa} < 0")
    if not any(A):
        return 0
    diff = aa - abs(pair(alg.form, c, A))
    assert diff % 2 == 0, "characteristic classes give integral genus"
    return 1 + diff // 2


def default_bound(A: Sequence[int]) -> int:
    return max(9, 3 * max((abs(v) for v in A), default=0) + 5)


# ---------------------------------------------------------------------------
# oracle


@dataclass
class _Problem:
    gram: list[list[int]]
    w: list[int]              # c.A = sum c_j w_j
    fw: Optional[list[int]]   # c.F = sum c_j fw_j, None when T is trivial
    values: list[list[int]]   # admissible coordinate values (box + parity), ascending
    thr_one: int
    thr_two: Optional[int]

    @property
    def thr_min(self) -> int:
        return self.thr_one if self.thr_two is None else min(self.thr_one, self.thr_two)

    @property
    def box_size(self) -> int:
        return math.prod(len(v) for v in self.values)


def _problem(alg: AlgebraDescriptor, A: LatticeClass, bound: int) -> _Problem:
    form = alg.form
    gram = [list(r) for r in form.gram]
    w = [sum(g * a for g, a in zip(row, A)) for row in gram]
    if bound * sum(abs(x) for x in w) >= INT64_LIMIT // 4 or bound * bound * form.rank * 2 >= INT64_LIMIT // 4:
        raise IntegerOverflowError("oracle box too large for 64-bit arithmetic")
    parity = characteristic_parity(form)
    values = [[v for v in range(-bound, bound + 1) if (v - p) % 2 == 0] for p in parity]
    fw = None
    thr_two = None
    if not alg.t_trivial:
        fw = [sum(g * f for g, f in zip(row, alg.F)) for row in gram]
        thr_two = two_chi_three_sigma(alg)
    return _Problem(gram, w, fw, values, alg.sigma + 8, thr_two)


def _box_array(values: list[list[int]]) -> np.ndarray:
    grids = np.meshgrid(*[np.asarray(v, dtype=np.int64) for v in values], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _box_mask(prob: _Problem, C: np.ndarray) -> np.ndarray:
    G = np.asarray(prob.gram, dtype=np.int64)
    cc = np.einsum("ij,jk,ik->i", C, G, C)
    mask = cc >= prob.thr_one
    if prob.thr_two is not None:
        fdot = C @ np.asarray(prob.fw, dtype=np.int64)
        mask |= (cc >= prob.thr_two) & (fdot != 0)
    return mask


@functools.lru_cache(maxsize=32)
def _adjunction_box(alg: AlgebraDescriptor, bound: int) -> np.ndarray:
    """Adjunction classes of the box (independent of A), lexicographic order."""
    prob = _problem(alg, (0,) * alg.form.rank, bound)
    C = _box_array(prob.values)
    C = C[_box_mask(prob, C)]
    C.setflags(write=False)
    return C


def _solve_box(alg: AlgebraDescriptor, bound: int, prob: _Problem) -> Optional[tuple[int, LatticeClass]]:
    C = _adjunction_box(alg, bound)
    if not len(C):
        return None
    dots = np.abs(C @ np.asarray(prob.w, dtype=np.int64))
    t = int(dots.min())
    # rows come out in lexicographic order, so the first hit is the smallest
    i = int(np.argmax(dots == t))
    return t, tuple(int(v) for v in C[i])


_NEG = -(1 << 60)


def _solve_separable(prob: _Problem) -> Optional[tuple[int, LatticeClass]]:
    n = len(prob.gram)
    d = [prob.gram[j][j] for j in range(n)]
    span = sum(max(abs(v) for v in vals) * abs(wj) for vals, wj in zip(prob.values, prob.w))
    size = 2 * span + 1
    # best[j][x + span] = max norm contribution of coordinates j..n-1 with pairing x
    best = [None] * (n + 1)
    last = np.full(size, _NEG, dtype=np.int64)
    last[span] = 0
    best[n] = last
    for j in range(n - 1, -1, -1):
        nxt = best[j + 1]
        cur = np.full(size, _NEG, dtype=np.int64)
        for v in prob.values[j]:
            shift = v * prob.w[j]
            gain = d[j] * v * v
            if shift >= 0:
                src, dst = nxt[: size - shift], slice(shift, size)
            else:
                src, dst = nxt[-shift:], slice(0, size + shift)
            cand = np.where(src > _NEG, src + gain, _NEG)
            np.maximum(cur[dst], cand, out=cur[dst])
        best[j] = cur
    feasible = np.nonzero(best[0] >= prob.thr_one)[0]
    if feasible.size == 0:
        return None
    t = int(np.abs(feasible - span).min())
    targets = {x for x in (t, -t)}
    witness = []
    acc_norm = acc_dot = 0
    for j in range(n):
        nxt = best[j + 1]
        for v in prob.values[j]:
            keep = set()
            for tgt in targets:
                idx = tgt - acc_dot - v * prob.w[j] + span
                if 0 <= idx < size and nxt[idx] > _NEG and acc_norm + d[j] * v * v + int(nxt[idx]) >= prob.thr_one:
                    keep.add(tgt)
            if keep:
                targets = keep
                witness.append(v)
                acc_norm += d[j] * v * v
                acc_dot += v * prob.w[j]
                break
        else:  # pragma: no cover - the table guarantees a completion
            raise AssertionError("separable reconstruction lost feasibility")
    return t, tuple(witness)


class _Search:
    """Lexicographic DFS over the box with exact pruning."""

    def __init__(self, prob: _Problem):
        self.prob = prob
        n = self.n = len(prob.gram)
        G = np.asarray(prob.gram, dtype=float)
        # K[j] = inverse of -(trailing block from j) when that block is negative definite
        self.K: list[Optional[list[list[float]]]] = []
        for j in range(n):
            M = -G[j:, j:]
            try:
                np.linalg.cholesky(M)
            except np.linalg.LinAlgError:
                self.K.append(None)
                continue
            self.K.append(np.linalg.inv(M).tolist())
        w = np.asarray(prob.w, dtype=float)
        self.wKw = [0.0 if K is None else float(w[j:] @ np.asarray(K) @ w[j:])
                    for j, K in enumerate(self.K)]
        self.lo = [0] * (n + 1)
        self.hi = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            contrib = [v * prob.w[j] for v in prob.values[j]]
            self.lo[j] = self.lo[j + 1] + min(contrib)
            self.hi[j] = self.hi[j + 1] + max(contrib)

    def first(self, targets: Optional[tuple[int, ...]]) -> Optional[LatticeClass]:
        """Lexicographically first adjunction class with c.A in ``targets`` (any if None)."""
        self.targets = targets
        self.prefix: list[int] = []
        return self._dfs(0, 0, [0] * self.n, 0, 0)

    def _dfs(self, j: int, P: int, s: list[int], dot: int, fdot: int) -> Optional[LatticeClass]:
        prob = self.prob
        targets = self.targets
        if targets is not None:
            lo, hi = dot + self.lo[j], dot + self.hi[j]
            if not any(lo <= t <= hi for t in targets):
                return None
        if j == self.n:
            if P >= prob.thr_one or (prob.thr_two is not None and P >= prob.thr_two and fdot != 0):
                return tuple(self.prefix)
            return None
        vals = prob.values[j]
        K = self.K[j]
        if K is not None:
            # s[i] = sum over fixed k of gram[i][k] c_k.  Over the reals the norm
            # is maximised at r* = K s with value f*, and the completions that
            # clear the threshold form the ellipsoid (r - r*)^T K^-1 (r - r*) <= f* - thr.
            tail = s[j:]
            m = self.n - j
            Ks = [sum(K[r][c] * tail[c] for c in range(m)) for r in range(m)]
            fstar = P + sum(a * b for a, b in zip(tail, Ks))
            room = fstar - prob.thr_min
            eps = 1e-7 * (1.0 + abs(fstar))
            if room < -eps:
                return None
            room = max(room, 0.0)
            if targets is not None:
                centre = dot + sum(wi * ki for wi, ki in zip(prob.w[j:], Ks))
                rad = math.sqrt(room * self.wKw[j]) + eps + 1e-9
                if not any(centre - rad <= t <= centre + rad for t in targets):
                    return None
            rho = math.sqrt(room * K[0][0]) + eps + 1e-9
            vals = [v for v in vals if Ks[0] - rho <= v <= Ks[0] + rho]
        gj = prob.gram[j]
        wj = prob.w[j]
        fj = prob.fw[j] if prob.fw is not None else 0
        for v in vals:
            P2 = P + 2 * v * s[j] + gj[j] * v * v
            s2 = s if v == 0 else [si + v * gj[i] if i > j else si for i, si in enumerate(s)]
            self.prefix.append(v)
            found = self._dfs(j + 1, P2, s2, dot + v * wj, fdot + v * fj)
            self.prefix.pop()
            if found is not None:
                return found
        return None


def _solve_search(prob: _Problem, parity: int) -> Optional[tuple[int, LatticeClass]]:
    search = _Search(prob)
    any_class = search.first(None)
    if any_class is None:
        return None
    upper = abs(sum(c * w for c, w in zip(any_class, prob.w)))
    for t in range(parity, upper + 1, 2):
        hit = search.first((t, -t) if t else (0,))
        if hit is not None:
            return t, hit
    raise AssertionError("search lost the class it started from")  # pragma: no cover


def h_bruteforce(alg: AlgebraDescriptor, A: Sequence[int], bound: Optional[int] = None,
                 *, method: str = "auto") -> Optional[HWitness]:
    """max h_c(A) over adjunction classes c in [-bound, bound]^rank.

    Returns None when the box holds no adjunction class.  Ties go to the
    lexicographically smallest witness.  ``method`` forces an engine
    ("box", "separable", "search") instead of the automatic choice.
    """
    A = _check_rank(alg, A)
    aa = norm(alg.form, A)
    if aa < 0:
        raise AdjunctionError(f"A.A = {aa} < 0")
    if bound is None:
        bound = default_bound(A)
    if bound < 1:
        raise AdjunctionError("bound must be positive")
    prob = _problem(alg, A, bound)
    if method == "auto":
        if prob.box_size <= BOX_LIMIT:
            method = "box"
        elif alg.form.is_diagonal and alg.t_trivial:
            method = "separable"
        else:
            method = "search"
    if method == "box":
        found = _solve_box(alg, bound, prob)
    elif method == "separable":
        if not (alg.form.is_diagonal and alg.t_trivial):
            raise AdjunctionError("separable engine needs a diagonal form with T trivial")
        found = _solve_separable(prob)
    elif method == "search":
        found = _solve_search(prob, aa % 2)
    else:
        raise ValueError(f"unknown method {method!r}")
    if found is None:
        return None
    t, witness = found
    value = 0 if not any(A) else 1 + (aa - t) // 2
    return HWitness(value, witness, bound)


def characteristic_vectors(form: IntersectionForm, bound: int) -> np.ndarray:
    """All characteristic vectors in [-bound, bound]^rank, lexicographic order."""
    parity = characteristic_parity(form)
    values = [[v for v in range(-bound, bound + 1) if (v - p) % 2 == 0] for p in parity]
    if math.prod(len(v) for v in values) > 5 * BOX_LIMIT:
        raise AdjunctionError("box too large to materialise")
    return _box_array(values)


def adjunction_classes(alg: AlgebraDescriptor, bound: int) -> Iterator[LatticeClass]:
    """Every adjunction class in the box, in lexicographic order."""
    prob = _problem(alg, (0,) * alg.form.rank, bound)
    if prob.box_size > 5 * BOX_LIMIT:
        raise AdjunctionError("box too large to materialise")
    for row in _adjunction_box(alg, bound):
        yield tuple(int(v) for v in row)
