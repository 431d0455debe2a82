"""Carry a class of non-negative square to the reduced member of its orbit.

The orbit is taken under isometries of the form that keep Im T (up to sign).
Every step is recorded as a move so that the trace can be replayed, checked
and serialised.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Any, Optional, Sequence, Union

from .algebra import AlgebraDescriptor, CaseTag, classify_case
from .lattice import (
    E8_ROOTS, Even, IntersectionForm, LatticeClass, LatticeError, Odd, RankMismatchError,
    norm, pair,
)

__all__ = [
    "Negate", "SwapFB", "ReflectE", "PermuteE", "CremonaReflect", "EOmega", "ReductionMove",
    "ReductionTrace", "ReductionError",
    "apply_move", "is_reduced", "e_omega", "wall_vector", "reduce", "nearest_e8_point",
    "generators", "random_word", "move_from_json",
]


class ReductionError(LatticeError):
    pass


@dataclass(frozen=True)
class Negate:
    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        return tuple(-v for v in A)

    def to_json(self) -> dict[str, Any]:
        return {"move": "Negate"}


@dataclass(frozen=True)
class SwapFB:
    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        return (A[1], A[0]) + A[2:]

    def to_json(self) -> dict[str, Any]:
        return {"move": "SwapFB"}


@dataclass(frozen=True)
class ReflectE:
    """E_i -> -E_i (1-based index)."""
    i: int

    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        out = list(A)
        out[self.i] = -out[self.i]
        return tuple(out)

    def to_json(self) -> dict[str, Any]:
        return {"move": "ReflectE", "i": self.i}


@dataclass(frozen=True)
class PermuteE:
    i: int
    j: int

    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        out = list(A)
        out[self.i], out[self.j] = out[self.j], out[self.i]
        return tuple(out)

    def to_json(self) -> dict[str, Any]:
        return {"move": "PermuteE", "i": self.i, "j": self.j}


@dataclass(frozen=True)
class CremonaReflect:
    """Reflection along H-E1-E2-E3 (n >= 3), or along H-E1-E2 when n = 2."""

    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        v = _cremona_vector(form)
        k = -2 * pair(form, A, v) // norm(form, v)
        return tuple(x + k * y for x, y in zip(A, v))

    def to_json(self) -> dict[str, Any]:
        return {"move": "CremonaReflect"}


@dataclass(frozen=True)
class EOmega:
    omega: LatticeClass

    def apply(self, form: IntersectionForm, A: LatticeClass) -> LatticeClass:
        return e_omega(form, self.omega, A)

    def to_json(self) -> dict[str, Any]:
        return {"move": "EOmega", "omega": list(self.omega)}


ReductionMove = Union[Negate, SwapFB, ReflectE, PermuteE, CremonaReflect, EOmega]


def move_from_json(d: dict[str, Any]) -> ReductionMove:
    kind = d.get("move")
    if kind == "Negate":
        return Negate()
    if kind == "SwapFB":
        return SwapFB()
    if kind == "ReflectE":
        return ReflectE(int(d["i"]))
    if kind == "PermuteE":
        return PermuteE(int(d["i"]), int(d["j"]))
    if kind == "CremonaReflect":
        return CremonaReflect()
    if kind == "EOmega":
        return EOmega(tuple(int(v) for v in d["omega"]))
    raise ReductionError(f"unknown move {kind!r}")


def _cremona_vector(form: IntersectionForm) -> LatticeClass:
    if not isinstance(form.tag, Odd) or form.tag.n < 2:
        raise ReductionError("Cremona reflection needs <1> + n<-1> with n >= 2")
    k = min(form.tag.n, 3)
    return (1,) + (-1,) * k + (0,) * (form.tag.n - k)


def apply_move(form: IntersectionForm, move: ReductionMove, A: Sequence[int]) -> LatticeClass:
    A = tuple(int(v) for v in A)
    if len(A) != form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {form.rank}")
    return move.apply(form, A)


@dataclass(frozen=True)
class ReductionTrace:
    input: LatticeClass
    output: LatticeClass
    moves: tuple[ReductionMove, ...] = ()
    # Case 2 only: min(a, b) before each application of E_omega
    measures: tuple[int, ...] = field(default=())

    def replay(self, form: IntersectionForm) -> LatticeClass:
        A = self.input
        for m in self.moves:
            A = m.apply(form, A)
        return A

    def to_json(self) -> dict[str, Any]:
        return {
            "input": list(self.input),
            "output": list(self.output),
            "moves": [m.to_json() for m in self.moves],
            "measures": list(self.measures),
        }

    @classmethod
    def from_json(cls, d: dict[str, Any]) -> "ReductionTrace":
        return cls(tuple(d["input"]), tuple(d["output"]),
                   tuple(move_from_json(m) for m in d["moves"]), tuple(d.get("measures", ())))


# ---------------------------------------------------------------------------
# reduced classes


def _base_case(alg: AlgebraDescriptor) -> CaseTag:
    case = classify_case(alg)
    if case is CaseTag.Extended42_1:
        return CaseTag.Case3
    if case is CaseTag.Extended42_2:
        return CaseTag.Case5
    if case is CaseTag.Unsupported:
        raise ReductionError(f"no reduced classes defined for {alg.form} with tilde_b1={alg.tilde_b1}")
    return case


def _e8_norm(form: IntersectionForm, A: LatticeClass) -> int:
    """xi.xi for the (-E8) part of A (always <= 0)."""
    return norm(form, (0, 0) + A[2:])


def is_reduced(alg: AlgebraDescriptor, A: Sequence[int]) -> bool:
    case = _base_case(alg)
    A = tuple(int(v) for v in A)
    if len(A) != alg.form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {alg.form.rank}")
    if case is CaseTag.Case1:
        a, b = A
        return a >= abs(b)
    if case in (CaseTag.Case3, CaseTag.Case5):
        a, b = A
        return a > 0 or (a == 0 and b >= 0)
    if case is CaseTag.Case2:
        a, b = A[0], A[1]
        if b == 0 and not any(A[2:]):
            return a >= 0
        # a >= |b| > sqrt(-xi.xi)/2, squared to stay in integers
        return a >= abs(b) > 0 and 4 * b * b > -_e8_norm(alg.form, A)
    # Case 4: A = aH - sum b_i E_i with b_i = -x_i
    a = A[0]
    b = [-x for x in A[1:]]
    n = len(b)
    if n == 0:
        return a >= 0
    if any(x < 0 for x in b) or any(b[i] < b[i + 1] for i in range(n - 1)):
        return False
    return a >= sum(b[:3])


# ---------------------------------------------------------------------------
# Case 2 machinery


def _require_case2_form(form: IntersectionForm) -> None:
    if form.tag != Even(1):
        raise ReductionError("E_omega and wall vectors are defined on U + (-E8)")


def _e8_part(form: IntersectionForm, omega: Sequence[int], what: str) -> LatticeClass:
    omega = tuple(int(v) for v in omega)
    if len(omega) != form.rank:
        raise RankMismatchError(f"{what} has {len(omega)} coefficients, form has rank {form.rank}")
    if omega[0] or omega[1]:
        raise ReductionError(f"{what} must lie in the (-E8) summand")
    return omega


def e_omega(form: IntersectionForm, omega: Sequence[int], A: Sequence[int]) -> LatticeClass:
    """F -> F, B -> B + w - N(w)F, xi -> xi - (xi.w)F with N(w) = w.w/2."""
    _require_case2_form(form)
    omega = _e8_part(form, omega, "omega")
    A = tuple(int(v) for v in A)
    if len(A) != form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {form.rank}")
    a, b = A[0], A[1]
    xi = (0, 0) + A[2:]
    half_norm = norm(form, omega) // 2
    new_a = a - b * half_norm - pair(form, xi, omega)
    return (new_a, b) + tuple(x + b * w for x, w in zip(A[2:], omega[2:]))


def _solve_fraction(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve x^T R = rhs for x (R given by rows)."""
    n = len(rows)
    # transpose so that the system reads R^T x = rhs
    m = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [u - f * v for u, v in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _round_half_up(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def _nearest_d8(x: Sequence[Fraction]) -> list[Fraction]:
    r = [_round_half_up(v) for v in x]
    if sum(r) % 2:
        k = max(range(len(x)), key=lambda i: abs(x[i] - r[i]))
        r[k] += 1 if x[k] >= r[k] else -1
    return [Fraction(v) for v in r]


def nearest_e8_point(target: Sequence[Fraction]) -> list[Fraction]:
    """Closest point of E8 = D8 u (D8 + 1/2) to ``target`` (Conway-Sloane decoder)."""
    target = [Fraction(v) for v in target]
    half = Fraction(1, 2)
    p0 = _nearest_d8(target)
    p1 = [v + half for v in _nearest_d8([t - half for t in target])]
    d0 = sum((a - b) ** 2 for a, b in zip(p0, target))
    d1 = sum((a - b) ** 2 for a, b in zip(p1, target))
    return p0 if d0 <= d1 else p1


def _to_euclidean(coords: Sequence[int]) -> list[Fraction]:
    return [sum((c * r[k] for c, r in zip(coords, E8_ROOTS)), Fraction(0)) for k in range(8)]


def wall_vector(form: IntersectionForm, xi: Sequence[int], b: int) -> LatticeClass:
    """omega in (-E8) with xi + b*omega = 0 or 0 < |(xi + b*omega)^2| < 2b^2.

    omega is the E8 point nearest to -xi/b; E8 has covering radius 1, which
    gives |(xi + b*omega)^2| <= b^2.
    """
    _require_case2_form(form)
    if b == 0:
        raise ReductionError("b must be nonzero")
    xi = _e8_part(form, xi, "xi")
    v = _to_euclidean(xi[2:])
    p = nearest_e8_point([-x / b for x in v])
    coords = _solve_fraction(E8_ROOTS, p)
    if any(c.denominator != 1 for c in coords):  # pragma: no cover - decoder bug
        raise AssertionError("decoded point is not in the lattice")
    omega = (0, 0) + tuple(int(c) for c in coords)
    moved = tuple(x + b * w for x, w in zip(xi, omega))
    q = abs(norm(form, moved))
    if any(moved) and not 0 < q < 2 * b * b:  # pragma: no cover
        raise AssertionError("nearest-point dichotomy violated")
    return omega


# ---------------------------------------------------------------------------
# reduction algorithms


class _Recorder:
    def __init__(self, form: IntersectionForm, A: LatticeClass):
        self.form = form
        self.A = A
        self.moves: list[ReductionMove] = []

    def __call__(self, move: ReductionMove) -> None:
        self.A = move.apply(self.form, self.A)
        self.moves.append(move)


def _reduce_rank2(rec: _Recorder, case: CaseTag) -> None:
    a, b = rec.A
    if case is CaseTag.Case1:
        if abs(b) > abs(a):
            rec(SwapFB())
        if rec.A[0] < 0:
            rec(Negate())
    elif not (a > 0 or (a == 0 and b >= 0)):
        rec(Negate())


def _reduce_case4(rec: _Recorder, alg: AlgebraDescriptor) -> None:
    n = alg.form.rank - 1
    A = rec.A
    ceiling = 10 * (1 + sum(abs(v) for v in A))
    while True:
        if rec.A[0] < 0:
            rec(Negate())
        for i in range(1, n + 1):
            if rec.A[i] > 0:
                rec(ReflectE(i))
        # b_i = -x_i non-increasing  <=>  x_i non-decreasing
        for i in range(1, n + 1):
            k = min(range(i, n + 1), key=lambda j: (rec.A[j], j))
            if k != i and rec.A[k] != rec.A[i]:
                rec(PermuteE(i, k))
        if is_reduced(alg, rec.A):
            return
        rec(CremonaReflect())
        if len(rec.moves) > ceiling:  # pragma: no cover - the measure strictly decreases
            raise AssertionError(f"Case 4 reduction exceeded {ceiling} moves")


def _reduce_case2(rec: _Recorder, alg: AlgebraDescriptor) -> list[int]:
    form = alg.form
    measures: list[int] = []
    while True:
        a, b = rec.A[0], rec.A[1]
        if b == 0:
            # A.A = xi.xi >= 0 forces xi = 0
            if a < 0:
                rec(Negate())
            return measures
        if a == 0:
            rec(SwapFB())
            continue
        if a < 0:
            rec(Negate())
        if rec.A[0] < rec.A[1]:
            rec(SwapFB())
        a, b = rec.A[0], rec.A[1]
        if is_reduced(alg, rec.A):
            return measures
        m = min(a, b)
        if measures and m >= measures[-1]:  # pragma: no cover
            raise AssertionError("Case 2 measure failed to decrease")
        measures.append(m)
        xi = (0, 0) + rec.A[2:]
        rec(EOmega(wall_vector(form, xi, b)))


def reduce(alg: AlgebraDescriptor, A: Sequence[int]) -> ReductionTrace:
    case = _base_case(alg)
    A = tuple(int(v) for v in A)
    if len(A) != alg.form.rank:
        raise RankMismatchError(f"class has {len(A)} coefficients, form has rank {alg.form.rank}")
    if norm(alg.form, A) < 0:
        raise ReductionError("only classes with A.A >= 0 are reduced")
    rec = _Recorder(alg.form, A)
    measures: list[int] = []
    if case is CaseTag.Case4:
        _reduce_case4(rec, alg)
    elif case is CaseTag.Case2:
        measures = _reduce_case2(rec, alg)
    else:
        _reduce_rank2(rec, case)
    if not is_reduced(alg, rec.A):  # pragma: no cover
        raise AssertionError(f"reduction of {A} ended at non-reduced {rec.A}")
    return ReductionTrace(A, rec.A, tuple(rec.moves), tuple(measures))


# ---------------------------------------------------------------------------
# orbit sampling


def generators(alg: AlgebraDescriptor, rng: Optional[random.Random] = None,
               omega_range: int = 1) -> list[ReductionMove]:
    """Moves generating (a subgroup of) the isometries preserving Im T.

    For U + (-E8) the E_omega moves are sampled with coordinates in
    ``[-omega_range, omega_range]``.
    """
    case = _base_case(alg)
    if case is CaseTag.Case1:
        return [Negate(), SwapFB()]
    if case in (CaseTag.Case3, CaseTag.Case5):
        return [Negate()]
    if case is CaseTag.Case2:
        rng = rng or random.Random(0)
        omegas = [(0, 0) + tuple(rng.randint(-omega_range, omega_range) for _ in range(8))
                  for _ in range(4)]
        return [Negate(), SwapFB()] + [EOmega(w) for w in omegas]
    n = alg.form.rank - 1
    gens: list[ReductionMove] = [Negate()]
    gens += [ReflectE(i) for i in range(1, n + 1)]
    gens += [PermuteE(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    if n >= 2:
        gens.append(CremonaReflect())
    return gens


def random_word(alg: AlgebraDescriptor, length: int, rng: random.Random,
                omega_range: int = 1) -> list[ReductionMove]:
    gens = generators(alg, rng, omega_range)
    return [rng.choice(gens) for _ in range(length)]
