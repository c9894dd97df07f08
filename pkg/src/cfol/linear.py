"""Exact Fourier-Motzkin elimination.

A constraint ``(coeffs, c)`` stands for ``sum(coeffs[v] * v) + c >= 0`` with
Fraction coefficients.  Internally rows are primitive integer vectors (scaled
by the lcm of denominators, divided by the gcd), which keeps elimination
exact and much cheaper than Fraction arithmetic.

Only non-strict constraints occur: the piecewise-linear case split works with
closed pieces, which still cover the unit cube.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Coeffs = Dict[str, Fraction]
Constraint = Tuple[Coeffs, Fraction]

ZERO = Fraction(0)
_T = "\x00t"  # objective variable, cannot clash with atom names


class Lin:
    """Affine expression sum(coeffs[v] * v) + const."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: Optional[Mapping[str, Fraction]] = None, const=ZERO):
        self.coeffs = {v: Fraction(c) for v, c in (coeffs or {}).items() if c != 0}
        self.const = Fraction(const)

    @classmethod
    def var(cls, name: str) -> "Lin":
        return cls({name: Fraction(1)})

    def is_const(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Lin") -> "Lin":
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, ZERO) + c
        return Lin(out, self.const + other.const)

    def __neg__(self) -> "Lin":
        return Lin({v: -c for v, c in self.coeffs.items()}, -self.const)

    def __sub__(self, other: "Lin") -> "Lin":
        return self + (-other)

    def scale(self, k: Fraction) -> "Lin":
        return Lin({v: c * k for v, c in self.coeffs.items()}, self.const * k)

    def at(self, point: Mapping[str, Fraction]) -> Fraction:
        return self.const + sum((c * point[v] for v, c in self.coeffs.items()), ZERO)

    def geq0(self) -> Constraint:
        return (dict(self.coeffs), self.const)

    def __repr__(self):
        terms = " + ".join(f"{c}*{v}" for v, c in sorted(self.coeffs.items()))
        return f"Lin({terms or '0'} + {self.const})"


def satisfies(point: Mapping[str, Fraction], con: Constraint) -> bool:
    coeffs, c = con
    return c + sum((a * point[v] for v, a in coeffs.items()), ZERO) >= 0


class Infeasible(Exception):
    pass

# Integer rows: a tuple (a_0, ..., a_{n-1}, c) for sum a_i x_i + c >= 0.


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _to_rows(cons: Iterable[Constraint], index: Dict[str, int]) -> List[tuple]:
    n = len(index)
    rows = []
    for coeffs, c in cons:
        den = Fraction(c).denominator
        for a in coeffs.values():
            den = _lcm(den, Fraction(a).denominator)
        row = [0] * (n + 1)
        for v, a in coeffs.items():
            a = Fraction(a)
            row[index[v]] = a.numerator * (den // a.denominator)
        c = Fraction(c)
        row[n] = c.numerator * (den // c.denominator)
        rows.append(tuple(row))
    return rows


def _normalize(rows: Iterable[tuple]) -> List[tuple]:
    """Divide out common factors and keep the tightest row per direction.

    Raises Infeasible on a row reading 0 >= k with k > 0.
    """
    best: Dict[tuple, Tuple[int, int, tuple]] = {}
    for row in rows:
        g = 0
        for a in row[:-1]:
            if a:
                g = gcd(g, a)
        c = row[-1]
        if g == 0:
            if c < 0:
                raise Infeasible
            continue
        h = gcd(g, c)
        if h != 1:
            row = tuple(a // h for a in row)
            g //= h
            c //= h
        key = tuple(a // g for a in row[:-1]) if g != 1 else row[:-1]
        old = best.get(key)
        # bound is c/g; smaller is tighter
        if old is None or c * old[1] < old[0] * g:
            best[key] = (c, g, row)
    return [v[2] for v in best.values()]


def _eliminate(rows: List[tuple], j: int) -> List[tuple]:
    pos, neg, rest = [], [], []
    for row in rows:
        a = row[j]
        (pos if a > 0 else neg if a < 0 else rest).append(row)
    for p in pos:
        a = p[j]
        for q in neg:
            b = -q[j]
            rest.append(tuple(x * b + y * a for x, y in zip(p, q)))
    return _normalize(rest)


def _live(rows: Sequence[tuple], n: int) -> List[int]:
    return [j for j in range(n) if any(r[j] for r in rows)]


def _pick(rows: List[tuple], candidates: Sequence[int]) -> int:
    best, best_cost = None, None
    for j in candidates:
        p = sum(1 for r in rows if r[j] > 0)
        q = sum(1 for r in rows if r[j] < 0)
        cost = p * q - p - q
        if best is None or cost < best_cost:
            best, best_cost = j, cost
    return best


def _index(cons: List[Constraint], extra: Sequence[str] = ()) -> Dict[str, int]:
    names = set(extra)
    for coeffs, _ in cons:
        names.update(coeffs)
    return {v: i for i, v in enumerate(sorted(names))}


def feasible(cons: Iterable[Constraint]) -> bool:
    return find_point(cons) is not None


def _project(rows: List[tuple], order: Sequence[int]) -> List[List[tuple]]:
    """Eliminate ``order`` left to right; stages[k] is the system before the
    k-th elimination."""
    stages = [rows]
    for j in order:
        rows = _eliminate(rows, j)
        stages.append(rows)
    return stages


def _bounds(rows: Sequence[tuple], j: int, point: Dict[int, Fraction]) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    lo = hi = None
    n = len(rows[0]) - 1 if rows else 0
    for r in rows:
        a = r[j]
        if a == 0:
            continue
        rest = Fraction(r[-1]) + sum((r[k] * point[k] for k in range(n) if k != j and r[k]), ZERO)
        bound = -rest / a
        if a > 0:
            lo = bound if lo is None or bound > lo else lo
        else:
            hi = bound if hi is None or bound < hi else hi
    return lo, hi


def find_point(cons: Iterable[Constraint], pick: str = "mid") -> Optional[Dict[str, Fraction]]:
    """Some point of the polyhedron (bounded variables assumed), or None."""
    cons = list(cons)
    index = _index(cons)
    n = len(index)
    try:
        rows = _normalize(_to_rows(cons, index))
        order = []
        live = _live(rows, n)
        cur = rows
        stages = [rows]
        while live:
            j = _pick(cur, live)
            order.append(j)
            cur = _eliminate(cur, j)
            stages.append(cur)
            live = _live(cur, n)
    except Infeasible:
        return None
    point: Dict[int, Fraction] = {j: ZERO for j in range(n)}
    for k in range(len(order) - 1, -1, -1):
        j = order[k]
        lo, hi = _bounds(stages[k], j, point)
        if lo is None and hi is None:
            val = ZERO
        elif lo is None:
            val = hi
        elif hi is None:
            val = lo
        else:
            val = (lo + hi) / 2 if pick == "mid" else lo
        point[j] = val
    names = sorted(index, key=index.get)
    return {v: point[index[v]] for v in names}


def maximize(cons: Iterable[Constraint], objective: Lin) -> Optional[Fraction]:
    """Exact max of objective over the polyhedron, or None if it is empty.

    The polyhedron must bound the objective from above (true inside the cube).
    """
    cons = list(cons) + [(objective - Lin.var(_T)).geq0()]
    index = _index(cons)
    n = len(index)
    t = index[_T]
    try:
        rows = _normalize(_to_rows(cons, index))
        live = [j for j in _live(rows, n) if j != t]
        while live:
            j = _pick(rows, live)
            rows = _eliminate(rows, j)
            live = [j for j in _live(rows, n) if j != t]
    except Infeasible:
        return None
    upper = None
    for r in rows:
        a = r[t]
        if a < 0:
            bound = Fraction(r[-1]) / -a
            upper = bound if upper is None or bound < upper else upper
    if upper is None:
        raise ValueError("objective is unbounded")
    return upper


def lexmin(cons: Iterable[Constraint], order: Sequence[str]) -> Optional[Dict[str, Fraction]]:
    """Lexicographically least point (in ``order``), or None if empty.

    Every variable must be bounded below.  Variables of the system missing
    from ``order`` are eliminated first and not reported.
    """
    cons = list(cons)
    index = _index(cons, order)
    n = len(index)
    want = [index[v] for v in order]
    try:
        rows = _normalize(_to_rows(cons, index))
        extra = [j for j in _live(rows, n) if j not in set(want)]
        while extra:
            j = _pick(rows, extra)
            rows = _eliminate(rows, j)
            extra = [j for j in _live(rows, n) if j not in set(want)]
        stages = _project(rows, list(reversed(want[1:])))
    except Infeasible:
        return None
    stages.reverse()  # stages[k] mentions only want[:k+1]
    point: Dict[int, Fraction] = {j: ZERO for j in range(n)}
    for k, j in enumerate(want):
        lo, hi = _bounds(stages[k], j, point)
        if lo is not None and hi is not None and lo > hi:
            return None  # only reachable at k=0, when nothing was eliminated
        if lo is None:
            if any(r[j] for r in stages[k]):
                raise ValueError(f"variable {order[k]} unbounded below")
            lo = ZERO
        point[j] = lo
    return {v: point[index[v]] for v in order}


def box(names: Iterable[str]) -> List[Constraint]:
    """0 <= v <= 1 for each name."""
    out = []
    for v in names:
        out.append(({v: Fraction(1)}, ZERO))
        out.append(({v: Fraction(-1)}, Fraction(1)))
    return out
