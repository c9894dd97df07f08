"""Exact rational/dyadic arithmetic and piecewise-linear continuity moduli."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:(2)\s*\^\s*(\d+)|(\d+)))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``a``, ``a/b`` or ``k/2^n``."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    if m.group(3) is not None:
        return Fraction(num, 2 ** int(m.group(3)))
    if m.group(4) is not None:
        if int(m.group(4)) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(num, int(m.group(4)))
    return Fraction(num)


def as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def truncated_sub(a: Fraction, b: Fraction) -> Fraction:
    """max(a - b, 0)."""
    d = a - b
    return d if d > 0 else ZERO


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True, order=False)
class Dyadic:
    """A dyadic number k/2^n in [0,1], kept with n minimal."""

    k: int
    n: int = 0

    def __post_init__(self):
        k, n = self.k, self.n
        if n < 0 or k < 0 or k > 2 ** n:
            raise ValueError(f"{k}/2^{n} is not a dyadic in [0,1]")
        while n > 0 and k % 2 == 0:
            k //= 2
            n -= 1
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @classmethod
    def of(cls, x: Union["Dyadic", RationalLike]) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        fr = as_fraction(x)
        if not is_dyadic(fr):
            raise ValueError(f"{fr} is not dyadic")
        return cls(fr.numerator, fr.denominator.bit_length() - 1)

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, 2 ** self.n)

    def __lt__(self, other: "Dyadic") -> bool:
        return self.value < Dyadic.of(other).value

    def __le__(self, other: "Dyadic") -> bool:
        return self.value <= Dyadic.of(other).value

    def __gt__(self, other: "Dyadic") -> bool:
        return self.value > Dyadic.of(other).value

    def __ge__(self, other: "Dyadic") -> bool:
        return self.value >= Dyadic.of(other).value

    def __str__(self) -> str:
        return f"{self.k}/2^{self.n}"


Breakpoint = Tuple[Fraction, Fraction]


def _lerp(a: Breakpoint, b: Breakpoint, x: Fraction) -> Fraction:
    (e0, d0), (e1, d1) = a, b
    if e1 == e0:
        return d1
    return d0 + (d1 - d0) * (x - e0) / (e1 - e0)


class Modulus:
    """Nondecreasing piecewise-linear map (0,1] -> (0,1].

    Between consecutive breakpoints the value is interpolated linearly, and it
    is constant to the left of the first and right of the last breakpoint.  A
    repeated epsilon encodes a jump; the later breakpoint is the value at the
    jump point.  A leading ``(0, 0)`` anchor makes the map vanish at the
    origin (so ``[(0,0),(1,1)]`` is the identity).
    """

    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints: Iterable[Tuple[RationalLike, RationalLike]]):
        bps = tuple((as_fraction(e), as_fraction(d)) for e, d in breakpoints)
        if not bps:
            raise ValueError("modulus needs at least one breakpoint")
        for i, (e, d) in enumerate(bps):
            anchor = i == 0 and e == 0 and d == 0 and len(bps) > 1
            if not anchor and not (0 < e <= 1 and 0 < d <= 1):
                raise ValueError(f"breakpoint ({e},{d}) outside (0,1]x(0,1]")
            if i and (e < bps[i - 1][0] or d < bps[i - 1][1]):
                raise ValueError("modulus breakpoints must be nondecreasing")
        self.breakpoints: Tuple[Breakpoint, ...] = bps

    @classmethod
    def identity(cls) -> "Modulus":
        return cls([(0, 0), (1, 1)])

    @classmethod
    def constant(cls, value: RationalLike) -> "Modulus":
        return cls([(1, value)])

    def __eq__(self, other):
        return isinstance(other, Modulus) and self.breakpoints == other.breakpoints

    def __hash__(self):
        return hash(self.breakpoints)

    def __repr__(self):
        return f"Modulus({self})"

    def __str__(self):
        inner = ",".join(f"({format_rational(e)},{format_rational(d)})"
                         for e, d in self.breakpoints)
        return f"modulus [{inner}]"

    def __call__(self, eps: RationalLike) -> Fraction:
        return modulus_eval(self, eps)

    # Value at x (x may be 0 here, unlike the public evaluation).
    def _at(self, x: Fraction) -> Fraction:
        bps = self.breakpoints
        j = -1
        for i, (e, _) in enumerate(bps):
            if e <= x:
                j = i
            else:
                break
        if j < 0:
            return bps[0][1]
        if j == len(bps) - 1:
            return bps[-1][1]
        return _lerp(bps[j], bps[j + 1], x)

    def _left_limit(self, x: Fraction) -> Fraction:
        bps = self.breakpoints
        if x <= bps[0][0]:
            return bps[0][1]
        for i, (e, _) in enumerate(bps):
            if e >= x:
                return _lerp(bps[i - 1], bps[i], x)
        return bps[-1][1]

    def residual(self, dist: Fraction) -> Optional[Fraction]:
        """inf{eps in (0,1] : value(eps) > dist}, or None when the set is empty.

        For a pair at distance ``dist`` every continuity condition governed by
        this modulus collapses to "value difference <= residual(dist)".
        """
        bps = self.breakpoints
        if bps[0][1] > dist:
            return ZERO
        for (e0, d0), (e1, d1) in zip(bps, bps[1:]):
            if d1 > dist >= d0:
                if e1 == e0:
                    return e0
                return e0 + (dist - d0) * (e1 - e0) / (d1 - d0)
        return None

    def scaled(self, c: int) -> "Modulus":
        """eps -> value(eps / c), restricted to (0,1]."""
        out = []
        for e, d in self.breakpoints:
            if c * e <= 1:
                out.append((c * e, d))
        if not out or out[-1][0] < 1:
            out.append((ONE, self._at(Fraction(1, c))))
        return Modulus(_simplify(out))


def _check_eps(eps: Fraction) -> None:
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon {eps} outside (0,1]")


def modulus_eval(delta: Modulus, eps: RationalLike) -> Fraction:
    eps = as_fraction(eps)
    _check_eps(eps)
    return delta._at(eps)


def modulus_sup_below(delta: Modulus, r: RationalLike) -> Fraction:
    """sup{delta(eps) : 0 < eps < r}; a q admits a witnessing eps iff q < this."""
    r = as_fraction(r)
    _check_eps(r)
    return delta._left_limit(r)


def _simplify(points: Sequence[Breakpoint]) -> list:
    pts = []
    for p in points:
        if pts and pts[-1] == p:
            continue
        pts.append(p)
    changed = True
    while changed and len(pts) > 2:
        changed = False
        for i in range(1, len(pts) - 1):
            (ea, da), (eb, db), (ec, dc) = pts[i - 1], pts[i], pts[i + 1]
            if ea < eb < ec and (db - da) * (ec - ea) == (dc - da) * (eb - ea):
                del pts[i]
                changed = True
                break
    # A trailing flat stretch carries no information.
    while len(pts) > 1 and pts[-1][1] == pts[-2][1] and not (pts[-2][0] == 0 and pts[-2][1] == 0):
        pts.pop()
    return pts


def min_moduli(moduli: Sequence[Modulus]) -> Modulus:
    """Pointwise minimum, as a Modulus (kinks at crossings included)."""
    if not moduli:
        raise ValueError("empty list of moduli")
    if len(moduli) == 1:
        return moduli[0]
    xs = sorted({e for m in moduli for e, _ in m.breakpoints} | {ONE})
    xs = [x for x in xs if x <= 1]
    out: list = []
    first = xs[0]
    if first == 0:
        out.append((ZERO, min(m._at(ZERO) for m in moduli)))
    else:
        left = min(m._left_limit(first) for m in moduli)
        out.append((first, left))
        val = min(m._at(first) for m in moduli)
        if val != left:
            out.append((first, val))
    for a, b in zip(xs, xs[1:]):
        lines = [(m._at(a), m._left_limit(b)) for m in moduli]
        crossings = set()
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                (ya, yb), (za, zb) = lines[i], lines[j]
                da, db = ya - za, yb - zb
                if da * db < 0:
                    t = da / (da - db)
                    crossings.add(a + t * (b - a))
        for x in sorted(crossings):
            t = (x - a) / (b - a)
            out.append((x, min(ya + t * (yb - ya) for ya, yb in lines)))
        left = min(yb for _, yb in lines)
        out.append((b, left))
        val = min(m._at(b) for m in moduli)
        if val != left:
            out.append((b, val))
    return Modulus(_simplify(out))


def combined_modulus(deltas: Sequence[Modulus], n: int) -> Modulus:
    """eps -> min_i deltas[i](eps / n): a joint modulus for the max metric."""
    if not deltas:
        raise ValueError("empty list of moduli")
    if len(deltas) != n:
        raise ValueError(f"expected {n} moduli, got {len(deltas)}")
    return min_moduli([d.scaled(n) for d in deltas])
