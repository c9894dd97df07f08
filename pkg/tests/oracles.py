"""Independent reference implementations used by the tests.

None of these call into the decision engine: the vertex oracle enumerates
the arrangement of kink lines directly, and the grid sampler evaluates on
float64 arrays (exact for dyadic inputs of the sizes used here).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from cfol.syntax import Atom, Const, Half, Monus, Neg

Affine = Tuple[Fraction, ...]  # (c0, c1, ..., ck): c0 + sum ci * xi


def peval(phi, v: Dict[str, Fraction]) -> Fraction:
    """Direct recursive evaluation of a propositional formula."""
    if isinstance(phi, Atom):
        return v[phi.pred]
    if isinstance(phi, Const):
        return phi.value.value
    if isinstance(phi, Neg):
        return 1 - peval(phi.body, v)
    if isinstance(phi, Half):
        return peval(phi.body, v) / 2
    if isinstance(phi, Monus):
        return max(peval(phi.left, v) - peval(phi.right, v), Fraction(0))
    raise TypeError(phi)


def atoms_of(phi, acc: Optional[Set[str]] = None) -> Set[str]:
    acc = set() if acc is None else acc
    if isinstance(phi, Atom):
        acc.add(phi.pred)
    elif isinstance(phi, Monus):
        atoms_of(phi.left, acc)
        atoms_of(phi.right, acc)
    elif isinstance(phi, (Neg, Half)):
        atoms_of(phi.body, acc)
    return acc


def _pieces(phi, names: Sequence[str], lines: Set[Affine], memo: dict) -> Set[Affine]:
    """Every affine function phi can coincide with on some region; records
    the loci where a truncation may switch branch in ``lines``."""
    if phi in memo:
        return memo[phi]
    k = len(names)
    zero = (Fraction(0),) * (k + 1)
    if isinstance(phi, Atom):
        out = {tuple(Fraction(int(i == names.index(phi.pred) + 1)) for i in range(k + 1))}
    elif isinstance(phi, Const):
        out = {(phi.value.value,) + (Fraction(0),) * k}
    elif isinstance(phi, Neg):
        out = {(1 - a[0],) + tuple(-c for c in a[1:]) for a in _pieces(phi.body, names, lines, memo)}
    elif isinstance(phi, Half):
        out = {tuple(c / 2 for c in a) for a in _pieces(phi.body, names, lines, memo)}
    elif isinstance(phi, Monus):
        left = _pieces(phi.left, names, lines, memo)
        right = _pieces(phi.right, names, lines, memo)
        out = {zero}
        for a in left:
            for b in right:
                d = tuple(x - y for x, y in zip(a, b))
                out.add(d)
                lines.add(d)
    else:
        raise TypeError(phi)
    memo[phi] = out
    return out


def _normal(line: Affine) -> Optional[Affine]:
    lead = next((c for c in line[1:] if c != 0), None)
    if lead is None:
        return None
    return tuple(c / lead for c in line)


def _candidates(lines: Set[Affine], k: int) -> List[Tuple[Fraction, ...]]:
    """Vertices of the arrangement of ``lines`` and the box faces in [0,1]^k."""
    one, zero = Fraction(1), Fraction(0)
    ls = {n for n in map(_normal, lines) if n is not None}
    for i in range(k):
        ls.add(tuple(one if j == i + 1 else zero for j in range(k + 1)))
        ls.add(tuple(-one if j == 0 else (one if j == i + 1 else zero) for j in range(k + 1)))
    pts = set()
    if k == 0:
        return [()]
    if k == 1:
        for c0, c1 in ls:
            x = -c0 / c1
            if 0 <= x <= 1:
                pts.add((x,))
        return sorted(pts)
    if k != 2:
        raise ValueError("the vertex oracle handles at most two atoms")
    for (a0, a1, a2), (b0, b1, b2) in itertools.combinations(sorted(ls), 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = (-a0 * b2 + a2 * b0) / det
        y = (-a1 * b0 + a0 * b1) / det
        if 0 <= x <= 1 and 0 <= y <= 1:
            pts.add((x, y))
    return sorted(pts)


def vertex_max(sigma: Sequence, phi, names: Optional[Sequence[str]] = None
               ) -> Optional[Tuple[Fraction, Dict[str, Fraction]]]:
    """Exact sup of phi over valuations in [0,1]^k making every sigma member 0.

    A PL function is affine on each cell of the arrangement formed by its
    branch-switch lines, so the sup over any face is attained at a vertex;
    zero sets of sigma pieces are added as extra lines.  None when no
    candidate satisfies sigma.
    """
    if names is None:
        names = sorted(set().union(atoms_of(phi), *(atoms_of(s) for s in sigma)))
    names = list(names)
    lines: Set[Affine] = set()
    memo: dict = {}
    _pieces(phi, names, lines, memo)
    for s in sigma:
        for a in _pieces(s, names, lines, memo):
            lines.add(a)
    best = None
    for pt in _candidates(lines, len(names)):
        v = dict(zip(names, pt))
        if any(peval(s, v) != 0 for s in sigma):
            continue
        val = peval(phi, v)
        if best is None or val > best[0]:
            best = (val, v)
    return best


def grid_max(phi, names: Sequence[str], n: int = 7, sigma: Sequence = ()) -> Optional[Fraction]:
    """Max of phi over the dyadic grid of step 2^-n (restricted to grid points
    where every sigma member vanishes).  float64 is exact here: every
    intermediate value is a dyadic with a small denominator."""
    axis = np.arange(2 ** n + 1, dtype=np.float64) / 2 ** n
    grids = np.meshgrid(*([axis] * len(names)), indexing="ij") if names else []
    env = {a: g.ravel() for a, g in zip(names, grids)}
    size = axis.size ** len(names)

    def ev(f):
        if isinstance(f, Atom):
            return env[f.pred]
        if isinstance(f, Const):
            return np.full(size, float(f.value.value))
        if isinstance(f, Neg):
            return 1.0 - ev(f.body)
        if isinstance(f, Half):
            return ev(f.body) / 2.0
        return np.maximum(ev(f.left) - ev(f.right), 0.0)

    mask = np.ones(size, dtype=bool)
    for s in sigma:
        mask &= ev(s) == 0.0
    if not mask.any():
        return None
    return Fraction(float(ev(phi)[mask].max()))


def enumerate_formulas(leaves: Sequence, max_nodes: int) -> List:
    """All formulas with at most ``max_nodes`` connective nodes over the leaves."""
    by_size: List[List] = [list(leaves)]
    for k in range(1, max_nodes + 1):
        layer = []
        for f in by_size[k - 1]:
            layer.append(Neg(f))
            layer.append(Half(f))
        for i in range(k):
            j = k - 1 - i
            for a in by_size[i]:
                for b in by_size[j]:
                    layer.append(Monus(a, b))
        by_size.append(layer)
    return [f for layer in by_size for f in layer]
