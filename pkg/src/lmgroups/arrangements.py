"""Admissible hyperplane arrangements in the unit cube and their cells.

An arrangement in dimension n consists of all coordinate walls
{x_i = 0}, {x_i = 1} plus a chosen set of adjacent diagonals
{x_i = x_{i+1}}.  A cell is a satisfiable sign vector: a position in
{0, 1, interior} per coordinate and a relation in {<, =, >} per chosen
diagonal.  All arithmetic is exact; satisfiability is union-find plus a
constant check (the strict constraints between interior classes along a
path can never form a cycle).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .topology import Complex

POS = ("0", "1", "i")
REL = ("<", "=", ">")


@dataclass(frozen=True)
class Arrangement:
    n: int
    diagonals: FrozenSet[int]  # i in 1..n-1 marks {x_i = x_{i+1}}

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "diagonals", frozenset(self.diagonals))
        if any(i < 1 or i >= self.n for i in self.diagonals):
            raise ValueError("diagonal indices must lie in 1..n-1")

    def diag_list(self) -> List[int]:
        return sorted(self.diagonals)


def cell_key(positions: str, rels: str) -> str:
    return f"{positions}|{rels}"


def split_key(key: str) -> Tuple[str, str]:
    positions, _, rels = key.partition("|")
    return positions, rels


def _classes(n: int, diags: Sequence[int], rels: str) -> List[int]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d, r in zip(diags, rels):
        if r == "=":
            i, j = find(d - 1), find(d)
            if i != j:
                parent[max(i, j)] = min(i, j)
    return [find(i) for i in range(n)]


def satisfiable(positions: str, rels: str, arr: Arrangement) -> bool:
    diags = arr.diag_list()
    cls = _classes(arr.n, diags, rels)
    letter: Dict[int, str] = {}
    for i, c in enumerate(cls):
        p = positions[i]
        if c in letter and letter[c] != p:
            return False
        letter[c] = p
    for d, r in zip(diags, rels):
        if r == "=":
            continue
        a, b = letter[cls[d - 1]], letter[cls[d]]
        lo, hi = (a, b) if r == "<" else (b, a)
        # lo < hi must be satisfiable with 0 < interior < 1
        if lo == "1" or hi == "0" or (lo == hi and lo != "i"):
            return False
        if lo == "i" and hi == "i" and cls[d - 1] == cls[d]:
            return False
    return True


def cell_dim(positions: str, rels: str, arr: Arrangement) -> int:
    cls = _classes(arr.n, arr.diag_list(), rels)
    return len({c for i, c in enumerate(cls) if positions[i] == "i"})


def face_of(ckey: str, dkey: str, arr: Arrangement) -> bool:
    """True iff the cell with key ckey lies in the closure of dkey."""
    cp, cr = split_key(ckey)
    dp, dr = split_key(dkey)
    for a, b in zip(cp, dp):
        if b != "i" and a != b:
            return False
    for a, b in zip(cr, dr):
        if b == "=" and a != "=":
            return False
        if b == "<" and a == ">":
            return False
        if b == ">" and a == "<":
            return False
    return True


@dataclass
class ClusterComplex:
    arrangement: Arrangement
    complex: Complex
    cellinfo: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    def counts(self) -> List[int]:
        out = [0] * (self.complex.dimension() + 1)
        for d in self.complex.dims.values():
            out[d] += 1
        return out

    def vertex_coords(self, key: str) -> Tuple[int, ...]:
        positions, _ = split_key(key)
        if "i" in positions:
            raise ValueError(f"{key} is not a vertex")
        return tuple(int(c) for c in positions)

    def vertex_of_coords(self, coords: Sequence[int]) -> str:
        positions = "".join(str(int(c)) for c in coords)
        rels = []
        for d in self.arrangement.diag_list():
            a, b = coords[d - 1], coords[d]
            rels.append("<" if a < b else ("=" if a == b else ">"))
        return cell_key(positions, "".join(rels))

    def edge_vertex_pairs(self) -> List[FrozenSet[str]]:
        return [self.complex.vertices_of(e) for e in self.complex.cells_of_dim(1)]


def _satisfiable_cells(arr: Arrangement) -> Dict[str, int]:
    if arr.n > 12:
        raise ValueError("dimension bound exceeded (n <= 12)")
    diags = arr.diag_list()
    cells: Dict[str, int] = {}
    for pos in product(POS, repeat=arr.n):
        positions = "".join(pos)
        for rel in product(REL, repeat=len(diags)):
            rels = "".join(rel)
            if satisfiable(positions, rels, arr):
                cells[cell_key(positions, rels)] = cell_dim(positions, rels, arr)
    return cells


def cell_counts(arr: Arrangement) -> List[int]:
    """Cell counts by dimension, without the face structure."""
    cells = _satisfiable_cells(arr)
    out = [0] * (max(cells.values()) + 1)
    for d in cells.values():
        out[d] += 1
    return out


def enumerate_cells(arr: Arrangement) -> ClusterComplex:
    """All satisfiable sign vectors of the arrangement, graded by the
    number of interior coordinate classes, with the facet relation."""
    cells = _satisfiable_cells(arr)
    by_dim: Dict[int, List[str]] = {}
    for k, d in cells.items():
        by_dim.setdefault(d, []).append(k)
    facets: Dict[str, FrozenSet[str]] = {}
    for k, d in cells.items():
        if d == 0:
            facets[k] = frozenset()
        else:
            facets[k] = frozenset(
                f for f in by_dim.get(d - 1, []) if face_of(f, k, arr)
            )
    cx = Complex(cells, facets)
    info = {k: split_key(k) for k in cells}
    return ClusterComplex(arr, cx, info)


# --------------------------------------------------------------------------
# Flats and subclusters


Constraint = Tuple  # ("coord", i, value) with i 1-based, or ("diag", i)


def _forced_values(arr: Arrangement, flat: Sequence[Constraint]) -> Dict[int, Optional[int]]:
    """Forced value (0/1/None) per original coordinate on the flat."""
    parent = list(range(arr.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pin: Dict[int, int] = {}
    for c in flat:
        if c[0] == "diag":
            i = c[1]
            a, b = find(i), find(i + 1)
            if a != b:
                parent[max(a, b)] = min(a, b)
    for c in flat:
        if c[0] == "coord":
            _, i, v = c
            r = find(i)
            if r in pin and pin[r] != v:
                raise ValueError("empty flat: contradictory pins")
            pin[r] = v
    return {i: pin.get(find(i)) for i in range(1, arr.n + 1)}


def classify_flat(arr: Arrangement, flat: Sequence[Constraint]) -> str:
    """"Diagonal" iff some generating diagonal {x_i = x_{i+1}} has its
    (merged) value unforced on the flat; otherwise "Facial"."""
    for c in flat:
        if c[0] == "diag" and c[1] not in arr.diagonals:
            raise ValueError(f"diagonal {c[1]} is not a hyperplane of the arrangement")
        if c[0] == "coord" and not (1 <= c[1] <= arr.n):
            raise ValueError(f"coordinate {c[1]} out of range")
        if c[0] == "coord" and c[2] not in (0, 1):
            raise ValueError("coordinate walls sit at 0 or 1")
    forced = _forced_values(arr, flat)
    for c in flat:
        if c[0] == "diag" and forced[c[1]] is None:
            return "Diagonal"
    return "Facial"


def restrict_arrangement(
    arr: Arrangement, flat: Sequence[Constraint]
) -> Tuple[Arrangement, List[int]]:
    """Inherited arrangement on the flat plus the list of surviving
    original coordinates (a merged diagonal pair keeps its right member
    as the surviving column)."""
    n = arr.n
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    survivors = list(range(1, n + 1))
    diagset = set(arr.diagonals)
    pinned: Dict[int, int] = {}  # class representative -> value
    column: Dict[int, int] = {i: i for i in range(1, n + 1)}  # rep -> surviving column

    def drop(pos: int, *, merge_right: bool):
        nonlocal diagset
        newdiag = set()
        for d in diagset:
            if merge_right:
                if d <= pos - 1:
                    newdiag.add(d)
                elif d >= pos + 1:
                    newdiag.add(d - 1)
            else:
                if d <= pos - 2:
                    newdiag.add(d)
                elif d >= pos + 1:
                    newdiag.add(d - 1)
        diagset = newdiag
        survivors.pop(pos - 1)

    def pin_class(rep: int, v: int):
        if rep in pinned:
            if pinned[rep] != v:
                raise ValueError("empty flat: contradictory pins")
            return
        pinned[rep] = v
        drop(survivors.index(column[rep]) + 1, merge_right=False)

    for c in flat:
        if c[0] == "coord":
            _, orig, v = c
            pin_class(find(orig), v)
        else:
            _, i = c
            if i not in arr.diagonals:
                raise ValueError(f"diagonal {i} is not a hyperplane of the arrangement")
            a, b = find(i), find(i + 1)
            if a == b:
                continue  # redundant merge
            if a in pinned or b in pinned:
                if a in pinned and b in pinned:
                    if pinned[a] != pinned[b]:
                        raise ValueError("empty flat: contradictory pins")
                    parent[a] = b
                    continue
                known, other = (a, b) if a in pinned else (b, a)
                # the merge pins the other class too: its column goes
                drop(survivors.index(column[other]) + 1, merge_right=False)
                parent[other] = known
                continue
            pa = survivors.index(column[a]) + 1
            pb = survivors.index(column[b]) + 1
            if abs(pa - pb) != 1:
                raise ValueError("diagonal endpoints are no longer adjacent")
            left, right = (a, b) if pa < pb else (b, a)
            drop(min(pa, pb), merge_right=True)
            parent[left] = right
    if not survivors:
        raise ValueError("the flat is a single vertex: no inherited coordinates")
    return Arrangement(len(survivors), frozenset(diagset)), survivors


def restrict_cell_key(
    key: str, arr: Arrangement, flat: Sequence[Constraint], survivors: List[int]
) -> Optional[str]:
    """Map a cell of the ambient cluster lying in the flat to inherited
    coordinates; None when the cell is not contained in the flat."""
    positions, rels = split_key(key)
    diags = arr.diag_list()
    relmap = dict(zip(diags, rels))
    for c in flat:
        if c[0] == "coord":
            _, i, v = c
            if positions[i - 1] != str(v):
                return None
        else:
            if relmap[c[1]] != "=":
                return None
    sub_arr, _ = restrict_arrangement(arr, flat)
    newpos = "".join(positions[i - 1] for i in survivors)
    newrels = []
    for d in sub_arr.diag_list():
        a, b = survivors[d - 1], survivors[d]
        # relation between original coordinates a and b: they were adjacent
        # through a chain of merged coordinates, all carrying '=' except
        # exactly the surviving comparison
        chain = [r for r in range(a, b) if r in diags]
        vals = [relmap[r] for r in chain]
        strict = [v for v in vals if v != "="]
        if len(chain) != b - a:
            raise AssertionError("gap in the restricted diagonal chain")
        if len(strict) > 1:
            raise AssertionError("more than one strict relation across a merge")
        newrels.append(strict[0] if strict else "=")
    return cell_key(newpos, "".join(newrels))


def subcluster(
    arr: Arrangement, flat: Sequence[Constraint]
) -> Tuple[ClusterComplex, str]:
    """The induced cluster on a flat, with its Facial/Diagonal kind."""
    kind = classify_flat(arr, flat)
    sub_arr, _ = restrict_arrangement(arr, flat)
    return enumerate_cells(sub_arr), kind


# --------------------------------------------------------------------------
# Exact convexity verification


def _closure_contains_corner(key: str, corner: Sequence[int], arr: Arrangement) -> bool:
    positions, rels = split_key(key)
    for i, p in enumerate(positions):
        if p in "01" and corner[i] != int(p):
            return False
    for d, r in zip(arr.diag_list(), rels):
        a, b = corner[d - 1], corner[d]
        if r == "=" and a != b:
            return False
        if r == "<" and a > b:
            return False
        if r == ">" and a < b:
            return False
    return True


def _in_convex_hull(point: Sequence[Fraction], hull: List[Sequence[Fraction]]) -> bool:
    """Exact feasibility of point = sum(l_i h_i), l >= 0, sum l = 1,
    by a phase-one simplex with Bland's rule over Fractions."""
    if not hull:
        return False
    m = len(point) + 1
    k = len(hull)
    # rows: equations; columns: k lambda vars + m artificial vars
    A = [[Fraction(h[r]) for h in hull] for r in range(len(point))]
    A.append([Fraction(1)] * k)
    b = [Fraction(p) for p in point] + [Fraction(1)]
    for r in range(m):
        if b[r] < 0:
            A[r] = [-v for v in A[r]]
            b[r] = -b[r]
    tab = [A[r] + [Fraction(1) if c == r else Fraction(0) for c in range(m)] + [b[r]] for r in range(m)]
    basis = [k + r for r in range(m)]
    cost = [Fraction(0)] * (k + m) + [Fraction(0)]
    for r in range(m):
        for c in range(k + m + 1):
            cost[c] -= tab[r][c]
    for c in range(k, k + m):
        cost[c] += 1
    while True:
        enter = next((c for c in range(k + m) if cost[c] < 0), None)
        if enter is None:
            break
        ratios = [
            (tab[r][-1] / tab[r][enter], r)
            for r in range(m)
            if tab[r][enter] > 0
        ]
        if not ratios:
            return False  # unbounded phase-one: cannot happen
        _, pivot = min(ratios, key=lambda t: (t[0], basis[t[1]]))
        pv = tab[pivot][enter]
        tab[pivot] = [v / pv for v in tab[pivot]]
        for r in range(m):
            if r != pivot and tab[r][enter]:
                f = tab[r][enter]
                tab[r] = [v - f * w for v, w in zip(tab[r], tab[pivot])]
        if cost[enter]:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, tab[pivot])]
        basis[pivot] = enter
    return -cost[-1] == 0


def verify_convex_cells(cx: ClusterComplex) -> bool:
    """Each cell's corner set must match its combinatorial vertex set,
    be convex independent, and span the closed cell (which has integral
    extreme points, so corners suffice)."""
    arr = cx.arrangement
    if arr.n > 6:
        raise ValueError("convexity check bounded at n <= 6")
    corners = list(product((0, 1), repeat=arr.n))
    for key in cx.complex.cells():
        d = cx.complex.dims[key]
        combinatorial = {
            cx.vertex_coords(v) for v in cx.complex.vertices_of(key)
        }
        geometric = {c for c in corners if _closure_contains_corner(key, c, arr)}
        if combinatorial != geometric:
            return False
        if len(combinatorial) < d + 1:
            return False
        pts = sorted(combinatorial)
        for i, v in enumerate(pts):
            others = [p for j, p in enumerate(pts) if j != i]
            if _in_convex_hull([Fraction(c) for c in v], others):
                return False
    return True


# --------------------------------------------------------------------------
# Serialization


def complex_to_json(cx: ClusterComplex, labels: Optional[Dict[str, str]] = None) -> str:
    cells = []
    for key in cx.complex.cells():
        entry = {
            "key": key,
            "dim": cx.complex.dims[key],
            "signvector": key,
            "faces": sorted(cx.complex.facets[key]),
        }
        if labels and key in labels:
            entry["label"] = labels[key]
        cells.append(entry)
    doc = {
        "format": 1,
        "n": cx.arrangement.n,
        "diagonals": sorted(cx.arrangement.diagonals),
        "cells": cells,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def skeleton_to_dot(
    cx: ClusterComplex,
    labels: Optional[Dict[str, str]] = None,
    ranks: Optional[Dict[str, int]] = None,
) -> str:
    lines = ["graph cluster {"]
    for v in cx.complex.cells_of_dim(0):
        name = labels.get(v, v) if labels else v
        attrs = f'label="{name}"'
        if ranks is not None and v in ranks:
            attrs += f', rank="{ranks[v]}"'
        lines.append(f'  "{v}" [{attrs}];')
    for e in cx.complex.cells_of_dim(1):
        a, b = sorted(cx.complex.vertices_of(e))
        lines.append(f'  "{a}" -- "{b}";')
    lines.append("}")
    return "\n".join(lines)
