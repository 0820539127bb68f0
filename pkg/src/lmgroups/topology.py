"""Finite regular cell complexes as face posets, with integral homology.

A complex stores cells by key with a dimension and the set of
codimension-one faces.  Homology is computed on the order complex of
the face poset (the barycentric subdivision), which turns arbitrary
polytopal cells into simplices and avoids tracking incidence signs for
the original cells.  Torsion comes from an integer Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Set, Tuple


@dataclass
class Complex:
    dims: Dict[str, int]
    facets: Dict[str, FrozenSet[str]]
    _faces: Dict[str, FrozenSet[str]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for c, fs in self.facets.items():
            for f in fs:
                if self.dims[f] != self.dims[c] - 1:
                    raise ValueError(f"facet {f} of {c} has the wrong dimension")

    def cells(self) -> List[str]:
        return sorted(self.dims, key=lambda k: (self.dims[k], k))

    def cells_of_dim(self, d: int) -> List[str]:
        return sorted(k for k, dd in self.dims.items() if dd == d)

    def dimension(self) -> int:
        return max(self.dims.values(), default=-1)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d for d in self.dims.values())

    def faces(self, key: str) -> FrozenSet[str]:
        """All proper faces (transitive closure of the facet relation)."""
        if key not in self._faces:
            acc: Set[str] = set()
            stack = list(self.facets[key])
            while stack:
                f = stack.pop()
                if f not in acc:
                    acc.add(f)
                    stack.extend(self.facets[f])
            self._faces[key] = frozenset(acc)
        return self._faces[key]

    def vertices_of(self, key: str) -> FrozenSet[str]:
        if self.dims[key] == 0:
            return frozenset({key})
        return frozenset(f for f in self.faces(key) if self.dims[f] == 0)

    def closed_star(self, vertex: str) -> List[str]:
        return sorted(
            (c for c in self.dims if vertex in self.vertices_of(c)),
            key=lambda k: (self.dims[k], k),
        )

    def edges(self) -> List[Tuple[str, FrozenSet[str]]]:
        return [(e, self.vertices_of(e)) for e in self.cells_of_dim(1)]

    def adjacent_vertices(self, vertex: str) -> Set[str]:
        out: Set[str] = set()
        for _, vv in self.edges():
            if vertex in vv:
                out |= vv - {vertex}
        return out

    def subcomplex(self, keys: Iterable[str]) -> "Complex":
        keep = set(keys)
        for k in keep:
            if not self.faces(k) <= keep:
                raise ValueError(f"cell set not closed under faces at {k}")
        return Complex(
            {k: self.dims[k] for k in keep},
            {k: self.facets[k] for k in keep},
        )

    def validate(self) -> bool:
        for c in self.dims:
            d = self.dims[c]
            if d > 0 and len(self.vertices_of(c)) < d + 1:
                raise ValueError(f"{d}-cell {c} has fewer than {d + 1} vertices")
            if d > 0 and not self.facets[c]:
                raise ValueError(f"{d}-cell {c} has no facets")
        return True


def order_complex(cx: Complex) -> List[Tuple[str, ...]]:
    """Simplices of the order complex of the face poset: one k-simplex
    per strictly increasing chain of k+1 cells.  Its geometric
    realization is the barycentric subdivision of the complex."""
    cells = cx.cells()
    simplices: List[Tuple[str, ...]] = []

    def grow(chain: Tuple[str, ...], top: str):
        simplices.append(chain)
        for f in sorted(cx.faces(top)):
            grow((f,) + chain, f)

    for c in cells:
        grow((c,), c)
    return simplices


def smith_diagonal(rows: List[List[int]]) -> List[int]:
    """Nonzero diagonal of the Smith normal form (d1 | d2 | ...)."""
    m = [row[:] for row in rows]
    if not m or not m[0]:
        return []
    R, C = len(m), len(m[0])
    diag: List[int] = []
    r = 0
    while r < min(R, C):
        # pick the entry of least nonzero magnitude in the remaining block
        pr, pc, best = -1, -1, None
        for i in range(r, R):
            for j in range(r, C):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    pr, pc, best = i, j, v
        if best is None:
            break
        m[r], m[pr] = m[pr], m[r]
        for i in range(R):
            m[i][r], m[i][pc] = m[i][pc], m[i][r]
        again = True
        while again:
            again = False
            for i in range(r + 1, R):
                if m[i][r]:
                    q = m[i][r] // m[r][r]
                    for j in range(r, C):
                        m[i][j] -= q * m[r][j]
                    if m[i][r]:
                        m[r], m[i] = m[i], m[r]
                        again = True
            for j in range(r + 1, C):
                if m[r][j]:
                    q = m[r][j] // m[r][r]
                    for i in range(r, R):
                        m[i][j] -= q * m[i][r]
                    if m[r][j]:
                        for i in range(r, R):
                            m[i][r], m[i][j] = m[i][j], m[i][r]
                        again = True
        # enforce divisibility of later entries by the pivot
        piv = abs(m[r][r])
        for i in range(r + 1, R):
            for j in range(r + 1, C):
                if m[i][j] % piv:
                    for jj in range(r, C):
                        m[r][jj] += m[i][jj]
                    again = True
                    break
            else:
                continue
            break
        if again:
            continue
        diag.append(piv)
        r += 1
    return diag


def _collapse_simplices(simplices: List[Tuple[str, ...]]) -> List[Tuple[str, ...]]:
    """Greedy free-pair collapse of a simplicial complex (homotopy
    equivalence); shrinks the chain complexes before any integer
    elimination."""
    cells = {tuple(sorted(s)) for s in simplices}
    cofacets: Dict[Tuple[str, ...], set] = {s: set() for s in cells}
    for s in cells:
        if len(s) > 1:
            for k in range(len(s)):
                cofacets[s[:k] + s[k + 1:]].add(s)
    candidates = set(cells)
    while candidates:
        f = candidates.pop()
        if f not in cofacets:
            continue
        cf = cofacets[f]
        if len(cf) != 1:
            continue
        (c,) = cf
        if cofacets[c]:
            continue
        for s in (f, c):
            if len(s) > 1:
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    if face in cofacets:
                        cofacets[face].discard(s)
                        candidates.add(face)
        del cofacets[f], cofacets[c]
        cells.discard(f)
        cells.discard(c)
    return sorted(cells)


def homology_of_simplices(simplices: List[Tuple[str, ...]]) -> Dict[int, Tuple[int, List[int]]]:
    """Reduced integral homology of a simplicial complex given as a list
    of simplices (vertex tuples, closed under taking subtuples).

    Returns {degree: (betti rank, torsion coefficients)}.  The empty
    complex reports {-1: (1, [])}.
    """
    if not simplices:
        return {-1: (1, [])}
    top_input = max(len(s) for s in simplices) - 1
    simplices = _collapse_simplices(simplices)
    by_dim: Dict[int, List[Tuple[str, ...]]] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(sorted(s)))
    for d in by_dim:
        by_dim[d] = sorted(set(by_dim[d]))
    top = max(by_dim)
    index = {d: {s: i for i, s in enumerate(by_dim[d])} for d in by_dim}

    def boundary_matrix(d: int) -> List[List[int]]:
        # rows: (d-1)-simplices (the empty simplex when d == 0), cols: d-simplices
        if d == 0:
            return [[1] * len(by_dim[0])]
        rows = [[0] * len(by_dim[d]) for _ in by_dim.get(d - 1, [])]
        for j, s in enumerate(by_dim[d]):
            for k in range(len(s)):
                face = s[:k] + s[k + 1:]
                rows[index[d - 1][face]][j] += (-1) ** k
        return rows

    ranks: Dict[int, int] = {}
    torsions: Dict[int, List[int]] = {}
    for d in range(0, top + 1):
        diag = smith_diagonal(boundary_matrix(d))
        ranks[d] = len(diag)
        torsions[d] = [v for v in diag if v > 1]
    out: Dict[int, Tuple[int, List[int]]] = {}
    for d in range(0, max(top, top_input) + 1):
        n_d = len(by_dim.get(d, []))
        rank_d = ranks.get(d, 0)
        rank_up = ranks.get(d + 1, 0)
        betti = n_d - rank_d - rank_up
        out[d] = (betti, torsions.get(d + 1, []))
    return out


def reduced_homology(cx: Complex) -> Dict[int, Tuple[int, List[int]]]:
    """Reduced integral homology of a cell complex via its barycentric
    subdivision."""
    return homology_of_simplices(order_complex(cx))


def is_trivial_homology(h: Dict[int, Tuple[int, List[int]]]) -> bool:
    return all(betti == 0 and not tors for betti, tors in h.values())


def is_collapsible(cx: Complex) -> bool:
    """Greedy free-face collapse down to a single vertex.  True is a
    certificate of contractibility; False is inconclusive."""
    dims = dict(cx.dims)
    facets = {k: set(v) for k, v in cx.facets.items()}
    cofaces: Dict[str, Set[str]] = {k: set() for k in dims}
    for c, fs in facets.items():
        for f in fs:
            cofaces[f].add(c)
    while True:
        # (f, c) is a free pair iff c is the only cell properly containing
        # f, i.e. f has one cofacet c and c itself is maximal
        free = [
            f
            for f in dims
            if len(cofaces[f]) == 1 and not cofaces[next(iter(cofaces[f]))]
        ]
        if not free:
            break
        f = min(free, key=lambda k: (dims[k], k))
        (c,) = cofaces[f]
        for cell in (f, c):
            for g in facets[cell]:
                if g in cofaces and g not in (f, c):
                    cofaces[g].discard(cell)
        del dims[f], facets[f], cofaces[f]
        del dims[c], facets[c], cofaces[c]
    return len(dims) == 1 and next(iter(dims.values())) == 0
