"""Finite labeled pieces of the cluster complex on the F-cosets.

A piece is a base word g and a list of independent special forms; its
vertices are the cosets of the subset products over the base, its
arrangement marks the diagonal between adjacent parameters exactly when
their ordered product is again a special form, and the arrangement's
1-skeleton is cross-checked against the special-form edge rule on every
vertex pair.  Pieces glue along shared cosets into larger complexes,
carrying the Morse data (psi height, negative lexicographic rank).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import group
from .arrangements import Arrangement, ClusterComplex, enumerate_cells, split_key
from .group import GroupWord, SpecialForm, canonical_coset, psi_like_value
from .topology import Complex, is_collapsible, reduced_homology
from .words import consecutive, independent, tree_order_less

__all__ = [
    "ClusterError",
    "CrossCheckError",
    "AssemblyError",
    "XCluster",
    "XComplex",
    "MorseValue",
    "build_x_cluster",
    "assemble",
    "morse_value",
    "morse_values",
    "verify_morse",
    "ascending_link",
    "find_cone_vertex",
    "is_collapsible",
    "reduced_homology",
]


class ClusterError(RuntimeError):
    pass


class CrossCheckError(ClusterError):
    pass


class AssemblyError(ClusterError):
    pass


@dataclass(frozen=True)
class MorseValue:
    h: int
    f: int

    def key(self) -> Tuple[int, int]:
        return (self.h, self.f)


@dataclass
class XCluster:
    base: GroupWord
    params: Tuple[SpecialForm, ...]
    diagonals: FrozenSet[int]
    cluster: ClusterComplex
    labels: Dict[str, str]  # local vertex cell key -> coset key string
    label_words: Dict[str, GroupWord]

    def label_of_coords(self, coords: Sequence[int]) -> str:
        return self.labels[self.cluster.vertex_of_coords(coords)]

    def has_edge_between_coords(self, a: Sequence[int], b: Sequence[int]) -> bool:
        pair = frozenset(
            {self.cluster.vertex_of_coords(a), self.cluster.vertex_of_coords(b)}
        )
        return pair in set(self.cluster.edge_vertex_pairs())


@dataclass
class XComplex:
    complex: Complex
    vertex_words: Dict[str, GroupWord]
    pieces: List[XCluster]

    def vertices(self) -> List[str]:
        return self.complex.cells_of_dim(0)


def _tree_cmp(s: str, t: str) -> int:
    if s == t:
        return 0
    return -1 if tree_order_less(s, t) else 1


def sort_params(params: Sequence[SpecialForm]) -> Tuple[SpecialForm, ...]:
    return tuple(
        sorted(params, key=cmp_to_key(lambda f, g: _tree_cmp(f.subscripts()[0], g.subscripts()[0])))
    )


def _difference_entries(
    forms: Sequence[SpecialForm], bset: frozenset, cset: frozenset
) -> List[Tuple[str, int]]:
    letters: List[Tuple[str, int]] = []
    for i in sorted(bset - cset):
        letters.extend(forms[i].entries)
    for i in sorted(cset - bset):
        letters.extend(forms[i].inverse_entries())
    letters.sort(key=cmp_to_key(lambda a, b: _tree_cmp(a[0], b[0])))
    return letters


def _entries_special(entries: List[Tuple[str, int]]) -> bool:
    if not entries:
        return False
    for (s, e1), (t, e2) in zip(entries, entries[1:]):
        if e2 != -e1 or consecutive(s, t) is None:
            return False
    return True


def build_x_cluster(
    base: GroupWord,
    params: Sequence[SpecialForm],
    tag: str = "G",
    depth: int = group.DEFAULT_DEPTH,
) -> XCluster:
    """The labeled k-cluster spanned by independent special-form
    parameters over a base coset; hard-errors when the special-form
    edge rule disagrees with the arrangement's 1-skeleton."""
    forms = sort_params(params)
    if not forms:
        raise ClusterError("a cluster needs at least one parameter")
    for f in forms:
        f.word(tag)  # tag validation of every subscript
    if not group.independent_forms(forms):
        raise ClusterError("parameters are not independent")
    k = len(forms)
    diagonals = frozenset(
        i + 1
        for i in range(k - 1)
        if group.is_special_form(forms[i].word(tag) * forms[i + 1].word(tag)) is not None
    )
    cluster = enumerate_cells(Arrangement(k, diagonals))
    labels: Dict[str, str] = {}
    label_words: Dict[str, GroupWord] = {}
    for v in cluster.complex.cells_of_dim(0):
        coords = cluster.vertex_coords(v)
        w = group.identity(tag)
        for i, c in enumerate(coords):
            if c:
                w = w * forms[i].word(tag)
        w = w * base
        key = canonical_coset(w, depth=depth)
        labels[v] = key.to_string()
        label_words[v] = key
    if len(set(labels.values())) != len(labels):
        raise ClusterError("coset collision among cluster vertices")

    # cross-check: arrangement edges must equal the special-form edge rule
    arrangement_edges = {
        frozenset(cluster.complex.vertices_of(e))
        for e in cluster.complex.cells_of_dim(1)
    }
    vertex_keys = cluster.complex.cells_of_dim(0)
    sets = {v: frozenset(i for i, c in enumerate(cluster.vertex_coords(v)) if c)
            for v in vertex_keys}
    mismatches = []
    for a in range(len(vertex_keys)):
        for b in range(a + 1, len(vertex_keys)):
            va, vb = vertex_keys[a], vertex_keys[b]
            rule = _entries_special(_difference_entries(forms, sets[va], sets[vb]))
            present = frozenset({va, vb}) in arrangement_edges
            if rule != present:
                mismatches.append((labels[va], labels[vb], rule, present))
    if mismatches:
        raise CrossCheckError(
            "edge rule and arrangement skeleton disagree on: "
            + "; ".join(
                f"({a}, {b}) rule={r} arrangement={p}" for a, b, r, p in mismatches
            )
        )
    return XCluster(base, forms, diagonals, cluster, labels, label_words)


def _global_ids(piece: XCluster) -> Dict[str, str]:
    ids = {}
    for c in piece.cluster.complex.cells():
        d = piece.cluster.complex.dims[c]
        if d == 0:
            ids[c] = piece.labels[c]
        else:
            vv = sorted(piece.labels[v] for v in piece.cluster.complex.vertices_of(c))
            ids[c] = f"{d}|" + " && ".join(vv)
    return ids


def _flat_cell_sets(piece: XCluster, ids: Dict[str, str]) -> List[FrozenSet[str]]:
    """Cell-id sets of every flat restriction of the piece (subcluster
    candidates for the intersection test)."""
    arr = piece.cluster.arrangement
    constraints = [("coord", i, v) for i in range(1, arr.n + 1) for v in (0, 1)]
    constraints += [("diag", i) for i in sorted(arr.diagonals)]
    out = set()
    for mask in range(1 << len(constraints)):
        flat = [constraints[i] for i in range(len(constraints)) if mask >> i & 1]
        cells = []
        for ckey in piece.cluster.complex.cells():
            positions, rels = split_key(ckey)
            diags = arr.diag_list()
            relmap = dict(zip(diags, rels))
            ok = True
            for c in flat:
                if c[0] == "coord":
                    _, i, v = c
                    if positions[i - 1] != str(v):
                        ok = False
                        break
                else:
                    if relmap[c[1]] != "=":
                        ok = False
                        break
            if ok:
                cells.append(ids[ckey])
        if cells:
            out.add(frozenset(cells))
    return sorted(out, key=sorted)


def assemble(
    pieces: Sequence[Tuple[GroupWord, Sequence[SpecialForm]]],
    tag: str = "G",
    depth: int = group.DEFAULT_DEPTH,
) -> XComplex:
    """Union of labeled clusters with vertices identified by canonical
    coset keys and cells deduplicated by identified vertex sets; every
    pairwise intersection must be a subcluster of both pieces."""
    built = [build_x_cluster(b, p, tag, depth) for b, p in pieces]
    idmaps = [_global_ids(pc) for pc in built]

    dims: Dict[str, int] = {}
    facets: Dict[str, FrozenSet[str]] = {}
    words: Dict[str, GroupWord] = {}
    for pc, ids in zip(built, idmaps):
        cx = pc.cluster.complex
        for c in cx.cells():
            gid = ids[c]
            d = cx.dims[c]
            fs = frozenset(ids[f] for f in cx.facets[c])
            if gid in dims:
                if dims[gid] != d or facets[gid] != fs:
                    raise AssemblyError(
                        f"cell {gid} glued with inconsistent faces: "
                        "intersection is not a subcluster"
                    )
            else:
                dims[gid] = d
                facets[gid] = fs
        for v in cx.cells_of_dim(0):
            words[ids[v]] = pc.label_words[v]

    for i in range(len(built)):
        cells_i = set(idmaps[i].values())
        flats_i = None
        for j in range(i + 1, len(built)):
            shared = cells_i & set(idmaps[j].values())
            if not shared:
                continue
            if flats_i is None:
                flats_i = _flat_cell_sets(built[i], idmaps[i])
            flats_j = _flat_cell_sets(built[j], idmaps[j])
            if frozenset(shared) not in flats_i or frozenset(shared) not in flats_j:
                raise AssemblyError(
                    f"intersection of pieces {i} and {j} is not a subcluster of both"
                )

    return XComplex(Complex(dims, facets), words, built)


# --------------------------------------------------------------------------
# Morse data


def morse_values(cx: XComplex) -> Dict[str, MorseValue]:
    ordered = sorted(cx.vertex_words)
    rank = {k: -(i + 1) for i, k in enumerate(ordered)}
    return {
        k: MorseValue(psi_like_value(w), rank[k]) for k, w in cx.vertex_words.items()
    }


def morse_value(vertex: str, cx: XComplex) -> MorseValue:
    return morse_values(cx)[vertex]


def verify_morse(cx: XComplex, values: Optional[Dict[str, MorseValue]] = None) -> bool:
    """Unique (h, f)-minimal vertex on every cell, integer h-gap across
    edges (so the gap constant 1 works), injective f."""
    vals = values if values is not None else morse_values(cx)
    fs = [v.f for v in vals.values()]
    if len(set(fs)) != len(fs):
        return False
    if any(not isinstance(v.h, int) for v in vals.values()):
        return False
    for e in cx.complex.cells_of_dim(1):
        a, b = sorted(cx.complex.vertices_of(e))
        dh = abs(vals[a].h - vals[b].h)
        if dh != 0 and dh < 1:
            return False
    for c in cx.complex.cells():
        if cx.complex.dims[c] == 0:
            continue
        keys = [vals[v].key() for v in cx.complex.vertices_of(c)]
        if keys.count(min(keys)) != 1:
            return False
    return True


def ascending_link(cx: XComplex, vertex: str) -> Complex:
    """Link of the vertex in its ascending star: one link cell per cell
    whose (h, f)-minimum sits at the vertex."""
    vals = morse_values(cx)
    if not verify_morse(cx, vals):
        raise ClusterError("not a Morse function")
    star = []
    for c in cx.complex.cells():
        if cx.complex.dims[c] == 0 or vertex not in cx.complex.vertices_of(c):
            continue
        vv = cx.complex.vertices_of(c)
        if min((vals[v].key() for v in vv)) == vals[vertex].key():
            star.append(c)
    star_set = set(star)
    dims = {c: cx.complex.dims[c] - 1 for c in star}
    facets = {
        c: frozenset(f for f in cx.complex.facets[c] if f in star_set) for c in star
    }
    return Complex(dims, facets)


def find_cone_vertex(
    pieces: Sequence[Tuple[GroupWord, Sequence[SpecialForm]]],
    tag: str = "G",
    depth: int = group.DEFAULT_DEPTH,
) -> Tuple[int, bool]:
    """Least m for which the extra parameter on the subscript 0^m 1
    yields buildable enlarged clusters that cone off the whole original
    link of the base coset; returns (m, True) once verified."""
    if not pieces:
        return (0, True)
    for base, _ in pieces:
        sf = group.rewrite_standard_form(base, depth=depth)
        if sf.tail or not group.pm_order_preserving(group.pm_of_word(sf.head)):
            raise ClusterError("cone search expects all pieces based at the trivial coset")
    subs = sorted({s for _, params in pieces for f in params for s in f.subscripts()})
    original = assemble(pieces, tag, depth)
    froot = group.identity(tag).to_string()
    orig_nbrs = original.complex.adjacent_vertices(froot)
    max_m = max((len(s) for s in subs), default=0) + 3
    for m in range(1, max_m + 1):
        a = "0" * m + "1"
        if not all(independent(a, s) for s in subs):
            continue
        apex_form = SpecialForm(((a, 1),))
        try:
            big = assemble(
                [(base, list(params) + [apex_form]) for base, params in pieces],
                tag,
                depth,
            )
        except ClusterError:
            continue
        apex = group.y_letter(a, 1, tag).to_string()
        edge_ids = {
            frozenset(big.complex.vertices_of(e)): e
            for e in big.complex.cells_of_dim(1)
        }
        e_apex = edge_ids.get(frozenset({froot, apex}))
        if e_apex is None:
            continue
        two_cells = big.complex.cells_of_dim(2)
        ok = True
        for w in orig_nbrs:
            e_w = edge_ids.get(frozenset({froot, w}))
            if e_w is None:
                ok = False
                break
            if not any(
                froot in big.complex.vertices_of(c)
                and e_w in big.complex.faces(c)
                and e_apex in big.complex.faces(c)
                for c in two_cells
            ):
                ok = False
                break
        if ok:
            return (m, True)
    raise ClusterError("no verified cone parameter found within the subscript bound")
