from itertools import chain, combinations, product

import pytest

from lmgroups.arrangements import (
    Arrangement,
    cell_counts,
    complex_to_json,
    enumerate_cells,
    face_of,
    restrict_arrangement,
    restrict_cell_key,
    skeleton_to_dot,
    subcluster,
    verify_convex_cells,
)


def all_diag_subsets(n):
    return chain.from_iterable(combinations(range(1, n), r) for r in range(n))


def test_square_with_diagonal_counts():
    cx = enumerate_cells(Arrangement(2, frozenset({1})))
    assert cx.counts() == [4, 5, 2]


def test_interval_and_plain_cubes():
    assert enumerate_cells(Arrangement(1, frozenset())).counts() == [2, 1]
    assert enumerate_cells(Arrangement(3, frozenset())).counts() == [8, 12, 6, 1]


def test_three_dim_double_diagonal_counts():
    cx = enumerate_cells(Arrangement(3, frozenset({1, 2})))
    assert cx.counts() == [8, 17, 14, 4]
    assert cx.complex.euler_characteristic() == 1


def brute_count_oracle(n, diagonals):
    """Independent satisfiability oracle: realize each candidate sign
    vector with explicit rational coordinates."""
    from fractions import Fraction

    diags = sorted(diagonals)
    count = {}
    for pos in product("01i", repeat=n):
        for rel in product("<=>", repeat=len(diags)):
            # union-find by brute transitive closure on equalities
            groups = {i: {i} for i in range(n)}
            for d, r in zip(diags, rel):
                if r == "=":
                    merged = groups[d - 1] | groups[d]
                    for i in merged:
                        groups[i] = merged
            ok = True
            # uniform positions per class
            for i in range(n):
                if any(pos[j] != pos[i] for j in groups[i]):
                    ok = False
            if not ok:
                continue
            # assign: 0, 1 or distinct interior values by class order
            reps = sorted({min(g) for g in groups.values()})
            vals = {}
            interior = [r for r in reps if pos[r] == "i"]
            for k, r in enumerate(interior):
                vals[r] = Fraction(k + 1, len(interior) + 1)
            for r in reps:
                if pos[r] != "i":
                    vals[r] = Fraction(int(pos[r]))
            coords = [vals[min(groups[i])] for i in range(n)]
            # check strict relations; interior classes may need reordering,
            # so search all orderings of interior class values
            import itertools

            feasible = False
            for perm in itertools.permutations(range(1, len(interior) + 1)):
                assign = dict(zip(interior, perm))
                cs = []
                for i in range(n):
                    r = min(groups[i])
                    cs.append(
                        Fraction(assign[r], len(interior) + 1)
                        if pos[r] == "i"
                        else Fraction(int(pos[r]))
                    )
                good = True
                for d, rl in zip(diags, rel):
                    a, b = cs[d - 1], cs[d]
                    if rl == "<" and not a < b:
                        good = False
                    if rl == "=" and a != b:
                        good = False
                    if rl == ">" and not a > b:
                        good = False
                if good:
                    feasible = True
                    break
            if not interior:
                feasible = True
                for d, rl in zip(diags, rel):
                    a, b = coords[d - 1], coords[d]
                    if rl == "<" and not a < b:
                        feasible = False
                    if rl == "=" and a != b:
                        feasible = False
                    if rl == ">" and not a > b:
                        feasible = False
            if feasible:
                dim = len({min(groups[i]) for i in range(n) if pos[i] == "i"})
                count[dim] = count.get(dim, 0) + 1
    return [count.get(d, 0) for d in range(max(count) + 1)]


def test_counts_match_brute_force_oracle():
    for n in (1, 2, 3):
        for D in all_diag_subsets(n):
            arr = Arrangement(n, frozenset(D))
            assert cell_counts(arr) == brute_count_oracle(n, D)


def test_euler_characteristic_all_small():
    for n in range(1, 6):
        for D in all_diag_subsets(n):
            cx = enumerate_cells(Arrangement(n, frozenset(D)))
            assert cx.complex.euler_characteristic() == 1
            assert len(cx.complex.cells_of_dim(0)) == 2 ** n


def test_face_of_examples():
    arr = Arrangement(2, frozenset({1}))
    cx = enumerate_cells(arr)
    v00 = cx.vertex_of_coords((0, 0))
    v10 = cx.vertex_of_coords((1, 0))
    diag = "ii|="
    assert face_of(v00, diag, arr)
    assert not face_of(v10, diag, arr)
    for c in cx.complex.cells():
        assert face_of(c, c, arr)


def test_face_of_partial_order_and_vertex_counts():
    arr = Arrangement(3, frozenset({1, 2}))
    cx = enumerate_cells(arr)
    cells = cx.complex.cells()
    for c in cells:
        d = cx.complex.dims[c]
        assert len(cx.complex.vertices_of(c)) >= d + 1
    # antisymmetry and transitivity on a sample
    import random

    rng = random.Random(0)
    sample = rng.sample(cells, 20)
    for a in sample:
        for b in sample:
            if face_of(a, b, arr) and face_of(b, a, arr):
                assert a == b
            for c in sample:
                if face_of(a, b, arr) and face_of(b, c, arr):
                    assert face_of(a, c, arr)


def test_subcluster_examples():
    sc, kind = subcluster(Arrangement(2, frozenset({1})), [("coord", 1, 0)])
    assert kind == "Facial" and sc.counts() == [2, 1]
    sc, kind = subcluster(Arrangement(2, frozenset({1})), [("diag", 1)])
    assert kind == "Diagonal" and sc.counts() == [2, 1]
    sc, kind = subcluster(Arrangement(3, frozenset({1, 2})), [("diag", 1), ("diag", 2)])
    assert kind == "Diagonal" and sc.counts() == [2, 1]
    with pytest.raises(ValueError):
        subcluster(Arrangement(3, frozenset({1})), [("diag", 2)])


def test_subcluster_pinned_diagonal_is_facial():
    # a diagonal forced onto a wall is a type-1 flat in disguise
    arr = Arrangement(3, frozenset({1}))
    sc, kind = subcluster(arr, [("diag", 1), ("coord", 1, 0)])
    assert kind == "Facial" and sc.counts() == [2, 1]
    # constraint order must not matter
    sc2, kind2 = subcluster(arr, [("coord", 1, 0), ("diag", 1)])
    assert kind2 == "Facial" and sc2.counts() == sc.counts()
    sc3, kind3 = subcluster(arr, [("coord", 2, 0), ("diag", 1)])
    assert kind3 == "Facial" and sc3.counts() == [2, 1]
    with pytest.raises(ValueError):
        subcluster(Arrangement(2, frozenset({1})), [("diag", 1), ("coord", 1, 0)])


def test_facial_subcluster_inheritance_cell_for_cell():
    for n in (2, 3, 4):
        for D in all_diag_subsets(n):
            arr = Arrangement(n, frozenset(D))
            cx = enumerate_cells(arr)
            for i in range(1, n + 1):
                flat = [("coord", i, 0)]
                sub_arr, survivors = restrict_arrangement(arr, flat)
                inherited = enumerate_cells(sub_arr)
                mapped = {
                    restrict_cell_key(k, arr, flat, survivors)
                    for k in cx.complex.cells()
                    if restrict_cell_key(k, arr, flat, survivors) is not None
                }
                assert mapped == set(inherited.complex.cells())


def test_verify_convex_cells():
    assert verify_convex_cells(enumerate_cells(Arrangement(2, frozenset({1}))))
    assert verify_convex_cells(enumerate_cells(Arrangement(3, frozenset())))
    assert verify_convex_cells(enumerate_cells(Arrangement(3, frozenset({1, 2}))))
    assert verify_convex_cells(enumerate_cells(Arrangement(4, frozenset({2}))))


def test_serialization():
    cx = enumerate_cells(Arrangement(2, frozenset({1})))
    doc = complex_to_json(cx)
    assert '"format": 1' in doc
    dot = skeleton_to_dot(cx)
    assert dot.startswith("graph") and dot.count("--") == 5


def test_exact_hull_feasibility():
    from fractions import Fraction

    from lmgroups.arrangements import _in_convex_hull

    sq = [(0, 0), (1, 0), (0, 1), (1, 1)]
    sq = [tuple(Fraction(v) for v in p) for p in sq]
    assert _in_convex_hull((Fraction(1, 2), Fraction(1, 2)), sq)
    assert _in_convex_hull((Fraction(0), Fraction(0)), sq)
    assert not _in_convex_hull((Fraction(3, 2), Fraction(1, 2)), sq)
    tri = [tuple(Fraction(v) for v in p) for p in [(0, 0), (1, 0), (0, 1)]]
    assert not _in_convex_hull((Fraction(2, 3), Fraction(2, 3)), tri)
    assert _in_convex_hull((Fraction(1, 3), Fraction(1, 3)), tri)
    # boundary counts as inside
    assert _in_convex_hull((Fraction(1, 2), Fraction(1, 2)), tri)


def test_boundary_of_diagonal_cluster_is_a_circle():
    from lmgroups.topology import is_collapsible, reduced_homology

    cx = enumerate_cells(Arrangement(2, frozenset({1})))
    boundary = [
        k
        for k in cx.complex.cells()
        if cx.complex.dims[k] <= 1 and not k.startswith("ii|")
    ]
    sub = cx.complex.subcomplex(boundary)
    assert len(sub.cells_of_dim(1)) == 4
    h = reduced_homology(sub)
    assert h[0] == (0, []) and h[1] == (1, [])
    assert not is_collapsible(sub)
