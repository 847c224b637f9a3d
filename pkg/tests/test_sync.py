"""Fibered products, directed coskeleta, synchronized tensor products."""

import pytest

from corpus import ALPHA
from hdts import (
    PrecubeError,
    PrecubicalSet,
    check_relations,
    cosk_directed,
    cube,
    fibered_product,
    iso_check,
    iso_check_precube,
    non_twisted,
    realize,
    standard_cube,
    sync_edges,
    tensor_sync,
    truncate,
    validate,
)
from hdts.encoding import all_encodings, cube_vertices
from hdts.sync import _fibered


def cell_counts(K):
    return [len(K.ncells(n)) for n in K.dims()]


def skeleton(word):
    return truncate(standard_cube(word), 1)


def skeleton_vertex_iso(word):
    return {k: enc.apply(()) for k, enc in enumerate(all_encodings(0, len(word)))}


def point():
    return PrecubicalSet({0: (0,)}, {}, {}, {})


# ---------------------------------------------------------------------------
# fibered products


def test_fibered_square_frame_with_cobar_edge():
    F = fibered_product(skeleton(("a", "b")), skeleton(("abar",)), ALPHA)
    check_relations(F)
    assert len(F.vertices) == 8
    assert len(F.ncells(1)) == 14
    assert len(sync_edges(F, ALPHA)) == 2
    # oracle: count the three kinds of edges directly
    k_edges, l_edges = 4, 1
    k_verts, l_verts = 4, 2
    syncs = sum(
        1
        for lk in ("a", "a", "b", "b")
        if ALPHA.bar(lk) == "abar"
    )
    assert k_edges * l_verts + k_verts * l_edges + syncs == 14


def test_fibered_edge_with_point():
    F = fibered_product(skeleton(("a",)), point(), ALPHA)
    assert cell_counts(F) == [2, 1]


def test_fibered_no_synchronization():
    F = fibered_product(skeleton(("a",)), skeleton(("b",)), ALPHA)
    assert cell_counts(F) == [4, 4]
    assert sync_edges(F, ALPHA) == []


def test_fibered_rejects_higher_dimensional_input():
    with pytest.raises(PrecubeError):
        fibered_product(standard_cube(("a", "b")), point(), ALPHA)


# ---------------------------------------------------------------------------
# non-twisted tables


def test_non_twisted_identity_and_swap():
    table_id = {eps: eps for eps in cube_vertices(2)}
    assert non_twisted(2, 2, table_id)
    table_swap = {eps: (eps[1], eps[0]) for eps in cube_vertices(2)}
    assert non_twisted(2, 2, table_swap)


def test_non_twisted_requires_coverage():
    table = {eps: (eps[0], eps[0]) for eps in cube_vertices(2)}
    assert not non_twisted(2, 2, table)


def test_non_twisted_allows_repeated_projection_with_coverage():
    table = {eps: (eps[0], eps[1], eps[0]) for eps in cube_vertices(2)}
    assert non_twisted(2, 3, table)


def test_non_twisted_rejects_max_min():
    table = {eps: (max(eps), min(eps)) for eps in cube_vertices(2)}
    assert not non_twisted(2, 2, table)


# ---------------------------------------------------------------------------
# directed coskeleton


def test_cosk_recovers_the_square():
    out = cosk_directed(skeleton(("a", "b")), skeleton_vertex_iso(("a", "b")))
    check_relations(out)
    assert iso_check_precube(out, standard_cube(("a", "b"))) is not None


def test_cosk_recovers_the_three_cube():
    out = cosk_directed(skeleton(("a", "b", "c")), skeleton_vertex_iso(("a", "b", "c")))
    check_relations(out)
    assert iso_check_precube(out, standard_cube(("a", "b", "c"))) is not None


def test_cosk_of_synchronized_pair():
    fib = _fibered(skeleton(("a",)), skeleton(("abar",)), ALPHA)
    kbits = skeleton_vertex_iso(("a",))
    iso = {
        vid: kbits[kv] + kbits[lv] for (kv, lv), vid in fib.vertex_id.items()
    }
    out = cosk_directed(fib.precube, iso)
    check_relations(out)
    assert cell_counts(out) == [4, 5, 2]
    assert len(sync_edges(out, ALPHA)) == 1
    words = sorted(out.label(2, c) for c in out.ncells(2))
    assert words == [("a", "abar"), ("abar", "a")]


def test_cosk_single_vertex():
    out = cosk_directed(point(), {0: ()})
    assert cell_counts(out) == [1]


def test_cosk_dimension_bound():
    # output dimension never exceeds the corner cube's dimension
    for word in [("a",), ("a", "b")]:
        out = cosk_directed(skeleton(word), skeleton_vertex_iso(word))
        assert out.dim <= len(word)


def test_cosk_fillers_have_non_twisted_vertex_tables():
    from hdts.encoding import cube_vertices
    from hdts.sync import _cosk, _fibered

    fib = _fibered(skeleton(("a",)), skeleton(("abar",)), ALPHA)
    kbits = skeleton_vertex_iso(("a",))
    iso = {vid: kbits[kv] + kbits[lv] for (kv, lv), vid in fib.vertex_id.items()}
    result = _cosk(fib.precube, iso)
    for (n, _), (vkey, _) in result.contents.items():
        table = dict(zip(cube_vertices(n), vkey))
        assert non_twisted(n, 2, table)


def test_cosk_requires_bijective_vertex_table():
    with pytest.raises(PrecubeError):
        cosk_directed(skeleton(("a",)), {0: (0,), 1: (0,)})


# ---------------------------------------------------------------------------
# synchronized tensor product


def test_tensor_unit_on_points():
    for L in [standard_cube(("a",)), standard_cube(("a", "b")), skeleton(("a", "b"))]:
        out = tensor_sync(point(), L, ALPHA)
        check_relations(out)
        assert iso_check_precube(out, L) is not None
        out = tensor_sync(L, point(), ALPHA)
        assert iso_check_precube(out, L) is not None


def test_tensor_synchronizing_edges():
    out = tensor_sync(standard_cube(("a",)), standard_cube(("abar",)), ALPHA)
    check_relations(out)
    assert cell_counts(out) == [4, 5, 2]
    assert len(sync_edges(out, ALPHA)) == 1


def test_tensor_independent_edges_realizes_as_square():
    out = tensor_sync(standard_cube(("a",)), standard_cube(("b",)), ALPHA)
    check_relations(out)
    assert iso_check(realize(out).system, cube(("a", "b"))) is not None


@pytest.mark.parametrize(
    "wl,wr",
    [(("a",), ("b",)), (("a",), ("abar",)), (("a", "b"), ("abar",))],
)
def test_tensor_symmetric_up_to_realization_iso(wl, wr):
    left = tensor_sync(standard_cube(wl), standard_cube(wr), ALPHA)
    right = tensor_sync(standard_cube(wr), standard_cube(wl), ALPHA)
    assert iso_check(realize(left).system, realize(right).system) is not None


def test_tensor_factors_realize_honestly():
    # realization of the coskeleton of a fibered product of cube
    # skeletons is an honest transition system, for small dimensions
    for wm in [("a",), ("a", "b")]:
        for wn in [("abar",), ("b", "abar")]:
            fib = _fibered(skeleton(wm), skeleton(wn), ALPHA)
            kbits = skeleton_vertex_iso(wm)
            lbits = skeleton_vertex_iso(wn)
            iso = {
                vid: kbits[kv] + lbits[lv]
                for (kv, lv), vid in fib.vertex_id.items()
            }
            out = cosk_directed(fib.precube, iso)
            report = validate(realize(out).system)
            assert report.csa1 and report.uisa
