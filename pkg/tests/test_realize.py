"""Realization, cube morphism dictionary, cubification."""

import pytest

from corpus import random_cube_gluing
from hdts import (
    HdtsMorphism,
    PrecubeMap,
    StructureError,
    boundary,
    colimit,
    colimit_presheaf,
    cube,
    cube_maps_into,
    cubify,
    disjoint_union,
    edge_action_classes,
    hda_check,
    hom_enumerate,
    hom_enumerate_precube,
    in_hda_hdts,
    is_strong,
    iso_check,
    lone_action,
    parallel_edges,
    realize,
    realize_cube_map,
    realize_map,
    sh_reflect,
    standard_cube,
    unrealize_cube_map,
    used_actions,
    validate,
)
from hdts.core import morphism_is_iso
from hdts.encoding import face_encoding, sym_encoding
from hdts.fixtures import double_square, glued_span, not_strong_complex
from hdts.precube import make_precube


def one_dim(edges, n_vertices):
    faces, labels = {}, {}
    for e, (lab, lo, hi) in enumerate(edges):
        faces[(1, e, 1, 0)] = lo
        faces[(1, e, 1, 1)] = hi
        labels[(1, e)] = (lab,)
    return make_precube(
        {0: tuple(range(n_vertices)), 1: tuple(range(len(edges)))}, faces, {}, labels
    )


# ---------------------------------------------------------------------------
# action classes


def test_square_merges_opposite_edges():
    assert len(edge_action_classes(standard_cube(("a", "b"))).classes) == 2


def test_one_dimensional_sets_keep_edges_apart():
    K = one_dim([("a", 0, 1), ("a", 0, 1), ("b", 1, 2)], 3)
    part = edge_action_classes(K)
    assert len(part.classes) == 3


def test_double_square_still_two_classes():
    assert len(edge_action_classes(double_square()).classes) == 2


# ---------------------------------------------------------------------------
# realization


@pytest.mark.parametrize(
    "word",
    [("a",), ("a", "b"), ("a", "a"), ("a", "b", "c"), ("a", "b", "a")],
)
def test_realize_standard_cubes_are_cube_systems(word):
    r = realize(standard_cube(word))
    assert iso_check(r.system, cube(word)) is not None
    assert r.closure_added == 0


def test_realize_double_square_collapses_invisibly():
    r = realize(double_square())
    assert iso_check(r.system, cube(("a", "b"))) is not None


def test_realize_not_strong_complex():
    r = realize(not_strong_complex())
    report = validate(r.system)
    assert report.csa1 and not report.uisa
    w = report.witnesses["uisa"]
    labels = r.system.label_map()
    src, acts, tgt = w["transition"]
    assert {labels[a] for a in acts} == {"u", "v"}
    assert w["intermediates"] == [2, 3]


def test_realize_empty_and_vertex_only_complexes():
    from hdts.precube import EMPTY_PRECUBE

    r = realize(EMPTY_PRECUBE)
    assert not r.system.states and not r.system.actions and not r.system.transitions
    dots = make_precube({0: (0, 1)}, {}, {}, {})
    r = realize(dots)
    assert r.system.states == {0, 1} and not r.system.transitions


def test_hdts_pushout_of_boundary_inclusions_collapses():
    # gluing two cube systems along the image of the boundary complex
    frame = realize(boundary(("a", "b")))
    full = realize(standard_cube(("a", "b")))
    incl_map = PrecubeMap(
        boundary(("a", "b")),
        standard_cube(("a", "b")),
        {(n, c): c for n in boundary(("a", "b")).dims() for c in boundary(("a", "b")).ncells(n)},
    )
    f = realize_map(incl_map, frame, full)
    out = colimit([full.system, full.system, frame.system], [(2, 0, f), (2, 1, f)])
    assert iso_check(out.system, cube(("a", "b"))) is not None


def test_realize_respects_pushouts():
    # glue two squares along an edge, realize both ways
    frame = standard_cube(("a",))
    sq1 = standard_cube(("a", "b"))
    sq2 = standard_cube(("a", "c"))
    f1 = hom_enumerate_precube(frame, sq1)[0]
    f2 = hom_enumerate_precube(frame, sq2)[0]
    glued, cocones = colimit_presheaf([sq1, sq2, frame], [(2, 0, f1), (2, 1, f2)])
    left = realize(glued).system

    r1, r2, rf = realize(sq1), realize(sq2), realize(frame)
    g1 = realize_map(f1, rf, r1)
    g2 = realize_map(f2, rf, r2)
    right = colimit([r1.system, r2.system, rf.system], [(2, 0, g1), (2, 1, g2)]).system
    assert iso_check(left, right) is not None


def test_realize_preserves_sampled_wedge_colimits():
    import random

    from hdts.precube import PrecubicalSet

    for seed in range(6):
        rng = random.Random(seed)
        words = [
            tuple(rng.choice(("a", "b")) for _ in range(rng.randint(1, 2)))
            for _ in range(2)
        ]
        cubes = [standard_cube(w) for w in words]
        point = PrecubicalSet({0: (0,)}, {}, {}, {})
        arrows = [
            (2, i, PrecubeMap(point, K, {(0, 0): rng.choice(K.vertices)}))
            for i, K in enumerate(cubes)
        ]
        glued, _ = colimit_presheaf(cubes + [point], arrows)
        left = realize(glued).system

        realized = [realize(K) for K in cubes] + [realize(point)]
        harrows = [
            (2, i, realize_map(f, realized[2], realized[i])) for (_, i, f) in arrows
        ]
        right = colimit([r.system for r in realized], harrows).system
        assert iso_check(left, right) is not None


def test_realize_map_faithful_on_sampled_wedges():
    from corpus import random_precube_wedge

    L = standard_cube(("a", "b"))
    rl = realize(L)
    for seed in range(4):
        K = random_precube_wedge(seed)
        rk = realize(K)
        maps = hom_enumerate_precube(K, L)
        images = [realize_map(f, rk, rl).key() for f in maps]
        assert len(set(images)) == len(maps)


def test_realize_commutes_with_filler_merging():
    for K in [double_square(), not_strong_complex(), standard_cube(("a", "b"))]:
        S, _ = sh_reflect(K)
        assert iso_check(realize(K).system, realize(S).system) is not None


def test_realizations_have_intermediate_states():
    for K in [
        standard_cube(("a", "b", "c")),
        double_square(),
        not_strong_complex(),
    ]:
        assert validate(realize(K).system).intermediate


def test_realize_map_faithful_into_unique_filler_targets():
    K = double_square()
    L = standard_cube(("a", "b"))
    maps = hom_enumerate_precube(K, L)
    rk, rl = realize(K), realize(L)
    images = [realize_map(f, rk, rl).key() for f in maps]
    assert len(set(images)) == len(maps)


def test_hom_bijection_for_strong_unique_filler_targets():
    pairs = [
        (standard_cube(("a",)), standard_cube(("a", "b"))),
        (standard_cube(("a", "b")), standard_cube(("a", "b"))),
        (boundary(("a", "b")), standard_cube(("a", "b"))),
        (double_square(), standard_cube(("a", "b"))),
    ]
    for K, L in pairs:
        assert is_strong(L) and not hda_check(L)
        n_pre = len(hom_enumerate_precube(K, L))
        n_sys = len(hom_enumerate(realize(K).system, realize(L).system))
        assert n_pre == n_sys


def test_hom_counts_differ_for_non_strong_target():
    N = not_strong_complex()
    K = standard_cube(("u", "v"))
    n_pre = len(hom_enumerate_precube(K, N))
    n_sys = len(hom_enumerate(realize(K).system, realize(N).system))
    assert n_pre == 1 and n_sys == 2


# ---------------------------------------------------------------------------
# cube morphism dictionary


def test_realize_cube_map_identity():
    from hdts.encoding import identity_encoding

    f = realize_cube_map(identity_encoding(2), ("a", "b"), ("a", "b"))
    assert f == HdtsMorphism(cube(("a", "b")), cube(("a", "b")), {s: s for s in range(4)}, {1: 1, 2: 2})


def test_realize_cube_map_bottom_edge():
    f = realize_cube_map(face_encoding(2, 0, 2), ("a",), ("a", "b"))
    assert f.state_map == {0: 0, 1: 2}
    assert f.action_map == {1: 1}


def test_realize_cube_map_swap():
    f = realize_cube_map(sym_encoding(1, 2), ("a", "b"), ("b", "a"))
    assert f.action_map == {1: 2, 2: 1}
    assert f.state_map == {0: 0, 1: 2, 2: 1, 3: 3}
    assert morphism_is_iso(f)


def test_realize_cube_map_rejects_label_mismatch():
    with pytest.raises(StructureError):
        realize_cube_map(face_encoding(2, 0, 2), ("b",), ("a", "b"))


def test_unrealize_identity():
    from hdts.encoding import identity_encoding

    g = realize_cube_map(identity_encoding(2), ("a", "b"), ("a", "b"))
    assert unrealize_cube_map(g) == identity_encoding(2)


def test_unrealize_round_trip_over_full_hom_sets():
    for g in hom_enumerate(cube(("a", "b")), cube(("a", "b", "c"))):
        enc = unrealize_cube_map(g)
        assert realize_cube_map(enc, ("a", "b"), ("a", "b", "c")) == g


def test_unrealize_swap():
    f = realize_cube_map(sym_encoding(1, 2), ("a", "b"), ("b", "a"))
    assert unrealize_cube_map(f) == sym_encoding(1, 2)


def test_unrealize_rejects_non_cube_inputs():
    D = parallel_edges("a")
    g = HdtsMorphism(D, D, {0: 0, 1: 1}, {1: 1, 2: 2})
    with pytest.raises(StructureError):
        unrealize_cube_map(g)


# ---------------------------------------------------------------------------
# strongness


def test_strongness_examples():
    assert is_strong(standard_cube(("a", "b")))
    assert not is_strong(not_strong_complex())
    assert is_strong(one_dim([("a", 0, 1), ("a", 0, 1)], 2))


def test_in_hda_hdts_examples():
    assert in_hda_hdts(standard_cube(("a", "b", "c")))
    assert not in_hda_hdts(not_strong_complex())
    # two parallel same-labelled edges realize like the two-arrow system
    assert not in_hda_hdts(one_dim([("a", 0, 1), ("a", 0, 1)], 2))
    assert not in_hda_hdts(double_square())  # duplicated filler


def test_used_actions():
    assert used_actions(cube(("a", "b"))) == {1, 2}
    assert used_actions(lone_action("x")) == frozenset()
    assert used_actions(parallel_edges("a")) == {1, 2}


# ---------------------------------------------------------------------------
# cube maps into a system


def test_cube_maps_into_edges_of_square():
    maps = cube_maps_into(1, cube(("a", "b")))
    assert len(maps) == 4


def test_cube_maps_into_square_itself():
    maps = cube_maps_into(2, cube(("a", "b")))
    assert len(maps) == 2
    assert sorted(w for w, _ in maps) == [("a", "b"), ("b", "a")]


def test_cube_maps_into_parallel_arrows():
    assert cube_maps_into(2, parallel_edges("a")) == []


def test_cube_maps_into_repeated_letter_cube():
    maps = cube_maps_into(2, cube(("a", "a")))
    assert len(maps) == 2  # the two orderings of the two distinct actions
    assert {w for w, _ in maps} == {("a", "a")}


# ---------------------------------------------------------------------------
# cubification


def test_cubify_realization_images_is_iso():
    for K in [
        standard_cube(("a", "b")),
        standard_cube(("a", "b", "c")),
        sh_reflect(double_square())[0],
    ]:
        X = realize(K).system
        got = cubify(X)
        assert morphism_is_iso(got.comparison)


def test_cubify_glued_span_splits_the_shared_action():
    X = glued_span()
    got = cubify(X)
    expected = disjoint_union(cube(("x",)), cube(("x",)))
    assert iso_check(got.system, expected) is not None
    # the comparison collapses the two actions back onto the shared one
    assert len(set(got.comparison.action_map.values())) == 1


def test_cubify_lone_action_is_empty():
    got = cubify(lone_action("x"))
    assert not got.system.states and not got.system.actions


def test_cubify_drops_unused_actions():
    X = disjoint_union(cube(("a",)), lone_action("x"))
    assert len(X.actions) == 2
    got = cubify(X)
    assert iso_check(got.system, cube(("a",))) is not None
    assert len(got.system.actions) == 1


def test_cubify_idempotent_on_random_gluings():
    for seed in range(10):
        X = random_cube_gluing(seed)
        assert validate(X).is_hdts
        once = cubify(X)
        twice = cubify(once.system)
        assert iso_check(twice.system, once.system) is not None


def test_cubify_state_bijection():
    for seed in range(5):
        X = random_cube_gluing(seed + 50)
        got = cubify(X)
        assert len(set(got.comparison.state_map.values())) == len(X.states)
