"""Realization of labelled symmetric precubical sets as transition systems.

The realization keeps the vertices as states, merges edges into actions
along squares (opposite edges of a square perform the same action),
emits one top transition per cell, and closes under the coherence rule.
It is a colimit construction: gluing cubes first and realizing after
gives the same system as realizing cubes first and gluing after.

Cube-shaped systems and cube-shaped precubical sets carry exactly the
same maps; ``realize_cube_map`` and ``unrealize_cube_map`` translate
back and forth.  ``cubify`` rebuilds a system out of every cube that
maps into it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    Action,
    HdtsMorphism,
    StructureError,
    Transition,
    WeakHDTS,
    _Index,
    check_morphism,
    coherence_closure,
    compose_morphisms,
    cube,
    cube_state_bits,
    cube_state_id,
    cube_vertices,
    transition,
    validate,
)
from .encoding import NEG, POS, CubeEncoding, face_encoding, sym_encoding
from .precube import PrecubeMap, PrecubicalSet, hda_check, make_precube
from .unionfind import UnionFind


@dataclass(frozen=True)
class ActionClassPartition:
    classes: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def class_of(self) -> dict[int, int]:
        return {e: k for k, members in enumerate(self.classes) for e in members}


def edge_action_classes(K: PrecubicalSet) -> ActionClassPartition:
    """Partition the edges by the relation "opposite sides of a square"."""
    uf = UnionFind(K.ncells(1))
    for z in K.ncells(2):
        for i in (1, 2):
            uf.union(K.face(2, z, i, 0), K.face(2, z, i, 1))
    classes = tuple(tuple(g) for g in uf.groups())
    labels = []
    for members in classes:
        words = {K.label(1, e) for e in members}
        if len(words) != 1:
            raise StructureError("edges of one action class carry different labels")
        labels.append(words.pop()[0])
    return ActionClassPartition(classes, tuple(labels))


def _corner(K: PrecubicalSet, n: int, c: int, alpha: int) -> int:
    for d in range(n, 0, -1):
        c = K.face(d, c, 1, alpha)
    return c


def _direction_edge(K: PrecubicalSet, n: int, c: int, i: int) -> int:
    """The base edge of ``c`` along direction ``i`` (faces taken at 0)."""
    d = n
    for j in range(n, 0, -1):
        if j == i:
            continue
        c = K.face(d, c, j, 0)
        d -= 1
    return c


@dataclass(frozen=True)
class Realization:
    system: WeakHDTS
    state_map: Mapping[int, int]  # vertex cell -> state (identity on ids)
    edge_class: Mapping[int, int]  # edge cell -> action id
    partition: ActionClassPartition
    generators: frozenset[Transition]

    @property
    def closure_added(self) -> int:
        return len(self.system.transitions) - len(self.generators)


def realize(K: PrecubicalSet) -> Realization:
    """The transition system of a labelled symmetric precubical set.

    States are the vertices, actions the edge classes, and for every
    cell of dimension n >= 1 there is one generating n-transition from
    its bottom corner to its top corner carrying its direction classes.
    The full transition set is the coherence closure of the generators;
    lower transitions of each cube come from its faces, which are cells
    themselves.
    """
    partition = edge_action_classes(K)
    edge_class = partition.class_of()
    actions = tuple(Action(k, lab) for k, lab in enumerate(partition.labels))
    generators = set()
    for n in K.dims():
        if n == 0:
            continue
        for c in K.ncells(n):
            acts = (edge_class[_direction_edge(K, n, c, i)] for i in range(1, n + 1))
            generators.add(
                transition(_corner(K, n, c, 0), acts, _corner(K, n, c, 1))
            )
    closed = coherence_closure(generators)
    system = WeakHDTS(frozenset(K.vertices), actions, closed)
    return Realization(
        system, {v: v for v in K.vertices}, edge_class, partition, frozenset(generators)
    )


def realize_map(f: PrecubeMap, rsrc: Realization | None = None, rdst: Realization | None = None) -> HdtsMorphism:
    """The system morphism induced by a map of precubical sets."""
    rsrc = rsrc or realize(f.src)
    rdst = rdst or realize(f.dst)
    smap = {v: f.cell_map[(0, v)] for v in f.src.vertices}
    amap: dict[int, int] = {}
    for e in f.src.ncells(1):
        k = rsrc.edge_class[e]
        k2 = rdst.edge_class[f.cell_map[(1, e)]]
        if amap.setdefault(k, k2) != k2:
            raise StructureError("edge classes are not respected by the map")
    out = HdtsMorphism(rsrc.system, rdst.system, smap, amap)
    check_morphism(out)
    return out


# ---------------------------------------------------------------------------
# cube-level dictionary


def realize_cube_map(
    enc: CubeEncoding, src_word: Sequence[str], dst_word: Sequence[str]
) -> HdtsMorphism:
    """The system morphism between cubes induced by a cube-category map."""
    src_word, dst_word = tuple(src_word), tuple(dst_word)
    if enc.m != len(src_word) or enc.n != len(dst_word):
        raise StructureError("encoding dimensions do not match the words")
    for i in range(1, enc.m + 1):
        j = enc.fbar_inv(i)
        if src_word[i - 1] != dst_word[j - 1]:
            raise StructureError(
                f"label mismatch: source letter {i} is {src_word[i - 1]!r}, "
                f"target reads {dst_word[j - 1]!r}"
            )
    smap = {
        cube_state_id(eps): cube_state_id(enc.apply(eps)) for eps in cube_vertices(enc.m)
    }
    amap = {i: enc.fbar_inv(i) for i in range(1, enc.m + 1)}
    return HdtsMorphism(cube(src_word), cube(dst_word), smap, amap)


def unrealize_cube_map(g: HdtsMorphism) -> CubeEncoding:
    """Recover the unique cube-category map inducing ``g``.

    ``g`` must be a morphism between cube systems; the projection part
    is read off the action map, the constant part off the image of the
    bottom corner."""
    src_word = tuple(a.label for a in g.src.actions)
    dst_word = tuple(a.label for a in g.dst.actions)
    m, n = len(src_word), len(dst_word)
    if g.src != cube(src_word) or g.dst != cube(dst_word):
        raise StructureError("not a morphism between cube systems")
    under = {i: g.action_map[i] for i in range(1, m + 1)}
    if len(set(under.values())) != m:
        raise StructureError("action map of a cube morphism must be one-to-one")
    bottom_bits = cube_state_bits(n, g.state_map[0])
    image = {v: k for k, v in under.items()}
    fhat = []
    for j in range(1, n + 1):
        if j in image:
            fhat.append(image[j])
        else:
            fhat.append(NEG if bottom_bits[j - 1] == 0 else POS)
    enc = CubeEncoding(m, n, tuple(fhat))
    if realize_cube_map(enc, src_word, dst_word) != g:
        raise StructureError("morphism is not induced by any cube-category map")
    return enc


# ---------------------------------------------------------------------------
# properties


def is_strong(K: PrecubicalSet) -> bool:
    """Does the realization have unique intermediate states?"""
    return validate(realize(K).system).uisa


def in_hda_hdts(K: PrecubicalSet) -> bool:
    """Unique fillers, and the realization is an honest transition system."""
    if hda_check(K):
        return False
    report = validate(realize(K).system)
    return report.csa1 and report.uisa


def used_actions(X: WeakHDTS) -> frozenset[int]:
    """Actions appearing in some one-step transition."""
    return frozenset(t.acts[0] for t in X.transitions if t.arity == 1)


# ---------------------------------------------------------------------------
# cubification


def cube_maps_into(n: int, X: WeakHDTS) -> list[tuple[tuple[str, ...], HdtsMorphism]]:
    """All morphisms from n-cubes into ``X``, with their label words.

    A map is pinned by an n-transition of ``X`` (the image of the top
    transition), an ordering of its multiset, and one intermediate state
    per inner vertex; only transitions leaving the bottom corner or
    entering the top corner constrain the choice, which suffices for
    coherence-closed systems."""
    if n == 0:
        point = cube(())
        return [((), HdtsMorphism(point, X, {0: s}, {})) for s in sorted(X.states)]
    idx = _Index(X.transitions)
    labels = X.label_map()
    verts = cube_vertices(n)
    bottom, top = verts[0], verts[-1]
    out = []
    for t in X.sorted_transitions():
        if t.arity != n:
            continue
        for ordering in sorted(set(itertools.permutations(t.acts))):
            word = tuple(labels[u] for u in ordering)
            amap = {i + 1: ordering[i] for i in range(n)}
            cand = {}
            feasible = True
            for eps in verts:
                if eps == bottom:
                    cand[eps] = [t.src]
                    continue
                if eps == top:
                    cand[eps] = [t.tgt]
                    continue
                first = tuple(sorted(ordering[k] for k in range(n) if eps[k] == 1))
                second = tuple(sorted(ordering[k] for k in range(n) if eps[k] == 0))
                cand[eps] = idx.intermediates(t.src, first, second, t.tgt)
                if not cand[eps]:
                    feasible = False
                    break
            if not feasible:
                continue
            for combo in itertools.product(*(cand[eps] for eps in verts)):
                smap = {cube_state_id(eps): s for eps, s in zip(verts, combo)}
                out.append((word, HdtsMorphism(cube(word), X, smap, amap)))
    return out


@dataclass(frozen=True)
class Cubification:
    complex: PrecubicalSet
    system: WeakHDTS
    comparison: HdtsMorphism
    realization: Realization


def cubify(X: WeakHDTS) -> Cubification:
    """Rebuild ``X`` from every cube mapping into it.

    The complex has one n-cell per cube morphism into ``X``; faces and
    swaps act by precomposition.  The comparison morphism back to ``X``
    is bijective on states; it can collapse actions that only ever occur
    in shared one-step transitions."""
    max_arity = max((t.arity for t in X.transitions), default=0)
    cells, faces, syms, labels = {}, {}, {}, {}
    index: dict[int, dict] = {}
    per_dim: dict[int, list] = {}
    for n in range(max_arity + 1):
        maps = sorted(cube_maps_into(n, X), key=lambda wm: (wm[0], wm[1].key()))
        per_dim[n] = maps
        index[n] = {(w, g.key()): k for k, (w, g) in enumerate(maps)}
        cells[n] = tuple(range(len(maps)))
        for k, (w, g) in enumerate(maps):
            if n >= 1:
                labels[(n, k)] = w
    for n in range(1, max_arity + 1):
        for k, (w, g) in enumerate(per_dim[n]):
            for i in range(1, n + 1):
                for alpha in (0, 1):
                    wf = w[: i - 1] + w[i:]
                    inc = realize_cube_map(face_encoding(i, alpha, n), wf, w)
                    h = compose_morphisms(inc, g)
                    faces[(n, k, i, alpha)] = index[n - 1][(wf, h.key())]
            for i in range(1, n):
                ws = list(w)
                ws[i - 1], ws[i] = ws[i], ws[i - 1]
                ws = tuple(ws)
                inc = realize_cube_map(sym_encoding(i, n), ws, w)
                h = compose_morphisms(inc, g)
                syms[(n, k, i)] = index[n][(ws, h.key())]
    complex_ = make_precube(cells, faces, syms, labels)
    r = realize(complex_)
    smap = {k: g.state_map[0] for k, (_, g) in enumerate(per_dim.get(0, []))}
    amap = {}
    for cls_id, members in enumerate(r.partition.classes):
        images = {per_dim[1][e][1].action_map[1] for e in members}
        if len(images) != 1:
            raise StructureError("edge class maps to several actions")
        amap[cls_id] = images.pop()
    p = HdtsMorphism(r.system, X, smap, amap)
    try:
        check_morphism(p)
    except StructureError as exc:
        raise StructureError(
            "comparison morphism is invalid; the input is probably not "
            "coherence-closed"
        ) from exc
    if len(set(smap.values())) != len(X.states):
        raise StructureError("comparison morphism is not bijective on states")
    return Cubification(complex_, r.system, p, r)
