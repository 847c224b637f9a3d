"""Finite labelled symmetric precubical sets.

Cells are integers, one id space per dimension.  A set stores, per
n-cell, the 2n boundary cells, the n-1 coordinate swaps (total for
n >= 2), and a word of n labels.  The face/swap tables must satisfy the
boundary, swap and mixed exchange relations of the symmetric cube
shapes, and the label word must track them: dropping a face removes the
corresponding letter, swapping coordinates swaps adjacent letters.
``check_relations`` verifies all of this cellwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Mapping, Sequence

from .encoding import CubeEncoding, all_encodings, compose, face_encoding, sym_encoding
from .unionfind import UnionFind

log = logging.getLogger(__name__)


class PrecubeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class PrecubicalSet:
    cells: Mapping[int, tuple[int, ...]]
    faces: Mapping[tuple[int, int, int, int], int]  # (n, cell, i, alpha) -> (n-1)-cell
    syms: Mapping[tuple[int, int, int], int]  # (n, cell, i) -> n-cell
    labels: Mapping[tuple[int, int], tuple[str, ...]]  # (n, cell) -> word, n >= 1
    decoration: Mapping[int, str] = field(default_factory=dict)
    initial: int | None = None
    truncated: bool = False

    def __post_init__(self):
        cells = {n: tuple(sorted(ids)) for n, ids in self.cells.items() if ids}
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "faces", dict(self.faces))
        object.__setattr__(self, "syms", dict(self.syms))
        object.__setattr__(self, "labels", dict(self.labels))
        object.__setattr__(self, "decoration", dict(self.decoration))

    def dims(self) -> list[int]:
        return sorted(self.cells)

    @property
    def dim(self) -> int:
        return max(self.cells, default=-1)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.cells.get(0, ())

    def ncells(self, n: int) -> tuple[int, ...]:
        return self.cells.get(n, ())

    @property
    def size(self) -> int:
        return sum(len(ids) for ids in self.cells.values())

    def face(self, n: int, cell: int, i: int, alpha: int) -> int:
        return self.faces[(n, cell, i, alpha)]

    def sym(self, n: int, cell: int, i: int) -> int:
        return self.syms[(n, cell, i)]

    def label(self, n: int, cell: int) -> tuple[str, ...]:
        if n == 0:
            return ()
        return self.labels[(n, cell)]


EMPTY_PRECUBE = PrecubicalSet({}, {}, {}, {})


def make_precube(
    cells,
    faces,
    syms,
    labels,
    decoration=None,
    initial=None,
    truncated=False,
    check=True,
) -> PrecubicalSet:
    out = PrecubicalSet(
        {n: tuple(ids) for n, ids in cells.items()},
        dict(faces),
        dict(syms),
        dict(labels),
        dict(decoration or {}),
        initial,
        truncated,
    )
    if check:
        check_relations(out)
    return out


def check_relations(K: PrecubicalSet) -> None:
    """Verify the shape relations and label compatibility, cellwise."""
    dims = K.dims()
    for n in dims:
        if n > 0 and (n - 1) not in K.cells:
            raise PrecubeError(f"dimension {n} is populated but {n - 1} is empty")
    if K.initial is not None and K.initial not in K.vertices:
        raise PrecubeError("initial vertex does not exist")
    for v in K.decoration:
        if v not in K.vertices:
            raise PrecubeError(f"decorated vertex {v} does not exist")
    for n in dims:
        if n == 0:
            continue
        lower = set(K.ncells(n - 1))
        here = set(K.ncells(n))
        for c in K.ncells(n):
            word = K.labels.get((n, c))
            if word is None or len(word) != n:
                raise PrecubeError(f"cell ({n},{c}) has no well-formed label word")
            for i in range(1, n + 1):
                for alpha in (0, 1):
                    f = K.faces.get((n, c, i, alpha))
                    if f is None or f not in lower:
                        raise PrecubeError(f"cell ({n},{c}) misses face ({i},{alpha})")
                    expect = word[: i - 1] + word[i:]
                    if K.label(n - 1, f) != expect:
                        raise PrecubeError(
                            f"face ({i},{alpha}) of cell ({n},{c}) breaks the label rule"
                        )
            for i in range(1, n):
                s = K.syms.get((n, c, i))
                if s is None or s not in here:
                    raise PrecubeError(f"cell ({n},{c}) misses swap {i}")
                expect = list(word)
                expect[i - 1], expect[i] = expect[i], expect[i - 1]
                if K.label(n, s) != tuple(expect):
                    raise PrecubeError(f"swap {i} of cell ({n},{c}) breaks the label rule")
    # boundary exchange
    for n in dims:
        if n < 2:
            continue
        for c in K.ncells(n):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    for alpha in (0, 1):
                        for beta in (0, 1):
                            left = K.face(n - 1, K.face(n, c, j, beta), i, alpha)
                            right = K.face(n - 1, K.face(n, c, i, alpha), j - 1, beta)
                            if left != right:
                                raise PrecubeError(
                                    f"boundary relation fails at cell ({n},{c}), "
                                    f"i={i}, j={j}"
                                )
            # swap relations
            for i in range(1, n):
                if K.sym(n, K.sym(n, c, i), i) != c:
                    raise PrecubeError(f"swap {i} is not involutive at cell ({n},{c})")
                for j in range(1, n):
                    if i == j - 1:
                        lhs = K.sym(n, K.sym(n, K.sym(n, c, i), j), i)
                        rhs = K.sym(n, K.sym(n, K.sym(n, c, j), i), j)
                        if lhs != rhs:
                            raise PrecubeError(f"braid relation fails at cell ({n},{c})")
                    if j > i + 1:
                        if K.sym(n, K.sym(n, c, j), i) != K.sym(n, K.sym(n, c, i), j):
                            raise PrecubeError(
                                f"distant swaps do not commute at cell ({n},{c})"
                            )
            # mixed exchange
            for i in range(1, n):
                s = K.sym(n, c, i)
                for j in range(1, n + 1):
                    for alpha in (0, 1):
                        got = K.face(n, s, j, alpha)
                        if j < i:
                            want = K.sym(n - 1, K.face(n, c, j, alpha), i - 1)
                        elif j == i:
                            want = K.face(n, c, i + 1, alpha)
                        elif j == i + 1:
                            want = K.face(n, c, i, alpha)
                        else:
                            want = K.sym(n - 1, K.face(n, c, j, alpha), i)
                        if got != want:
                            raise PrecubeError(
                                f"mixed exchange fails at cell ({n},{c}), "
                                f"swap {i}, face ({j},{alpha})"
                            )


@dataclass(frozen=True)
class Shell:
    """A compatible boundary assignment for a would-be cube of dimension p."""

    p: int
    faces: Mapping[tuple[int, int], int]

    def key(self):
        return tuple(sorted(self.faces.items()))

    def word(self, K: PrecubicalSet) -> tuple[str, ...]:
        """The induced label word (determined by faces for p >= 2)."""
        if self.p < 2:
            raise PrecubeError("shells of dimension < 2 do not determine a word")
        rest = K.label(self.p - 1, self.faces[(1, 0)])
        first = K.label(self.p - 1, self.faces[(2, 0)])[0]
        return (first,) + rest


def shell_of(K: PrecubicalSet, n: int, cell: int) -> Shell:
    return Shell(n, {(i, a): K.face(n, cell, i, a) for i in range(1, n + 1) for a in (0, 1)})


def check_shell(K: PrecubicalSet, shell: Shell) -> None:
    """Raise unless the assigned faces glue like the boundary of a cube."""
    p = shell.p
    for i in range(1, p + 1):
        for alpha in (0, 1):
            if shell.faces.get((i, alpha)) not in K.ncells(p - 1):
                raise PrecubeError(f"shell misses face ({i},{alpha})")
    for i in range(1, p + 1):
        for j in range(i + 1, p + 1):
            for alpha in (0, 1):
                for beta in (0, 1):
                    left = K.face(p - 1, shell.faces[(j, beta)], i, alpha)
                    right = K.face(p - 1, shell.faces[(i, alpha)], j - 1, beta)
                    if left != right:
                        raise PrecubeError(
                            f"shell faces ({i},{alpha}) and ({j},{beta}) do not glue"
                        )


# ---------------------------------------------------------------------------
# standard cubes


def standard_cube(word: Sequence[str]) -> PrecubicalSet:
    """The labelled cube on ``word``: m-cells are the maps [m] -> [n]."""
    word = tuple(word)
    n = len(word)
    cells = {}
    faces = {}
    syms = {}
    labels = {}
    index: dict[int, dict[CubeEncoding, int]] = {}
    for m in range(n + 1):
        encs = all_encodings(m, n)
        cells[m] = tuple(range(len(encs)))
        index[m] = {enc: k for k, enc in enumerate(encs)}
        for k, enc in enumerate(encs):
            if m >= 1:
                labels[(m, k)] = tuple(word[enc.fbar_inv(i) - 1] for i in range(1, m + 1))
                for i in range(1, m + 1):
                    for alpha in (0, 1):
                        sub = compose(face_encoding(i, alpha, m), enc)
                        faces[(m, k, i, alpha)] = index[m - 1][sub]
            for i in range(1, m):
                swapped = compose(sym_encoding(i, m), enc)
                syms[(m, k, i)] = index[m][swapped]
    return make_precube(cells, faces, syms, labels, check=False)


def cube_cell_encoding(n: int, m: int, cell: int) -> CubeEncoding:
    """The encoding behind cell ``cell`` of dimension ``m`` in an n-cube."""
    return all_encodings(m, n)[cell]


def cube_cell_id(n: int, enc: CubeEncoding) -> int:
    return all_encodings(enc.m, n).index(enc)


def truncate(K: PrecubicalSet, n: int) -> PrecubicalSet:
    """Drop every cell above dimension ``n``; ids are preserved."""
    cells = {d: ids for d, ids in K.cells.items() if d <= n}
    faces = {k: v for k, v in K.faces.items() if k[0] <= n}
    syms = {k: v for k, v in K.syms.items() if k[0] <= n}
    labels = {k: v for k, v in K.labels.items() if k[0] <= n}
    return PrecubicalSet(cells, faces, syms, labels, K.decoration, K.initial, K.truncated)


def boundary(word: Sequence[str]) -> PrecubicalSet:
    """The cube on ``word`` with its top cells removed."""
    word = tuple(word)
    if not word:
        return EMPTY_PRECUBE
    return truncate(standard_cube(word), len(word) - 1)


# ---------------------------------------------------------------------------
# maps of precubical sets


@dataclass(frozen=True)
class PrecubeMap:
    src: PrecubicalSet
    dst: PrecubicalSet
    cell_map: Mapping[tuple[int, int], int]  # (dim, src cell) -> dst cell

    def __post_init__(self):
        object.__setattr__(self, "cell_map", dict(self.cell_map))

    def __call__(self, n: int, cell: int) -> int:
        return self.cell_map[(n, cell)]

    def key(self):
        return tuple(sorted(self.cell_map.items()))

    @property
    def is_identity(self) -> bool:
        return self.src == self.dst and all(c == d for (_, c), d in self.cell_map.items())


def check_precube_map(f: PrecubeMap) -> None:
    K, L = f.src, f.dst
    for n in K.dims():
        for c in K.ncells(n):
            if (n, c) not in f.cell_map:
                raise PrecubeError(f"map misses cell ({n},{c})")
            d = f.cell_map[(n, c)]
            if d not in L.ncells(n):
                raise PrecubeError(f"cell ({n},{c}) maps outside the target")
            if K.label(n, c) != L.label(n, d):
                raise PrecubeError(f"cell ({n},{c}) changes label")
            if n >= 1:
                for i in range(1, n + 1):
                    for alpha in (0, 1):
                        if f.cell_map[(n - 1, K.face(n, c, i, alpha))] != L.face(n, d, i, alpha):
                            raise PrecubeError(f"map breaks face ({i},{alpha}) at ({n},{c})")
            for i in range(1, n):
                if f.cell_map[(n, K.sym(n, c, i))] != L.sym(n, d, i):
                    raise PrecubeError(f"map breaks swap {i} at ({n},{c})")


def identity_precube_map(K: PrecubicalSet) -> PrecubeMap:
    return PrecubeMap(K, K, {(n, c): c for n in K.dims() for c in K.ncells(n)})


def compose_precube_maps(f: PrecubeMap, g: PrecubeMap) -> PrecubeMap:
    return PrecubeMap(f.src, g.dst, {k: g.cell_map[(k[0], v)] for k, v in f.cell_map.items()})


# ---------------------------------------------------------------------------
# colimits and quotients


def _merge_classes(tagged_cells, face_of, sym_of, label_of, decoration_of, uf):
    """Shared quotient construction over tagged cells.

    ``tagged_cells``: dict dim -> sorted list of tags.  The accessors
    take a tag and either return a tag (faces/syms), a word, or a
    decoration (None allowed).  Returns (PrecubicalSet, tag -> new id).
    """
    new_id: dict = {}
    cells = {}
    for n in sorted(tagged_cells):
        groups = {}
        for tag in tagged_cells[n]:
            root = uf.find((n, tag))
            groups.setdefault(root, []).append(tag)
        ordered = sorted(groups.values(), key=lambda g: g[0])
        cells[n] = tuple(range(len(ordered)))
        for k, members in enumerate(ordered):
            for tag in members:
                new_id[(n, tag)] = k
        tagged_cells[n] = ordered  # keep member lists for the second pass
    faces, syms, labels, decoration = {}, {}, {}, {}
    for n in sorted(tagged_cells):
        for k, members in enumerate(tagged_cells[n]):
            words = {label_of(n, tag) for tag in members}
            if len(words) != 1:
                raise PrecubeError("merged cells disagree on labels")
            if n >= 1:
                labels[(n, k)] = words.pop()
            if n == 0:
                names = sorted(
                    d for d in (decoration_of(tag) for tag in members) if d is not None
                )
                if names:
                    if len(set(names)) > 1:
                        log.debug("decoration merge picks %r among %r", names[0], names)
                    decoration[k] = names[0]
            for i in range(1, n + 1):
                for alpha in (0, 1):
                    vals = {new_id[(n - 1, face_of(n, tag, i, alpha))] for tag in members}
                    if len(vals) != 1:
                        raise PrecubeError("merged cells disagree on faces")
                    faces[(n, k, i, alpha)] = vals.pop()
            for i in range(1, n):
                vals = {new_id[(n, sym_of(n, tag, i))] for tag in members}
                if len(vals) != 1:
                    raise PrecubeError("merged cells disagree on swaps")
                syms[(n, k, i)] = vals.pop()
    out = PrecubicalSet(cells, faces, syms, labels, decoration)
    return out, new_id


def colimit_presheaf(
    objects: Sequence[PrecubicalSet], arrows: Sequence[tuple] = ()
) -> tuple[PrecubicalSet, list[PrecubeMap]]:
    """Dimensionwise colimit of a finite diagram.

    ``arrows`` are (src_index, dst_index, PrecubeMap) triples.  Cells are
    glued by the equivalence the arrows generate; faces, swaps, labels
    and decorations are induced (merged decorations keep the least name).
    """
    objects = list(objects)
    for si, ti, f in arrows:
        if f.src is not objects[si] and f.src != objects[si]:
            raise PrecubeError("arrow source does not match the diagram")
        if f.dst is not objects[ti] and f.dst != objects[ti]:
            raise PrecubeError("arrow target does not match the diagram")
        check_precube_map(f)

    tagged = {}
    uf = UnionFind()
    for oi, K in enumerate(objects):
        for n in K.dims():
            tagged.setdefault(n, [])
            for c in K.ncells(n):
                tagged[n].append((oi, c))
                uf.add((n, (oi, c)))
    for n in tagged:
        tagged[n].sort()
    for si, ti, f in arrows:
        for (n, c), d in f.cell_map.items():
            uf.union((n, (si, c)), (n, (ti, d)))

    def face_of(n, tag, i, alpha):
        oi, c = tag
        return (oi, objects[oi].face(n, c, i, alpha))

    def sym_of(n, tag, i):
        oi, c = tag
        return (oi, objects[oi].sym(n, c, i))

    def label_of(n, tag):
        oi, c = tag
        return objects[oi].label(n, c)

    def decoration_of(tag):
        oi, c = tag
        return objects[oi].decoration.get(c)

    out, new_id = _merge_classes(tagged, face_of, sym_of, label_of, decoration_of, uf)
    if any(K.truncated for K in objects):
        out = replace(out, truncated=True)
    cocones = [
        PrecubeMap(
            K, out, {(n, c): new_id[(n, (oi, c))] for n in K.dims() for c in K.ncells(n)}
        )
        for oi, K in enumerate(objects)
    ]
    return out, cocones


def _quotient(K: PrecubicalSet, uf: UnionFind) -> tuple[PrecubicalSet, PrecubeMap]:
    tagged = {n: list(K.ncells(n)) for n in K.dims()}
    out, new_id = _merge_classes(
        tagged,
        lambda n, c, i, a: K.face(n, c, i, a),
        lambda n, c, i: K.sym(n, c, i),
        lambda n, c: K.label(n, c),
        lambda c: K.decoration.get(c),
        uf,
    )
    initial = None if K.initial is None else new_id[(0, K.initial)]
    out = replace(out, initial=initial, truncated=K.truncated)
    qmap = PrecubeMap(K, out, {(n, c): new_id[(n, c)] for n in K.dims() for c in K.ncells(n)})
    return out, qmap


# ---------------------------------------------------------------------------
# unique fillers


def hda_check(K: PrecubicalSet) -> list[tuple[int, int, int]]:
    """All pairs of distinct cells (dim >= 2) with identical boundaries.

    An empty result means every shell has at most one filler.  Only the
    2p boundary cells are compared: for p >= 2 they determine the label
    word, so no separate label comparison is needed.
    """
    out = []
    for n in K.dims():
        if n < 2:
            continue
        groups: dict[tuple, list[int]] = {}
        for c in K.ncells(n):
            groups.setdefault(shell_of(K, n, c).key(), []).append(c)
        for key in sorted(groups):
            dup = groups[key]
            for x, y in combinations(sorted(dup), 2):
                out.append((n, x, y))
    return sorted(out)


def sh_reflect(K: PrecubicalSet) -> tuple[PrecubicalSet, PrecubeMap]:
    """Merge duplicate fillers until every shell has at most one.

    Merging respects the swap action (swapping both members of a merged
    pair yields another pair with equal boundaries), so the quotient is
    again a symmetric precubical set.  Terminates because each round
    strictly decreases the number of cells.
    """
    current = K
    total = identity_precube_map(K)
    while True:
        dups = hda_check(current)
        if not dups:
            return current, total
        uf = UnionFind((n, c) for n in current.dims() for c in current.ncells(n))
        queue = list(dups)
        while queue:
            n, x, y = queue.pop()
            if uf.same((n, x), (n, y)):
                continue
            uf.union((n, x), (n, y))
            for i in range(1, n):
                queue.append((n, current.sym(n, x, i), current.sym(n, y, i)))
        current, qmap = _quotient(current, uf)
        total = compose_precube_maps(total, qmap)


# ---------------------------------------------------------------------------
# morphism enumeration and isomorphism search


def hom_enumerate_precube(K: PrecubicalSet, L: PrecubicalSet) -> list[PrecubeMap]:
    """All label-preserving maps K -> L, in a deterministic order."""
    order = [(n, c) for n in K.dims() for c in K.ncells(n)]
    by_dim_label: dict[tuple[int, tuple], list[int]] = {}
    for n in L.dims():
        for d in L.ncells(n):
            by_dim_label.setdefault((n, L.label(n, d)), []).append(d)
    out: list[PrecubeMap] = []
    assign: dict[tuple[int, int], int] = {}

    def consistent(n, c, d) -> bool:
        for i in range(1, n + 1):
            for alpha in (0, 1):
                if assign[(n - 1, K.face(n, c, i, alpha))] != L.face(n, d, i, alpha):
                    return False
        for i in range(1, n):
            partner = (n, K.sym(n, c, i))
            if partner in assign and assign[partner] != L.sym(n, d, i):
                return False
        return True

    def rec(k: int):
        if k == len(order):
            out.append(PrecubeMap(K, L, dict(assign)))
            return
        n, c = order[k]
        for d in by_dim_label.get((n, K.label(n, c)), ()):
            if consistent(n, c, d):
                assign[(n, c)] = d
                rec(k + 1)
                del assign[(n, c)]

    rec(0)
    return out


def iso_check_precube(
    K: PrecubicalSet,
    L: PrecubicalSet,
    match_initial: bool = False,
    match_decoration: bool = False,
) -> PrecubeMap | None:
    """A dimensionwise bijective map K -> L commuting with everything."""
    if K.dims() != L.dims():
        return None
    for n in K.dims():
        if len(K.ncells(n)) != len(L.ncells(n)):
            return None
        if sorted(K.label(n, c) for c in K.ncells(n)) != sorted(
            L.label(n, d) for d in L.ncells(n)
        ):
            return None

    def vertex_sig(Z: PrecubicalSet):
        sig = {v: [] for v in Z.vertices}
        for e in Z.ncells(1):
            sig[Z.face(1, e, 1, 0)].append(("out", Z.label(1, e)))
            sig[Z.face(1, e, 1, 1)].append(("in", Z.label(1, e)))
        return {v: tuple(sorted(s)) for v, s in sig.items()}

    sig_k, sig_l = vertex_sig(K), vertex_sig(L)
    if sorted(sig_k.values()) != sorted(sig_l.values()):
        return None

    order = [(n, c) for n in K.dims() for c in K.ncells(n)]
    by_dim_label: dict[tuple[int, tuple], list[int]] = {}
    for n in L.dims():
        for d in L.ncells(n):
            by_dim_label.setdefault((n, L.label(n, d)), []).append(d)
    assign: dict[tuple[int, int], int] = {}
    used: dict[int, set[int]] = {n: set() for n in K.dims()}

    def vertex_ok(c, d) -> bool:
        if sig_k[c] != sig_l[d]:
            return False
        if match_initial and (c == K.initial) != (d == L.initial):
            return False
        if match_decoration and K.decoration.get(c) != L.decoration.get(d):
            return False
        return True

    def consistent(n, c, d) -> bool:
        if n == 0:
            return vertex_ok(c, d)
        for i in range(1, n + 1):
            for alpha in (0, 1):
                if assign[(n - 1, K.face(n, c, i, alpha))] != L.face(n, d, i, alpha):
                    return False
        for i in range(1, n):
            partner = (n, K.sym(n, c, i))
            if partner in assign and assign[partner] != L.sym(n, d, i):
                return False
        return True

    def rec(k: int) -> bool:
        if k == len(order):
            return True
        n, c = order[k]
        for d in by_dim_label.get((n, K.label(n, c)), ()):
            if d in used[n] or not consistent(n, c, d):
                continue
            assign[(n, c)] = d
            used[n].add(d)
            if rec(k + 1):
                return True
            del assign[(n, c)]
            used[n].discard(d)
        return False

    if rec(0):
        return PrecubeMap(K, L, dict(assign))
    return None
