"""Shared generators and independent oracles for the test-suite.

The oracles here recompute expected values by brute force, separately
from the library's algorithms: the closure oracle rescans every rule
instance naively, the hom-count oracle enumerates every raw assignment,
and the random systems are closed by the library only as a final step
(they are not valid inputs otherwise).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from hdts import (
    Action,
    HdtsMorphism,
    Transition,
    WeakHDTS,
    coherence_closure,
    colimit,
    cube,
    transition,
)
from hdts.alphabet import DEFAULT_ALPHABET

ALPHA = DEFAULT_ALPHABET


def _is_submultiset(part, whole):
    cp, cw = Counter(part), Counter(whole)
    return all(cw[k] >= v for k, v in cp.items())


def _mdiff(whole, part):
    c = Counter(whole)
    c.subtract(Counter(part))
    return tuple(sorted(c.elements()))


def brute_closure(transitions):
    """Naive fixpoint: rescan every decomposition of every transition."""
    trans = set(transitions)
    changed = True
    while changed:
        changed = False
        for t in list(trans):
            if t.arity < 3:
                continue
            for t1 in [x for x in trans if x.src == t.src]:
                if not _is_submultiset(t1.acts, t.acts) or t1.arity >= t.arity:
                    continue
                if Transition(t1.tgt, _mdiff(t.acts, t1.acts), t.tgt) not in trans:
                    continue
                for t3 in [x for x in trans if x.src == t.src]:
                    if t3.arity <= t1.arity or t3.arity >= t.arity:
                        continue
                    if not _is_submultiset(t1.acts, t3.acts):
                        continue
                    if not _is_submultiset(t3.acts, t.acts):
                        continue
                    if Transition(t3.tgt, _mdiff(t.acts, t3.acts), t.tgt) not in trans:
                        continue
                    mid = Transition(t1.tgt, _mdiff(t3.acts, t1.acts), t3.tgt)
                    if mid not in trans:
                        trans.add(mid)
                        changed = True
    return frozenset(trans)


def brute_hom_count(src: WeakHDTS, dst: WeakHDTS) -> int:
    """Count morphisms by enumerating every raw state/action assignment."""
    src_states = sorted(src.states)
    src_actions = sorted(src.action_ids)
    dst_states = sorted(dst.states)
    dst_actions = sorted(dst.action_ids)
    src_lab, dst_lab = src.label_map(), dst.label_map()
    count = 0
    for svals in itertools.product(dst_states, repeat=len(src_states)):
        smap = dict(zip(src_states, svals))
        for avals in itertools.product(dst_actions, repeat=len(src_actions)):
            amap = dict(zip(src_actions, avals))
            if any(src_lab[a] != dst_lab[amap[a]] for a in src_actions):
                continue
            ok = True
            for t in src.transitions:
                img = transition(smap[t.src], (amap[a] for a in t.acts), smap[t.tgt])
                if img not in dst.transitions:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def random_weak_hdts(seed: int, max_states: int = 6, max_arity: int = 3) -> WeakHDTS:
    """A random coherence-closed system over the labels a, b."""
    rng = random.Random(seed)
    n_states = rng.randint(1, max_states)
    states = frozenset(range(n_states))
    n_actions = rng.randint(1, 4)
    actions = tuple(Action(i, rng.choice(("a", "b"))) for i in range(n_actions))
    ids = [a.id for a in actions]
    trans = set()
    for _ in range(rng.randint(0, 8)):
        trans.add(
            transition(rng.randrange(n_states), [rng.choice(ids)], rng.randrange(n_states))
        )
    for _ in range(rng.randint(0, 4)):
        arity = rng.randint(2, max_arity)
        trans.add(
            transition(
                rng.randrange(n_states),
                [rng.choice(ids) for _ in range(arity)],
                rng.randrange(n_states),
            )
        )
    return WeakHDTS(states, actions, coherence_closure(trans))


def random_cube_gluing(seed: int) -> WeakHDTS:
    """A wedge of small cubes: always an honest system with <= 6 states.

    One cube of dimension <= 2 plus up to two extra edges, all glued at
    one shared vertex: at most 4 + 2 + 2 - 2 = 6 states.
    """
    rng = random.Random(seed)
    words = [tuple(rng.choice(("a", "b")) for _ in range(rng.randint(1, 2)))]
    for _ in range(rng.randint(0, 2)):
        words.append((rng.choice(("a", "b")),))
    objects = [cube(w) for w in words]
    point = cube(())
    arrows = []
    for i, ob in enumerate(objects):
        anchor = rng.choice(sorted(ob.states))
        arrows.append((len(objects), i, HdtsMorphism(point, ob, {0: anchor}, {})))
    system = colimit(objects + [point], arrows).system
    assert len(system.states) <= 6
    return system


def random_mixed_corpus(count: int = 50):
    """Half random closed systems, half cube gluings (which satisfy UISA)."""
    out = []
    for seed in range(count):
        if seed % 2 == 0:
            out.append(random_weak_hdts(seed))
        else:
            out.append(random_cube_gluing(seed))
    return out


def random_precube_wedge(seed: int):
    """A wedge of standard cubes glued at one shared vertex."""
    from hdts import PrecubeMap, PrecubicalSet, colimit_presheaf, standard_cube

    rng = random.Random(seed)
    words = [
        tuple(rng.choice(("a", "b")) for _ in range(rng.randint(1, 2)))
        for _ in range(rng.randint(1, 3))
    ]
    cubes = [standard_cube(w) for w in words]
    point = PrecubicalSet({0: (0,)}, {}, {}, {})
    arrows = []
    for i, K in enumerate(cubes):
        anchor = rng.choice(K.vertices)
        arrows.append((len(cubes), i, PrecubeMap(point, K, {(0, 0): anchor})))
    out, _ = colimit_presheaf(cubes + [point], arrows)
    return out


#: Process terms exercising sums, nested parallels, restriction and
#: bounded recursion; all are expected to realize to honest systems.
CCS_CORPUS = [
    "a.nil",
    "a.b.nil",
    "tau.a.nil",
    "a.nil + b.nil",
    "a.(b.nil + c.nil)",
    "a.nil || b.nil",
    "a.nil || abar.nil",
    "(nu a)(a.nil || abar.nil)",
    "a.b.nil || abar.nil",
    "(a.nil + b.nil) || abar.nil",
    "a.nil || (b.nil || bbar.nil)",
    "(a.nil || abar.nil) || b.nil",
    "(a.nil || abar.nil) || (b.nil || bbar.nil)",
    "(nu b)(a.b.nil || bbar.c.nil)",
    "rec(x) a.x",
    "rec(x) a.nil + b.nil",
]
