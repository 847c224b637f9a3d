"""JSON and DOT serialization.

Readers are strict: any violation of the documented schemas (unsorted
action multisets, dangling references, malformed words) is rejected
with a path-qualified message.  Writers sort everything, so identical
values produce byte-identical documents.
"""

from __future__ import annotations

import json

from .alphabet import Alphabet
from .core import Action, Transition, WeakHDTS
from .precube import PrecubicalSet, check_relations

DEFAULT_TAU = "tau"


class SchemaError(ValueError):
    pass


def _need(cond: bool, path: str, msg: str) -> None:
    if not cond:
        raise SchemaError(f"{path}: {msg}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# alphabets


def alphabet_to_json(cfg: Alphabet) -> dict:
    pairs = sorted({tuple(sorted((a, b))) for a, b in cfg.pairs})
    return {
        "labels": sorted(cfg.labels),
        "tau": cfg.tau,
        "involution": [list(p) for p in pairs],
    }


def alphabet_from_json(doc) -> Alphabet:
    _need(isinstance(doc, dict), "$", "alphabet must be an object")
    _need(isinstance(doc.get("labels"), list), "labels", "must be a list")
    _need(isinstance(doc.get("tau"), str), "tau", "must be a string")
    pairs = doc.get("involution", [])
    _need(isinstance(pairs, list), "involution", "must be a list of pairs")
    for k, p in enumerate(pairs):
        _need(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p),
            f"involution[{k}]",
            "must be a pair of labels",
        )
    return Alphabet(frozenset(doc["labels"]), doc["tau"], tuple(tuple(p) for p in pairs))


# ---------------------------------------------------------------------------
# transition systems


def hdts_to_json(X: WeakHDTS) -> dict:
    return {
        "states": sorted(X.states),
        "actions": [{"id": a.id, "label": a.label} for a in X.actions],
        "transitions": [
            {"src": t.src, "acts": list(t.acts), "tgt": t.tgt}
            for t in sorted(X.transitions)
        ],
    }


def hdts_from_json(doc) -> WeakHDTS:
    _need(isinstance(doc, dict), "$", "system must be an object")
    states = doc.get("states")
    _need(isinstance(states, list) and all(isinstance(s, int) for s in states),
          "states", "must be a list of integers")
    _need(len(set(states)) == len(states), "states", "duplicate state ids")
    actions = []
    seen = set()
    for k, a in enumerate(doc.get("actions", ())):
        path = f"actions[{k}]"
        _need(isinstance(a, dict), path, "must be an object")
        _need(isinstance(a.get("id"), int), f"{path}.id", "must be an integer")
        _need(isinstance(a.get("label"), str), f"{path}.label", "must be a string")
        _need(a["id"] not in seen, f"{path}.id", "duplicate action id")
        seen.add(a["id"])
        actions.append(Action(a["id"], a["label"]))
    state_set = set(states)
    transitions = []
    for k, t in enumerate(doc.get("transitions", ())):
        path = f"transitions[{k}]"
        _need(isinstance(t, dict), path, "must be an object")
        acts = t.get("acts")
        _need(isinstance(acts, list) and acts, f"{path}.acts", "must be a non-empty list")
        _need(all(isinstance(a, int) for a in acts), f"{path}.acts", "must hold integers")
        _need(acts == sorted(acts), f"{path}.acts", "must be sorted ascending")
        _need(all(a in seen for a in acts), f"{path}.acts", "unknown action id")
        for end in ("src", "tgt"):
            _need(isinstance(t.get(end), int), f"{path}.{end}", "must be an integer")
            _need(t[end] in state_set, f"{path}.{end}", "unknown state id")
        transitions.append(Transition(t["src"], tuple(acts), t["tgt"]))
    return WeakHDTS(frozenset(states), tuple(actions), frozenset(transitions))


# ---------------------------------------------------------------------------
# precubical sets


def precube_to_json(K: PrecubicalSet) -> dict:
    dims: dict[str, list] = {}
    for n in K.dims():
        rows = []
        for c in K.ncells(n):
            if n == 0:
                rows.append({"id": c})
            elif n == 1:
                rows.append(
                    {
                        "id": c,
                        "d10": K.face(1, c, 1, 0),
                        "d11": K.face(1, c, 1, 1),
                        "label": list(K.label(1, c)),
                    }
                )
            else:
                rows.append(
                    {
                        "id": c,
                        "faces": {
                            f"{i},{alpha}": K.face(n, c, i, alpha)
                            for i in range(1, n + 1)
                            for alpha in (0, 1)
                        },
                        "syms": {str(i): K.sym(n, c, i) for i in range(1, n)},
                        "label": list(K.label(n, c)),
                    }
                )
        dims[str(n)] = rows
    doc: dict = {"dims": dims}
    if K.initial is not None:
        doc["initial"] = K.initial
    if K.decoration:
        doc["decoration"] = {str(v): d for v, d in sorted(K.decoration.items())}
    return doc


def precube_from_json(doc) -> PrecubicalSet:
    _need(isinstance(doc, dict), "$", "precubical set must be an object")
    dims = doc.get("dims")
    _need(isinstance(dims, dict), "dims", "must be an object")
    cells: dict[int, list[int]] = {}
    faces, syms, labels = {}, {}, {}
    for key in sorted(dims, key=lambda s: int(s) if s.isdigit() else -1):
        _need(key.isdigit(), f"dims.{key}", "dimension keys must be integers")
        n = int(key)
        rows = dims[key]
        _need(isinstance(rows, list), f"dims.{key}", "must be a list of cells")
        ids = []
        for k, row in enumerate(rows):
            path = f"dims.{key}[{k}]"
            _need(isinstance(row, dict), path, "must be an object")
            _need(isinstance(row.get("id"), int), f"{path}.id", "must be an integer")
            c = row["id"]
            ids.append(c)
            if n == 1:
                for fld, (i, alpha) in (("d10", (1, 0)), ("d11", (1, 1))):
                    _need(isinstance(row.get(fld), int), f"{path}.{fld}", "must be an integer")
                    faces[(1, c, i, alpha)] = row[fld]
            elif n >= 2:
                fobj = row.get("faces")
                _need(isinstance(fobj, dict), f"{path}.faces", "must be an object")
                for fk, v in fobj.items():
                    parts = fk.split(",")
                    _need(
                        len(parts) == 2 and parts[0].isdigit() and parts[1] in ("0", "1"),
                        f"{path}.faces.{fk}",
                        "keys must look like 'i,alpha'",
                    )
                    _need(isinstance(v, int), f"{path}.faces.{fk}", "must be an integer")
                    faces[(n, c, int(parts[0]), int(parts[1]))] = v
                sobj = row.get("syms", {})
                _need(isinstance(sobj, dict), f"{path}.syms", "must be an object")
                for sk, v in sobj.items():
                    _need(sk.isdigit(), f"{path}.syms.{sk}", "keys must be integers")
                    _need(isinstance(v, int), f"{path}.syms.{sk}", "must be an integer")
                    syms[(n, c, int(sk))] = v
            if n >= 1:
                word = row.get("label")
                _need(
                    isinstance(word, list) and all(isinstance(x, str) for x in word),
                    f"{path}.label",
                    "must be a list of labels",
                )
                _need(len(word) == n, f"{path}.label", f"must have {n} letters")
                labels[(n, c)] = tuple(word)
        _need(len(set(ids)) == len(ids), f"dims.{key}", "duplicate cell ids")
        cells[n] = ids
    decoration = {}
    for vk, d in doc.get("decoration", {}).items():
        _need(vk.lstrip("-").isdigit(), f"decoration.{vk}", "keys must be vertex ids")
        _need(isinstance(d, str), f"decoration.{vk}", "must be a string")
        decoration[int(vk)] = d
    initial = doc.get("initial")
    if initial is not None:
        _need(isinstance(initial, int), "initial", "must be a vertex id")
    K = PrecubicalSet(
        {n: tuple(ids) for n, ids in cells.items()}, faces, syms, labels, decoration, initial
    )
    try:
        check_relations(K)
    except Exception as exc:
        raise SchemaError(f"dims: {exc}") from exc
    return K


def detect_kind(doc) -> str:
    if isinstance(doc, dict) and "dims" in doc:
        return "precube"
    if isinstance(doc, dict) and "states" in doc:
        return "hdts"
    raise SchemaError("$: neither a transition system nor a precubical set")


# ---------------------------------------------------------------------------
# DOT


def _quote(s) -> str:
    return '"%s"' % str(s).replace('"', '\\"')


def hdts_to_dot(X: WeakHDTS, tau: str = DEFAULT_TAU) -> str:
    labels = X.label_map()
    lines = ["digraph hdts {"]
    for s in sorted(X.states):
        lines.append(f"  s{s} [shape=circle, label={_quote(s)}];")
    for t in sorted(X.transitions):
        if t.arity != 1:
            continue
        lab = labels[t.acts[0]]
        style = ", style=dashed" if lab == tau else ""
        lines.append(f"  s{t.src} -> s{t.tgt} [label={_quote(lab)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def precube_to_dot(K: PrecubicalSet, tau: str = DEFAULT_TAU) -> str:
    lines = ["digraph precube {"]
    for v in K.vertices:
        name = K.decoration.get(v, str(v))
        shape = "doublecircle" if v == K.initial else "circle"
        lines.append(f"  v{v} [shape={shape}, label={_quote(name)}];")
    for e in K.ncells(1):
        lab = K.label(1, e)[0]
        style = ", style=dashed" if lab == tau else ""
        lines.append(
            f"  v{K.face(1, e, 1, 0)} -> v{K.face(1, e, 1, 1)} "
            f"[label={_quote(lab)}{style}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
