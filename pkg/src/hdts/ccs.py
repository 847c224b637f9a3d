"""Process terms and their labelled symmetric precubical set semantics.

Grammar (prefix binds tighter than +, + tighter than ||):

    P ::= nil | a.P | (nu a) P | P + P | P || P | rec(x) P | x

Identifiers are [a-z][a-zA-Z0-9_]*; ``a^-`` names the involution
partner of ``a``.  Recursion variables must be guarded by a prefix.

The semantics builds, by induction on the term, a decorated precubical
set with a distinguished initial vertex: a prefix grafts one edge in
front, a sum is a wedge at the initial vertices, restriction keeps the
cells whose label word avoids the restricted pair, parallel composition
is the synchronized tensor product, and recursion unfolds until two
consecutive stages are isomorphic (initial and decorations included) or
a depth bound is hit, in which case the result is flagged truncated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .alphabet import Alphabet
from .precube import (
    PrecubeError,
    PrecubicalSet,
    colimit_presheaf,
    iso_check_precube,
    PrecubeMap,
    make_precube,
)
from .sync import tensor_sync


class CcsSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# ---------------------------------------------------------------------------
# terms


class ProcessTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Nil(ProcessTerm):
    pass


@dataclass(frozen=True)
class Prefix(ProcessTerm):
    label: str
    body: ProcessTerm


@dataclass(frozen=True)
class Restrict(ProcessTerm):
    label: str
    body: ProcessTerm


@dataclass(frozen=True)
class Sum(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm


@dataclass(frozen=True)
class Par(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm


@dataclass(frozen=True)
class Rec(ProcessTerm):
    var: str
    body: ProcessTerm


@dataclass(frozen=True)
class Var(ProcessTerm):
    name: str


_PAR, _SUM, _PREFIX = 0, 1, 2


def term_str(t: ProcessTerm, level: int = _PAR) -> str:
    if isinstance(t, Nil):
        return "nil"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Prefix):
        body = term_str(t.body, _PREFIX)
        out, at = f"{t.label}.{body}", _PREFIX
    elif isinstance(t, Restrict):
        out, at = f"(nu {t.label}) {term_str(t.body, _PREFIX)}", _PREFIX
    elif isinstance(t, Rec):
        out, at = f"rec({t.var}) {term_str(t.body, _PREFIX)}", _PREFIX
    elif isinstance(t, Sum):
        out, at = f"{term_str(t.left, _SUM)} + {term_str(t.right, _SUM + 1)}", _SUM
    elif isinstance(t, Par):
        out, at = f"{term_str(t.left, _PAR)} || {term_str(t.right, _PAR + 1)}", _PAR
    else:
        raise TypeError(f"not a process term: {t!r}")
    return f"({out})" if at < level else out


def subst(t: ProcessTerm, var: str, repl: ProcessTerm) -> ProcessTerm:
    if isinstance(t, Var):
        return repl if t.name == var else t
    if isinstance(t, Nil):
        return t
    if isinstance(t, Prefix):
        return Prefix(t.label, subst(t.body, var, repl))
    if isinstance(t, Restrict):
        return Restrict(t.label, subst(t.body, var, repl))
    if isinstance(t, Sum):
        return Sum(subst(t.left, var, repl), subst(t.right, var, repl))
    if isinstance(t, Par):
        return Par(subst(t.left, var, repl), subst(t.right, var, repl))
    if isinstance(t, Rec):
        if t.var == var:
            return t
        return Rec(t.var, subst(t.body, var, repl))
    raise TypeError(f"not a process term: {t!r}")


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<ident>[a-z][a-zA-Z0-9_]*)
      | (?P<par>\|\|)
      | (?P<inv>\^-)
      | (?P<punct>[().+])
    )""",
    re.VERBOSE,
)

_KEYWORDS = {"nil", "rec", "nu"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise CcsSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        pos = m.end()
        for kind in ("ident", "par", "inv", "punct"):
            val = m.group(kind)
            if val is not None:
                tokens.append((kind if kind != "punct" else val, val, m.start(kind)))
                break
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, cfg: Alphabet):
        self.tokens = _tokenize(text)
        self.cfg = cfg
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise CcsSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def label(self) -> str:
        tok = self.expect("ident")
        name = tok[1]
        if self.peek()[0] == "inv":
            self.next()
            partner = self.cfg.bar(name) if name in self.cfg.labels else None
            if partner is None:
                raise CcsSyntaxError(f"label {name!r} has no involution partner", tok[2])
            name = partner
        if name not in self.cfg.labels:
            raise CcsSyntaxError(f"unknown label {name!r}", tok[2])
        return name

    def parse(self) -> ProcessTerm:
        t = self.parse_par()
        tok = self.peek()
        if tok[0] != "eof":
            raise CcsSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return t

    def parse_par(self) -> ProcessTerm:
        t = self.parse_sum()
        while self.peek()[0] == "par":
            self.next()
            t = Par(t, self.parse_sum())
        return t

    def parse_sum(self) -> ProcessTerm:
        t = self.parse_prefix()
        while self.peek()[0] == "+":
            self.next()
            t = Sum(t, self.parse_prefix())
        return t

    def parse_prefix(self) -> ProcessTerm:
        kind, val, pos = self.peek()
        if kind == "ident" and val == "rec":
            self.next()
            self.expect("(")
            var = self.expect("ident")
            if var[1] in _KEYWORDS:
                raise CcsSyntaxError(f"{var[1]!r} cannot name a variable", var[2])
            self.expect(")")
            body = self.parse_prefix()
            _check_guarded(body, var[1], pos)
            return Rec(var[1], body)
        if kind == "(" and self.tokens[self.k + 1][:2] == ("ident", "nu"):
            self.next()
            self.next()
            label = self.label()
            if label == self.cfg.tau:
                raise CcsSyntaxError("the silent label cannot be restricted", pos)
            self.expect(")")
            return Restrict(label, self.parse_prefix())
        if kind == "ident" and val not in _KEYWORDS:
            after = self.tokens[self.k + 1][0]
            if after in (".", "inv"):
                label = self.label()
                self.expect(".")
                return Prefix(label, self.parse_prefix())
        return self.parse_atom()

    def parse_atom(self) -> ProcessTerm:
        kind, val, pos = self.next()
        if kind == "ident" and val == "nil":
            return Nil()
        if kind == "ident" and val not in _KEYWORDS:
            return Var(val)
        if kind == "(":
            t = self.parse_par()
            self.expect(")")
            return t
        raise CcsSyntaxError(f"unexpected token {val!r}", pos)


def _check_guarded(t: ProcessTerm, var: str, pos: int, guarded: bool = False) -> None:
    if isinstance(t, Var):
        if t.name == var and not guarded:
            raise CcsSyntaxError(f"recursion variable {var!r} must be guarded", pos)
    elif isinstance(t, Prefix):
        _check_guarded(t.body, var, pos, True)
    elif isinstance(t, Restrict):
        _check_guarded(t.body, var, pos, guarded)
    elif isinstance(t, (Sum, Par)):
        _check_guarded(t.left, var, pos, guarded)
        _check_guarded(t.right, var, pos, guarded)
    elif isinstance(t, Rec):
        if t.var != var:
            _check_guarded(t.body, var, pos, guarded)


def _free_vars(t: ProcessTerm, bound=frozenset()) -> set[str]:
    if isinstance(t, Var):
        return set() if t.name in bound else {t.name}
    if isinstance(t, (Nil,)):
        return set()
    if isinstance(t, (Prefix, Restrict)):
        return _free_vars(t.body, bound)
    if isinstance(t, (Sum, Par)):
        return _free_vars(t.left, bound) | _free_vars(t.right, bound)
    if isinstance(t, Rec):
        return _free_vars(t.body, bound | {t.var})
    raise TypeError(f"not a process term: {t!r}")


def parse(text: str, cfg: Alphabet) -> ProcessTerm:
    """Parse a closed process term over the configured alphabet."""
    term = _Parser(text, cfg).parse()
    free = _free_vars(term)
    if free:
        raise CcsSyntaxError(f"unbound variable {sorted(free)[0]!r}", 0)
    return term


# ---------------------------------------------------------------------------
# semantics


def _point(decoration: str) -> PrecubicalSet:
    return PrecubicalSet({0: (0,)}, {}, {}, {}, {0: decoration}, initial=0)


def _graft_prefix(label: str, sub: PrecubicalSet, decoration: str) -> PrecubicalSet:
    """One fresh edge in front of ``sub``'s initial vertex.

    The new vertex and the new edge take id 0 in their dimensions; the
    old vertices and edges shift up by one, higher cells keep their ids.
    """
    cells = {
        0: (0,) + tuple(v + 1 for v in sub.vertices),
        1: (0,) + tuple(e + 1 for e in sub.ncells(1)),
    }
    for n in sub.dims():
        if n >= 2:
            cells[n] = sub.ncells(n)
    faces = {(1, 0, 1, 0): 0, (1, 0, 1, 1): sub.initial + 1}
    labels = {(1, 0): (label,)}
    syms = dict(sub.syms)
    for (n, c, i, alpha), v in sub.faces.items():
        faces[(n, c + 1 if n == 1 else c, i, alpha)] = v + 1 if n <= 2 else v
    for (n, c), w in sub.labels.items():
        labels[(n, c + 1 if n == 1 else c)] = w
    decorations = {0: decoration}
    for v, d in sub.decoration.items():
        decorations[v + 1] = d
    return make_precube(
        cells, faces, syms, labels, decorations, initial=0, truncated=sub.truncated
    )


def _wedge(left: PrecubicalSet, right: PrecubicalSet, decoration: str) -> PrecubicalSet:
    point = _point(decoration)
    arrows = [
        (2, 0, PrecubeMap(point, left, {(0, 0): left.initial})),
        (2, 1, PrecubeMap(point, right, {(0, 0): right.initial})),
    ]
    out, cocones = colimit_presheaf([left, right, point], arrows)
    initial = cocones[2].cell_map[(0, 0)]
    decorations = dict(out.decoration)
    decorations[initial] = decoration
    return replace(out, decoration=decorations, initial=initial)


def _filter_labels(sub: PrecubicalSet, banned: set[str]) -> PrecubicalSet:
    keep: dict[int, list[int]] = {}
    for n in sub.dims():
        keep[n] = [c for c in sub.ncells(n) if not (set(sub.label(n, c)) & banned)]
    renum = {
        (n, c): k for n in keep for k, c in enumerate(keep[n])
    }
    cells = {n: tuple(range(len(keep[n]))) for n in keep}
    faces = {
        (n, renum[(n, c)], i, a): renum[(n - 1, v)]
        for (n, c, i, a), v in sub.faces.items()
        if (n, c) in renum
    }
    syms = {
        (n, renum[(n, c)], i): renum[(n, v)]
        for (n, c, i), v in sub.syms.items()
        if (n, c) in renum
    }
    labels = {
        (n, renum[(n, c)]): w for (n, c), w in sub.labels.items() if (n, c) in renum
    }
    decoration = {renum[(0, v)]: d for v, d in sub.decoration.items()}
    initial = None if sub.initial is None else renum[(0, sub.initial)]
    return make_precube(
        cells, faces, syms, labels, decoration, initial=initial, truncated=sub.truncated
    )


def semantics(term: ProcessTerm, cfg: Alphabet, unfold_depth: int = 8) -> PrecubicalSet:
    """The decorated precubical set of a closed process term.

    Recursion is approximated by bounded unfolding; if the stages never
    stabilize within ``unfold_depth`` steps the last stage is returned
    with its ``truncated`` flag set.
    """
    if unfold_depth < 0:
        raise ValueError("unfold depth must be non-negative")
    if isinstance(term, Nil):
        return _point("nil")
    if isinstance(term, Prefix):
        cfg.check_label(term.label)
        sub = semantics(term.body, cfg, unfold_depth)
        return _graft_prefix(term.label, sub, term_str(term))
    if isinstance(term, Sum):
        left = semantics(term.left, cfg, unfold_depth)
        right = semantics(term.right, cfg, unfold_depth)
        return _wedge(left, right, term_str(term))
    if isinstance(term, Restrict):
        cfg.check_label(term.label)
        banned = {term.label}
        partner = cfg.bar(term.label)
        if partner is not None:
            banned.add(partner)
        sub = semantics(term.body, cfg, unfold_depth)
        out = _filter_labels(sub, banned)
        decorations = dict(out.decoration)
        decorations[out.initial] = term_str(term)
        return replace(out, decoration=decorations)
    if isinstance(term, Par):
        left = semantics(term.left, cfg, unfold_depth)
        right = semantics(term.right, cfg, unfold_depth)
        return tensor_sync(left, right, cfg)
    if isinstance(term, Rec):
        stage_term: ProcessTerm = Nil()
        stage = semantics(stage_term, cfg, unfold_depth)
        for _ in range(unfold_depth):
            next_term = subst(term.body, term.var, stage_term)
            nxt = semantics(next_term, cfg, unfold_depth)
            if iso_check_precube(stage, nxt, match_initial=True, match_decoration=True):
                out = nxt
                break
            stage_term, stage = next_term, nxt
        else:
            out = replace(stage, truncated=True)
        decorations = dict(out.decoration)
        decorations[out.initial] = term_str(term)
        return replace(out, decoration=decorations)
    if isinstance(term, Var):
        raise PrecubeError("cannot interpret an open term")
    raise TypeError(f"not a process term: {term!r}")


def compile_text(text: str, cfg: Alphabet, unfold_depth: int = 8) -> PrecubicalSet:
    return semantics(parse(text, cfg), cfg, unfold_depth)
