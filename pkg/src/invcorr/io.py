"""JSON file formats and the named workspace used by the command line.

A file holds one structure, or ``{"structures": {name: structure, ...}}``.
Wherever a semigroup or set is expected, a string may name another entry of
the same file or a built-in fixture (``"B2"``, ``"E2-as-set"``).  Generator
names ``I<n>``, ``E<n>``, ``Z<n>`` and ``B<n>`` are also understood.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import fixtures as fx
from .correspondence import InverseCorrespondence
from .errors import InvCorrError, ParseError, UnknownKind
from .inverse_set import PartialMoritaEquivalence, RightSet
from .rees import PartialMcAlisterFunction, mf5_holds
from .semigroup import (
    InverseSemigroup,
    MulTable,
    brandt,
    chain,
    cyclic_group,
    freeze,
    recognize_inverse,
    symmetric_inverse_monoid,
)

KINDS = ("semigroup", "set", "correspondence", "morita", "mcalister")


@dataclass
class Workspace:
    """Named structures; semigroups may be unrecognized raw tables until checked."""

    entries: dict[str, object] = field(default_factory=dict)
    kinds: dict[str, str] = field(default_factory=dict)

    def add(self, name: str, kind: str, obj) -> None:
        if name in self.entries:
            raise ParseError(f"duplicate structure name {name!r}")
        self.entries[name] = obj
        self.kinds[name] = kind

    def of_kind(self, kind: str) -> dict[str, object]:
        return {n: o for n, o in self.entries.items() if self.kinds[n] == kind}


# parsing ------------------------------------------------------------------------------

def infer_kind(obj: dict) -> str:
    if "kind" in obj:
        kind = obj["kind"]
        if kind == "biset":
            kind = "morita"
        if kind not in KINDS:
            raise UnknownKind(f"unknown kind {kind!r}; expected one of {KINDS}")
        return kind
    if "p" in obj:
        return "mcalister"
    if "left_pairing" in obj:
        return "morita"
    if "left_action" in obj:
        return "correspondence"
    if "action" in obj:
        return "set"
    if "table" in obj:
        return "semigroup"
    raise UnknownKind("cannot tell what kind of structure this is")


_TOKEN = re.compile(r'\s*(?:("(?:[^"\\]|\\.)*")|([{}\[\]:,])|([^\s{}\[\]:,"]+))')


def value_offsets(text: str) -> dict[tuple, int]:
    """Character offset of every value, keyed by its path of keys and indices.

    Only called on text that already parsed, so the scan can be lenient.
    """
    toks = [(m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3),
             m.group(1) or m.group(2) or m.group(3)) for m in _TOKEN.finditer(text) if m.group(0).strip()]
    out: dict[tuple, int] = {}
    pos = 0

    def value(path: tuple) -> None:
        nonlocal pos
        off, tok = toks[pos]
        out[path] = off
        pos += 1
        if tok == "{":
            while toks[pos][1] != "}":
                key = json.loads(toks[pos][1])
                pos += 2  # key and ':'
                value(path + (key,))
                if toks[pos][1] == ",":
                    pos += 1
            pos += 1
        elif tok == "[":
            i = 0
            while toks[pos][1] != "]":
                value(path + (i,))
                i += 1
                if toks[pos][1] == ",":
                    pos += 1
            pos += 1

    if toks:
        value(())
    return out


def _where(path: tuple) -> str:
    out = ""
    for k in path:
        out += f"[{k}]" if isinstance(k, int) else (f".{k}" if out else str(k))
    return out or "<top>"


_GENERATORS = {"I": symmetric_inverse_monoid, "E": chain, "Z": cyclic_group, "B": brandt}


class _Resolver:
    def __init__(self, raw: dict[str, dict], text: str, root: tuple):
        self.raw = raw
        self.text = text
        self.root = root
        self.ws = Workspace()
        self.busy: set[str] = set()
        self._offsets: dict[tuple, int] | None = None

    def fail(self, path: tuple, message: str):
        if self._offsets is None:
            self._offsets = value_offsets(self.text)
        probe = path
        while probe and probe not in self._offsets:
            probe = probe[:-1]
        off = self._offsets.get(probe, 0)
        line = self.text.count("\n", 0, off) + 1
        col = off - self.text.rfind("\n", 0, off)
        raise ParseError(f"line {line}, column {col} ({_where(path)}): {message}", (line, col))

    def matrix(self, obj: dict, key: str, rows: int, cols: int, bound: int, path: tuple):
        if key not in obj:
            self.fail(path, f"missing field {key!r}")
        m = obj[key]
        path = path + (key,)
        if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
            self.fail(path, "expected a list of rows")
        if len(m) != rows:
            self.fail(path, f"expected {rows} rows, found {len(m)}")
        for i, r in enumerate(m):
            if len(r) != cols:
                self.fail(path + (i,), f"expected {cols} entries, found {len(r)}")
            for j, x in enumerate(r):
                if not isinstance(x, int) or isinstance(x, bool):
                    self.fail(path + (i, j), "expected an integer")
                if not 0 <= x < bound:
                    self.fail(path + (i, j), f"entry {x} is out of range [0, {bound})")
        return m

    def count(self, obj: dict, key: str, path: tuple) -> int:
        x = obj.get(key)
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            self.fail(path + (key,) if key in obj else path, f"field {key!r} must be a non-negative integer")
        return x

    def named(self, name: str):
        if name in self.ws.entries:
            return self.ws.entries[name]
        if name in self.raw:
            if name in self.busy:
                raise ParseError(f"circular reference through {name!r}")
            self.busy.add(name)
            obj = self.raw[name]
            path = self.root + (name,) if self.root else ()
            if not isinstance(obj, dict):
                self.fail(path, "expected an object")
            try:
                kind = infer_kind(obj)
            except UnknownKind as e:
                raise UnknownKind(f"{name}: {e}") from e
            self.ws.add(name, kind, self.build(obj, kind, path))
            self.busy.discard(name)
            return self.ws.entries[name]
        if name in fx.semigroups():
            return fx.semigroups()[name]
        if name in fx.sets():
            return fx.sets()[name]
        m = re.fullmatch(r"([IEZB])(\d+)", name)
        if m:
            try:
                return _GENERATORS[m.group(1)](int(m.group(2)))
            except InvCorrError as e:
                raise ParseError(f"cannot build {name!r}: {e}") from e
        raise ParseError(f"unknown structure name {name!r}")

    def semigroup(self, obj: dict, key: str, path: tuple) -> InverseSemigroup:
        ref = obj.get(key)
        path = path + (key,)
        if isinstance(ref, str):
            S = self.named(ref)
        elif isinstance(ref, dict):
            S = self.build(ref, "semigroup", path)
        else:
            self.fail(path, f"field {key!r} must name a semigroup or hold one")
        if isinstance(S, MulTable):
            try:
                S = recognize_inverse(S, ref if isinstance(ref, str) else ref.get("name", _where(path)))
            except InvCorrError as e:
                self.fail(path, f"semigroup is not inverse ({e.code}: {e})")
        if not isinstance(S, InverseSemigroup):
            self.fail(path, f"{ref!r} is not a semigroup")
        return S

    def build(self, obj: dict, kind: str, path: tuple):
        if kind == "semigroup":
            n = self.count(obj, "order", path)
            return MulTable.of(self.matrix(obj, "table", n, n, n, path))
        T = self.semigroup(obj, "semigroup", path)
        if kind == "mcalister":
            k = self.count(obj, "index_size", path)
            p = freeze(self.matrix(obj, "p", k, k, T.order, path))
            # validity is reported by ``check``, not enforced at load time
            return PartialMcAlisterFunction(T, p, mf5_holds(T, p))
        m = self.count(obj, "size", path)
        action = self.matrix(obj, "action", m, T.order, m, path)
        pairing = self.matrix(obj, "pairing", m, m, T.order, path)
        U = RightSet(T, action, pairing)
        if kind == "set":
            return U
        S = self.semigroup(obj, "left_semigroup", path)
        left = self.matrix(obj, "left_action", m, S.order, m, path)
        if kind == "correspondence":
            return InverseCorrespondence(S, U, left)
        lp = self.matrix(obj, "left_pairing", m, m, S.order, path)
        return PartialMoritaEquivalence(S, T, left, action, lp, pairing)


def named_structure(name: str):
    """A built-in fixture or generator by name."""
    return _Resolver({}, "", ()).named(name)


def parse_text(text: str, default_name: str = "input") -> Workspace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}", (e.lineno, e.colno)) from e
    if not isinstance(data, dict):
        raise ParseError("line 1, column 1: the top level must be an object", (1, 1))
    if "structures" in data:
        raw, root = data["structures"], ("structures",)
        if not isinstance(raw, dict):
            raise ParseError("'structures' must map names to objects")
    else:
        raw, root = {data.get("name", default_name): data}, ()
    r = _Resolver(raw, text, root)
    for name in raw:
        r.named(name)
    return r.ws


def load(path: str | Path) -> Workspace:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {p}: {e.strerror}") from e
    return parse_text(text, p.stem)


# serialization ------------------------------------------------------------------------

def semigroup_json(S: InverseSemigroup | MulTable, name: str | None = None) -> dict:
    base = S.base if isinstance(S, InverseSemigroup) else S
    out = {"kind": "semigroup"}
    nm = name or getattr(S, "name", None)
    if nm:
        out["name"] = nm
    out.update(order=base.order, table=[list(r) for r in base.table])
    return out


def set_json(U: RightSet) -> dict:
    return {"kind": "set", "semigroup": semigroup_json(U.semigroup), "size": U.size,
            "action": [list(r) for r in U.action], "pairing": [list(r) for r in U.pairing]}


def correspondence_json(c: InverseCorrespondence) -> dict:
    out = set_json(c.right_set)
    out.update(kind="correspondence", left_semigroup=semigroup_json(c.left_semigroup),
               left_action=[list(r) for r in c.left_action])
    return out


def morita_json(M: PartialMoritaEquivalence) -> dict:
    out = set_json(M.right_set())
    out.update(kind="morita", left_semigroup=semigroup_json(M.left_semigroup),
               left_action=[list(r) for r in M.left_action], left_pairing=[list(r) for r in M.left_pairing])
    return out


def mcalister_json(pm: PartialMcAlisterFunction) -> dict:
    return {"kind": "mcalister", "semigroup": semigroup_json(pm.semigroup), "index_size": pm.index_size,
            "p": [list(r) for r in pm.p]}


def to_json(obj) -> dict:
    if isinstance(obj, (InverseSemigroup, MulTable)):
        return semigroup_json(obj)
    if isinstance(obj, PartialMoritaEquivalence):
        return morita_json(obj)
    if isinstance(obj, InverseCorrespondence):
        return correspondence_json(obj)
    if isinstance(obj, RightSet):
        return set_json(obj)
    if isinstance(obj, PartialMcAlisterFunction):
        return mcalister_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_json(obj), indent=1, sort_keys=False) + "\n"
