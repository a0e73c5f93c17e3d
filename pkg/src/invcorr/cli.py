"""Command line: ``invcorr {check,compute,verify,iso}``.

Exit status: 0 pass, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import fixtures as fx
from . import io
from .adjointable import K_semigroup, L_semigroup
from .bicategory import check_morita, opposite
from .budget import resolve_budget, track_usage
from .correspondence import (
    InverseCorrespondence,
    check_correspondence,
    from_hom,
    identity_correspondence,
    is_non_degenerate,
    tensor,
)
from .errors import InternalInconsistency, InvCorrError, NotInverse, ParseError, SizeLimit, UnknownKind
from .inverse_set import (
    PartialMoritaEquivalence,
    RightSet,
    check_partial_morita,
    check_right_inverse,
    check_right_regular,
    direct_sum,
    enlargement_set,
    find_set_isomorphism,
    is_right_full,
    partial_bijection_biset,
    presheaf_set,
    semigroup_as_right_set,
)
from .multiplier import multiplier
from .rees import PartialMcAlisterFunction, check_mcalister, inverse_rees, inverse_set_from_p, mcalister_report
from .semigroup import (
    InverseSemigroup,
    MulTable,
    SemigroupHom,
    associativity_failures,
    find_isomorphism,
    recognize_inverse,
    symmetric_inverse_monoid,
)
from .theorems import SCOPES, Pool, builtin_pool, summarize, verify

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


# references ---------------------------------------------------------------------------

def _builtin(name: str):
    for family in (fx.semigroups, fx.sets, fx.morita_fixtures, fx.mcalister_functions, fx.correspondences):
        table = family()
        if name in table:
            return table[name]
    return None


def resolve(ref: str) -> tuple[str, object]:
    """A file path (optionally ``path:name``), a built-in fixture name or a generator name."""
    path, _, entry = ref.partition(":") if not Path(ref).exists() else (ref, "", "")
    if Path(path).is_file():
        ws = io.load(path)
        if entry:
            if entry not in ws.entries:
                raise ParseError(f"{path} has no structure named {entry!r}")
            return entry, ws.entries[entry]
        if len(ws.entries) != 1:
            raise ParseError(f"{path} holds {len(ws.entries)} structures; pick one with {path}:NAME")
        return next(iter(ws.entries.items()))
    obj = _builtin(ref)
    return ref, obj if obj is not None else io.named_structure(ref)


def as_semigroup(obj, name: str = "S") -> InverseSemigroup:
    if isinstance(obj, MulTable):
        return recognize_inverse(obj, name)
    if isinstance(obj, InverseSemigroup):
        return obj
    raise ParseError(f"{name} is not a semigroup")


def as_set(obj, name: str = "U") -> RightSet:
    if isinstance(obj, RightSet):
        return obj
    if isinstance(obj, (InverseSemigroup, MulTable)):
        return semigroup_as_right_set(as_semigroup(obj, name))
    raise ParseError(f"{name} is not a right inverse set")


def as_correspondence(obj, name: str = "C") -> InverseCorrespondence:
    if isinstance(obj, InverseCorrespondence):
        return obj
    if isinstance(obj, PartialMoritaEquivalence):
        return obj.correspondence()
    if isinstance(obj, (InverseSemigroup, MulTable)):
        return identity_correspondence(as_semigroup(obj, name))
    raise ParseError(f"{name} is not a correspondence")


def _expect(obj, cls, name: str):
    if not isinstance(obj, cls):
        raise ParseError(f"{name} is not a {cls.__name__}")
    return obj


def _int_list(text: str, what: str) -> list[int]:
    try:
        data = json.loads(text if text.strip().startswith("[") else f"[{text}]")
    except json.JSONDecodeError as e:
        raise ParseError(f"{what}: {e.msg} at column {e.colno}") from e
    if not isinstance(data, list) or any(not isinstance(x, int) for x in data):
        raise ParseError(f"{what}: expected a list of integers")
    return data


# check --------------------------------------------------------------------------------

def _violations(rep) -> list[dict]:
    return [{"axiom": v.axiom, "witness": list(v.witness)} for v in rep.violations]


def check_entry(name: str, kind: str, obj) -> dict:
    res: dict = {"name": name, "kind": kind}
    viol: list[dict] = []
    if kind == "semigroup":
        bad = list(associativity_failures(obj))
        viol += [{"axiom": "NOT_ASSOCIATIVE", "witness": list(w)} for w in bad]
        if not bad:
            try:
                S = recognize_inverse(obj, name)
                res.update(order=S.order, inverse=list(S.inv), idempotents=list(S.idempotents))
            except NotInverse as e:
                viol.append({"axiom": e.reason, "witness": list(e.witness or ())})
    elif kind == "set":
        rep = check_right_regular(obj)
        viol += _violations(rep)
        if rep.ok:
            viol += _violations(check_right_inverse(obj))
            res["right_full"] = is_right_full(obj)
    elif kind == "correspondence":
        rep = check_correspondence(obj)
        viol += _violations(rep)
        res["non_degenerate"] = is_non_degenerate(obj)
    elif kind == "morita":
        rep = check_partial_morita(obj)
        viol += _violations(rep)
        res["morita"] = check_morita(obj).verdict
    elif kind == "mcalister":
        viol += _violations(mcalister_report(obj.semigroup, obj.p))
        res["mf5"] = obj.is_full_MF
    res["verdict"] = "pass" if not viol else "fail"
    res["violations"] = viol
    return res


def cmd_check(args) -> dict:
    ws = io.load(args.path)
    results = []
    for name, obj in ws.entries.items():
        kind = ws.kinds[name]
        if args.kind and kind != args.kind:
            raise UnknownKind(f"{name} is a {kind}, not a {args.kind}")
        results.append(check_entry(name, kind, obj))
    ok = all(r["verdict"] == "pass" for r in results)
    return {"results": results, "verdict": "pass" if ok else "fail"}


# compute ------------------------------------------------------------------------------

CONSTRUCTIONS = ("L", "K", "tensor", "multiplier", "opposite", "rees-IM", "rees-Up", "from-hom",
                 "enlargement", "presheaf", "direct-sum", "I_n", "partial-bijection-biset")
_ARITY = {"L": 1, "K": 1, "tensor": 2, "multiplier": 1, "opposite": 1, "rees-IM": 1, "rees-Up": 1,
          "from-hom": 3, "enlargement": 2, "presheaf": 3, "direct-sum": 2, "I_n": 1,
          "partial-bijection-biset": 2}
_USAGE = {"L": "SET", "K": "SET", "tensor": "CORR CORR", "multiplier": "SEMIGROUP", "opposite": "MORITA",
          "rees-IM": "MCALISTER", "rees-Up": "MCALISTER", "from-hom": "SOURCE TARGET MAP",
          "enlargement": "SEMIGROUP MEMBERS", "presheaf": "SEMILATTICE PARTS RESTRICTIONS",
          "direct-sum": "SET SET", "I_n": "N", "partial-bijection-biset": "NX NY"}


def compute(construction: str, inputs: list[str], budget: int | None) -> tuple[object, dict]:
    """Returns (result structure, extra report fields)."""
    if len(inputs) != _ARITY[construction]:
        raise ParseError(f"{construction} expects {_USAGE[construction]}")
    info: dict = {}
    if construction in ("L", "K"):
        name, obj = resolve(inputs[0])
        U = as_set(obj, name)
        M = L_semigroup(U, budget) if construction == "L" else K_semigroup(U, budget)
        info["maps"] = [list(m.fwd) for m in M.maps]
        return M.semigroup, info
    if construction == "tensor":
        (n1, a), (n2, b) = resolve(inputs[0]), resolve(inputs[1])
        W = tensor(as_correspondence(a, n1), as_correspondence(b, n2))
        info["classes"] = [list(r) for r in W.representatives]
        return W, info
    if construction == "multiplier":
        name, obj = resolve(inputs[0])
        M = multiplier(as_semigroup(obj, name), budget)
        info["embedding"] = list(M.embedding)
        return M.semigroup, info
    if construction == "opposite":
        name, obj = resolve(inputs[0])
        return opposite(_expect(obj, PartialMoritaEquivalence, name)), info
    if construction in ("rees-IM", "rees-Up"):
        name, obj = resolve(inputs[0])
        pm = _expect(obj, PartialMcAlisterFunction, name)
        pm = check_mcalister(pm.semigroup, pm.p)
        if construction == "rees-IM":
            im = inverse_rees(pm)
            info["triples"] = [list(t) for t in im.semigroup.labels]
            return im.semigroup, info
        rs = inverse_set_from_p(pm)
        info["pairs"] = [list(t) for t in rs.right_set.labels]
        return rs.morita, info
    if construction == "from-hom":
        (ns, S), (nt, T) = resolve(inputs[0]), resolve(inputs[1])
        h = SemigroupHom(as_semigroup(S, ns), as_semigroup(T, nt), _int_list(inputs[2], "MAP"))
        return from_hom(h), info
    if construction == "enlargement":
        name, obj = resolve(inputs[0])
        return enlargement_set(as_semigroup(obj, name), _int_list(inputs[1], "MEMBERS")), info
    if construction == "presheaf":
        name, obj = resolve(inputs[0])
        parts = _int_list(inputs[1], "PARTS")
        try:
            raw = json.loads(inputs[2])
            restr = {tuple(int(x) for x in k.split(",")): v for k, v in raw.items()}
        except (json.JSONDecodeError, AttributeError, ValueError) as e:
            raise ParseError(f"RESTRICTIONS must be a JSON object like {{\"0,1\": [0, 0]}}: {e}") from e
        info["note"] = "left set written as a right set via u.s := s*.u"
        return presheaf_set(as_semigroup(obj, name), parts, restr).mirror(), info
    if construction == "direct-sum":
        (n1, a), (n2, b) = resolve(inputs[0]), resolve(inputs[1])
        return direct_sum(as_set(a, n1), as_set(b, n2)), info
    if construction == "I_n":
        n = _int_list(inputs[0], "N")
        if len(n) != 1:
            raise ParseError("N must be one integer")
        return symmetric_inverse_monoid(n[0]), info
    nx, ny = _int_list(inputs[0], "NX"), _int_list(inputs[1], "NY")
    return partial_bijection_biset(nx[0], ny[0]), info


def cmd_compute(args) -> dict:
    result, info = compute(args.construction, args.inputs, args.budget)
    out = {"construction": args.construction, "inputs": list(args.inputs), **info}
    if args.out:
        Path(args.out).write_text(io.dumps(result), encoding="utf-8")
        out["written"] = args.out
    else:
        out["result"] = io.to_json(result)
    out["verdict"] = "pass"
    return out


# verify -------------------------------------------------------------------------------

def _pool_from_files(paths: list[str]) -> Pool:
    pool = Pool()
    buckets = {"semigroup": pool.semigroups, "set": pool.sets, "morita": pool.morita,
               "correspondence": pool.correspondences, "mcalister": pool.mcalister}
    for p in paths:
        ws = io.load(p)
        for name, obj in ws.entries.items():
            buckets[ws.kinds[name]][f"{Path(p).stem}:{name}"] = obj
    return pool


def cmd_verify(args) -> dict:
    pool = _pool_from_files(args.files) if args.files else Pool()
    if args.fixtures or not args.files:
        pool = builtin_pool().merge(pool)
    outcomes = verify(args.scope, pool, args.budget)
    theorems: dict[tuple[str, str], dict] = {}
    for o in outcomes:
        t = theorems.setdefault((o.scope, o.theorem), {"scope": o.scope, "theorem": o.theorem,
                                                       "checked": 0, "passed": 0, "skipped": 0, "failures": []})
        t["checked"] += 1
        if o.status == "pass":
            t["passed"] += 1
        elif o.status == "skip":
            t["skipped"] += 1
        else:
            t["failures"].append({"subject": o.subject, "witness": list(o.witness), "detail": o.detail})
    counts = summarize(outcomes)
    budget_hit = any(o.status == "skip" and o.detail.startswith("SIZE_LIMIT") for o in outcomes)
    verdict = "fail" if counts["fail"] else ("budget" if budget_hit else "pass")
    return {"scope": args.scope, "theorems": list(theorems.values()), "counts": counts, "verdict": verdict}


# iso ----------------------------------------------------------------------------------

def cmd_iso(args) -> dict:
    (na, a), (nb, b) = resolve(args.first), resolve(args.second)
    if isinstance(a, (InverseSemigroup, MulTable)) and isinstance(b, (InverseSemigroup, MulTable)):
        h = find_isomorphism(as_semigroup(a, na), as_semigroup(b, nb))
        found = None if h is None else list(h.map)
        kind = "semigroup"
    elif isinstance(a, RightSet) and isinstance(b, RightSet):
        f = find_set_isomorphism(a, b)
        found = None if f is None else list(f.map)
        kind = "set"
    else:
        raise ParseError("iso compares two semigroups or two right inverse sets")
    return {"kind": kind, "first": na, "second": nb, "isomorphism": found,
            "verdict": "pass" if found is not None else "fail"}


# output -------------------------------------------------------------------------------

def _text(report: dict) -> str:
    lines = [f"{report['command']}: {report['verdict']}"]
    if "error" in report:
        e = report["error"]
        lines.append(f"  {e['code']}: {e['message']}")
    for r in report.get("results", []):
        extra = " ".join(f"{k}={r[k]}" for k in ("order", "right_full", "non_degenerate", "morita", "mf5") if k in r)
        lines.append(f"{r['kind']} {r['name']}: {r['verdict']}" + (f" ({extra})" if extra else ""))
        for v in r["violations"]:
            lines.append(f"  {v['axiom']} at {tuple(v['witness'])}")
    for t in report.get("theorems", []):
        status = "FAIL" if t["failures"] else "ok"
        lines.append(f"[{t['scope']}] {t['theorem']}: {status} {t['passed']}/{t['checked']}"
                     + (f" ({t['skipped']} skipped)" if t["skipped"] else ""))
        for f in t["failures"]:
            lines.append(f"  {f['subject']}: {tuple(f['witness'])} {f['detail']}".rstrip())
    if "counts" in report:
        c = report["counts"]
        lines.append(f"passed {c['pass']}, failed {c['fail']}, skipped {c['skip']}")
    if "isomorphism" in report:
        lines.append(f"isomorphism: {report['isomorphism']}")
    if "result" in report:
        lines.append(json.dumps(report["result"], sort_keys=False))
    if "written" in report:
        lines.append(f"wrote {report['written']}")
    b = report["budget"]
    lines.append(f"budget: {b['nodes']} of {b['limit']} search nodes")
    if "seconds" in report:
        lines.append(f"time: {report['seconds']:.3f}s")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, indent=1, sort_keys=True) + "\n"
    return _text(report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="search node limit for L(U) enumeration (overrides INVCORR_BUDGET)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", default=None, help="write the result (compute) or the report here")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p = argparse.ArgumentParser(prog="invcorr", description="Finite inverse semigroups, inverse sets, "
                                "correspondences, Morita equivalence and Rees matrix semigroups.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="run the axiom suite for each structure in a file")
    c.add_argument("path")
    c.add_argument("--kind", choices=io.KINDS, default=None)
    m = sub.add_parser("compute", parents=[common], help="build a construction",
                       epilog="; ".join(f"{k} {v}" for k, v in _USAGE.items()))
    m.add_argument("construction", choices=CONSTRUCTIONS)
    m.add_argument("inputs", nargs="*", help="file paths (path or path:name), fixture names or literals")
    v = sub.add_parser("verify", parents=[common], help="run the theorem suite")
    v.add_argument("files", nargs="*")
    v.add_argument("--scope", choices=("all",) + SCOPES, default="all")
    v.add_argument("--fixtures", action="store_true",
                   help="include the built-in fixtures (always on when no files are given)")
    i = sub.add_parser("iso", parents=[common], help="isomorphism search between two structures")
    i.add_argument("first")
    i.add_argument("second")
    return p


_COMMANDS = {"check": cmd_check, "compute": cmd_compute, "verify": cmd_verify, "iso": cmd_iso}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.budget = resolve_budget(args.budget)
    echo = {k: v for k, v in vars(args).items() if k not in ("format", "timing")}
    report: dict = {"command": args.command, "args": echo}
    start = time.perf_counter()
    code = EXIT_PASS
    with track_usage() as used:
        try:
            report.update(_COMMANDS[args.command](args))
            verdict = report["verdict"]
            code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "budget": EXIT_BUDGET}[verdict]
        except SizeLimit as e:
            report.update(verdict="error", error={"code": e.code, "message": str(e)})
            code = EXIT_BUDGET
        except InternalInconsistency as e:
            report.update(verdict="fail", error={"code": e.code, "message": str(e)})
            code = EXIT_FAIL
        except InvCorrError as e:
            report.update(verdict="error", error={"code": e.code, "message": str(e)})
            code = EXIT_INPUT
    report["budget"] = {"limit": args.budget, "nodes": used[0]}
    if args.timing:
        report["seconds"] = time.perf_counter() - start
    text = render(report, args.format)
    if args.out and args.command != "compute":
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
