"""Command-line front end: ``vglab check|enumerate|semidirect|verify``.

Exit status: 0 when everything checked is valid, 1 on a validation or suite
failure, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, replace

from . import group as grp
from . import io as vio
from . import laws
from . import vgroup as vg
from . import vrel
from .errors import ActionError, BoundExceeded, ParseError, PreconditionError, VglabError
from .quantale import check_quantale_laws, make_quantale, sample_elements
from .report import jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class CliConfig:
    subcommand: str
    files: list = field(default_factory=list)
    format: str = "text"
    bound: int | None = None
    jobs: int = 1
    quantales: tuple = ()
    seed: int = 0


class _Out:
    def __init__(self, fmt: str, stream):
        self.fmt, self.stream = fmt, stream

    def json(self, obj):
        if self.fmt == "json":
            print(json.dumps(jsonable(obj), sort_keys=True), file=self.stream)

    def text(self, line: str = ""):
        if self.fmt == "text":
            print(line, file=self.stream)


def _fmt_profile(X) -> str:
    V, G = X.quantale, X.group
    return ", ".join(f"{_label(l)}: {V.format(v)}" for l, v in zip(G.labels, X.delta))


def _label(l) -> str:
    return "(" + ",".join(map(str, l)) + ")" if isinstance(l, tuple) else str(l)


# -- check -----------------------------------------------------------------------------

def _check_value(kind: str, value, cfg: CliConfig) -> dict:
    """Validate one parsed document; returns valid/summary/witness."""
    if kind == "quantale":
        samples = None if value.is_finite else sample_elements(value, 60, cfg.seed)
        rep = check_quantale_laws(value, samples)
        return {"valid": rep.ok, "summary": f"quantale {value.name}: {rep.passed}/"
                f"{rep.attempted} law instances hold", "witness": rep.witness}
    if kind == "vcategory":
        c = vrel.is_vcategory(value)
        w = None if c.ok else {"reflexive": c.reflexive_witness, "transitive": c.transitive_witness}
        sym = vrel.is_symmetric(value) if c.ok else None
        return {"valid": c.ok, "witness": w, "symmetric": sym,
                "summary": ("valid V-category, " + ("symmetric" if sym else "non-symmetric"))
                if c.ok else "not a V-category"}
    if kind == "vgroup":
        s = vg.is_symmetric_vgroup(value)
        G, V = value.group, value.quantale
        w = None if s.ok else {"x": s.witness, "delta(x)": V.format(value.value(s.witness)),
                               "delta(-x)": V.format(value.delta[G.neg(G.index(s.witness))])}
        return {"valid": True, "symmetric": s.ok, "witness": w,
                "summary": "valid, " + ("symmetric" if s.ok else "non-symmetric")}
    if kind == "vgroup_hom":
        r = vg.epi_mono_report(value)
        flags = [k for k in ("mono", "epi", "regular_mono", "regular_epi", "proper", "open")
                 if getattr(r, k)]
        return {"valid": True, "flags": flags, "witness": None,
                "summary": "valid V-group homomorphism" + (f" ({', '.join(flags)})" if flags else "")}
    if kind == "split":
        act, X, Y = value
        t, l = vg.semidirect_tensor(act, X, Y), vg.semidirect_lex(act, X, Y)
        return {"valid": t.valid or l.valid, "tensor": t.valid, "lex": l.valid,
                "witness": None if t.valid else t.witness,
                "summary": f"tensor structure {'valid' if t.valid else 'invalid'}, "
                           f"lex structure {'valid' if l.valid else 'invalid'}"}
    label = {"group": f"group {value.name} of order {len(value)}" if kind == "group" else "",
             "action": "group action"}.get(kind, kind)
    return {"valid": True, "witness": None, "summary": f"valid {label}".rstrip()}


def cmd_check(cfg: CliConfig, out: _Out) -> int:
    if not cfg.files:
        raise ParseError("check needs at least one input file", "argv")
    status = EXIT_OK
    for path in cfg.files:
        try:
            kind, value = vio.load_file(path)
            res = _check_value(kind, value, cfg)
            doc = vio.emit(value)
        except ParseError:
            raise
        except ActionError as exc:
            kind, doc = "split", None
            res = {"valid": False, "witness": exc.witness,
                   "summary": f"invalid action: {exc}"}
        except VglabError as exc:
            kind, doc = vio.detect_kind(vio.loads(open(path, encoding="utf-8").read())), None
            res = {"valid": False, "witness": exc.witness, "summary": f"invalid: {exc}"}
        if not res["valid"]:
            status = EXIT_FAIL
        out.json({"file": path, "kind": kind, **res, "value": doc})
        out.text(f"{path}: {res['summary']}")
        if res.get("witness") is not None:
            out.text(f"  witness: {json.dumps(jsonable(res['witness']), sort_keys=True)}")
    return status


# -- enumerate -------------------------------------------------------------------------

def cmd_enumerate(cfg: CliConfig, out: _Out, group: str | None, symmetric: str) -> int:
    groups = []
    if group:
        groups.append(vio.parse_group(group if not group.lstrip().startswith("{")
                                      else vio.loads(group), "--group"))
    for path in cfg.files:
        kind, value = vio.load_file(path)
        if kind != "group":
            raise ParseError(f"expected a group, found a {kind}", path)
        groups.append(value)
    if not groups:
        raise ParseError("enumerate needs --group or a group file", "argv")
    if len(cfg.quantales) != 1:
        raise ParseError("enumerate needs exactly one --quantale", "argv")
    V = make_quantale(cfg.quantales[0])
    if not V.is_finite:
        raise PreconditionError(f"{V.name} is infinite; profiles cannot be listed")
    for G in groups:
        xs = vg.enumerate_vgroup_structures(G, V, cfg.bound or 10**5)
        sym = [vg.is_symmetric_vgroup(X).ok for X in xs]
        keep = [(X, s) for X, s in zip(xs, sym)
                if symmetric == "any" or s == (symmetric == "only")]
        out.json({"group": G.name, "quantale": V.name, "total": len(xs),
                  "symmetric": sum(sym), "asymmetric": len(xs) - sum(sym),
                  "profiles": [{"delta": [V.format(v) for v in X.delta], "symmetric": s}
                               for X, s in keep]})
        out.text(f"{G.name} over {V.name}: {len(xs)} profiles, {sum(sym)} symmetric, "
                 f"{len(xs) - sum(sym)} asymmetric")
        for X, s in keep:
            out.text(f"  [{_fmt_profile(X)}]{'' if s else '  (asymmetric)'}")
    return EXIT_OK


# -- semidirect ------------------------------------------------------------------------

def cmd_semidirect(cfg: CliConfig, out: _Out, mode: str) -> int:
    if len(cfg.files) != 1:
        raise ParseError("semidirect needs exactly one split-extension file", "argv")
    kind, value = vio.load_file(cfg.files[0])
    if kind != "split":
        raise ParseError(f"expected a split-extension spec, found a {kind}", cfg.files[0])
    act, X, Y = value
    V = X.quantale
    try:
        lo, hi = vg.tensor_profile(X, Y), vg.lex_profile(X, Y)
        G = grp.semidirect_product_group(act).group
        fmt = lambda d: [V.format(v) for v in d]
        doc = {"product": G.name, "labels": [_label(l) for l in G.labels],
               "tensor_bound": fmt(lo), "lex_bound": fmt(hi)}
        status = EXIT_OK
        out.text(f"{G.name}: {len(G)} elements")
        out.text(f"  tensor bound a(x)b: {fmt(lo)}")
        out.text(f"  lex bound:          {fmt(hi)}")
        if mode in ("tensor", "lex"):
            r = (vg.semidirect_tensor if mode == "tensor" else vg.semidirect_lex)(act, X, Y)
            doc.update({"mode": mode, "valid": r.valid, "witness": r.witness,
                        "delta": fmt(r.direct.delta) if r.direct.valid else None})
            out.text(f"  {mode} structure: {'valid' if r.valid else 'invalid'}")
            if not r.valid:
                out.text(f"  witness: {json.dumps(jsonable(r.witness), sort_keys=True)}")
                status = EXIT_FAIL
        else:
            cs = vg.enumerate_split_structures(act, X, Y, cfg.bound or 10**5)
            doc.update({"mode": "all", "count": len(cs), "structures": [
                {"delta": fmt(c.delta), "is_tensor": c.is_tensor, "is_lex": c.is_lex,
                 "within_bounds": all(V.leq(l, d) and V.leq(d, h)
                                      for l, d, h in zip(lo, c.delta, hi))} for c in cs]})
            out.text(f"  {len(cs)} split-extension structure(s)")
            for s in doc["structures"]:
                tags = [t for t, f in (("tensor", s["is_tensor"]), ("lex", s["is_lex"])) if f]
                out.text(f"    {s['delta']}" + (f"  = {'/'.join(tags)}" if tags else ""))
    except ActionError as exc:
        out.json({"valid": False, "reason": "action", "message": str(exc), "witness": exc.witness})
        out.text(f"invalid action: {exc}")
        out.text(f"  witness: {json.dumps(jsonable(exc.witness), sort_keys=True)}")
        return EXIT_FAIL
    out.json(doc)
    return status


# -- verify ------------------------------------------------------------------------------

def cmd_verify(cfg: CliConfig, out: _Out, ids: list, fail_fast: bool) -> int:
    ids = [i for i in ids if i != "all"] or None
    lc = laws.LawConfig(seed=cfg.seed, jobs=cfg.jobs,
                        quantales=tuple(cfg.quantales) or None)
    if cfg.bound:
        lc = replace(lc, structure_bound=cfg.bound, split_bound=cfg.bound)
    reports = laws.run_all(lc, ids, fail_fast=fail_fast)
    for r in reports:
        out.json(r.to_dict())
        out.text(f"{'PASS' if r.ok else 'FAIL'} {r.suite}: {r.passed}/{r.attempted} "
                 f"({r.duration:.2f}s)")
        if not r.ok:
            out.text(f"  law: {r.claim}")
            out.text(f"  witness: {json.dumps(jsonable(r.witness), sort_keys=True)}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# -- entry point -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--bound", type=int, help="enumeration bound")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--quantale", action="append", default=[], metavar="SPEC",
                        help="quantale spec, e.g. chain:3 (repeatable)")
    p = argparse.ArgumentParser(prog="vglab", description="Exact computations with "
                                "quantale-enriched categories and V-groups.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    c = sub.add_parser("check", parents=[common], help="validate descriptor files")
    c.add_argument("files", nargs="+", metavar="FILE")
    e = sub.add_parser("enumerate", parents=[common], help="list V-group structures on a group")
    e.add_argument("files", nargs="*", metavar="FILE")
    e.add_argument("--group", help="group name (Z4, K4, S3, ...) or JSON")
    e.add_argument("--symmetric", choices=("any", "only", "none"), default="any")
    s = sub.add_parser("semidirect", parents=[common], help="split-extension structures")
    s.add_argument("files", nargs=1, metavar="FILE")
    s.add_argument("--mode", choices=("tensor", "lex", "all"), default="all")
    v = sub.add_parser("verify", parents=[common], help="run law suites")
    v.add_argument("files", nargs="*", metavar="SUITE", help="suite ids or 'all'")
    v.add_argument("--fail-fast", action="store_true")
    v.add_argument("--list", action="store_true", help="list suite ids and claims")
    return p


def main(argv: list | None = None, stdout=None, stderr=None) -> int:
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        seed = int(os.environ.get("VGLAB_SEED", "0"))
    except ValueError:
        print("vglab: VGLAB_SEED must be an integer", file=stderr)
        return EXIT_USAGE
    cfg = CliConfig(args.subcommand, list(args.files), args.format, args.bound,
                    max(1, args.jobs), tuple(args.quantale), seed)
    out = _Out(cfg.format, stdout)
    try:
        if cfg.subcommand == "check":
            return cmd_check(cfg, out)
        if cfg.subcommand == "enumerate":
            return cmd_enumerate(cfg, out, args.group, args.symmetric)
        if cfg.subcommand == "semidirect":
            return cmd_semidirect(cfg, out, args.mode)
        if args.list:
            for s in laws.REGISTRY.values():
                out.json({"suite": s.id, "claim": s.claim})
                out.text(f"{s.id}: {s.claim}")
            return EXIT_OK
        return cmd_verify(cfg, out, cfg.files, args.fail_fast)
    except ParseError as exc:
        print(f"vglab: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (laws.UnknownSuite, PreconditionError, BoundExceeded) as exc:
        print(f"vglab: {exc}", file=stderr)
        return EXIT_USAGE
    except VglabError as exc:
        print(f"vglab: {exc}", file=stderr)
        if exc.witness is not None:
            print(f"  witness: {json.dumps(jsonable(exc.witness), sort_keys=True)}", file=stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
