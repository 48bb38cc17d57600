"""``mobrec`` command line.

Exit codes: 0 success, 2 invalid input, 3 resource cap hit, 4 verification failure.
Defaults may be overridden by a JSON file named in ``$MOBREC_CONFIG``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import mpmath

from . import certificates as certs
from . import checker
from .arith import DEFAULT_FACTORIAL_CAP, ResourceLimitError, rat_to_str, to_decimal
from .classify import Verdict, classify
from .cliques import DEFAULT_LEVEL_CAP, VerificationError, big_clique
from .colorings import DEFAULT_PRECISION_BITS
from .graph import DEFAULT_WINDOW_CAP, build_window, max_cliques, verify_coloring
from .multfun import (
    CONSTANT_ONE, ArchChar, ModDirichlet, RootChar, aset_scan, describe, dio_scan, witness_for,
)
from .ratio_sets import MoebiusParams

CONFIG_ENV = "MOBREC_CONFIG"
REPORT_FORMAT = "mobrec-report/1"

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_VERIFY = 0, 2, 3, 4


@dataclass
class RunConfig:
    precision_bits: int = DEFAULT_PRECISION_BITS
    factorial_cap: int = DEFAULT_FACTORIAL_CAP
    level_cap: int = DEFAULT_LEVEL_CAP
    window_cap: int = DEFAULT_WINDOW_CAP
    workers: int = 1
    format: str = "text"
    out: Optional[str] = None

    def __post_init__(self):
        for name in ("precision_bits", "factorial_cap", "level_cap", "window_cap", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")


def load_config(args: argparse.Namespace) -> RunConfig:
    values: Dict[str, Any] = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        with open(path) as fh:
            values.update(json.load(fh))
    for f in dataclasses.fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    unknown = set(values) - {f.name for f in dataclasses.fields(RunConfig)}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(**values)


class Report:
    """Ordered sections rendered as text lines or one JSON document."""

    def __init__(self, command: str, cfg: RunConfig):
        self.command = command
        self.cfg = cfg
        self.fields: Dict[str, Any] = {}
        self.lines: List[str] = []
        self.ok = True

    def add(self, key: str, value: Any, line: Optional[str] = None):
        self.fields[key] = value
        if line is not None:
            self.lines.append(line)

    def render(self) -> str:
        if self.cfg.format == "json":
            doc = {"format": REPORT_FORMAT, "command": self.command, "ok": self.ok,
                   "config": {"precision_bits": self.cfg.precision_bits,
                              "factorial_cap": self.cfg.factorial_cap,
                              "workers": self.cfg.workers}}
            doc.update(self.fields)
            return json.dumps(doc, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + "\n"


def parse_window(s: str) -> Tuple[int, int]:
    lo, sep, hi = s.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"window must look like lo..hi, got {s!r}")
    lo_i, hi_i = int(lo), int(hi)
    if not 1 <= lo_i <= hi_i:
        raise argparse.ArgumentTypeError("need 1 <= lo <= hi")
    return lo_i, hi_i


def parse_witness(s: str, params: MoebiusParams, prec: int):
    kind, _, rest = s.partition(":")
    if kind == "auto":
        return witness_for(params)
    if kind == "one":
        return CONSTANT_ONE
    if kind == "arch":
        with mpmath.workprec(prec):
            return ArchChar(mpmath.mpf(rest), rest)
    nums = [int(x) for x in rest.split(",") if x]
    if kind == "root" and len(nums) == 2:
        return RootChar(*nums)
    if kind == "dirichlet" and len(nums) >= 3:
        return ModDirichlet(nums[0], nums[1], tuple(nums[2:]))
    raise ValueError(f"unrecognized witness {s!r} (auto, one, arch:T, root:P,K, dirichlet:P,E,U...)")


def _params(ns) -> MoebiusParams:
    return MoebiusParams(ns.a, ns.b, ns.c, ns.d)


def _write_cert(data: Dict[str, Any], path: Optional[str], rep: Report):
    ok, msg = certs.verify_dict(data)
    rep.add("certificate_check", msg, f"certificate check: {'OK' if ok else 'FAIL'} ({msg})")
    if path:
        with open(path, "w") as fh:
            fh.write(certs.dumps(data))
        rep.add("certificate_file", path, f"certificate written to {path}")
    rep.ok &= ok


def cmd_classify(ns, cfg: RunConfig) -> Report:
    params = _params(ns)
    cl = classify(params)
    rep = Report("classify", cfg)
    rep.add("params", [params.a, params.b, params.c, params.d])
    rep.add("verdict", cl.verdict.value)
    if cl.verdict is Verdict.RECURRENT:
        red = cl.reduction
        rep.lines.append("Recurrent")
        rep.add("reduction", certs._jsonable(certs.reduction_dict(red)),
                f"reduction: n = {red.C}*m + {red.D} embeds R({red.A},{red.B},{red.A},{red.B - 1}) "
                f"into R({red.a},{red.b},{red.a},{red.d})")
    elif cl.verdict is Verdict.NON_RECURRENT:
        case = cl.case
        where = f", p={case.p}" if case.p else ""
        rep.lines.append(f"NonRecurrent case ({case.label}){where}, chi <= {cl.chromatic_upper_bound}")
        rep.add("case", {"label": case.label, "name": case.name, "p": case.p, "k": case.k})
        rep.add("coloring", certs.coloring_dict(cl.coloring), f"coloring: {cl.coloring}")
        rep.add("witness", certs.witness_dict(cl.witness), f"witness: {json.dumps(describe(cl.witness))}")
        rep.add("chromatic_upper_bound", cl.chromatic_upper_bound)
    else:
        rep.lines.append("Empty")
    if cfg.out:
        _write_cert(certs.classification_to_dict(cl), cfg.out, rep)
    return rep


def cmd_color_check(ns, cfg: RunConfig) -> Report:
    params = _params(ns)
    cl = classify(params)
    if cl.verdict is not Verdict.NON_RECURRENT:
        raise ValueError(f"{params} is {cl.verdict.value}; no finite coloring to check")
    lo, hi = ns.window or (1, ns.N)
    g = build_window(params, lo, hi, cap=cfg.window_cap, workers=cfg.workers)
    chk = verify_coloring(g, cl.coloring)
    rep = Report("color-check", cfg)
    rep.ok = chk.ok
    rep.add("params", [params.a, params.b, params.c, params.d])
    rep.add("window", [lo, hi], f"window [{lo}, {hi}], coloring {cl.coloring}")
    rep.add("edges", chk.edges)
    rep.add("violations", [list(v) for v in chk.violations[:100]],
            f"{len(chk.violations)} violations / {chk.edges} edges")
    rep.add("violation_count", len(chk.violations))
    rep.add("ambiguous", chk.ambiguous[:100], f"{len(chk.ambiguous)} boundary-ambiguous vertices")
    rep.add("colors_used", chk.colors_used,
            f"{chk.colors_used} colors used (bound {cl.chromatic_upper_bound})")
    if ns.edges:
        with open(ns.edges, "w") as fh:
            fh.writelines(line + "\n" for line in g.edge_lines())
        rep.add("edge_file", ns.edges, f"edge list written to {ns.edges}")
    return rep


def cmd_clique(ns, cfg: RunConfig) -> Report:
    rep = Report(f"clique {ns.mode}", cfg)
    if ns.mode == "construct":
        if len(ns.nums) != 3:
            raise ValueError("clique construct takes A B D")
        a, b, d = ns.nums
        cert = big_clique(a, b, d, ns.k, factorial_cap=cfg.factorial_cap,
                          level_cap=cfg.level_cap, base=ns.base)
        lines = [f"{len(cert)}-clique in G({a},{b},{a},{d})"]
        mult = cert.meta.get("multiplier")
        if mult:
            lines.append(f"multiplier {mult}")
    else:
        if len(ns.nums) != 4 or ns.window is None:
            raise ValueError("clique search takes A B C D --window lo..hi")
        params = MoebiusParams(*ns.nums)
        lo, hi = ns.window
        g = build_window(params, lo, hi, cap=cfg.window_cap, workers=cfg.workers)
        found = max_cliques(g, size_limit=ns.k or 0)
        cert = found[0]
        rep.add("maximum_cliques", [[to_decimal(v) for v in c.vertices] for c in found])
        lines = [f"omega(G{params}[{lo}..{hi}]) = {len(cert)}" if not ns.k
                 else f"first {len(cert)}-clique in [{lo}, {hi}]",
                 f"{len(found)} maximum clique(s)"]
    ok = cert.verify()
    rep.ok = ok
    rep.lines.extend(lines)
    rep.add("vertices", [to_decimal(v) for v in cert.vertices],
            "vertices: " + ", ".join(f"{v}" if len(str(v)) < 60 else f"<{len(str(v))} digits>"
                                     for v in cert.vertices))
    rep.add("digits", [len(to_decimal(v)) for v in cert.vertices])
    rep.add("verified", ok, f"pairwise adjacency: {'verified' if ok else 'FAILED'}")
    data = certs.clique_to_dict(cert)
    _write_cert(data, cfg.out, rep)
    return rep


def _turn_str(t: Optional[Fraction]) -> Optional[str]:
    return None if t is None else rat_to_str(t)


def cmd_scan(ns, cfg: RunConfig) -> Report:
    params = _params(ns)
    rep = Report(f"scan {ns.kind}", cfg)
    rep.add("params", [params.a, params.b, params.c, params.d])
    witnesses = ns.witness or ["auto"]
    fs = [parse_witness(w, params, cfg.precision_bits) for w in witnesses]
    rep.add("functions", [describe(f) for f in fs])
    if ns.kind == "dio":
        if len(fs) != 1:
            raise ValueError("scan dio takes exactly one --witness")
        r = dio_scan(fs[0], params, ns.N, start=ns.start, workers=cfg.workers)
        exact = " (exact)" if r.min_gap_turn is not None else ""
        shown = "2" if r.min_gap == 2.0 and exact else f"{r.min_gap:.12g}"
        rep.lines.append(f"{describe(fs[0])['kind']} on n in [{ns.start}, {ns.N}], {r.count} valid n")
        rep.add("N", ns.N)
        rep.add("min_gap", r.min_gap, f"min gap = {shown}{exact} at n = {r.argmin}")
        rep.add("min_gap_turn_distance", _turn_str(r.min_gap_turn))
        rep.add("argmin", r.argmin)
        rep.add("tail_min", r.tail_min, f"tail min over [{max(ns.start, ns.N // 2)}, {ns.N}] = "
                f"{r.tail_min:.12g} at n = {r.tail_argmin}")
        rep.add("tail_min_turn_distance", _turn_str(r.tail_min_turn))
        rep.add("tail_argmin", r.tail_argmin)
        rep.add("max_gap", r.max_gap, f"max gap = {r.max_gap:.12g}")
        rep.add("count", r.count)
        return rep
    d = aset_scan(fs, ns.eps, params, ns.N, workers=cfg.workers)
    rep.add("N", ns.N)
    rep.add("eps", ns.eps)
    rep.add("count", d.count, f"|A & [1,{ns.N}]| = {d.count}, density {d.density:.6f}")
    rep.add("density", d.density)
    rep.add("blocks", [{"lo": lo, "hi": hi, "count": c} for (lo, hi), c in
                       zip(d.block_bounds, d.block_counts)])
    for (lo, hi), c, dens in zip(d.block_bounds, d.block_counts, d.block_densities):
        rep.lines.append(f"  block [{lo}, {hi}]: {c} ({dens:.6f})")
    if d.bound is not None:
        rep.add("symbolic_lower_bound", d.bound.expression,
                f"lower density bound (symbolic): {d.bound.expression}")
    return rep


def cmd_verify(ns, cfg: RunConfig) -> Report:
    rep = Report("verify", cfg)
    results = []
    for path in ns.files:
        with open(path) as fh:
            ok, msg = checker.check(json.load(fh))
        results.append({"file": path, "ok": ok, "message": msg})
        rep.lines.append(f"{'OK' if ok else 'FAIL'} {path}: {msg}")
        rep.ok &= ok
    rep.add("results", results)
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", dest="precision_bits", type=int)
    common.add_argument("--factorial-cap", dest="factorial_cap", type=int)
    common.add_argument("--level-cap", dest="level_cap", type=int)
    common.add_argument("--window-cap", dest="window_cap", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--out", help="certificate path (classify, clique)")

    def abcd(p):
        for name in "abcd":
            p.add_argument(name, type=int)

    ap = argparse.ArgumentParser(prog="mobrec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide recurrence")
    abcd(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("color-check", parents=[common], help="verify the explicit coloring")
    abcd(p)
    p.add_argument("--N", type=int, default=10**5)
    p.add_argument("--window", type=parse_window)
    p.add_argument("--edges", help="write the window's edge list here")
    p.set_defaults(fn=cmd_color_check)

    p = sub.add_parser("clique", parents=[common], help="construct or search cliques")
    p.add_argument("mode", choices=("construct", "search"))
    p.add_argument("nums", type=int, nargs="+", help="A B D (construct) or A B C D (search)")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--window", type=parse_window)
    p.set_defaults(fn=cmd_clique)

    p = sub.add_parser("scan", parents=[common], help="Diophantine gap and density scans")
    p.add_argument("kind", choices=("dio", "aset"))
    abcd(p)
    p.add_argument("--witness", action="append",
                   help="auto | one | arch:T | root:P,K | dirichlet:P,E,U... (repeat for aset)")
    p.add_argument("--N", type=int, default=10**5)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--eps", type=float, default=0.1)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="check certificate files")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    ns = build_parser().parse_args(argv)
    try:
        cfg = load_config(ns)
        if ns.command == "clique" and ns.mode == "construct" and ns.k < 2:
            raise ValueError("clique construct needs --k >= 2")
        rep = ns.fn(ns, cfg)
    except ResourceLimitError as exc:
        print(f"mobrec: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except VerificationError as exc:
        print(f"mobrec: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, OSError) as exc:
        print(f"mobrec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render())
    return EXIT_OK if rep.ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
