"""Command-line front end: analyze, sweep, probe, verify-inverse.

Exit codes: 0 success, 1 usage error, 2 mathematical precondition failed,
3 internal consistency violation (a bug), 4 verify-inverse answered false.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

from .errors import (PRECONDITION_ERRORS, ConsistencyViolation, FieldTooLarge, PolarDegError,
                     PolySyntaxError, UnknownVariable)
from .fields import make_field
from .ideals import parse_points
from .invariants import InvariantReport, full_report, verify_inverse
from .maps import RationalMap, make_map, polar_map
from .poly import PolyRing

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CONSISTENCY, EXIT_FALSE = 0, 1, 2, 3, 4
PROBE_LIMIT = 1 << 20


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    chars: list
    ext: int = 1
    seed: int = 42
    fmt: str = "text"
    polys: list = field(default_factory=list)
    forms: str | None = None
    inverse: str | None = None
    points: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if bool(self.polys) == bool(self.forms):
            raise UsageError("give exactly one of --poly or --forms")
        if not self.chars:
            raise UsageError("--char is required")

    @property
    def p(self):
        return self.chars[0]


# --- input handling --------------------------------------------------------------------

def _split_forms(text):
    parts = [t.strip() for t in text.split(";")]
    if any(not t for t in parts):
        raise UsageError(f"empty form in {text!r}")
    return parts


def _infer_n(text):
    idx = [int(i) for i in re.findall(r"\bx(\d+)\b", text)]
    return max([2] + idx)


def build_map(cfg: RunConfig, p: int, poly: str | None = None, warn=None) -> RationalMap:
    """The map described by the config over F_{p^ext}."""
    F = make_field(p, cfg.ext)
    if cfg.forms:
        parts = _split_forms(cfg.forms)
        R = PolyRing.projective(len(parts) - 1, F)
        return make_map([R.parse(t) for t in parts])
    poly = poly if poly is not None else cfg.polys[0]
    R = PolyRing.projective(_infer_n(poly), F)
    f = R.parse(poly)
    d = f.total_degree()
    allow = d % p == 0
    if allow and warn is not None:
        warn(f"warning: characteristic {p} divides deg f = {d}; Euler identity checks disabled")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return polar_map(f, allow_char_divides_degree=allow)


def _parse_forms_in(text, R: PolyRing):
    parts = _split_forms(text)
    return [R.parse(t) for t in parts]


def _stderr(msg):
    print(msg, file=sys.stderr)


# --- commands --------------------------------------------------------------------------

def _report_text(rep: InvariantReport) -> str:
    lines = [
        f"field            F_{rep.char}" + (f"^{rep.ext}" if rep.ext > 1 else ""),
        f"n, delta         {rep.n}, {rep.delta}",
        f"tau              {rep.tau}",
        f"mu               {rep.mu}",
        f"d_t              {rep.dt}",
        f"naive degrees    {rep.naive_first}, {rep.naive_second}",
        f"deg T            {rep.torsion_degree}",
    ]
    if rep.c1 is not None:
        lines.append(f"c1, c2           {rep.c1}, {rep.c2}")
        lines.append(f"bundle           {rep.classification}")
    lines.append(f"homaloidal       {str(rep.homaloidal).lower()}")
    if rep.stripped_divisor != "1":
        lines.append(f"stripped         {rep.stripped_divisor}")
    if rep.local_table:
        lines.append("point            tau  mu  T")
        for r in rep.local_table:
            lines.append(f"  {str(r.point):<14} {r.tau:>4} {r.mu:>3} {r.torsion:>2}")
    lines.append("seeds            " + ", ".join(
        f"{s['seed']}@F_{s['char']}^{s['ext']}" for s in rep.seeds))
    return "\n".join(lines)


def cmd_analyze(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    m = build_map(cfg, cfg.p, warn=_stderr)
    pts = parse_points(cfg.points, m.field) if cfg.points else None
    rep = full_report(m, seed=cfg.seed, points=pts)
    if cfg.fmt == "json":
        print(json.dumps(rep.to_dict(), indent=2), file=out)
    else:
        print(_report_text(rep), file=out)
    return EXIT_OK


def _sweep_row(args):
    cfg, poly, p = args
    msgs = []
    try:
        m = build_map(cfg, p, poly, warn=msgs.append)
        rep = full_report(m, seed=cfg.seed)
        return {"poly": poly or cfg.forms, "char": p, "report": rep.to_dict(), "warnings": msgs}
    except PolarDegError as e:
        return {"poly": poly or cfg.forms, "char": p, "error": f"{type(e).__name__}: {e}",
                "warnings": msgs}


def sweep_rows(cfg: RunConfig):
    """One row per (input, characteristic); errors are kept in the row."""
    inputs = cfg.polys or [None]
    tasks = [(cfg, poly, p) for poly in inputs for p in cfg.chars]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            rows = list(ex.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]
    ok = [r for r in rows if "report" in r]
    counts = Counter(r["report"]["dt"] for r in ok)
    # ties go to the value seen at the largest characteristic, the one closest
    # to characteristic zero
    rank = {}
    for r in ok:
        rank[r["report"]["dt"]] = max(rank.get(r["report"]["dt"], 0), r["char"])
    majority = max(counts, key=lambda v: (counts[v], rank[v])) if ok else None
    for r in rows:
        r["outlier"] = "report" in r and r["report"]["dt"] != majority
    return rows


def cmd_sweep(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    rows = sweep_rows(cfg)
    for r in rows:
        for w in r["warnings"]:
            _stderr(f"[{r['poly']} @ {r['char']}] {w}")
    if cfg.fmt == "json":
        print(json.dumps(rows, indent=2), file=out)
        return EXIT_OK
    print(f"{'':2}{'char':>5} {'d_t':>4} {'tau':>4} {'mu':>4} {'degT':>5}  input", file=out)
    for r in rows:
        mark = "* " if r["outlier"] else "  "
        if "error" in r:
            print(f"{mark}{r['char']:>5}  error: {r['error']}  {r['poly']}", file=out)
            continue
        d = r["report"]
        print(f"{mark}{r['char']:>5} {d['dt']:>4} {d['tau']:>4} {d['mu']:>4} {d['torsion_degree']:>5}  {r['poly']}",
              file=out)
    return EXIT_OK


def projective_points(F, n):
    """All points of P^n(F) with the first nonzero coordinate equal to 1."""
    for piv in range(n + 1):
        for rest in product(F.elements(), repeat=n - piv):
            yield (0,) * piv + (1,) + rest


def _normalize(v, F):
    lead = next((c for c in v if c), None)
    if lead is None:
        return None
    inv = F.inv(lead)
    return tuple(F.mul(c, inv) for c in v)


def probe(m: RationalMap):
    """Fiber sizes of the map on the rational points outside the base locus.

    A heuristic check of the topological degree: over a finite field a fiber
    can lose points to extensions, so only the most common size is meaningful."""
    F = m.field
    if F.q > PROBE_LIMIT:
        raise FieldTooLarge(f"field of size {F.q} exceeds the probe limit {PROBE_LIMIT}")
    images = Counter()
    for pt in projective_points(F, m.n):
        img = _normalize(m.evaluate(pt), F)
        if img is not None:
            images[img] += 1
    sizes = Counter(images.values())
    modal = max(sizes.items(), key=lambda kv: (kv[1], -kv[0]))[0] if sizes else 0
    return {"fiber_sizes": dict(sorted(sizes.items())), "modal": modal, "images": len(images)}


def cmd_probe(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    m = build_map(cfg, cfg.p, warn=_stderr)
    res = probe(m)
    if cfg.fmt == "json":
        print(json.dumps({"char": cfg.p, "ext": cfg.ext, **{k: v for k, v in res.items()}}), file=out)
    else:
        counts = ", ".join(f"{k}:{v}" for k, v in res["fiber_sizes"].items())
        print(f"fiber sizes (size:count) {counts}", file=out)
        print(f"modal fiber size {res['modal']}", file=out)
    return EXIT_OK


def cmd_verify_inverse(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if not cfg.inverse:
        raise UsageError("verify-inverse needs --inverse")
    m = build_map(cfg, cfg.p, warn=_stderr)
    cand = _parse_forms_in(cfg.inverse, m.ring)
    ok, reason = verify_inverse(m, cand, explain=True)
    if cfg.fmt == "json":
        print(json.dumps({"inverse": ok, "reason": reason}), file=out)
    else:
        print("true" if ok else f"false ({reason})", file=out)
    return EXIT_OK if ok else EXIT_FALSE


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "probe": cmd_probe,
            "verify-inverse": cmd_verify_inverse}


# --- argument parsing ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _chars(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad characteristic list {text!r}")


def make_parser():
    ap = _Parser(prog="polardeg", description="Topological degree of polar and rational maps.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--char", type=_chars, required=True,
                        help="characteristic (sweep: comma separated list)")
        sp.add_argument("--ext", type=int, default=1, help="extension degree k, field F_{p^k}")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--json", action="store_true")
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--poly", action="append", help="polynomial f (polar map)")
        grp.add_argument("--forms", help='forms "f0;f1;...;fn"')
        sp.add_argument("--points", help='points "(a:b:c),(d:e:f)" for the local table')
        sp.add_argument("--inverse", help='candidate inverse "g0;...;gn"')
        if name == "sweep":
            sp.add_argument("--jobs", type=int, default=1)
    return ap


_VALUE_FLAGS = ("--poly", "--forms", "--inverse", "--points")


def _glue_values(argv):
    # values such as "-x1^2;x0" would otherwise be taken for options
    out, it = [], iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            v = next(it, None)
            out.append(a if v is None else f"{a}={v}")
        else:
            out.append(a)
    return out


def config_from_args(argv) -> RunConfig:
    a = make_parser().parse_args(_glue_values(list(argv)))
    if a.command != "sweep" and len(a.char) != 1:
        raise UsageError("give a single characteristic")
    if a.command != "sweep" and a.poly and len(a.poly) > 1:
        raise UsageError("give a single --poly")
    return RunConfig(command=a.command, chars=a.char, ext=a.ext, seed=a.seed,
                     fmt="json" if a.json else "text", polys=a.poly or [], forms=a.forms,
                     inverse=a.inverse, points=a.points, jobs=getattr(a, "jobs", 1))


def main(argv=None, out=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = config_from_args(argv)
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as e:
        _stderr(f"usage error: {e}")
        return EXIT_USAGE
    except ConsistencyViolation as e:
        _stderr(f"internal consistency violation (please report): {e}")
        return EXIT_CONSISTENCY
    except PRECONDITION_ERRORS + (FieldTooLarge,) as e:
        _stderr(f"precondition failed ({type(e).__name__}): {e}")
        return EXIT_PRECONDITION
    except (PolySyntaxError, UnknownVariable, ValueError) as e:
        _stderr(f"usage error ({type(e).__name__}): {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
