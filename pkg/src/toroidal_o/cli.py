"""Command line: verification suites, characters, pairing sets and composition tables."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import characters as ch
from . import shenlarsson as sl
from . import toroidal as tor
from .matrixlie import check_dominant, fundamental_to_weight
from .polyalgebra import pairing_polynomials, verify_pairing
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("algebra", "module", "si", "al-axioms", "derham", "socle")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    xkind: str
    n: int
    g_rank: int
    D: int
    lam: tuple
    mu: tuple
    c: tuple
    seed: int
    output: str

    @property
    def algebra(self) -> tor.AlgebraConfig:
        return tor.AlgebraConfig(self.xkind, self.n, self.g_rank, self.D)

    @property
    def labeled(self) -> ch.LabeledWeight:
        return ch.LabeledWeight(self.lam, self.mu, self.c)

    def as_dict(self) -> dict:
        return {
            "x": self.xkind,
            "n": self.n,
            "g": self.g_rank,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "c": [str(a) for a in self.c],
        }


def _ints(text: str, what: str) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(a) for a in text.split(","))
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}")


def _rats(text: str, what: str) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(Fraction(a) for a in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{what}: expected comma-separated rationals p/q, got {text!r}")


def build_config(args) -> RunConfig:
    try:
        alg = tor.AlgebraConfig(args.x, args.n, args.g, args.D)
    except ValueError as e:
        raise UsageError(str(e))
    lam_f = _ints(args.lam, "--lambda") or (0,) * (args.g - 1)
    if len(lam_f) != args.g - 1:
        raise UsageError(f"--lambda needs {args.g - 1} fundamental coordinates")
    lam = fundamental_to_weight("sl", args.g, lam_f)
    xa = alg.x_alg
    width = {"W": args.n, "S": args.n - 1, "H": args.n // 2}[args.x]
    mu = _ints(args.mu, "--mu") or (0,) * width
    if args.x == "S" and len(mu) == args.n:
        mu = tuple(a - mu[-1] for a in mu[:-1])
    if len(mu) != width:
        raise UsageError(f"--mu needs {width} coordinates for {args.x}_{args.n}")
    c = _rats(args.c, "--c") or (Fraction(0),) * args.n
    if len(c) != args.n:
        raise UsageError(f"--c needs {args.n} entries")
    try:
        check_dominant("sl", args.g, lam)
        check_dominant(xa.kind, xa.size, mu)
    except ValueError as e:
        raise UsageError(str(e))
    return RunConfig(args.x, args.n, args.g, args.D, tuple(lam), tuple(mu), tuple(c), args.seed, args.format)


# --- suites ----------------------------------------------------------------------

def _fmt(e) -> str:
    return " + ".join(f"{c}*{s}" for s, c in sorted(e.items(), key=lambda kv: repr(kv[0])))


def suite_algebra(rc: RunConfig) -> Report:
    cfg = rc.algebra
    rep = Report("algebra")
    cap = min(2, cfg.D)
    n, bad = tor.jacobi_violations(cfg, cap)
    rep.checked += n
    for a, b, c in bad:
        rep.fail(f"jacobi {_fmt(a)} | {_fmt(b)} | {_fmt(c)}", "nonzero Jacobi sum")
    n, bad = tor.closure_violations(cfg, min(3, cfg.D))
    rep.checked += n
    for a, b in bad:
        rep.fail(f"closure [{a}, {b}]", f"bracket leaves {cfg.xkind}_{cfg.n}")
    n, bad = tor.grading_violations(cfg, cap)
    rep.checked += n
    for a, b in bad:
        rep.fail(f"grading [{_fmt(a)}, {_fmt(b)}]", "bracket not homogeneous of the summed degree")
    n, bad = tor.central_violations(cfg, cap)
    rep.checked += n
    for i, b in bad:
        rep.fail(f"central K{i + 1} vs {_fmt(b)}", "K_i is not central")
    return rep


def _module(rc: RunConfig, D: int) -> sl.SLModule:
    return sl.SLModule(rc.algebra, rc.lam, rc.mu, rc.c, D)


def suite_module(rc: RunConfig) -> Report:
    m = _module(rc, rc.D)
    rep = sl.verify_module_axiom(m, 2)
    if rc.xkind in ("S", "H"):
        rep.merge(sl.literal_vs_uniform(_module(rc, min(rc.D, 3)), 2))
    return rep


def suite_si(rc: RunConfig) -> Report:
    rep = Report("si")
    n, bad, records = tor.si2_violations(rc.algebra)
    rep.checked += n
    for x, y, lhs, rhs in bad:
        rep.fail(f"E([{_fmt(x)}, {_fmt(y)}])", f"{lhs} != trace {rhs}")
    for x, y, lhs, rhs in records:
        rep.notes.append(f"x={_fmt(x)} y={_fmt(y)} E={lhs} trace={rhs}")
    return rep


def suite_al(rc: RunConfig) -> Report:
    return sl.verify_AL_axioms(_module(rc, rc.D), 2)


def suite_derham(rc: RunConfig) -> Report:
    if rc.xkind != "W":
        raise UsageError("the de Rham suite needs --x W")
    return sl.derham_report(rc.algebra, min(rc.D, 3) if rc.n > 2 else rc.D)


def suite_socle(rc: RunConfig) -> Report:
    return sl.socle_report(_module(rc, min(rc.D, 3)), 50, rc.seed)


RUNNERS = {
    "algebra": suite_algebra,
    "module": suite_module,
    "si": suite_si,
    "al-axioms": suite_al,
    "derham": suite_derham,
    "socle": suite_socle,
}


# --- serialization -----------------------------------------------------------

def character_to_json(char: ch.GradedCharacter, config: dict) -> dict:
    entries = [
        {"degree": d, "g_weight": list(g), "x_weight": [str(a) for a in x], "mult": v}
        for (d, g, x), v in sorted(char.terms.items())
    ]
    return {"config": config, "truncation": char.D, "entries": entries}


def character_from_json(doc: dict) -> ch.GradedCharacter:
    terms = {
        (e["degree"], tuple(e["g_weight"]), tuple(Fraction(a) for a in e["x_weight"])): e["mult"]
        for e in doc["entries"]
    }
    c = doc.get("config", {}).get("c")
    return ch.GradedCharacter(terms, doc["truncation"], None if c is None else tuple(Fraction(a) for a in c))


def _table(rows: list, header: list) -> str:
    cells = [header] + [[str(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(r[i].ljust(widths[i]) for i in range(len(header))).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _emit(doc: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")


def report_text(rep: Report) -> str:
    out = [f"suite {rep.suite}: {rep.status} ({rep.checked} checked, {len(rep.violations)} violations)"]
    for c, d in sorted(rep.violations):
        out.append(f"  FAIL {c}: {d}")
    out += [f"  note {n}" for n in rep.notes]
    return "\n".join(out)


# --- commands ----------------------------------------------------------------

def cmd_verify(args) -> int:
    rc = build_config(args)
    rep = RUNNERS[args.suite](rc)
    _emit(rep.to_dict(), report_text(rep), rc.output)
    return EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_char(args) -> int:
    rc = build_config(args)
    cfg, lw, D = rc.algebra, rc.labeled, rc.D
    fn = {"irr": ch.ch_irreducible, "std": ch.ch_standard, "costd": ch.ch_costandard, "tilt": ch.ch_tilting}[args.which]
    char = fn(cfg, lw, D)
    conf = dict(rc.as_dict(), which=args.which)
    doc = character_to_json(char, conf)
    rows = [(e["degree"], ",".join(map(str, e["g_weight"])), ",".join(e["x_weight"]), e["mult"]) for e in doc["entries"]]
    _emit(doc, _table(rows, ["degree", "g_weight", "x_weight", "mult"]), rc.output)
    return EXIT_PASS


def cmd_pairing(args) -> int:
    gamma = _ints(args.gamma, "--gamma")
    if len(gamma) != args.n or any(a < 0 for a in gamma):
        raise UsageError(f"--gamma needs {args.n} non-negative integers")
    ps = pairing_polynomials(args.n, gamma)
    ok = verify_pairing(ps)
    doc = {
        "n": args.n,
        "gamma": list(gamma),
        "pairs": [{"f": str(f), "g": str(g)} for f, g in ps.pairs],
        "verified": ok,
    }
    rows = [(str(f), str(g)) for f, g in ps.pairs]
    text = _table(rows, ["f", "g"]) + f"\nverified: {ok}"
    _emit(doc, text, args.format)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_compose(args) -> int:
    rc = build_config(args)
    cfg = rc.algebra
    top = cfg.n if cfg.xkind == "W" else cfg.n_x
    if not 0 <= args.k <= top:
        raise UsageError(f"k must lie in 0..{top}")
    comp = ch.exceptional_composition(cfg, args.k, rc.D, args.mode)
    totals = comp.totals()
    zero_g = (0,) * (cfg.g_rank - 1)
    if cfg.xkind == "W" and args.k == cfg.n:
        table = {args.k: 1}
    else:
        table = ch.stated_composition(cfg, args.k)
    stated = {}
    for j, mlt in table.items():
        label = ch.factor_label(cfg, zero_g, ch.mu_k(cfg, j))
        stated[label] = stated.get(label, 0) + mlt
    doc = {
        "config": dict(rc.as_dict(), k=args.k, mode=args.mode),
        "truncation": rc.D,
        "factors": [{"label": l, "shift": s, "mult": m} for l, s, m in comp.factors],
        "totals": dict(sorted(totals.items())),
        "stated": dict(sorted(stated.items())),
        "matches_stated": totals == stated,
        "reconciliation": [{"degree": d, "module_dim": a, "factor_dim": b} for d, a, b in comp.reconciliation],
        "balanced": comp.balanced,
        "note": comp.note,
    }
    text = "\n".join(
        [
            _table([(l, s, m) for l, s, m in comp.factors], ["factor", "shift", "mult"]),
            "",
            _table(comp.reconciliation, ["degree", "module_dim", "factor_dim"]),
            "",
            f"totals: {doc['totals']}",
            f"stated: {doc['stated']}",
            f"balanced: {comp.balanced} {comp.note}".rstrip(),
        ]
    )
    _emit(doc, text, rc.output)
    return EXIT_PASS if comp.balanced and doc["matches_stated"] else EXIT_FAIL


# --- parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x", choices=("W", "S", "H"), default="W", help="vector-field algebra")
    p.add_argument("--n", type=int, default=2, help="number of variables (even for H)")
    p.add_argument("--g", type=int, default=2, help="g = sl_g")
    p.add_argument("--D", type=int, default=4, help="truncation degree")
    p.add_argument("--lambda", dest="lam", default="", help="fundamental coordinates of the g weight, e.g. 1")
    p.add_argument(
        "--mu",
        default="",
        help="epsilon coordinates of the (X_n)_0 weight; for S give n-1 values a_i - a_n (or n values, normalised)",
    )
    p.add_argument("--c", default="", help="central values, comma separated rationals p/q")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "table"), default="json")


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toroidal-o", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    _common(v)
    c = sub.add_parser("char", help="emit a graded character")
    c.add_argument("which", choices=("irr", "std", "costd", "tilt"))
    _common(c)
    pp = sub.add_parser("pairing", help="pairing polynomials for a multi-index")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--gamma", required=True)
    pp.add_argument("--format", choices=("json", "table"), default="json")
    k = sub.add_parser("compose", help="composition factors of an exceptional module")
    k.add_argument("--k", type=int, required=True)
    k.add_argument("--mode", choices=("census", "formula"), default="census")
    _common(k)
    return p


COMMANDS = {"verify": cmd_verify, "char": cmd_char, "pairing": cmd_pairing, "compose": cmd_compose}


def main(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
    except SystemExit as e:  # --help exits 0, parse errors exit 2
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
