"""``kasamicr`` command-line front end.

Every subcommand prints a report of named checks; exit status is 0 when all
pass, 1 on a failed check (first witness printed), 2 on usage errors or
unmet preconditions.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import parallel
from .errors import KasamiError

DEFAULT_SEED = 0x4B41534D


class RunReport:
    def __init__(self, command: str, config: dict, timing: bool = True):
        self.command = command
        self.config = config
        self.timing = timing
        self.checks: list[dict] = []
        self.notes: list[str] = []
        self.witness: str | None = None

    def check(self, name: str, fn, expected=None, compare=None):
        """Run ``fn`` and record it; ``compare(observed, expected)`` decides
        the verdict (equality by default, truthiness when expected is None)."""
        t0 = time.perf_counter()
        observed = fn()
        ms = (time.perf_counter() - t0) * 1000
        if compare is not None:
            ok = bool(compare(observed, expected))
        elif expected is None:
            ok = bool(observed)
        else:
            ok = observed == expected
        if not ok and self.witness is None:
            self.witness = f"{name}: {observed}"
        self.checks.append(
            {
                "check": name,
                "verdict": "pass" if ok else "fail",
                "expected": _plain(expected),
                "observed": _plain(observed),
                "millis": round(ms, 3) if self.timing else 0,
            }
        )
        return observed

    def note(self, text: str):
        self.notes.append(text)

    @property
    def ok(self) -> bool:
        return all(c["verdict"] == "pass" for c in self.checks)

    def as_json(self) -> str:
        doc = {
            "command": self.command,
            "config": self.config,
            "checks": self.checks,
            "notes": self.notes,
            "pass": self.ok,
        }
        return json.dumps(doc, indent=2, sort_keys=False)

    def as_text(self) -> str:
        cfg = " ".join(f"{k}={v}" for k, v in self.config.items())
        lines = [f"# {self.command}" + (f" ({cfg})" if cfg else "")]
        lines += self.notes
        for c in self.checks:
            tail = f" [{c['millis']:.1f} ms]" if self.timing else ""
            exp = "" if c["expected"] is None else f" expected={c['expected']}"
            lines.append(f"{c['verdict'].upper()} {c['check']}:{exp} observed={c['observed']}{tail}")
        lines.append("result: " + ("pass" if self.ok else "fail"))
        if self.witness and not self.ok:
            lines.append(f"first failure: {self.witness}")
        return "\n".join(lines) + "\n"


def _plain(x):
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def _config(q=None, p=None):
    from .kasami import kasami_config

    if q is None:
        return {}
    cfg = kasami_config(q, p or 2)
    return {"p": cfg.p, "q": cfg.q, "m": cfg.m, "modulus": f"{cfg.ctx.modulus:#x}"}


def _load(path):
    from .linear import read_gfc

    with open(path) as fh:
        return read_gfc(fh.read(), name=path)


def _write_out(code, path):
    from .linear import write_gfc

    with open(path, "w") as fh:
        fh.write(write_gfc(code))


# subcommands


def cmd_mds(args, rep: RunReport):
    from .kasami import build_mds, build_mds_trace, expected_mds_weights
    from .linear import dual, is_mds, weight_distribution

    M = build_mds(args.q)
    if args.out:
        _write_out(M, args.out)
        rep.note(f"wrote {args.out}")
    if args.out_dual:
        _write_out(dual(M), args.out_dual)
        rep.note(f"wrote {args.out_dual}")
    rep.check("dimension", lambda: M.k, 3)
    rep.check("weights M_q^perp", lambda: str(weight_distribution(M)), str(expected_mds_weights(args.q)))
    rep.check("MDS", lambda: is_mds(M))
    rep.check("trace form equal", lambda: M == build_mds_trace(args.q))


def cmd_kasami(args, rep: RunReport):
    from .cyclic import is_shift_invariant
    from .kasami import build_kasami_dual, crt_reindex, expected_weights
    from .linear import dual, weight_distribution

    C = build_kasami_dual(args.q, args.p)
    if args.cyclic_order:
        C = crt_reindex(C, args.q, args.p)
    if args.out:
        _write_out(C, args.out)
        rep.note(f"wrote {args.out}")
    if args.out_dual:
        _write_out(dual(C), args.out_dual)
        rep.note(f"wrote {args.out_dual}")
    rep.check("length", lambda: C.n, (args.q * args.q - 1) // (args.p - 1))
    rep.check("weights", lambda: str(weight_distribution(C)), str(expected_weights(args.q, args.p)))
    if args.cyclic_order:
        rep.check("shift invariant", lambda: is_shift_invariant(C))


def cmd_weights(args, rep: RunReport):
    from .linear import macwilliams, weight_distribution

    C = _load(args.input)
    rep.config.update({"n": C.n, "k": C.k, "alphabet": C.q})
    W = rep.check("weight distribution", lambda: weight_distribution(C), compare=lambda o, e: True)
    rep.check("dual distribution integral", lambda: str(macwilliams(W, C.n, C.k, C.q)), compare=lambda o, e: True)


def cmd_coset_graph(args, rep: RunReport):
    from .graphs import CosetGraph, distance_partition

    C = _load(args.input)
    G = CosetGraph(C.sub, C.gen)
    rep.config.update({"vertices": G.order})
    rep.check("degree", lambda: G.degree, C.n * (C.q - 1), compare=lambda o, e: o <= e)
    rep.check("layer sizes from 0", lambda: [len(c) for c in distance_partition(G, [0])], compare=lambda o, e: True)
    if args.export:
        count = G.export_edges(args.export)
        rep.note(f"wrote {count} edges to {args.export}")


def cmd_verify_cr(args, rep: RunReport):
    from .graphs import NotEquitable, is_completely_regular
    from .linear import dual

    C = _load(args.input)
    if args.dual:
        C = dual(C)
    rep.config.update({"n": C.n, "k": C.k, "alphabet": C.q})

    def verdict():
        res = is_completely_regular(C)
        if isinstance(res, NotEquitable):
            return res
        return res if res else "quotient not tridiagonal"

    rep.check("completely regular", verdict, compare=lambda o, e: not isinstance(o, (NotEquitable, str)))


def _sample_isometry(q, p, seed, pairs=1000):
    """Number of random pairs violating d(phi x, phi y) = (q/p) d(x, y)."""
    from .concat import phi
    from .kasami import kasami_config

    cfg = kasami_config(q, p)
    rng = np.random.default_rng(seed)
    elems = cfg.F_q.elements
    n = q + 1
    X = elems[rng.integers(0, len(elems), (pairs, n))]
    Y = elems[rng.integers(0, len(elems), (pairs, n))]
    d = np.count_nonzero(X != Y, axis=1)
    D = np.count_nonzero(phi(X, cfg.simplex) != phi(Y, cfg.simplex), axis=1)
    return int(np.count_nonzero(D != (q // p) * d))


def cmd_verify_paper(args, rep: RunReport):
    from .cyclic import is_shift_invariant
    from .graphs import coset_graph, graphs_equal_by_syndrome, is_completely_regular, is_distance_regular
    from .kasami import (
        build_kasami_dual,
        build_kasami_trace,
        build_mds,
        crt_reindex,
        expected_array,
        expected_mds_weights,
        expected_weights,
    )
    from .linear import canonical_form, dual, macwilliams, weight_distribution

    q, p = args.q, args.p
    M = build_mds(q)
    K = build_kasami_dual(q, p)
    arr = expected_array(q)
    WM = rep.check("MDS weights", lambda: weight_distribution(M), expected_mds_weights(q))
    WK = rep.check("concatenated weights", lambda: weight_distribution(K), expected_weights(q, p))
    rep.check("MacWilliams integral (M)", lambda: str(macwilliams(WM, M.n, M.k, M.q)), compare=lambda o, e: True)
    rep.check("MacWilliams integral (K)", lambda: str(macwilliams(WK, K.n, K.k, K.q)), compare=lambda o, e: True)
    Kc = crt_reindex(K, q, p)
    rep.check("cyclic after reindexing", lambda: is_shift_invariant(Kc))
    if p == 2:
        rep.check(
            "equals trace code {1, q+1}",
            lambda: canonical_form(Kc) == canonical_form(build_kasami_trace(q, p, (1, q + 1))),
        )
    else:
        rep.check("equals trace code (computed exponents)", lambda: Kc == build_kasami_trace(q, p))
    rep.check("coset graphs identical", lambda: graphs_equal_by_syndrome(M, K))
    rep.check("M_q array", lambda: _arr(is_completely_regular(dual(M))), arr)
    rep.check("K_q array", lambda: _arr(is_completely_regular(dual(K))), arr)
    rep.check("coset graph distance-regular", lambda: _arr(is_distance_regular(coset_graph(M))), arr)
    rep.check("isometry factor q/p (mismatches)", lambda: _sample_isometry(q, p, args.seed), 0)


def _arr(x):
    return x.as_tuple() if x else str(x)


def cmd_union(args, rep: RunReport):
    from .kasami import build_kasami_dual, build_mds
    from .linear import dual
    from .union import (
        build_Bk,
        check_block_partition,
        check_refined_partition,
        cr_array,
        distance3_coset_reps,
        expected_block_quotient,
        expected_refined_quotient,
        is_additive,
        quotient_matches,
        random_selection,
    )

    if args.base == "mds":
        C = dual(build_mds(args.q))
    else:
        C = dual(build_kasami_dual(args.q, args.p))
    fam = distance3_coset_reps(C)
    P, q, k = fam.P, fam.q, args.k
    rep.config.update({"base": args.base, "k": k, "mode": args.mode})
    rep.note("leaders: " + " ".join(str(v) for v in fam.leaders))
    B = build_Bk(fam, k, args.mode)
    want = ((P - 1, P - k * q, 1), (1, k * q, P - 1))
    rep.check("B_k array", lambda: _arr(cr_array(B)), want)
    rep.check(
        "refined partition quotient",
        lambda: quotient_matches(check_refined_partition(fam), expected_refined_quotient(P, q)),
    )
    if args.mode == "direct":
        rep.check(
            "4-cell quotient",
            lambda: quotient_matches(check_block_partition(fam, range(k)), expected_block_quotient(P, q, k)),
        )
        rng = np.random.default_rng(args.seed)
        sel = random_selection(fam, k, rng)
        rep.check(f"random selection {sel} array", lambda: _arr(cr_array(build_Bk(fam, k, selection=sel))), want)
    additive = is_additive(B)
    rep.note(f"additive: {str(additive).lower()}")
    if args.mode == "additive_tower" or k == 2:
        rep.check("additive", lambda: additive)
    if args.export:
        B.export(args.export)
        rep.note(f"wrote {len(B)} vertices to {args.export}")


def cmd_aut(args, rep: RunReport):
    from .aut import expected_group_orders, gammal_certificate

    gl, ggl = expected_group_orders(args.q)
    order = gl if args.level == "monomial" else ggl
    rep.note(f"group level: {args.level}")
    rep.note(("certified order: " if args.q == 4 else "lower bound: ") + str(order))
    if args.q != 4:
        rep.note("upper bound: unverified at this size")
    for ln in gammal_certificate(args.q):
        if args.level == "monomial" and "semilinear" in ln.check:
            continue
        rep.check(ln.check, lambda ln=ln: ln.observed, ln.expected)


def cmd_field(args, rep: RunReport):
    from .gf2e import build_field, is_irreducible_f2

    ctx = build_field(args.e, args.poly)
    rep.config.update({"e": ctx.e, "modulus": f"{ctx.modulus:#x}"})
    rep.check("irreducible", lambda: is_irreducible_f2(ctx.modulus))
    rep.check("alpha order", lambda: ctx.order_of(ctx.alpha), ctx.n)
    rep.check("subfield degrees", lambda: [d for d in range(1, ctx.e + 1) if ctx.e % d == 0], compare=lambda o, e: True)


def _positive_pow2(text):
    v = int(text, 0)
    if v < 2 or v & (v - 1):
        raise argparse.ArgumentTypeError(f"{text} is not a power of 2 >= 2")
    return v


def _global_options(ap, seed, threads, flag):
    ap.add_argument("--json", action="store_true", default=flag, help="emit a JSON report")
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=seed)
    ap.add_argument("--threads", type=int, default=threads, help="worker cap (env KASAMI_THREADS)")
    ap.add_argument("--no-timing", action="store_true", default=flag, help="zero the timing fields")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kasamicr", description=__doc__.splitlines()[0])
    _global_options(ap, DEFAULT_SEED, None, False)
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    real_add = sub.add_parser
    sub.add_parser = lambda *a, **kw: real_add(*a, parents=[common], **kw)

    s = sub.add_parser("mds", help="build M_q^perp")
    s.add_argument("--q", type=_positive_pow2, required=True)
    s.add_argument("--out", help="write the generator as GFC")
    s.add_argument("--out-dual", help="write the dual code (the CR code) as GFC")
    s.set_defaults(fn=cmd_mds)

    s = sub.add_parser("kasami", help="build the concatenated code")
    s.add_argument("--q", type=_positive_pow2, required=True)
    s.add_argument("--p", type=_positive_pow2, default=2)
    s.add_argument("--cyclic-order", action="store_true")
    s.add_argument("--out", help="write the generator as GFC")
    s.add_argument("--out-dual", help="write the dual code (the CR code) as GFC")
    s.set_defaults(fn=cmd_kasami)

    s = sub.add_parser("weights", help="weight distribution of a GFC file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(fn=cmd_weights)

    s = sub.add_parser("coset-graph", help="coset graph with the file as check matrix")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--export")
    s.set_defaults(fn=cmd_coset_graph)

    s = sub.add_parser("verify-cr", help="complete regularity of a GFC code")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--dual", action="store_true", help="test the dual of the file's code")
    s.set_defaults(fn=cmd_verify_cr)

    s = sub.add_parser("verify-paper", help="full construction suite for (q, p)")
    s.add_argument("--q", type=_positive_pow2, required=True)
    s.add_argument("--p", type=_positive_pow2, default=2)
    s.set_defaults(fn=cmd_verify_paper)

    s = sub.add_parser("union", help="union of distance-3 cosets")
    s.add_argument("--q", type=_positive_pow2, required=True)
    s.add_argument("--p", type=_positive_pow2, default=2)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", choices=["direct", "additive_tower"], default="direct")
    s.add_argument("--base", choices=["kasami", "mds"], default="kasami")
    s.add_argument("--export")
    s.set_defaults(fn=cmd_union)

    s = sub.add_parser("aut", help="GammaL(2, q) certificate")
    s.add_argument("--q", type=_positive_pow2, required=True)
    s.add_argument("--level", choices=["monomial", "semilinear"], default="semilinear")
    s.set_defaults(fn=cmd_aut)

    s = sub.add_parser("field", help="GF(2^e) summary")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--poly", type=lambda s: int(s, 0), default=None)
    s.set_defaults(fn=cmd_field)
    return ap


def run(argv=None, out=None) -> tuple[RunReport | None, int]:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)
    if args.threads is not None:
        if args.threads < 1:
            print("kasamicr: --threads must be positive", file=sys.stderr)
            return None, 2
        parallel.set_threads(args.threads)
    try:
        cfg = _config(getattr(args, "q", None), getattr(args, "p", None))
        rep = RunReport(" ".join(["kasamicr"] + list(argv if argv is not None else sys.argv[1:])), cfg, not args.no_timing)
        args.fn(args, rep)
    except (KasamiError, OSError) as exc:
        print(f"kasamicr: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, 2
    out.write(rep.as_json() + "\n" if args.json else rep.as_text())
    if not rep.ok:
        print(f"kasamicr: {rep.witness}", file=sys.stderr)
    return rep, 0 if rep.ok else 1


def main(argv=None) -> int:
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
