"""Batch command-line driver.

Exit codes: 0 ok, 1 usage error, 2 computation error, 3 verification failure.
All output is deterministic (sorted serialization); the optional result cache
changes timing only, never bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import blockan, cache, center, characters, combinat, qcanon, verify
from .combinat import BlockKey, Composition, Window


class UsageError(Exception):
    pass


class ResourceError(Exception):
    """Requested scale is infeasible for exact enumeration."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# flag-string parsing


def parse_composition(text: str) -> Composition:
    """Composition syntax: "0" for the zero composition, else
    "offset=O;parts=a,b,c"."""
    text = text.strip()
    if text == "0":
        return Composition()
    fields = dict(_kv(item) for item in text.split(";") if item)
    if "parts" not in fields:
        raise UsageError(f"bad composition {text!r}: need parts=...")
    parts = [int(x) for x in fields["parts"].split(",") if x != ""]
    return Composition(parts, int(fields.get("offset", "0")))


def _kv(item: str):
    if "=" not in item:
        raise UsageError(f"bad field {item!r}: expected key=value")
    k, v = item.split("=", 1)
    return k.strip(), v.strip()


def comp_str(c: Composition) -> str:
    if c.is_zero():
        return "0"
    return f"offset={c.offset};parts={','.join(str(p) for p in c.parts)}"


def parse_block(text: str, m: int, n: int) -> BlockKey:
    """Block syntax: "mu=0;nu=0;t=1", with nonzero cores spelled as
    mu.offset=O;mu.parts=a,b (same for nu)."""
    fields = dict(_kv(item) for item in text.split(";") if item)
    comps = {}
    for name in ("mu", "nu"):
        if fields.get(name) == "0":
            comps[name] = Composition()
        elif f"{name}.parts" in fields:
            parts = [int(x) for x in fields[f"{name}.parts"].split(",") if x != ""]
            comps[name] = Composition(parts, int(fields.get(f"{name}.offset", "0")))
        elif name in fields:
            raise UsageError(f"bad {name} in block: use {name}=0 or {name}.parts=...")
        else:
            comps[name] = Composition()
    if "t" not in fields:
        raise UsageError("block needs t=...")
    try:
        return BlockKey(comps["mu"], comps["nu"], int(fields["t"]), m, n)
    except ValueError as exc:
        raise UsageError(f"invalid block: {exc}") from exc


def parse_window(text: str) -> Window:
    if ".." not in text:
        raise UsageError(f"bad window {text!r}: expected lo..hi")
    lo, hi = text.split("..", 1)
    try:
        return Window(int(lo), int(hi))
    except ValueError as exc:
        raise UsageError(f"bad window {text!r}: {exc}") from exc


def parse_key(text: str):
    rows = text.split(";")
    if len(rows) != 2:
        raise UsageError(f"bad key {text!r}: expected top;bottom")
    top = tuple(int(x) for x in rows[0].split(",") if x != "")
    bottom = tuple(int(x) for x in rows[1].split(",") if x != "")
    return top, bottom


def _emit(obj):
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


# ---------------------------------------------------------------------------
# subcommands


def cmd_blocks(args) -> int:
    w = parse_window(args.window)
    width = w.hi - w.lo + 1
    if width ** (args.m + args.n) > 10**7:
        raise ResourceError("window too wide for exhaustive tableau enumeration")
    keys = combinat.blocks_in_window(args.m, args.n, w)
    out = sorted(
        (k.to_json() for k in keys),
        key=lambda d: (d["t"], json.dumps(d, sort_keys=True)),
    )
    _emit({"blocks": out, "count": len(out)})
    return 0


def cmd_char(args) -> int:
    xi = parse_block(args.block, args.m, args.n)
    lam = parse_composition(args.lam)
    fn = characters.ch_verma_w if args.kind == "verma" else characters.ch_simple_w
    ch = fn(xi, lam)
    _emit({"kind": args.kind, "terms": ch.to_json(), "total": ch.total()})
    return 0


def cmd_verma_mult(args) -> int:
    xi = parse_block(args.block, args.m, args.n)
    lam = parse_composition(args.lam)
    kap = parse_composition(args.kappa)
    _emit({"multiplicity": blockan.verma_mult(xi, lam, kap)})
    return 0


def _matrix_labels(xi: BlockKey, w: Window):
    return blockan.compositions_in_window(xi.t, w.lo, w.hi)


def cmd_cartan(args, graded: bool) -> int:
    xi = parse_block(args.block, args.m, args.n)
    w = parse_window(args.window)
    lams = _matrix_labels(xi, w)
    if len(lams) > 2000:
        raise ResourceError(
            f"window yields {len(lams)} labels ({len(lams) ** 2} cells); narrow it"
        )
    matrix = blockan.cartan_matrix(xi, lams, graded=graded, jobs=args.jobs)
    if graded and args.q_at_1:
        matrix = [[v.eval1() for v in row] for row in matrix]
        graded = False
    labels = [comp_str(c) for c in lams]
    if args.format == "csv":
        rows = ["," + ",".join(f'"{s}"' for s in labels)]
        for label, row in zip(labels, matrix):
            cells = []
            for v in row:
                if graded:
                    cells.append('"' + json.dumps(v.to_json()["coeffs"], sort_keys=True).replace('"', '""') + '"')
                else:
                    cells.append(str(v))
            rows.append(f'"{label}",' + ",".join(cells))
        print("\n".join(rows))
    else:
        body = [[(v.to_json() if graded else v) for v in row] for row in matrix]
        _emit({"block": xi.to_json(), "labels": labels, "matrix": body})
    return 0


def cmd_h(args) -> int:
    lam = parse_composition(args.lam)
    _emit({"h": blockan.h_count(lam)})
    return 0


def cmd_end_dim(args) -> int:
    xi = parse_block(args.block, args.m, args.n)
    out = {"end_dim": blockan.end_dim(xi, args.i)}
    if args.d_invariant:
        d = blockan.d_invariant(xi, args.i)
        out["d_invariant"] = f"{d.numerator}/{d.denominator}"
    _emit(out)
    return 0


def cmd_recover(args) -> int:
    data = json.load(sys.stdin)
    matrix = data["matrix"]
    matrix = [[_entry_to_int(v) for v in row] for row in matrix]
    oracle = blockan.MatrixBlockData(data["labels"], matrix)
    t, gamma = blockan.recover_invariants(oracle)
    _emit({"t": t, "gamma": gamma.to_json()})
    return 0


def _entry_to_int(v):
    if isinstance(v, dict):  # graded entry: evaluate at q = 1
        return sum(int(c) for c in v.get("coeffs", v).values())
    return int(v)


def cmd_equiv(args) -> int:
    xi = parse_block(args.block, args.m, args.n)
    t, m, n, transpose = combinat.invariant_signature(xi)
    moves = sorted(
        (k.to_json() for k in combinat.morita_moves(xi)),
        key=lambda d: json.dumps(d, sort_keys=True),
    )
    closure = sorted(
        (k.to_json() for k in combinat.morita_closure(xi, args.closure_width)),
        key=lambda d: json.dumps(d, sort_keys=True),
    )
    _emit(
        {
            "signature": {"t": t, "m": m, "n": n, "gamma_transpose": list(transpose)},
            "normalized": combinat.normalize_key(xi).to_json(),
            "moves": moves,
            "closure": closure,
        }
    )
    return 0


def cmd_center(args) -> int:
    es = center.e_super(args.r, args.m, args.n)
    out = {
        "r": args.r,
        "e_super": es.to_json(),
        "in_I": center.in_I(es, args.m, args.n),
        "in_J": center.in_J(es, args.m, args.n, args.s_minus),
        "series_matches": center.hc_series_coeff(args.r, args.m, args.n) == es,
    }
    _emit(out)
    return 0


def cmd_cb(args) -> int:
    top, bottom = parse_key(args.key)
    if args.N ** (len(top) + len(bottom)) > 10**6:
        raise ResourceError("weight-space enumeration too large; lower N or the key length")
    fn = qcanon.dual_canonical if args.basis == "dual" else qcanon.canonical
    vec = fn(args.N, top, bottom)
    if args.pair_with is not None:
        top2, bottom2 = parse_key(args.pair_with)
        other = fn(args.N, top2, bottom2)
        _emit({"pairing": qcanon.pairing(vec, other).to_json()})
    else:
        _emit(vec.to_json())
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.profile, fault=args.inject_fault)
    failed = [r for r in results if not r["ok"]]
    if args.json:
        _emit({"profile": args.profile, "results": results, "ok": not failed})
    else:
        for r in results:
            status = "PASS" if r["ok"] else "FAIL"
            print(f"{status} {r['name']} ({r['seconds']}s): {r['detail']}")
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed [{args.profile}]")
    return 3 if failed else 0


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> _Parser:
    parser = _Parser(prog="wblocks", description=__doc__)
    parser.add_argument("--cache-dir", help="result cache directory (overrides WBLOCKS_CACHE)")
    parser.add_argument("--no-cache", action="store_true", help="disable the result cache")
    parser.add_argument("--config", help="JSON file with default flag values")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        return p

    p = add("blocks", cmd_blocks, help="enumerate block keys realized in an entry window")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", required=True, help="entry window lo..hi")

    p = add("char", cmd_char, help="Verma or simple character of a block member")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--kind", choices=["verma", "simple"], default="verma")

    p = add("verma-mult", cmd_verma_mult, help="composition multiplicity of a simple in a Verma")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--kappa", required=True)

    for name, graded in (("cartan", False), ("graded-cartan", True)):
        p = add(name, lambda a, g=graded: cmd_cartan(a, g),
                help=("graded " if graded else "") + "Cartan matrix over a label window")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--block", required=True)
        p.add_argument("--window", required=True, help="label support window lo..hi")
        p.add_argument("--format", choices=["csv", "json"], default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--q-at-1", action="store_true", help="collapse graded entries at q=1")

    p = add("h", cmd_h, help="lattice count h(lambda)")
    p.add_argument("--lambda", dest="lam", required=True)

    p = add("end-dim", cmd_end_dim, help="endomorphism dimension at t*eps_i")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--d-invariant", action="store_true")

    add("recover", cmd_recover,
        help="recover (t, gamma) from Cartan data on stdin (JSON with labels and matrix)")

    p = add("equiv", cmd_equiv, help="equivalence moves, closure and invariant signature")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", required=True)
    p.add_argument("--closure-width", type=int, default=6)

    p = add("center", cmd_center, help="supersymmetric generator and membership checks")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s-minus", type=int, default=0)
    p.add_argument("--r", type=int, required=True)

    p = add("cb", cmd_cb, help="canonical / dual canonical vectors and pairings")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--signs", required=True, help="sign sequence, e.g. ++-")
    p.add_argument("--key", required=True, help="top;bottom entries, e.g. 1,2;2")
    p.add_argument("--basis", choices=["dual", "canonical"], default="dual")
    p.add_argument("--pair-with", help="second key; output the basis pairing instead")

    p = add("verify", cmd_verify, help="run the cross-oracle verification suite")
    p.add_argument("--profile", choices=["quick", "full"], default="quick")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--inject-fault", choices=sorted(verify.FAULTS),
                   help="perturb one formula (harness self-test)")

    return parser


def _merge_window_flags(argv):
    """Fold '--window -2..2' into '--window=-2..2' so argparse does not
    mistake the negative bound for an option."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _apply_config(argv):
    """Append flags from the optional JSON config file for any option not
    given explicitly; explicit flags always win."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return argv
    with open(path) as fh:
        defaults = json.load(fh)
    for key in sorted(defaults):
        flag = "--" + key.replace("_", "-")
        if any(tok == flag or tok.startswith(flag + "=") for tok in argv):
            continue
        value = defaults[key]
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        else:
            argv.append(f"{flag}={value}")
    return argv


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_window_flags(list(argv))
    try:
        argv = _apply_config(argv)
        args = parser.parse_args(argv)
        if args.no_cache:
            cache.configure(None)
        elif args.cache_dir:
            cache.configure(args.cache_dir)
        if getattr(args, "signs", None) is not None:
            top, bottom = parse_key(args.key)
            expected = "+" * len(top) + "-" * len(bottom)
            if args.signs != expected:
                raise UsageError(f"signs {args.signs!r} do not match key rows ({expected!r})")
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception as exc:  # noqa: BLE001 - map computation failures to exit 2
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
