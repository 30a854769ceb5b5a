"""Command-line interface: ``qtqft [global flags] <subcommand> ...``.

Exit status is 0 on success, 1 on argument errors and 2 when an integrity
check (exact vs. spectral, or monomial extraction) fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import spectrum as sp
from .cache import load_or_build
from .checks import RECONCILE_REL, run_suite
from .fusion import QClass, poincare_pair, product_all
from .laurent import LaurentInt
from .partitions import BoxContext, InvalidPartition, parse_partition
from .tqft import (
    MAX_ENTRIES,
    IntegrityError,
    ResourceCapExceeded,
    eta_class,
    extract_count,
    holla_exact,
    holla_parameters,
    integrate,
    verlinde_exact,
    weighted_map,
)

log = logging.getLogger("qtqft")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex(z: complex) -> dict:
    return {"re": float(f"{z.real:.17g}"), "im": float(f"{z.imag:.17g}")}


def _laurent(v: LaurentInt, at_one: bool):
    if at_one:
        return str(v.at_one())
    return v.to_json()


def _laurent_text(v: LaurentInt, at_one: bool) -> str:
    return str(v.at_one()) if at_one else str(v)


def _qclass(x: QClass, at_one: bool):
    if at_one:
        return [{"partition": list(a), "value": str(v)} for a, v in x.at_one().items()]
    return x.to_json()


def _qclass_text(x: QClass, at_one: bool) -> str:
    if not at_one:
        return str(x)
    terms = x.at_one()
    if not terms:
        return "0"
    pieces = []
    for a, v in terms.items():
        label = "sigma_(" + ",".join(map(str, a)) + ")"
        pieces.append(label if v == 1 else f"{v}*{label}")
    return " + ".join(pieces)


def _partitions(ctx, texts):
    return [parse_partition(ctx, t) for t in texts]


def _reconcile(name: str, exact: float, value: float):
    err = abs(exact - value) / max(1.0, abs(exact))
    if err >= RECONCILE_REL:
        raise IntegrityError(f"{name}: exact {exact} vs spectral {value} (relative error {err:.3g})")
    return err


# -- subcommands ----------------------------------------------------------


def cmd_product(ctx, args):
    x = product_all(ctx, (QClass.basis(ctx, a) for a in _partitions(ctx, args.factors)))
    return {"product": _qclass(x, args.q_at_one)}, _qclass_text(x, args.q_at_one)


def cmd_pair(ctx, args):
    a, b = _partitions(ctx, [args.a, args.b])
    v = poincare_pair(QClass.basis(ctx, a), QClass.basis(ctx, b))
    return {"pair": _laurent(v, args.q_at_one)}, _laurent_text(v, args.q_at_one)


def cmd_gw(ctx, args):
    ins = _partitions(ctx, args.insertions)
    v = integrate(ctx, args.g, args.d, ins)
    payload = {"g": args.g, "d": args.d, "insertions": [list(a) for a in ins],
               "integral": _laurent(v, args.q_at_one)}
    return payload, _laurent_text(v, args.q_at_one)


def _tensor_output(t, at_one):
    data = t.to_json()
    if at_one:
        for rec in data["entries"]:
            rec["laurent"] = str(sum(int(c) for c in rec["laurent"].values()))
    lines = []
    for (ins, outs), v in t.sorted_items():
        val = _laurent_text(v, at_one)
        if val == "0":
            continue
        src = " (x) ".join(",".join(map(str, a)) for a in ins) or "1"
        dst = " (x) ".join(",".join(map(str, c)) for c in outs) or "1"
        lines.append(f"[{src}] -> [{dst}]: {val}")
    return data, "\n".join(lines) if lines else "0"


def cmd_tensor(ctx, args):
    t = weighted_map(ctx, args.g, args.d, args.m, args.n, args.max_entries)
    return _tensor_output(t, args.q_at_one)


def cmd_eta(ctx, args):
    t = eta_class(ctx, args.g, args.d, args.N, args.max_entries)
    return _tensor_output(t, args.q_at_one)


def cmd_verlinde(ctx, args):
    exact = verlinde_exact(ctx, args.g)
    value = sp.verlinde_sine(ctx, args.g)
    err = _reconcile("verlinde", exact, value)
    return {"g": args.g, "verlinde": str(exact), "sine": value, "relative_error": err}, str(exact)


def cmd_holla(ctx, args):
    e, d = holla_parameters(ctx, args.g, args.gamma)
    exact = holla_exact(ctx, args.g, args.gamma)
    value = sp.holla_spectral(ctx, args.g, args.gamma)
    if abs(value.imag) >= RECONCILE_REL * max(1.0, abs(exact)):
        raise IntegrityError(f"holla: spectral value {value} is not real")
    err = _reconcile("holla", exact, value.real)
    payload = {"g": args.g, "gamma": args.gamma, "e": e, "d": d, "count": str(exact),
               "spectral": _complex(value), "relative_error": err}
    return payload, str(exact)


def cmd_closed(ctx, args):
    v = integrate(ctx, args.g, args.d)
    e0, count = extract_count(ctx, args.g, args.d)
    value = sp.closed_invariant_spectral(ctx, args.g, args.d)
    err = abs(v.at_one() - value) / max(1.0, abs(v.at_one()))
    if err >= RECONCILE_REL:
        raise IntegrityError(f"closed: exact {v.at_one()} vs spectral {value}")
    payload = {"g": args.g, "d": args.d, "invariant": _laurent(v, args.q_at_one), "e": e0,
               "count": str(count), "spectral": _complex(value), "relative_error": err}
    return payload, _laurent_text(v, args.q_at_one)


def cmd_spectrum(ctx, args):
    rows = []
    lines = [f"{'I':<16}{'Vand':>14}{'a_I':>14}  roots"]
    for P in sp.spectral_points(ctx):
        vd, aI = sp.vand(P), sp.coupling_a(P)
        rows.append({"subset": list(P.subset), "roots": [_complex(x) for x in P.roots],
                     "vand": vd, "a": aI})
        roots = ", ".join(f"{x.real:+.4f}{x.imag:+.4f}i" for x in P.roots)
        lines.append(f"{str(P.subset):<16}{vd:>14.6f}{aI:>14.6f}  {roots}")
    return {"points": rows}, "\n".join(lines)


def cmd_check(ctx, args):
    results = run_suite(args.suite, workers=args.workers)
    passed = sum(r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{passed}/{len(results)} checks passed")
    payload = {"suite": args.suite, "passed": passed, "total": len(results),
               "checks": [r.to_json() for r in results]}
    if passed != len(results):
        raise _CheckFailure(payload, "\n".join(lines))
    return payload, "\n".join(lines)


class _CheckFailure(Exception):
    def __init__(self, payload, text):
        super().__init__(text)
        self.payload = payload
        self.text = text


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qtqft", description="Exact weighted TQFT of Quot schemes on Grassmannians.")
    p.add_argument("--r", type=int, default=2, help="rank of the subbundles (default 2)")
    p.add_argument("--s", type=int, default=2, help="corank (default 2)")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--q-at-one", action="store_true", help="specialize q = 1 in the output")
    p.add_argument("--cache-dir", default=None, help="structure table cache (default $QTQFT_CACHE_DIR)")
    p.add_argument("--max-entries", type=int, default=MAX_ENTRIES, help="tensor size cap")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("product", help="quantum product of Schubert classes")
    s.add_argument("factors", nargs="+", metavar="PARTITION")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("pair", help="Poincare pairing")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("gw", help="master integral over the compiled Quot scheme")
    s.add_argument("g", type=int)
    s.add_argument("d", type=int)
    s.add_argument("insertions", nargs="*", metavar="PARTITION")
    s.set_defaults(func=cmd_gw)

    s = sub.add_parser("tensor", help="weighted TQFT map F(g|d)_m^n")
    for name in ("g", "d", "m", "n"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("verlinde", help="Verlinde number, exact and from the sine formula")
    s.add_argument("g", type=int)
    s.set_defaults(func=cmd_verlinde)

    s = sub.add_parser("holla", help="points of the finite Quot scheme indexed by gamma")
    s.add_argument("g", type=int)
    s.add_argument("gamma", type=int)
    s.set_defaults(func=cmd_holla)

    s = sub.add_parser("closed", help="closed invariant F(g|d)_0^0, exact and spectral")
    s.add_argument("g", type=int)
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_closed)

    s = sub.add_parser("eta", help="pushforward class eta_{g,d,N}")
    s.add_argument("g", type=int)
    s.add_argument("d", type=int)
    s.add_argument("N", type=int)
    s.set_defaults(func=cmd_eta)

    s = sub.add_parser("spectrum", help="spectral points, Vandermonde norms and a_I")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("check", help="run the self-check suite")
    s.add_argument("--suite", choices=["fast", "all"], default="fast")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_check)
    return p


def _emit(payload, text, as_json: bool, out):
    if as_json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        ctx = BoxContext(args.r, args.s)
        if args.max_entries < 1:
            raise UsageError("--max-entries must be positive")
        load_or_build(ctx, args.cache_dir)
        payload, text = args.func(ctx, args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 1
    except InvalidPartition as exc:
        err.write(f"invalid partition: {exc}\n")
        return 1
    except ResourceCapExceeded as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return 1
    except IntegrityError as exc:
        err.write(f"integrity check failed: {exc}\n")
        return 2
    except _CheckFailure as exc:
        _emit(exc.payload, exc.text, args.json, out)
        return 2
    except (ValueError, IndexError) as exc:
        err.write(f"argument error: {exc}\n")
        return 1
    payload = {"r": ctx.r, "s": ctx.s, "command": args.command, **payload}
    _emit(payload, text, args.json, out)
    return 0


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
