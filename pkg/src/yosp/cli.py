"""Command line front end: ``yosp verify | check | reflect | weight``.

Exit codes: 0 pass, 1 fail, 2 not applicable or unsupported input,
64 usage error, 65 malformed weight document.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from . import hw as H
from . import yangian as Y
from .errors import InvalidInput, NotApplicable, PoleError, UnsupportedRoot, YospError
from .exact import Polynomial, RationalFunction
from .report import Report
from .series import DEFAULT_ORDER, FactoredSeries
from .superlinalg import AlgebraContext, check_yang_baxter

EXIT_PASS, EXIT_FAIL, EXIT_NA, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65
MAX_ORDER = 16
SAMPLE_BOUND = 50


class UsageError(Exception):
    pass


class DocumentError(Exception):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- weight documents


def _schema() -> dict:
    return json.loads(resources.files("yosp").joinpath("data/weight_document.schema.json").read_text())


def _rat(s: str) -> Fraction:
    return Fraction(s)


def _poly(coeffs) -> Polynomial:
    return Polynomial([_rat(c) for c in coeffs])


def _series_doc(f: FactoredSeries) -> dict:
    out = {"roots": [str(a) for a in f.roots.elements()]}
    if f.tail != RationalFunction.one():
        out["tail"] = {
            "num": [str(c) for c in f.tail.numer.coeffs],
            "den": [str(c) for c in f.tail.denom.coeffs],
        }
    return out


def _series_from_doc(d: dict, where: str) -> FactoredSeries:
    tail = None
    if "tail" in d:
        num, den = _poly(d["tail"]["num"]), _poly(d["tail"]["den"])
        if den.is_zero():
            raise DocumentError(f"{where}.tail.den", "zero denominator")
        tail = RationalFunction(num, den)
    try:
        return FactoredSeries(d["roots"], tail)
    except InvalidInput as exc:
        raise DocumentError(f"{where}.tail", str(exc)) from exc


def weight_to_document(w: H.HighestWeight) -> dict:
    ctx = w.ctx
    return {
        "m": ctx.m,
        "n": ctx.n,
        "parity": ctx.parity_string,
        "components": [_series_doc(c) for c in w.components],
        "last": _series_doc(w.last),
    }


def weight_from_document(doc) -> H.HighestWeight:
    try:
        jsonschema.validate(doc, _schema())
    except jsonschema.ValidationError as exc:
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in exc.absolute_path)
        raise DocumentError(path, exc.message) from None
    try:
        ctx = AlgebraContext.from_string(doc["m"], doc["n"], doc["parity"])
    except InvalidInput as exc:
        raise DocumentError("$.parity", str(exc)) from None
    comps = doc["components"]
    if len(comps) != ctx.m + ctx.n:
        raise DocumentError("$.components", f"expected {ctx.m + ctx.n} entries, found {len(comps)}")
    series = [_series_from_doc(c, f"$.components[{i}]") for i, c in enumerate(comps)]
    return H.HighestWeight(ctx, tuple(series), _series_from_doc(doc["last"], "$.last"))


def load_weight(path: str) -> H.HighestWeight:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return weight_from_document(doc)


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2)


# ---------------------------------------------------------------- sampling


def sample_pairs(rng: random.Random, count: int, ok) -> list:
    """Rational pairs with ``|p|, q <= 50``, rejecting those where ``ok`` is false."""
    out, tries = [], 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * max(count, 1):
            break
        x = Fraction(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND), rng.randint(1, SAMPLE_BOUND))
        y = Fraction(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND), rng.randint(1, SAMPLE_BOUND))
        if ok(x, y):
            out.append((x, y))
    return out


def _r_ok(ctx):
    return lambda x, y: x - y not in (0, ctx.kappa)


def _ybe_ok(ctx):
    return lambda x, y: all(p not in (0, ctx.kappa) for p in (x, y, x - y))


def _module_ok(T):
    r_ok = _r_ok(T.ctx)

    def ok(x, y):
        if not r_ok(x, y):
            return False
        try:
            T.at(x), T.at(y)
        except PoleError:
            return False
        return True

    return ok


# ---------------------------------------------------------------- verify


def _context(args) -> AlgebraContext:
    if args.parity is not None:
        if not args.parity or any(ch not in "01" for ch in args.parity):
            raise UsageError(f"--parity must be a nonempty string of 0s and 1s, got {args.parity!r}")
        m, n = args.parity.count("1"), args.parity.count("0")
        if (args.m is not None and args.m != m) or (args.n is not None and args.n != n):
            raise UsageError(f"--parity {args.parity} has m={m}, n={n}, which contradicts --m/--n")
    else:
        m = 1 if args.m is None else args.m
        n = 1 if args.n is None else args.n
    if m < 1 or n < 1:
        raise UsageError("--m and --n must be positive")
    if m + n > args.max_rank:
        raise UsageError(f"m + n = {m + n} exceeds --max-rank {args.max_rank}")
    return AlgebraContext.from_string(m, n, args.parity)


def _module(ctx, args):
    v = Y.vector_representation(ctx)
    if args.module == "vector":
        return v
    try:
        c = Fraction(args.shift)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--shift must be a rational, got {args.shift!r}") from None
    return Y.tensor_shifted([v, v], [0, c], args.max_dim)


def _merge(into: Report, part: Report, prefix: str) -> None:
    for c in part.checks:
        into.add(f"{prefix}: {c.name}", c.passed, c.detail, c.witness)
    for note in part.notes:
        into.note(f"{prefix}: {note}")
    for k, v in part.data.items():
        into.data[f"{prefix}: {k}"] = v


def run_verify(args) -> Report:
    kind = args.kind
    if not 1 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must lie in 1..{MAX_ORDER}")
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    rng = random.Random(args.seed)

    if kind == "iso":
        if args.m not in (None, 1) or args.n not in (None, 1) or args.parity not in (None, "01"):
            raise UsageError("verify iso runs on osp(2|2) with parity 01 only")
        rep = Y.verify_gl12_isomorphism(order=args.order, normalization=args.normalization)
    elif kind == "reflection":
        if args.m not in (None, 1) or args.n not in (None, 1) or args.parity not in (None, "10"):
            raise UsageError("verify reflection runs on osp(2|2) with parity 10 only")
        rep = Y.certify_osp22_reflection(order=args.order)
    else:
        ctx = _context(args)
        if kind == "ybe":
            rep = check_yang_baxter(ctx, sample_pairs(rng, args.samples, _ybe_ok(ctx)))
        elif kind == "rtt":
            T = _module(ctx, args)
            if args.corrupt:
                i, j = args.corrupt
                if not (1 <= i <= ctx.N and 1 <= j <= ctx.N):
                    raise UsageError(f"--corrupt indices must lie in 1..{ctx.N}")
                T = Y.corrupted(T, i - 1, j - 1)
            rep = Y.verify_rtt(T, sample_pairs(rng, args.samples, _module_ok(T)))
        elif kind == "center":
            rep = _verify_center(ctx, args)
        elif kind == "gauss":
            rep = Report(f"verify gauss {ctx.label()}")
            for T in (Y.vector_representation(ctx), _module(ctx, _with(args, module="tensor"))):
                _merge(rep, Y.verify_gauss(T, args.order), T.label)
            rep.finish()
        else:  # pragma: no cover - argparse restricts choices
            raise UsageError(f"unknown kind {kind}")
    rep.seed = args.seed
    return rep


def _with(args, **kw):
    ns = argparse.Namespace(**vars(args))
    for k, v in kw.items():
        setattr(ns, k, v)
    return ns


def _verify_center(ctx, args) -> Report:
    rep = Report(f"verify center {ctx.label()}")
    for T in (Y.vector_representation(ctx), _module(ctx, _with(args, module="tensor"))):
        part = Y.verify_center(T, args.order)
        _merge(rep, part, T.label)
        if not part.ok:
            continue
        # compare with the highest-weight prediction on e_1 (x) ... (x) e_1
        # degree-2 weights need order >= 5 to be recovered exactly
        hx = Y.extract_highest_weight(T, Y.basis_vector(0), max(args.order, DEFAULT_ORDER))
        c = Y.scalar_series(Y.central_series(T, args.order))
        if not hx.ok or any(f is None for f in hx.rational):
            rep.add(f"{T.label}: highest weight on e_1", False, "could not extract")
            continue
        w = H.HighestWeight.from_full(ctx, [FactoredSeries.from_rational(f) for f in hx.rational])
        predicted = H.central_eigenvalue(w)
        same = predicted.series(args.order) == c
        rep.add(
            f"{T.label}: c(u) = lambda_1(u) lambda_1'(u - n + m + 1)",
            same,
            str(predicted.to_rational()),
        )
        full = H.consistency_extend(w)
        ext = [FactoredSeries.from_rational(f) for f in hx.rational]
        rep.add(
            f"{T.label}: primed components follow from lambda_1..lambda_(m+n)'",
            full == ext,
            "" if full == ext else "consistency relations violated",
        )
    return rep.finish()


# ---------------------------------------------------------------- check / reflect


def run_check(args) -> Report:
    w = load_weight(args.weight_file)
    ctx = w.ctx
    if args.mode == "necessary":
        return H.necessary_conditions(w)
    if args.mode == "osp22":
        rep = Report(f"check osp22 {ctx.label()}")
        if (ctx.m, ctx.n, ctx.parity) != (1, 1, (1, 0)):
            rep.not_applicable = "osp22 mode needs m = n = 1 and parity 10"
            return rep.finish()
        lam1, lam2, lam2p = w.components[0], w.components[1], w.last
        v = H.fd_criterion_osp22(lam1, lam2, lam2p)
        rep.add(
            "f(u) = P(u+2)/P(u) for a monic P",
            v.holds,
            f"P = {v.witness}" if v.holds else f"f = {v.f}",
            {"p": v.p, "P": v.witness, "f": v.f, "twist": str(v.twist)},
        )
        rep.add("verdict symmetric under lambda_2 <-> lambda_2'", H.fd_symmetry_check(lam1, lam2, lam2p))
        return rep.finish()
    # linear
    rep = Report(f"check linear {ctx.label()}")
    lw = H.LinearWeight.from_highest_weight(w)
    ok, diagram = H.classify_linear(lw)
    rep.data["values"] = [str(v) for v in lw.values]
    rep.add("weight is Gamma^sharp of an (m,n)-hook diagram", ok, f"Gamma = {diagram}" if ok else "")
    if ok:
        rep.data["diagram"] = list(diagram.rows)
    return rep.finish()


def run_reflect(args) -> dict:
    w = load_weight(args.weight_file)
    ctx = w.ctx
    comps = list(w.components)
    if args.kind == "osp22":
        if (ctx.m, ctx.n, ctx.parity) != (1, 1, (1, 0)):
            raise NotApplicable("the osp(2|2) reflection needs m = n = 1 and parity 10")
        l1, l2, l2p = H.odd_reflection_osp22(comps[0], comps[1], w.last)
        out = H.HighestWeight(AlgebraContext(1, 1, (0, 1)), (l1, l2), l2p)
    elif args.kind == "A":
        k = ctx.m + ctx.n
        i = args.index if args.index is not None else ctx.m
        if not 1 <= i <= k - 2:
            raise NotApplicable(f"the pair (lambda_{i}, lambda_{i + 1}) must lie among lambda_1..lambda_{k - 1}")
        if (ctx.parity[i - 1], ctx.parity[i]) != (1, 0):
            raise NotApplicable(f"parity bits {i}, {i + 1} must read 10 for this reflection")
        b1, a1 = H.odd_reflection_A(comps[i - 1], comps[i])
        comps[i - 1], comps[i] = b1, a1
        par = list(ctx.parity)
        par[i - 1], par[i] = 0, 1
        out = H.HighestWeight(AlgebraContext(ctx.m, ctx.n, tuple(par)), tuple(comps), w.last)
    else:  # chain
        m, n = ctx.m, ctx.n
        if ctx.parity != AlgebraContext.standard(m, n).parity:
            raise NotApplicable("the chain starts from the standard parity sequence")
        chain = H.chain_reflection(w)
        new = comps[: m - 1] + chain.reflected + [chain.final, comps[m + n - 1]]
        par = (1,) * (m - 1) + (0,) * (n - 1) + (1, 0)
        out = H.HighestWeight(AlgebraContext(m, n, par), tuple(new), w.last)
    return weight_to_document(out)


def run_weight(args) -> dict:
    ctx = _context(args)
    try:
        vals = [Fraction(v) for item in args.linear for v in item.split(",") if v]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--linear expects comma separated rationals, got {args.linear!r}") from None
    try:
        lw = H.LinearWeight(ctx, tuple(vals))
    except InvalidInput as exc:
        raise UsageError(str(exc)) from None
    return weight_to_document(lw.to_highest_weight())


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="yosp", description="Exact checks for orthosymplectic super-Yangians.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ctx_flags(sp):
        sp.add_argument("--m", type=int, help="number of odd directions (default 1)")
        sp.add_argument("--n", type=int, help="number of even directions (default 1)")
        sp.add_argument("--parity", help="parity sequence, e.g. 10 or 011")
        sp.add_argument("--max-rank", type=int, default=4, help="largest m + n accepted (default 4)")

    v = sub.add_parser("verify", help="verify identities on concrete modules")
    v.add_argument("kind", choices=["ybe", "rtt", "center", "gauss", "iso", "reflection"])
    ctx_flags(v)
    v.add_argument("--order", type=int, default=DEFAULT_ORDER, help=f"series truncation (default {DEFAULT_ORDER})")
    v.add_argument("--samples", type=int, default=10, help="number of sample pairs (default 10)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--module", choices=["vector", "tensor"], default="vector")
    v.add_argument("--shift", default="1/3", help="shift of the second tensor factor (default 1/3)")
    v.add_argument("--corrupt", type=int, nargs=2, metavar=("I", "J"), help="perturb t_IJ (negative control)")
    v.add_argument("--normalization", choices=list(Y.NORMALIZATIONS), default="consistent")
    v.add_argument("--max-dim", type=int, default=None, help="module dimension cap (default $YOSP_MAX_DIM or 4096)")
    v.add_argument("--json", action="store_true")

    c = sub.add_parser("check", help="decide conditions on a highest weight")
    c.add_argument("weight_file", help="WeightDocument JSON, or - for stdin")
    c.add_argument("--mode", choices=["necessary", "osp22", "linear"], default="necessary")
    c.add_argument("--json", action="store_true")

    r = sub.add_parser("reflect", help="apply an odd reflection and print the new document")
    r.add_argument("weight_file")
    r.add_argument("--kind", choices=["A", "osp22", "chain"], required=True)
    r.add_argument("--index", type=int, help="1-based index i of the pair (lambda_i, lambda_i+1) for kind A")

    w = sub.add_parser("weight", help="emit the WeightDocument of a linear highest weight")
    ctx_flags(w)
    w.add_argument(
        "--linear",
        required=True,
        nargs="+",
        help="lambda_1 ... lambda_(m+n) as rationals; use --linear=-1/2,1 for negative fractions",
    )
    return p


def _emit(rep: Report, as_json: bool) -> int:
    print(json.dumps(rep.to_json(), indent=2) if as_json else rep.to_text())
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(rep.verdict, EXIT_NA)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "max_dim", None) is not None and args.max_dim < 1:
            raise UsageError("--max-dim must be positive")
        if args.command == "verify":
            return _emit(run_verify(args), args.json)
        if args.command == "check":
            return _emit(run_check(args), args.json)
        if args.command == "reflect":
            print(dump_document(run_reflect(args)))
            return EXIT_PASS
        print(dump_document(run_weight(args)))
        return EXIT_PASS
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"yosp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"yosp: malformed weight document at {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NotApplicable, UnsupportedRoot) as exc:
        print(f"yosp: not applicable: {exc}", file=sys.stderr)
        return EXIT_NA
    except InvalidInput as exc:
        print(f"yosp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except YospError as exc:
        print(f"yosp: {exc}", file=sys.stderr)
        return EXIT_NA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
