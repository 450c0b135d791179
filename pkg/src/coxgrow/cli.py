"""``coxgrow`` command-line front end."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .coxcore import CoxeterMatrix, CoxFormatError, CoxValidationError, load_matrix, serialize_matrix
from .words import DEFAULT_BFS_CAP, DEFAULT_CLOSURE_CAP, ResourceError

SCHEMA_VERSION = "coxgrow/1"

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_UNAVAILABLE = 69
EXIT_SOFTWARE = 70

log = logging.getLogger("coxgrow")


@dataclass
class Config:
    eps: Fraction = Fraction(1, 10**12)
    bfs_cap: int = DEFAULT_BFS_CAP
    closure_cap: int = DEFAULT_CLOSURE_CAP
    prime_list: Optional[list[int]] = None
    parallelism: int = field(default_factory=lambda: _default_threads())
    output: str = "text"

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.bfs_cap <= 0 or self.closure_cap <= 0:
            raise ValueError("caps must be positive")


def _default_threads() -> int:
    env = os.environ.get("COXGROW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class VerificationFailed(Exception):
    pass


# -- helpers ------------------------------------------------------------------


def _load(path: str) -> CoxeterMatrix:
    return load_matrix(path)


def _parse_set(text: str, M: CoxeterMatrix) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        out.append(_parse_gen(tok, M))
    return out


def _parse_gen(tok: str, M: CoxeterMatrix) -> int:
    if M.names and tok in M.names:
        return M.names.index(tok)
    t = tok[1:] if tok[:1] in ("s", "r") and tok[1:].isdigit() else tok
    if not t.isdigit():
        raise UsageError(f"unknown generator {tok!r}")
    k = int(t) - 1
    if not 0 <= k < M.rank:
        raise UsageError(f"generator {tok!r} out of range")
    return k


def _parse_sigma(text: str, M: CoxeterMatrix) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ">" not in part:
            raise UsageError(f"bad sigma item {part!r}; expected a>b")
        a, b = part.split(">", 1)
        out[_parse_gen(a.strip(), M)] = _parse_gen(b.strip(), M)
    return out


class Out:
    def __init__(self, cfg: Config, command: str):
        self.cfg = cfg
        self.command = command

    def emit(self, payload: dict, text: Sequence[str]) -> None:
        if self.cfg.output == "json":
            doc = {"schema": SCHEMA_VERSION, "command": self.command}
            doc.update(payload)
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            for line in text:
                print(line)


def _poly_str(p) -> str:
    return str(p)


# -- subcommands -----------------------------------------------------------


def cmd_classify(args, cfg: Config) -> int:
    from .classify import classify, gram_signature_float, spherical_residues

    M = _load(args.file)
    c = classify(M)
    payload = c.to_dict()
    payload["residues"] = len(spherical_residues(M))
    text = [c.kind.value]
    if len(c.components) > 1 or args.details:
        text.append("components: " + ", ".join(f"{t.name}{list(x)}" for t, x in zip(c.component_types, [[i + 1 for i in comp] for comp in c.components])))
    if args.signature:
        sig = gram_signature_float(M)
        payload["signature"] = list(sig)
        text.append(f"gram signature (float): {sig}")
    Out(cfg, "classify").emit(payload, text)
    return EXIT_OK


def cmd_series(args, cfg: Config) -> int:
    from .growth import growth_sequence, poincare

    M = _load(args.file)
    p = poincare(M)
    a, b = growth_sequence(M, args.terms)
    payload = {"num": list(p.num.coeffs), "den": list(p.den.coeffs), "coefficients": a, "ball_sizes": b}
    text = [f"p(t) = ({_poly_str(p.num)}) / ({_poly_str(p.den)})", "a: " + " ".join(map(str, a))]
    Out(cfg, "series").emit(payload, text)
    return EXIT_OK


def cmd_rate(args, cfg: Config) -> int:
    from .catalog import _dec
    from .growth import growth_rate

    M = _load(args.file)
    r = growth_rate(M, cfg.eps)
    payload = r.to_dict()
    if r.kind == "Algebraic":
        text = [f"{r.kind}: [{_dec(r.lo, 15)}, {_dec(r.hi, 15)}]"]
    else:
        text = [r.kind]
    Out(cfg, "rate").emit(payload, text)
    return EXIT_OK


def cmd_spheres(args, cfg: Config) -> int:
    from .growth import growth_sequence
    from .words import spheres

    M = _load(args.file)
    payload: dict = {"n": args.n}
    text = []
    bfs = ser = None
    if args.oracle in ("bfs", "both"):
        bfs, _ = spheres(M, args.n, args.method, bfs_cap=cfg.bfs_cap, closure_cap=cfg.closure_cap)
        payload["bfs"] = bfs
        text.append(" ".join(map(str, bfs)))
    if args.oracle in ("series", "both"):
        ser, _ = growth_sequence(M, args.n)
        payload["series"] = ser
        if args.oracle == "series":
            text.append(" ".join(map(str, ser)))
    if bfs is not None and ser is not None:
        payload["match"] = bfs == ser
        text.append("match" if bfs == ser else "MISMATCH series: " + " ".join(map(str, ser)))
        if bfs != ser:
            Out(cfg, "spheres").emit(payload, text)
            return EXIT_SOFTWARE
    Out(cfg, "spheres").emit(payload, text)
    return EXIT_OK


def cmd_leq(args, cfg: Config) -> int:
    from .structure import leq_order

    M, N = _load(args.file1), _load(args.file2)
    phi = leq_order(M, N)
    if phi is None:
        Out(cfg, "leq").emit({"comparable": False, "image": None}, ["incomparable"])
    else:
        img = [k + 1 for k in phi.image]
        Out(cfg, "leq").emit(
            {"comparable": True, "image": img},
            ["injection: " + ", ".join(f"{M.name(i)}->{N.name(k)}" for i, k in enumerate(phi.image))],
        )
    return EXIT_OK


def _tuple_from_args(args, M):
    from .structure import make_mutable

    return make_mutable(M, _parse_set(args.x, M), _parse_set(args.y, M), _parse_sigma(args.sigma, M))


def cmd_mutate(args, cfg: Config) -> int:
    from .coxcore import coxeter_isomorphic
    from .structure import InvalidTupleError, is_twist, mutate, verify_thm_c

    M = _load(args.file)
    try:
        tup = _tuple_from_args(args, M)
    except InvalidTupleError as e:
        payload = {"valid": False, "condition": e.condition, "error": str(e)}
        Out(cfg, "mutate").emit(payload, [f"invalid tuple: {e}"])
        return EXIT_DATAERR
    N = mutate(tup)
    rep = verify_thm_c(tup)
    effective = coxeter_isomorphic(M, N) is None
    payload = {
        "valid": True,
        "tuple": tup.to_dict(),
        "matrix": serialize_matrix(N),
        "twist": is_twist(tup),
        "effective": effective,
        "series_equal": rep.series_equal,
        "nonempty_policy": "X and Y required nonempty",
    }
    text = [
        serialize_matrix(N).rstrip("\n"),
        f"# twist={is_twist(tup)} effective={effective} series_equal={rep.series_equal}",
    ]
    Out(cfg, "mutate").emit(payload, text)
    return EXIT_OK


def cmd_enum(args, cfg: Config) -> int:
    from .classify import enumerate_hyperbolic
    from .structure import minimal_elements

    items = enumerate_hyperbolic(args.min_rank, args.max_rank)
    if args.minimal:
        items = minimal_elements(items)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, M in enumerate(items, 1):
            with open(os.path.join(args.out, f"hyp-r{M.rank}-{i:03d}.cox"), "w", encoding="utf-8") as fh:
                fh.write(serialize_matrix(M))
    payload = {"count": len(items), "matrices": [serialize_matrix(M) for M in items]}
    by_rank: dict[int, int] = {}
    for M in items:
        by_rank[M.rank] = by_rank.get(M.rank, 0) + 1
    text = [f"{len(items)} classes"] + [f"  rank {r}: {c}" for r, c in sorted(by_rank.items())]
    Out(cfg, "enum-hyperbolic").emit(payload, text)
    return EXIT_OK


def cmd_reduced_words(args, cfg: Config) -> int:
    from .words import format_word, normal_form, reduced_words

    M = _load(args.file)
    w = tuple(_parse_set(" ".join(args.word), M)) if args.word else ()
    nf = normal_form(M, w, cfg.closure_cap)
    words = reduced_words(M, nf, cfg.closure_cap)
    payload = {"normal_form": [x + 1 for x in nf], "count": len(words), "words": [[x + 1 for x in v] for v in words]}
    text = [f"normal form: {format_word(nf, M)}", f"{len(words)} reduced words"] + [format_word(v, M) for v in words]
    Out(cfg, "reduced-words").emit(payload, text)
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    from . import catalog

    what = args.what
    reports = []
    t0 = time.perf_counter()
    if what in ("tau", "all"):
        reports.append(catalog.verify_tau(cfg.eps, primes=cfg.prime_list))
    if what in ("gap", "all"):
        reports.append(catalog.verify_gap(args.min_rank, args.max_rank, cfg.eps, cfg.parallelism))
    if what in ("examples", "all"):
        reports.append(catalog.verify_examples(cfg.eps))
    if what in ("entries", "all"):
        reports.append(catalog.verify_entries(cfg.eps))
    if what == "monotone":
        reports.append(_verify_thm_a(args))
    if what == "invariance":
        reports.append(_verify_thm_c(args))
    log.info("verify %s finished in %.2fs", what, time.perf_counter() - t0)
    ok = all(r.ok for r in reports)
    payload = {"ok": ok, "reports": [r.to_dict() for r in reports]}
    text = [line for r in reports for line in r.lines()]
    Out(cfg, "verify").emit(payload, text)
    return EXIT_OK if ok else EXIT_SOFTWARE


def _verify_thm_a(args):
    from .catalog import Report
    from .structure import leq_order, verify_thm_a

    if not args.files or len(args.files) != 2:
        raise UsageError("verify monotone needs two matrix files")
    M, N = _load(args.files[0]), _load(args.files[1])
    rep = Report("monotone")
    phi = leq_order(M, N)
    if not rep.add("first system lies below the second", phi is not None):
        return rep
    r = verify_thm_a(M, N, phi, args.k)
    rep.add("a_k <= a'_k", r.monotone, f"{r.a_source} vs {r.a_target}")
    rep.add("transported normal forms injective", r.injective)
    rep.add("lengths preserved", r.length_preserving, r.counterexample or "")
    rep.data = r.to_dict()
    return rep


def _verify_thm_c(args):
    from .catalog import Report
    from .structure import verify_thm_c

    if not args.files or len(args.files) != 1:
        raise UsageError("verify invariance needs one matrix file")
    if not (args.x and args.y and args.sigma):
        raise UsageError("verify invariance needs --x, --y and --sigma")
    M = _load(args.files[0])
    tup = _tuple_from_args(args, M)
    r = verify_thm_c(tup, check_isomorphism=True)
    rep = Report("invariance")
    rep.add("sharp map is a bijection of spherical residues", r.sharp_bijective)
    rep.add("residue types preserved", r.types_preserved)
    rep.add("Poincaré series equal", r.series_equal)
    rep.data = r.to_dict()
    return rep


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log stage timings")
    common.add_argument("--eps", help="rate bracket width (rational, e.g. 1/10^12 or 1e-12)")
    common.add_argument("--bfs-cap", type=int, default=DEFAULT_BFS_CAP)
    common.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP)

    p = _Parser(prog="coxgrow", description="Growth series and growth rates of Coxeter systems.", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="spherical / affine / hyperbolic / other")
    s.add_argument("file")
    s.add_argument("--signature", action="store_true", help="add the floating-point Gram signature")
    s.add_argument("--details", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("series", parents=[common], help="Poincaré series")
    s.add_argument("file")
    s.add_argument("--terms", type=int, default=10)
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("rate", parents=[common], help="certified growth rate")
    s.add_argument("file")
    s.set_defaults(func=cmd_rate)

    s = sub.add_parser("spheres", parents=[common], help="sphere sizes by BFS and/or series")
    s.add_argument("file")
    s.add_argument("--n", type=int, default=6)
    s.add_argument("--oracle", choices=("bfs", "series", "both"), default="bfs")
    s.add_argument("--method", choices=("tits", "roots"), default="tits")
    s.set_defaults(func=cmd_spheres)

    s = sub.add_parser("leq", parents=[common], help="test FILE1 <= FILE2")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_leq)

    s = sub.add_parser("mutate", parents=[common], help="mutate a matrix")
    s.add_argument("file")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s.add_argument("--sigma", required=True, help='e.g. "1>2,2>3,3>1"')
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("enum-hyperbolic", parents=[common], help="enumerate hyperbolic systems of rank >= 4")
    s.add_argument("--min-rank", type=int, default=4)
    s.add_argument("--max-rank", type=int, default=10)
    s.add_argument("--minimal", action="store_true", help="keep only minimal elements")
    s.add_argument("--out", help="directory for .cox output")
    s.set_defaults(func=cmd_enum)

    s = sub.add_parser("reduced-words", parents=[common], help="all reduced words of an element")
    s.add_argument("file")
    s.add_argument("word", nargs="*", help="generators, 1-based or by name")
    s.set_defaults(func=cmd_reduced_words)

    s = sub.add_parser("verify", parents=[common], help="verification pipelines")
    s.add_argument("what", choices=("tau", "gap", "examples", "entries", "all", "monotone", "invariance"))
    s.add_argument("files", nargs="*")
    s.add_argument("--k", type=int, default=8)
    s.add_argument("--x")
    s.add_argument("--y")
    s.add_argument("--sigma")
    s.add_argument("--min-rank", type=int, default=4)
    s.add_argument("--max-rank", type=int, default=10)
    s.add_argument("--primes", help="comma-separated primes for the irreducibility evidence")
    s.set_defaults(func=cmd_verify)
    return p


def _parse_eps(text: Optional[str]) -> Fraction:
    if not text:
        return Fraction(1, 10**12)
    t = text.replace(" ", "")
    if "^" in t:
        num, _, rest = t.partition("/")
        base, _, exp = rest.partition("^")
        return Fraction(int(num), int(base) ** int(exp))
    return Fraction(t)


def _parse_primes(text: Optional[str]) -> Optional[list[int]]:
    if not text:
        return None
    out = [int(x) for x in text.split(",") if x.strip()]
    if not out or any(q < 2 for q in out):
        raise UsageError("--primes needs a list of primes")
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand")
        cfg = Config(
            eps=_parse_eps(args.eps),
            bfs_cap=args.bfs_cap,
            closure_cap=args.closure_cap,
            prime_list=_parse_primes(getattr(args, "primes", None)),
            output="json" if args.json else "text",
        )
    except (UsageError, ValueError) as e:
        print(f"coxgrow: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(relativeCreated)8.0fms %(name)s: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.DEBUG if args.verbose > 1 else logging.INFO)
    else:
        handler = None
    t0 = time.perf_counter()
    try:
        code = args.func(args, cfg)
        log.info("%s done in %.3fs", args.command, time.perf_counter() - t0)
    except UsageError as e:
        print(f"coxgrow: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CoxFormatError, CoxValidationError, OSError) as e:
        print(f"coxgrow: bad input: {e}", file=sys.stderr)
        return EXIT_DATAERR
    except ResourceError as e:
        print(f"coxgrow: resource limit: {e}", file=sys.stderr)
        return EXIT_UNAVAILABLE
    except (ValueError, ArithmeticError) as e:
        print(f"coxgrow: {e}", file=sys.stderr)
        return EXIT_DATAERR
    finally:
        if handler is not None:
            log.removeHandler(handler)
    return code


if __name__ == "__main__":
    sys.exit(main())
