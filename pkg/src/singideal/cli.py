"""Command line entry point.  Every subcommand writes a JSON certificate.

Exit status: 0 if the requested check passes, 1 if it fails (the certificate
then carries a witness), 2 for invalid flags.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .generators import (
    ProductFamily,
    block_cubics,
    candidate_basis,
    det_pencil_generators,
    fano_minors,
    quartic_products,
)
from .groebner import buchberger, is_groebner_basis, non_squarefree_leaders
from .poly import PolyRing, is_squarefree, monomial_divides, qstr
from .rep import cauchy_check, lr_coefficient, obstruction_check
from .verify import (
    CompressionSpec,
    DegreeSpan,
    Tensor,
    act,
    dit_random,
    random_group_element,
    random_matrix,
    sample_sing,
    stream_rng,
    vanish_check,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ACT_CONVENTION = "B_j = sum_i U[i][j] * (V A_i W)"


class UsageError(Exception):
    pass


def _ring(args) -> PolyRing:
    return PolyRing.matrices(args.n, args.m, within=args.order)


def _need_n2(args):
    if args.n != 2:
        raise UsageError(f"{args.cmd} is only defined for n = 2 (got n = {args.n})")


def _family(args, ring, name):
    """Generator family by name; ``candidate`` is the full n = 2 candidate basis."""
    m = args.m
    if name == "quadric":
        return det_pencil_generators(args.n, m, ring).elements
    if name == "fano":
        return fano_minors(args.n, m, ring).elements
    _need_n2(args)
    if name == "cubic":
        return block_cubics(m, ring).elements if m >= 3 else []
    if name == "quartic":
        return quartic_products(m, ring).elements if m >= 2 else []
    if name == "candidate":
        return candidate_basis(m, ring)
    raise UsageError(f"unknown family {name!r}")


def _family_set(args, ring, name):
    m = args.m
    if name == "quadric":
        return det_pencil_generators(args.n, m, ring)
    if name == "fano":
        return fano_minors(args.n, m, ring)
    _need_n2(args)
    if name == "cubic":
        if m < 3:
            raise UsageError("block cubics need m >= 3")
        return block_cubics(m, ring)
    if name == "quartic":
        return quartic_products(m, ring)
    raise UsageError(f"gen does not support family {name!r}")


def _read_tensor(path: str) -> Tensor:
    try:
        return Tensor.from_json(json.loads(Path(path).read_text()))
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read tensor from {path}: {exc}") from exc


def _sample(args, idx: int, s: int | None = None) -> Tensor:
    if s is None:
        s = idx % args.n
    return sample_sing(CompressionSpec(args.n, args.m, s, seed=(args.seed, idx)))


# ---------------------------------------------------------------------------
# subcommands; each returns (passed, result dict)

def cmd_gen(args):
    ring = _ring(args)
    if args.family == "product":
        if args.n != 3:
            raise UsageError("product equations are generated for n = 3")
        fam = ProductFamily(args.n, args.m, ring)
        rng = stream_rng(args.seed, "gen-products")
        eqs = list(fam.sample(rng, args.count)) if args.count else list(fam)
        lines = [" * ".join(f"({f.poly.serialize()})" for f in e.factors) for e in eqs]
        manifest = {"family": "ProductEquation", "params": {"n": args.n, "m": args.m},
                    "count": len(lines), "family_sizes": list(fam.sizes),
                    "indices": [list(e.index) for e in eqs]}
    elif args.family == "candidate":
        elements = _family(args, ring, "candidate")
        lines = [f.serialize() for f in elements]
        manifest = {"family": "Candidate", "params": {"n": 2, "m": args.m}, "count": len(lines)}
    else:
        gs = _family_set(args, ring, args.family)
        lines = [f.serialize() for f in gs.elements]
        manifest = gs.manifest()
        manifest["provenance"] = gs.provenance
    text = "".join(line + "\n" for line in lines)
    if args.polys:
        Path(args.polys).write_text(text)
        manifest["polys_file"] = args.polys
    else:
        sys.stdout.write(text)
    return True, manifest


def cmd_gb_check(args):
    _need_n2(args)
    ring = _ring(args)
    G = candidate_basis(args.m, ring)
    r = is_groebner_basis(G, workers=args.workers, check_coprime=args.check_coprime)
    out = {"size": len(G), "is_basis": r.is_basis, "pairs_total": r.pairs_total,
           "pairs_examined": r.pairs_examined,
           "pairs_skipped_by_criterion": r.pairs_skipped_by_criterion,
           "coprime_spot_checks": r.coprime_spot_checks}
    if r.failing_pair is not None:
        i, j, rem = r.failing_pair
        out["failing_pair"] = {"indices": [i, j], "f": G[i].serialize(), "g": G[j].serialize(),
                               "remainder": rem.serialize()}
    return r.is_basis, out


def _lm_str(f) -> str:
    return f.ring.format_monomial(f.lm)


def cmd_radical(args):
    _need_n2(args)
    G = candidate_basis(args.m, _ring(args))
    lms = [g.lm for g in G]
    bad = non_squarefree_leaders(G)
    uncovered = [i for i in bad
                 if not any(j != i and is_squarefree(lms[j]) and monomial_divides(lms[j], lms[i])
                            for j in range(len(G)))]
    out = {"size": len(G), "all_leaders_squarefree": not bad, "non_squarefree": len(bad),
           "minimal_leaders_squarefree": not uncovered,
           "check": "minimal" if args.minimal else "all"}
    if bad:
        out["non_squarefree_examples"] = [
            {"index": i, "leading_monomial": _lm_str(G[i]), "element": G[i].serialize()}
            for i in bad[:5]]
    if uncovered:
        out["uncovered"] = [{"index": i, "leading_monomial": _lm_str(G[i])} for i in uncovered]
    return (not uncovered) if args.minimal else (not bad), out


def cmd_nonmember(args):
    _need_n2(args)
    if args.m < 3:
        raise UsageError("there are no block cubics for m < 3")
    ring = _ring(args)
    quadrics = det_pencil_generators(2, args.m, ring).elements
    red = buchberger(quadrics).reducer()
    span = DegreeSpan(quadrics, 3)
    for idx, f in enumerate(block_cubics(args.m, ring).elements):
        rem = red.normal_form(f)
        in_span = span.contains(f)
        if rem and not in_span:
            return True, {"cubic_index": idx, "cubic": f.serialize(), "remainder": rem.serialize(),
                          "linear_solve": "inconsistent", "degree3_span_rank": span.rank,
                          "multiplier_rows": span.rows}
        if bool(rem) == in_span:
            return False, {"cubic_index": idx, "cubic": f.serialize(),
                           "remainder": rem.serialize(), "linear_solve_consistent": in_span,
                           "error": "oracles disagree"}
    return False, {"error": "every block cubic lies in the quadric ideal"}


def cmd_quartic_check(args):
    _need_n2(args)
    if args.m < 3:
        raise UsageError("quartic-check needs m >= 3")
    ring = _ring(args)
    gens = det_pencil_generators(2, args.m, ring).elements + block_cubics(args.m, ring).elements
    span = DegreeSpan(gens, 4)
    quartics = quartic_products(args.m, ring).elements
    outside = [i for i, f in enumerate(quartics) if not span.contains(f)]
    out = {"quartics": len(quartics), "in_span": len(quartics) - len(outside),
           "span_rank": span.rank}
    if outside:
        out["first_outside"] = quartics[outside[0]].serialize()
    return not outside, out


def cmd_sample(args):
    s_values = [args.s] if args.s is not None else list(range(args.n))
    for s in s_values:
        if not 0 <= s < args.n:
            raise UsageError(f"--s must lie in 0..{args.n - 1}")
    samples = []
    for idx in range(args.trials):
        s = s_values[idx % len(s_values)]
        T = _sample(args, idx, s)
        samples.append({"index": idx, "s": s, "tensor": T.to_json(),
                        "dit": dit_random(T, 5, seed=(args.seed, idx)).kind})
    ok = all(x["dit"] == "AllSingular" for x in samples)
    return ok, {"samples": samples}


def cmd_vanish(args):
    ring = _ring(args)
    family = args.family or ("candidate" if args.n == 2 else "fano")
    S = _family(args, ring, family)
    if not S:
        raise UsageError(f"family {family} is empty for n={args.n}, m={args.m}")
    points = ([(None, _read_tensor(args.tensor))] if args.tensor
              else [(idx, _sample(args, idx)) for idx in range(args.trials)])
    for idx, T in points:
        r = vanish_check(S, T)
        if not r:
            return False, {"family": family, "elements": len(S), "points_checked": idx,
                           "witness": {"point": T.to_json(), "element": r.witness.serialize(),
                                       "value": qstr(r.value)}}
    return True, {"family": family, "elements": len(S), "points_checked": len(points)}


def cmd_act(args):
    _need_n2(args)
    G = candidate_basis(args.m, _ring(args))
    rows = []
    for idx in range(args.trials):
        rng = stream_rng(args.seed, "act", idx)
        g = random_group_element(rng, args.n, args.m)
        if idx % 2 == 0:
            T = _sample(args, idx)
        else:
            T = Tensor([random_matrix(rng, args.n, args.n) for _ in range(args.m)])
        before = vanish_check(G, T).vanishes
        after = vanish_check(G, act(g, T)).vanishes
        rows.append([idx, before, after])
        if before != after:
            return False, {"pairs": idx + 1, "convention": ACT_CONVENTION, "witness": {"g": g.to_json(), "point": T.to_json(),
                                                      "before": before, "after": after}}
    return True, {"pairs": len(rows), "convention": ACT_CONVENTION,
                  "vanishing_before_after": rows}


def cmd_member(args):
    ring = _ring(args)
    try:
        f = ring.parse(args.poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    F = []
    for name in args.against.split("+"):
        F += _family(args, ring, name.strip())
    if not F:
        raise UsageError("empty generator list")
    out = {"poly": f.serialize(), "against": args.against, "method": args.method}
    verdicts = []
    if args.method in ("groebner", "both"):
        rem = buchberger(F).reducer().normal_form(f)
        out["remainder"] = rem.serialize()
        verdicts.append(not rem)
    if args.method in ("linear", "both"):
        if not f.is_homogeneous():
            raise UsageError("linear membership needs a homogeneous polynomial")
        if f:
            span = DegreeSpan(F, f.degree)
            out["linear_solve"] = "consistent" if span.contains(f) else "inconsistent"
            out["span_rank"] = span.rank
            verdicts.append(out["linear_solve"] == "consistent")
        else:
            verdicts.append(True)
    out["oracles_agree"] = len(set(verdicts)) == 1
    out["member"] = all(verdicts)
    return out["member"] and out["oracles_agree"], out


def cmd_dit(args):
    if args.tensor:
        T = _read_tensor(args.tensor)
    else:
        T = _sample(args, 0) if args.expect == "singular" else None
        if T is None:
            rng = stream_rng(args.seed, "dit-generic")
            T = Tensor([random_matrix(rng, args.n, args.n) for _ in range(args.m)])
    v = dit_random(T, args.trials, seed=args.seed, coeff_bound=args.bound)
    out = v.to_json()
    out["tensor"] = T.to_json()
    want = "AllSingular" if args.expect == "singular" else "WitnessFound"
    return v.kind == want, out


def _partition(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}") from exc


def cmd_rep(args):
    if args.rep_cmd == "cauchy":
        r = cauchy_check(args.d, args.m, args.q)
        return r.holds, {"d": args.d, "m": args.m, "q": args.q, "lhs": r.lhs, "rhs": r.rhs}
    if args.rep_cmd == "lr":
        try:
            c = lr_coefficient(_partition(args.lam), _partition(args.mu), _partition(args.nu))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        out = {"lam": args.lam, "mu": args.mu, "nu": args.nu, "coefficient": c}
        if args.expect is None:
            return True, out
        return c == args.expect, out
    r = obstruction_check(args.n, args.dprime_max)
    return r.holds, r.to_json()


def cmd_suite(args):
    from .acceptance import CRITERIA, run_all

    selected = None
    if args.only:
        selected = sorted({int(x) for x in args.only.split(",")})
        unknown = [k for k in selected if k not in CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    results = run_all(selected, echo=lambda line: print(line, file=sys.stderr))
    return all(r.passed for r in results), {
        "criteria": [r.to_json(timings=args.timings) for r in results]}


COMMANDS = {
    "gen": cmd_gen, "gb-check": cmd_gb_check, "radical": cmd_radical,
    "nonmember": cmd_nonmember, "quartic-check": cmd_quartic_check, "sample": cmd_sample,
    "vanish": cmd_vanish, "act": cmd_act, "member": cmd_member, "dit": cmd_dit,
    "rep": cmd_rep, "suite": cmd_suite,
}

# per-subcommand defaults for the shared flags
_DEFAULT_TRIALS = {"sample": 4, "vanish": 50, "act": 20, "dit": 20}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive, default=2, help="matrix size")
    common.add_argument("--m", type=_positive, default=3, help="number of matrices")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive, default=None)
    common.add_argument("--bound", type=_positive, default=100,
                        help="coefficient bound for random pencils")
    common.add_argument("--order", choices=("row", "col"), default="row",
                        help="variable order inside each matrix")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--out", default=None, help="certificate path (default: stdout)")
    common.add_argument("--timings", action="store_true",
                        help="record wall-clock times (certificate is then not reproducible)")

    parser = argparse.ArgumentParser(prog="singideal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generator family")
    p.add_argument("--family", required=True,
                   choices=("quadric", "cubic", "quartic", "candidate", "fano", "product"))
    p.add_argument("--count", type=_positive, default=None,
                   help="number of sampled product equations")
    p.add_argument("--polys", default=None, help="newline-delimited polynomial output")

    p = sub.add_parser("gb-check", parents=[common], help="Buchberger criterion on the candidate basis")
    p.add_argument("--check-coprime", action="store_true",
                   help="also reduce pairs skipped by the product criterion")

    p = sub.add_parser("radical", parents=[common], help="square-free leading monomials")
    p.add_argument("--minimal", action="store_true",
                   help="check minimal generators of the leading ideal only")

    sub.add_parser("nonmember", parents=[common], help="a block cubic outside the quadric ideal")
    sub.add_parser("quartic-check", parents=[common], help="quartics in the ideal of quadrics and cubics")

    p = sub.add_parser("sample", parents=[common], help="sample points of the compression spaces")
    p.add_argument("--s", type=_nonneg, default=None)

    p = sub.add_parser("vanish", parents=[common], help="evaluate a family on sampled points")
    p.add_argument("--family", choices=("quadric", "cubic", "quartic", "candidate", "fano"))
    p.add_argument("--tensor", default=None, help="JSON tensor to test instead of samples")

    sub.add_parser("act", parents=[common], help="vanishing is invariant under the group action")

    p = sub.add_parser("member", parents=[common], help="ideal membership of one polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--against", default="quadric",
                   help="families joined by '+', e.g. quadric+cubic")
    p.add_argument("--method", choices=("groebner", "linear", "both"), default="both")

    p = sub.add_parser("dit", parents=[common], help="randomized determinant identity testing")
    p.add_argument("--tensor", default=None)
    p.add_argument("--expect", choices=("singular", "witness"), default="singular")

    p = sub.add_parser("rep", help="representation theory checks")
    rep = p.add_subparsers(dest="rep_cmd", required=True)
    q = rep.add_parser("cauchy", parents=[common])
    q.add_argument("--d", type=_positive, required=True)
    q.add_argument("--q", type=_positive, required=True)
    q = rep.add_parser("lr", parents=[common])
    q.add_argument("--lam", required=True, help="comma-separated parts")
    q.add_argument("--mu", required=True)
    q.add_argument("--nu", required=True)
    q.add_argument("--expect", type=int, default=None)
    q = rep.add_parser("obstruct", parents=[common])
    q.add_argument("--dprime-max", type=_nonneg, default=4)

    p = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return parser


def _config(args) -> dict:
    # the output path does not influence the result
    return {k: v for k, v in sorted(vars(args).items()) if k != "out"}


def certificate(args, passed: bool, result: dict, seconds: float | None) -> dict:
    ring = None
    if args.cmd not in ("rep", "suite"):
        ring = PolyRing.matrices(args.n, args.m, within=args.order).describe()
        del ring["variables"]
    cert = {"tool": "singideal", "version": __version__, "subcommand": args.cmd,
            "config": _config(args), "ring": ring, "passed": passed, "result": result}
    if seconds is not None:
        cert["seconds"] = round(seconds, 3)
    return cert


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, Fraction):
        return qstr(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.trials is None:
        args.trials = _DEFAULT_TRIALS.get(args.cmd, 20)
    t0 = time.perf_counter()
    try:
        passed, result = COMMANDS[args.cmd](args)
    except (UsageError, ValueError) as exc:
        print(f"singideal {args.cmd}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    seconds = time.perf_counter() - t0 if args.timings else None
    text = dumps(certificate(args, passed, result, seconds))
    if args.out:
        Path(args.out).write_text(text)
        print(f"{args.cmd}: {'PASS' if passed else 'FAIL'} -> {args.out}", file=sys.stderr)
    elif args.cmd == "gen" and not args.polys:
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
