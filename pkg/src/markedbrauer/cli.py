"""Command-line front end: every computation and verification as a subcommand.

Exit codes: 0 when the requested check verified (or a plain computation
succeeded), 1 when a verification failed (the counterexample or mismatch
is reported), 2 on usage errors, malformed diagrams, or exceeded bounds.
"""

import argparse
import itertools
import json
import sys

from .exact import SizeBoundError, format_poly
from .diagrams import (parse_diagram, format_diagram, count_diagrams,
                       enumerate_diagrams)
from .algebra import (multiply_diagrams, check_relations, span_closure,
                      format_element, element_to_json, AlgebraElement,
                      verify_idempotent_family)
from .tensorrep import (TensorSpaceConfig, verify_homomorphism, rho_kernel_dim,
                        z_element_check, commutant_dim, diagram_span_rank,
                        invariant_space_dim, pairing_forms_rank,
                        forms_annihilated, eP_image_rank)
from .decomposition import decompose_tensor, gray_hervella, abbena_garbiero


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        print("%s: %s" % (key, value))


def _cmd_multiply(args):
    x = parse_diagram(args.x, args.r)
    y = parse_diagram(args.y, args.r)
    coeff, prod = multiply_diagrams(x, y)
    element = AlgebraElement.from_diagram(prod, coeff) if prod is not None \
        else AlgebraElement.zero(args.r)
    report = {
        "r": args.r,
        "x": format_diagram(x),
        "y": format_diagram(y),
        "coeff": format_poly(coeff),
        "product": format_diagram(prod) if prod is not None else None,
        "element": element_to_json(element),
        "elementText": format_element(element),
    }
    return report, True


def _cmd_relations(args):
    report = check_relations(args.r)
    return report, report["all_hold"]


def _cmd_span(args):
    reached, complete = span_closure(args.r)
    report = {
        "r": args.r,
        "reached": reached,
        "expected": count_diagrams(args.r),
        "complete": complete,
    }
    return report, complete


def _cmd_rho_verify(args):
    cfg = TensorSpaceConfig(args.n, args.r, args.max_side)
    failures = []
    ok = verify_homomorphism(cfg, sample_count=args.samples, seed=args.seed,
                             exhaustive=args.exhaustive, failures=failures)
    report = {
        "n": args.n,
        "r": args.r,
        "samples": "all pairs" if args.exhaustive else args.samples,
        "seed": args.seed,
        "homomorphism": ok,
        "failures": [[format_diagram(x), format_diagram(y)]
                     for x, y in failures[:5]],
    }
    return report, ok


def _cmd_kernel(args):
    cfg = TensorSpaceConfig(args.n, args.r, args.max_side)
    dim = rho_kernel_dim(cfg)
    report = {
        "n": args.n,
        "r": args.r,
        "kernelDim": dim,
        "injective": dim == 0,
    }
    consistent = (dim == 0) == (args.n >= args.r)
    if args.n <= args.r - 1:
        witness = z_element_check(cfg)
        report["witnessActsAsZero"] = witness
        consistent = consistent and witness
    return report, consistent


def _cmd_commutant(args):
    cfg = TensorSpaceConfig(args.n, args.r, args.max_side)
    mode = "mod-p" if args.mod_p else "auto"
    max_unknowns = args.max_side ** 2 if args.max_side != 1024 else 4096
    dim = commutant_dim(cfg, mode=mode, seed=args.seed,
                        max_unknowns=max_unknowns)
    span = diagram_span_rank(cfg) if args.r <= 4 else None
    report = {
        "n": args.n,
        "r": args.r,
        "mode": mode,
        "commutantDim": dim,
        "diagramSpanRank": span,
        "spanIsCommutant": None if span is None else span == dim,
    }
    return report, span is None or span == dim


def _cmd_invariants(args):
    cfg = TensorSpaceConfig(args.n, args.r, args.max_side)
    dim = invariant_space_dim(cfg)
    report = {"n": args.n, "r": args.r, "invariantDim": dim}
    ok = True
    if args.r % 2 == 0:
        report["formsRank"] = pairing_forms_rank(cfg)
        report["formsAnnihilated"] = forms_annihilated(cfg)
        ok = report["formsRank"] == dim and report["formsAnnihilated"]
    return report, ok


def _cmd_idempotents(args):
    report = verify_idempotent_family(args.r)
    ok = report["ok"]
    if args.n is not None:
        cfg = TensorSpaceConfig(args.n, args.r, args.max_side)
        ranks = {}
        total = 0
        for size in range(1, args.r + 1):
            for combo in itertools.combinations(range(2, args.r + 1), size - 1):
                P = frozenset((1,) + combo)
                rank = eP_image_rank(P, cfg)
                ranks["{%s}" % ",".join(str(v) for v in sorted(P))] = rank
                total += rank
                if rank != 2 * args.n ** args.r:
                    ok = False
        report["imageRanks"] = ranks
        report["rankSum"] = total
        if total != (2 * args.n) ** args.r:
            ok = False
    return report, ok


def _cmd_decompose(args):
    report = decompose_tensor(args.n, args.r)
    return report, True


def _cmd_gray_hervella(args):
    report = gray_hervella(args.n, args.max_side)
    return report, report["verified"]


def _cmd_abbena_garbiero(args):
    report = abbena_garbiero(args.n, args.max_side)
    return report, report["verified"]


def _cmd_enumerate(args):
    count = sum(1 for _ in enumerate_diagrams(args.r))
    expected = count_diagrams(args.r)
    report = {"r": args.r, "count": count, "expected": expected,
              "match": count == expected}
    return report, report["match"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="markedbrauer",
        description="Marked diagram algebra and its tensor representation, "
                    "all in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, handler, *, n=False, r=True, xy=False, samples=False):
        p = sub.add_parser(name, help=func)
        if r:
            p.add_argument("--r", type=int, required=True, help="tensor power / strand count")
        if n:
            p.add_argument("--n", type=int, required=True, help="complex dimension")
        if xy:
            p.add_argument("--x", required=True, help="left diagram")
            p.add_argument("--y", required=True, help="right diagram")
        if samples:
            p.add_argument("--samples", type=int, default=200)
            p.add_argument("--exhaustive", action="store_true",
                           help="walk every ordered diagram pair")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--mod-p", action="store_true", dest="mod_p",
                       help="prefer prime-field ranks (two primes must agree)")
        p.add_argument("--max-side", type=int, default=1024, dest="max_side",
                       help="largest allowed matrix side")
        p.set_defaults(handler=handler)
        return p

    add("multiply", "product of two diagrams", _cmd_multiply, xy=True)
    add("relations", "check the defining relations", _cmd_relations)
    add("span", "closure of the generators", _cmd_span)
    add("rho-verify", "check the tensor action is multiplicative",
        _cmd_rho_verify, n=True, samples=True)
    add("kernel", "kernel dimension of the tensor action", _cmd_kernel, n=True)
    add("commutant", "dimension of the unitary commutant", _cmd_commutant, n=True)
    add("invariants", "invariant forms of the tensor power", _cmd_invariants, n=True)
    p_idem = add("idempotents", "the e_P family", _cmd_idempotents)
    p_idem.add_argument("--n", type=int, default=None,
                        help="also verify image ranks at this dimension")
    add("decompose", "irreducible summand report", _cmd_decompose, n=True)
    p_gh = add("example-gray-hervella", "alternating sector at r=3",
               _cmd_gray_hervella, r=False)
    p_gh.add_argument("--n", type=int, default=3)
    p_ag = add("example-abbena-garbiero", "J-symmetric sector at r=3",
               _cmd_abbena_garbiero, r=False)
    p_ag.add_argument("--n", type=int, default=3)
    add("enumerate", "count all diagrams", _cmd_enumerate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, verified = args.handler(args)
    except (SizeBoundError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return 1
    _emit(report, args.json)
    return 0 if verified else 1


if __name__ == "__main__":
    sys.exit(main())
