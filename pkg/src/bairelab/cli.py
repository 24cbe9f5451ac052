"""Batch command-line front end with JSON input and output.

Every subcommand prints exactly one JSON document on stdout, with sorted
keys and canonical rational strings, so runs are byte-reproducible.
Exit codes: 0 success, 2 validation or precondition failure (structured
JSON on stderr), 1 internal failure.
"""

import argparse
import sys

from . import checkers, serialize, trees
from .baire import (
    baire_norm,
    baire_norm_oracle,
    baire_norm_witness,
    baire_norm_zero,
    check_branch_isometry,
    check_incomparable_additivity,
    check_root_decomposition,
)
from .bases import BasisKind
from .errors import BaireLabError, InvalidParameter, ValidationError
from .serialize import (
    dumps_canonical,
    jsonable,
    load_json_file,
    parse_exponent,
    parse_fraction,
)
from .steps import bush_check, rademacher_bush
from .trees import derived_tree, generate_tree, order_index, probe_wf


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(
            dumps_canonical({"error": "ValidationError", "message": message})
            + "\n"
        )
        raise SystemExit(2)


def _fraction(text):
    try:
        return parse_fraction(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _exponent(text):
    try:
        return parse_exponent(text)
    except BaireLabError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _basis(text):
    try:
        return BasisKind.from_tag(text)
    except BaireLabError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _coeff_list(text):
    return [parse_fraction(part) for part in text.split(",") if part.strip()]


def _window(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must be 'start,length'")
    return int(parts[0]), int(parts[1])


def _load_tree(path):
    return serialize.tree_from_json(load_json_file(path))


def _load_vector(path, tree=None):
    obj = load_json_file(path)
    if tree is not None and "tree" in obj:
        embedded = serialize.tree_from_json(obj["tree"])
        if embedded != tree:
            raise ValidationError(
                "vector file embeds a tree different from --tree"
            )
    return serialize.vector_from_json(obj, tree=tree)


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_rank(args):
    return {"order_index": order_index(_load_tree(args.tree))}


def _cmd_derive(args):
    tree = _load_tree(args.tree)
    if args.times < 0:
        raise InvalidParameter("--times must be nonnegative")
    for _ in range(args.times):
        tree = derived_tree(tree)
    return serialize.tree_to_json(tree)


def _cmd_norm(args):
    tree = _load_tree(args.tree) if args.tree else None
    x = _load_vector(args.vector, tree=tree)
    if args.p.is_zero:
        nv, seg = baire_norm_zero(x, args.basis, with_witness=True)
        witness = [seg] if seg is not None else []
        return serialize.norm_to_json(nv, witness)
    if args.oracle:
        nv, witness = baire_norm_oracle(x, args.basis, args.p, with_witness=True)
        return serialize.norm_to_json(nv, witness)
    nv = baire_norm(x, args.basis, args.p, parallel=args.parallel)
    _, witness = baire_norm_witness(x, args.basis, args.p)
    return serialize.norm_to_json(nv, witness)


def _cmd_gen(args):
    family = args.family
    if family in ("spine", "full-kary", "random"):
        name = "full_kary" if family == "full-kary" else family
        if name == "full_kary" and (args.k is None or args.d is None):
            raise InvalidParameter("full-kary needs --k and --d")
        if name == "spine" and args.d is None:
            raise InvalidParameter("spine needs --d")
        if name == "random" and args.n is None:
            raise InvalidParameter("random needs --n")
        tree = generate_tree(name, k=args.k, d=args.d, n=args.n, seed=args.seed)
        doc = serialize.tree_to_json(tree)
    elif family == "rademacher-bush":
        if args.K is None:
            raise InvalidParameter("rademacher-bush needs --K")
        doc = serialize.bush_to_json(rademacher_bush(args.K))
    elif family == "delta-antichain":
        if args.n is None or args.basis is None or args.p is None:
            raise InvalidParameter("delta-antichain needs --n, --basis and --p")
        fam = checkers.delta_antichain_family(args.n, args.basis, args.p)
        doc = serialize.family_to_json(fam)
    else:
        raise InvalidParameter(f"unknown family {family!r}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(doc) + "\n")
    return doc


def _cmd_check_bs(args):
    fam = serialize.family_from_json(load_json_file(args.family))
    verdict = checkers.bs_obstruction_check(
        fam, args.epsilon, parallel=args.parallel
    )
    return serialize.verdict_to_json(verdict)


def _cmd_check_abs(args):
    fam = serialize.family_from_json(load_json_file(args.family))
    trials = checkers.TrialCoeffs(
        signs=True,
        grid=tuple(args.grid) if args.grid else (),
        random_trials=args.random,
        seed=args.seed,
    )
    verdict = checkers.abs_obstruction_falsify(fam, args.epsilon, trials)
    return serialize.verdict_to_json(verdict)


def _cmd_check_bush(args):
    bush = serialize.bush_from_json(load_json_file(args.bush))
    verdict = bush_check(bush, args.delta, args.bound)
    return serialize.verdict_to_json(verdict)


def _cmd_check_identity(args):
    if args.identity == "additivity":
        if not args.family or args.coeffs is None:
            raise InvalidParameter("additivity needs --family and --coeffs")
        fam = serialize.family_from_json(load_json_file(args.family))
        ctx = fam.context
        if not isinstance(ctx, checkers.BaireContext):
            raise InvalidParameter("additivity applies to coefficient families")
        report = check_incomparable_additivity(
            fam.vectors, args.coeffs, ctx.kind, ctx.p
        )
    else:
        if not args.vector or args.basis is None or args.p is None:
            raise InvalidParameter(
                f"{args.identity} needs --vector, --basis and --p"
            )
        x = _load_vector(args.vector)
        if args.identity == "branch-isometry":
            report = check_branch_isometry(x, args.basis, args.p)
        else:
            report = check_root_decomposition(x, args.basis, args.p)
    return {
        "identity": args.identity,
        "passed": report.passed,
        "lhs": jsonable(report.lhs),
        "rhs": jsonable(report.rhs),
        "exact": report.exact,
    }


def _cmd_probe_wf(args):
    if (args.tree is None) == (args.lazy is None):
        raise InvalidParameter("give exactly one of --tree or --lazy")
    if args.tree:
        lazy = trees.lazy_from_tree(_load_tree(args.tree), args.budget)
    else:
        name = args.lazy
        if name == "zeros-branch":
            lazy = trees.zeros_branch(args.budget)
        elif name.startswith("bounded:"):
            lazy = trees.depth_bounded(int(name.split(":", 1)[1]), args.budget)
        else:
            raise InvalidParameter(f"unknown lazy family {name!r}")
    verdict = probe_wf(lazy, args.depth)
    return serialize.probe_to_json(verdict)


def _cmd_block_min(args):
    fam = serialize.family_from_json(load_json_file(args.family))
    coeffs, value = checkers.convex_block_min(fam, args.window)
    return {
        "coeffs": [jsonable(c) for c in coeffs],
        "value": serialize.norm_to_json(value),
        "window": list(args.window),
    }


# ---------------------------------------------------------------------------
# parser assembly

def build_parser():
    parser = _Parser(prog="bairelab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("rank", help="order index of a tree")
    p.add_argument("--tree", required=True)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("derive", help="iterated derived tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("norm", help="segment-family norm of a vector")
    p.add_argument("--tree")
    p.add_argument("--vector", required=True)
    p.add_argument("--basis", type=_basis, required=True)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="use the exhaustive oracle evaluator")
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=_cmd_norm)

    p = sub.add_parser("gen", help="generate corpus files")
    p.add_argument("--family", required=True,
                   choices=["spine", "full-kary", "random",
                            "rademacher-bush", "delta-antichain"])
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--K", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--basis", type=_basis)
    p.add_argument("--p", type=_exponent)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check-bs", help="split-mean obstruction check")
    p.add_argument("--family", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--parallel", action="store_true")
    p.set_defaults(func=_cmd_check_bs)

    p = sub.add_parser("check-abs", help="alternating obstruction falsifier")
    p.add_argument("--family", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--grid", type=_coeff_list)
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check_abs)

    p = sub.add_parser("check-bush", help="validate a dyadic bush")
    p.add_argument("--bush", required=True)
    p.add_argument("--delta", type=_fraction, required=True)
    p.add_argument("--bound", type=_fraction, required=True)
    p.set_defaults(func=_cmd_check_bush)

    p = sub.add_parser("check-identity", help="exact norm identities")
    p.add_argument("--identity", required=True,
                   choices=["additivity", "branch-isometry",
                            "root-decomposition"])
    p.add_argument("--family")
    p.add_argument("--coeffs", type=_coeff_list)
    p.add_argument("--vector")
    p.add_argument("--basis", type=_basis)
    p.add_argument("--p", type=_exponent)
    p.set_defaults(func=_cmd_check_identity)

    p = sub.add_parser("probe-wf", help="finite well-foundedness probe")
    p.add_argument("--tree")
    p.add_argument("--lazy")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int, default=64)
    p.set_defaults(func=_cmd_probe_wf)

    p = sub.add_parser("block-min", help="norm-minimal convex block")
    p.add_argument("--family", required=True)
    p.add_argument("--window", type=_window, required=True)
    p.set_defaults(func=_cmd_block_min)

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        doc = args.func(args)
        sys.stdout.write(dumps_canonical(doc) + "\n")
        return 0
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except BaireLabError as exc:
        sys.stderr.write(
            dumps_canonical({"error": type(exc).__name__, "message": str(exc)})
            + "\n"
        )
        return 2
    except Exception as exc:  # pragma: no cover - internal failure path
        sys.stderr.write(
            dumps_canonical(
                {"error": "InternalError",
                 "message": f"{type(exc).__name__}: {exc}"}
            )
            + "\n"
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
