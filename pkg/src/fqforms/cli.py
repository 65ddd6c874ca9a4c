"""Command-line interface.

All subcommands take --q (an odd prime; extension fields are reachable
through the library API only) and print JSON by default.  Polynomials use
the grammar `coeff ['*' t ['^' exp]]` joined by '+'/'-'; binary forms are
`(a, b, c)` literals and rank-3 forms `(a11,a22,a33;a12,a13,a23)`.

Exit codes: 0 success (and no violations), 1 a verification check found
violations, 2 usage, parse, or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import class_number, class_table
from .errors import BudgetError, CapabilityError
from .ffpoly import Field, _is_prime, poly_from_string, poly_to_string
from .localgenus import (
    INFINITY,
    genus_symbol,
    hilbert_symbol,
    same_genus,
)
from .picard import divisor_order, pic_group, pic_order_with_conductor
from .qform import (
    equivalent,
    form_from_string,
    form_to_string,
    properly_equivalent,
    reduce,
    successive_minima,
)
from .repset import rep_numbers, repset_upto
from .verify import CHECKS, SweepConfig, run_check


def _field(args):
    if not _is_prime(args.q) or args.q == 2:
        raise ValueError(f"--q must be an odd prime, got {args.q}")
    return Field(args.q, delta=args.delta) if args.delta else Field(args.q)


def _transformation_rows(tr):
    return [[poly_to_string(e) for e in row] for row in tr.matrix]


def _emit(payload, fmt):
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(payload)


def _cmd_reduce(args):
    F = _field(args)
    form = form_from_string(F, args.form)
    red, tr = reduce(form)
    _emit(
        {
            "reduced": form_to_string(red),
            "transformation": _transformation_rows(tr),
            "det": tr.det,
        },
        "json",
    )
    return 0


def _cmd_disc(args):
    F = _field(args)
    form = form_from_string(F, args.form)
    d = form.discriminant()
    _emit(
        {
            "disc": poly_to_string(d),
            "disc_class": poly_to_string(form.disc_class().rep),
            "definite": form.is_definite(),
        },
        "json",
    )
    return 0


def _cmd_minima(args):
    F = _field(args)
    form = form_from_string(F, args.form)
    _emit({"minima": list(successive_minima(form))}, "json")
    return 0


def _cmd_repset(args):
    F = _field(args)
    form = form_from_string(F, args.form)
    rs = repset_upto(form, args.max_degree, budget=args.budget)
    polys = [poly_to_string(p) for p in rs.polys()]
    if args.counts:
        counts = rep_numbers(form, args.max_degree, budget=args.budget)
        payload = {poly_to_string(p): n for p, n in counts.items()}
        if args.format == "lines":
            for s, n in payload.items():
                print(f"{s}\t{n}")
        else:
            _emit({"k": args.max_degree, "counts": payload}, "json")
    elif args.format == "lines":
        for s in polys:
            print(s)
    else:
        _emit({"k": args.max_degree, "values": polys}, "json")
    return 0


def _equal_command(args, finder):
    F = _field(args)
    if len(args.form) != 2:
        raise ValueError("exactly two --form literals are required")
    q1 = form_from_string(F, args.form[0])
    q2 = form_from_string(F, args.form[1])
    w = finder(q1, q2)
    payload = {"equivalent": w is not None}
    if w is not None:
        payload["transformation"] = _transformation_rows(w)
        payload["det"] = w.det
    _emit(payload, "json")
    return 0


def _cmd_equal(args):
    return _equal_command(args, equivalent)


def _cmd_proper_equal(args):
    return _equal_command(args, properly_equivalent)


def _symbol_payload(sym):
    return {
        "disc": sym.disc_key,
        "finite": [
            {
                "place_key": place_key,
                "blocks": [list(b) for b in invariant.blocks],
            }
            for place_key, invariant in sym.finite
        ],
        "infinity": {
            "disc_degree_parity": sym.infinity[0],
            "disc_lead_char": sym.infinity[1],
            "hasse": sym.infinity[2],
        },
    }


def _cmd_genus(args):
    F = _field(args)
    if len(args.form) != 2:
        raise ValueError("exactly two --form literals are required")
    q1 = form_from_string(F, args.form[0])
    q2 = form_from_string(F, args.form[1])
    _emit(
        {
            "same_genus": same_genus(q1, q2),
            "symbols": [_symbol_payload(genus_symbol(q)) for q in (q1, q2)],
        },
        "json",
    )
    return 0


def _cmd_symbol(args):
    F = _field(args)
    f = poly_from_string(F, args.f)
    g = poly_from_string(F, args.g)
    place = INFINITY if args.place == "inf" else poly_from_string(F, args.place)
    _emit({"symbol": hilbert_symbol(f, g, place)}, "json")
    return 0


def _cmd_classify(args):
    F = _field(args)
    disc = poly_from_string(F, args.disc)
    table = class_table(F, disc, primitive_only=args.primitive)
    payload = {
        "disc": poly_to_string(disc),
        "forms": [form_to_string(f) for f in table.forms],
        "classes": table.classes,
        "proper_classes": table.proper_classes,
        "genera": table.genera,
        "class_counts_per_genus": [len(g) for g in table.genera],
        "proper_counts_per_genus": table.proper_counts_per_genus(),
        "genus_symbols": [
            _symbol_payload(genus_symbol(table.forms[cls[0]]))
            for cls in table.classes
        ],
    }
    _emit(payload, "json")
    return 0


def _cmd_classnumber(args):
    F = _field(args)
    form = form_from_string(F, args.form)
    print(class_number(form))
    return 0


def _cmd_picard(args):
    F = _field(args)
    d0 = poly_from_string(F, args.d0)
    if args.conductor:
        conductor = poly_from_string(F, args.conductor)
        order = pic_order_with_conductor(d0, conductor)
        _emit(
            {
                "d0": poly_to_string(d0),
                "conductor": poly_to_string(conductor),
                "order": order,
            },
            "json",
        )
        return 0
    group = pic_group(d0)
    top = max(group.structure.factors, default=1)
    generators = [
        {"u": poly_to_string(p.u), "v": poly_to_string(p.v)}
        for p in group.elements
        if not p.is_identity() and divisor_order(p) == top
    ][:2]
    _emit(
        {
            "d0": poly_to_string(d0),
            "order": group.order,
            "structure": list(group.structure.factors),
            "sample_generators": generators,
        },
        "json",
    )
    return 0


def _cmd_verify(args):
    cfg = SweepConfig(
        q=args.q,
        max_disc_degree=args.max_degree,
        samples=args.samples,
        seed=args.seed,
        budget=args.budget,
        jobs=args.jobs,
    )
    report = run_check(args.check, cfg)
    if args.format == "tsv":
        print("theorem\tq\tinstances\tviolations\texpected_exceptions\tpassed")
        print(
            f"{report.check}\t{cfg.q}\t{report.instances_checked}"
            f"\t{len(report.violations)}\t{len(report.expected_exceptions)}"
            f"\t{report.passed}"
        )
        for v in report.violations:
            print(f"violation\t{json.dumps(v.as_dict(), sort_keys=True)}")
    else:
        _emit(report.as_dict(), "json")
    return 0 if report.passed else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fqforms",
        description="definite quadratic forms over F_q[t]",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, form=False, forms=False):
        p.add_argument("--q", type=int, required=True, help="odd prime field size")
        p.add_argument("--delta", type=int, help="non-square override")
        p.add_argument("--budget", type=int, default=10**8)
        p.add_argument("--format", choices=("json", "lines", "tsv"), default="json")
        if form:
            p.add_argument("--form", required=True, help="form literal, e.g. '(t, 0, t^3)'")
        if forms:
            p.add_argument(
                "--form", action="append", required=True, help="repeatable form literal"
            )

    p = sub.add_parser("reduce", help="reduce a form")
    common(p, form=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("disc", help="discriminant and its square class")
    common(p, form=True)
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("minima", help="successive minima")
    common(p, form=True)
    p.set_defaults(func=_cmd_minima)

    p = sub.add_parser("repset", help="representation set up to a degree")
    common(p, form=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--counts", action="store_true")
    p.set_defaults(func=_cmd_repset)

    p = sub.add_parser("equal", help="equivalence witness search")
    common(p, forms=True)
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("proper-equal", help="determinant-1 equivalence search")
    common(p, forms=True)
    p.set_defaults(func=_cmd_proper_equal)

    p = sub.add_parser("genus", help="genus symbols and same-genus test")
    common(p, forms=True)
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("symbol", help="Hilbert symbol at a place")
    common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--place", required=True, help="a monic irreducible, or 'inf'")
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("classify", help="class table of a discriminant")
    common(p)
    p.add_argument("--disc", required=True)
    p.add_argument("--primitive", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("classnumber", help="classes in the genus of a form")
    common(p, form=True)
    p.set_defaults(func=_cmd_classnumber)

    p = sub.add_parser("picard", help="Picard group data")
    common(p)
    p.add_argument("--d0", required=True, help="square-free curve polynomial")
    p.add_argument("--conductor", help="monic conductor polynomial")
    p.set_defaults(func=_cmd_picard)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("check", choices=CHECKS)
    common(p)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="accepted for interface "
                   "compatibility; execution is sequential and output identical")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, BudgetError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
