"""Command-line front end.

Every certificate and table is a subcommand with ``--json`` and plain
text output carrying identical numeric content.  Exit codes: 0 for
established or consistent results, 1 for excluded verdicts (so shell
pipelines can branch on obstructions), 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple

from . import certify, genus, mod2
from .certificates import EXCLUDED, exact_to_json
from .mod2 import ModelError


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage().rstrip()}")


def load_model(path: str):
    """Load a space model or an rhc model from a JSON document."""
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ModelError(f"cannot read model file {path!r}: {err}") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ModelError(f"model file {path!r} is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    if "basis" in doc:
        return mod2.space_model_from_dict(doc)
    if "P2" in doc:
        return _rhc_model_from_dict(doc)
    raise ModelError(
        "unrecognized model document: expected 'basis' (space model) or 'P2' (rhc model)"
    )


def _rhc_model_from_dict(doc: Dict) -> certify.RHCModel:
    values = {}
    for field in ("m", "middle_betti", "sigma", "P2", "Q"):
        if field not in doc:
            raise ModelError(f"field {field!r}: missing")
        if not isinstance(doc[field], int) or isinstance(doc[field], bool):
            raise ModelError(f"field {field!r}: expected an integer")
        values[field] = doc[field]
    try:
        return certify.RHCModel(**values)
    except ValueError as err:
        raise ModelError(str(err)) from err


# -- text rendering ------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if value is None:
        return "-"
    return json.dumps(value)


def _certificate_lines(doc: Dict, indent: str = "") -> list:
    lines = [f"{indent}claim: {doc['claim']}", f"{indent}verdict: {doc['verdict']}"]
    lines.append(f"{indent}parameters:")
    for key, value in doc["parameters"].items():
        lines.append(f"{indent}  {key} = {_fmt(value)}")
    lines.append(f"{indent}checks:")
    for check in doc["checks"]:
        status = "pass" if check["passed"] else "fail"
        lines.append(
            f"{indent}  [{status}] {check['name']}: "
            f"{_fmt(check['lhs'])} {check['relation']} {_fmt(check['rhs'])}"
        )
    if doc.get("witnesses"):
        lines.append(f"{indent}witnesses: {json.dumps(doc['witnesses'])}")
    return lines


def render_text(doc: Dict) -> str:
    if "claim" in doc:
        return "\n".join(_certificate_lines(doc))
    if "rows" in doc:
        lines = ["dimension  cohen_k  orientable  pin"]
        for row in doc["rows"]:
            lines.append(
                f"{row['dimension']:<9}  {row['cohen_k']:<7}  "
                f"{row['orientable_structure']:<10}  {row['pin_structure']}"
            )
        return "\n".join(lines)
    if "polynomials" in doc:
        lines = [f"series: {doc['series']}"]
        lines.extend(f"{name} = {poly}" for name, poly in doc["polynomials"].items())
        return "\n".join(lines)
    if "witness" in doc:
        w = doc["witness"]
        lines = [
            f"witness: sigma = {_fmt(w['sigma'])}, P2 = {_fmt(w['P2'])}, Q = {_fmt(w['Q'])}",
            f"four-square decomposition of P2: {_fmt(w['four_square'])}",
            f"algebra: {w['algebra_note']}",
            "re-validation:",
        ]
        lines.extend(_certificate_lines(doc["certificate"], indent="  "))
        return "\n".join(lines)
    if "s_m" in doc:
        return (
            f"s_m = {_fmt(doc['s_m'])}, s_mm = {_fmt(doc['s_mm'])}, "
            f"s_2m = {_fmt(doc['s_2m'])}"
        )
    return "\n".join(f"{key} = {_fmt(value)}" for key, value in doc.items())


# -- subcommand handlers ---------------------------------------------------


_SERIES = {
    "L": genus.signature_series,
    "ahat": genus.ahat_series,
    "mayer": genus.mayer_series,
}


def _cmd_genus(args) -> Tuple[Dict, Optional[str]]:
    series = _SERIES[args.series](args.degree)
    polys = genus.genus_polynomials(series, args.degree)
    doc = {
        "series": args.series,
        "degree": args.degree,
        "polynomials": {f"K{j + 1}": str(p) for j, p in enumerate(polys)},
    }
    return doc, None


def _cmd_s_coeffs(args) -> Tuple[Dict, Optional[str]]:
    coeffs = genus.l_coefficients(args.m)
    doc = {
        "m": args.m,
        "s_m": exact_to_json(coeffs.s_m),
        "s_mm": exact_to_json(coeffs.s_mm),
        "s_2m": exact_to_json(coeffs.s_2m),
    }
    return doc, None


def _cmd_realize(args) -> Tuple[Dict, Optional[str]]:
    if (args.p2 is None) != (args.q is None):
        raise UsageError("realize: --p2 and --q must be given together")
    if args.p2 is not None:
        cert = certify.realization_conditions(args.m, args.p2, args.q)
        return cert.to_dict(), cert.verdict
    witness = certify.realization_search(args.m, args.sigma_min)
    cert = certify.realization_conditions(args.m, witness.P2, witness.Q)
    doc = {"witness": exact_to_json(witness.to_dict()), "certificate": cert.to_dict()}
    return doc, cert.verdict


def _cmd_bound(args) -> Tuple[Dict, Optional[str]]:
    if args.first_dim:
        dimension = certify.bound_exclusion_dimension(args.k)
        doc = {
            "k": args.k,
            "dimension": dimension,
            "note": "first dimension where the odd-signature criterion excludes "
            "the structure; not the minimal non-spin^k dimension",
        }
        return doc, None
    if args.m is None or args.sigma is None:
        raise UsageError("bound: supply --m and --sigma, or use --first-dim")
    cert = certify.signature_bound_verdict(args.m, args.k, args.sigma)
    return cert.to_dict(), cert.verdict


def _cmd_non_spinh8(args) -> Tuple[Dict, Optional[str]]:
    cert = certify.nonspinh8_certificate(args.a)
    return cert.to_dict(), cert.verdict


def _cmd_wu_product(args) -> Tuple[Dict, Optional[str]]:
    if args.model:
        model = load_model(args.model)
        if not isinstance(model, mod2.SpaceModel):
            raise UsageError("wu-product needs a space model, not an rhc model")
    else:
        model = mod2.wu_manifold()
    cert = mod2.w5_verdict(mod2.kunneth(model, model))
    return cert.to_dict(), cert.verdict


def _cmd_pin_table(args) -> Tuple[Dict, Optional[str]]:
    if args.max_dim < 2:
        raise UsageError("pin-table: --max-dim must be >= 2")
    rows = [certify.guaranteed_structures(n).to_dict() for n in range(2, args.max_dim + 1)]
    return {"rows": rows}, None


def _cmd_mayer_check(args) -> Tuple[Dict, Optional[str]]:
    if args.model:
        model = load_model(args.model)
        if not isinstance(model, certify.RHCModel):
            raise UsageError("mayer-check needs an rhc model, not a space model")
    else:
        if args.m is None or args.p2 is None or args.q is None:
            raise UsageError("mayer-check: supply --model, or --m with --p2 and --q")
        sigma = args.sigma
        if sigma is None:
            coeffs = genus.l_coefficients(args.m)
            value = coeffs.s_mm * args.p2 + coeffs.s_2m * args.q
            if value.denominator != 1:
                raise UsageError(
                    f"mayer-check: the L-evaluation gives the non-integer signature "
                    f"{value}; these (P2, Q) fit no closed manifold"
                )
            sigma = int(value)
        betti = args.betti if args.betti is not None else abs(sigma)
        model = certify.RHCModel(args.m, betti, sigma, args.p2, args.q)
    cert = genus.mayer_integrality_check(model, args.k)
    return cert.to_dict(), cert.verdict


def _cmd_w4_lift(args) -> Tuple[Dict, Optional[str]]:
    variant = args.variant.replace("-", "_")
    try:
        lift = certify.w4_lift(args.p1_m, args.p1_e, variant, args.euler)
    except certify.InconsistentLiftError as err:
        doc = {
            "claim": "w4-lift-inconsistent",
            "parameters": {
                "p1_M": args.p1_m,
                "p1_E": args.p1_e,
                "variant": variant,
                "euler_E": args.euler,
            },
            "checks": [
                {
                    "name": "parity of the p1 difference",
                    "lhs": "odd",
                    "rhs": "even",
                    "relation": "!=",
                    "passed": True,
                }
            ],
            "verdict": EXCLUDED,
            "witnesses": None,
            "error": str(err),
        }
        return doc, EXCLUDED
    doc = {
        "p1_M": args.p1_m,
        "p1_E": args.p1_e,
        "variant": variant,
        "euler_E": args.euler,
        "lift": lift,
        "lift_mod_2": lift % 2,
    }
    return doc, None


def build_parser() -> _Parser:
    parser = _Parser(
        prog="spincert",
        description="Exact certificates for spin^k and pin structures. "
        "Exit codes: 0 established/consistent, 1 excluded, 2 usage error.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", parents=[common], help="genus polynomials of a series")
    p.add_argument("--series", choices=sorted(_SERIES), required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=_cmd_genus)

    p = sub.add_parser("s-coeffs", parents=[common], help="signature-sequence coefficients")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=_cmd_s_coeffs)

    p = sub.add_parser(
        "realize",
        parents=[common],
        help="realization conditions (--p2/--q) or witness search (--sigma-min)",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p2", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--sigma-min", type=int, default=1)
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser("bound", parents=[common], help="2-adic signature-bound verdict")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--first-dim", action="store_true")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser(
        "non-spinh8", parents=[common], help="dimension-8 exclusion certificate"
    )
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(handler=_cmd_non_spinh8)

    p = sub.add_parser(
        "wu-product", parents=[common], help="W5 verdict for a model times itself"
    )
    p.add_argument("--model", help="space-model JSON file (default: built-in Wu manifold)")
    p.set_defaults(handler=_cmd_wu_product)

    p = sub.add_parser("pin-table", parents=[common], help="guaranteed pin structures")
    p.add_argument("--max-dim", type=int, default=7)
    p.set_defaults(handler=_cmd_pin_table)

    p = sub.add_parser(
        "mayer-check", parents=[common], help="integrality check on an rhc model"
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--model", help="rhc-model JSON file")
    p.add_argument("--m", type=int)
    p.add_argument("--p2", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--sigma", type=int)
    p.add_argument("--betti", type=int)
    p.set_defaults(handler=_cmd_mayer_check)

    p = sub.add_parser("w4-lift", parents=[common], help="integral lift of w4")
    p.add_argument("--p1-m", type=int, required=True)
    p.add_argument("--p1-e", type=int, required=True)
    p.add_argument(
        "--variant",
        choices=["plain", "spin4-plus", "spin4-minus"],
        default="plain",
    )
    p.add_argument("--euler", type=int, default=0)
    p.set_defaults(handler=_cmd_w4_lift)

    return parser


def run(argv) -> Tuple[int, str]:
    """Execute one invocation; returns (exit code, document)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as err:
        return 2, str(err)
    except SystemExit as err:  # --help
        return (err.code or 0), ""
    try:
        doc, verdict = args.handler(args)
    except UsageError as err:
        return 2, str(err)
    except (ModelError, certify.SearchExhaustedError, ValueError) as err:
        return 2, f"spincert {args.command}: error: {err}"
    document = json.dumps(doc, indent=2) if args.json else render_text(doc)
    return (1 if verdict == EXCLUDED else 0), document


def main() -> None:
    code, document = run(sys.argv[1:])
    if document:
        print(document)
    sys.exit(code)


if __name__ == "__main__":
    main()
