"""Command-line front end.

Each subcommand maps onto one library operation and prints a single JSON
object on standard output: `construct` and `convert` print a structure
document, everything else prints a report. Exit codes:

    0  success / the checked property holds
    1  the checked property fails (report carries a witness)
    2  input or format error
    3  requested k outside the theorem ranges and --force-brute not given

The environment variable SPECTRAMONO_EPS overrides the approx-mode
tolerance (default 1e-9) before any command runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import (
    CRepTransitive,
    IRepDominatedNonTransitive,
    IRepDRTHat,
    NotMonomorphic,
    RealConstant,
    classify_k3,
    classify_k4,
    classify_mid_k,
    classify_n_minus_3,
    c3_via_determinants,
)
from .constructions import (
    drt_from_skew_hadamard,
    hat,
    paley_tournament,
    pair_cycle_counts,
    skew_hadamard_from_drt,
    validate_sign_matrix,
    verify_deletion_spectra,
)
from .core import Tournament, c_representation, i_representation
from .documents import document_dict, parse_document
from .errors import InputError, SpectramonoError, TheoremRangeError
from .monomorphy import is_k_spectrally_monomorphic, monomorphy_profile
from .scalars import EXACT, GaussianScalar, rational, set_eps

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_RANGE = 3


def _poly_dict(poly):
    if poly is None:
        return None
    return {
        "display": poly.to_display(),
        "coefficients": poly.coefficient_strings(),
    }


def _subset_list(subset):
    return None if subset is None else list(subset)


def _selector_dict(selector):
    if selector is None:
        return None
    scale = selector.scale_sq
    return {
        "values": [v.to_text() for v in selector.values],
        "scale_sq": str(scale) if selector.mode == EXACT else scale,
    }


def _monomorphy_dict(report):
    return {
        "k": report.k,
        "monomorphic": report.monomorphic,
        "common_poly": _poly_dict(report.common_poly),
        "witness": (
            None
            if report.witness is None
            else [_subset_list(s) for s in report.witness]
        ),
        "witness_polys": (
            None
            if report.witness_polys is None
            else [_poly_dict(p) for p in report.witness_polys]
        ),
        "subsets_checked": report.subsets_checked,
        "fragile": report.fragile,
    }


def _load(path, want_kind=None):
    try:
        with open(path, "rb") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    doc = parse_document(text)
    if want_kind is not None and doc.kind != want_kind:
        raise InputError(
            f"{path} holds a {doc.kind} document, this command needs {want_kind}"
        )
    return doc


def _cmd_check(args):
    doc = _load(args.input, "hermitian")
    g = doc.value
    if args.all_k:
        profile = monomorphy_profile(g)
        report = {
            "command": "check",
            "n": g.n,
            "mode": g.mode,
            "all_k": {str(k): _monomorphy_dict(r) for k, r in profile.items()},
        }
        ok = all(r.monomorphic for r in profile.values())
        return report, EXIT_TRUE if ok else EXIT_FALSE
    if args.k is None:
        raise InputError("check needs --k K or --all-k")
    rep = is_k_spectrally_monomorphic(g, args.k)
    report = {
        "command": "check",
        "n": g.n,
        "mode": g.mode,
        "result": _monomorphy_dict(rep),
    }
    return report, EXIT_TRUE if rep.monomorphic else EXIT_FALSE


def _variant_dict(variant):
    if isinstance(variant, RealConstant):
        return "real_constant", {"value": variant.value.to_text()}
    if isinstance(variant, CRepTransitive):
        return "c_rep_transitive", {
            "label": variant.label.to_text(),
            "order": list(variant.order),
        }
    if isinstance(variant, IRepDominatedNonTransitive):
        return "i_rep_dominated_non_transitive", {
            "label": variant.label.to_text(),
            "tournament": document_dict(variant.tournament),
        }
    if isinstance(variant, IRepDRTHat):
        return "i_rep_drt_hat", {
            "tournament": document_dict(variant.tournament),
            "certificate": {
                "n": variant.certificate.n,
                "t": variant.certificate.t,
            },
        }
    if isinstance(variant, NotMonomorphic):
        return "not_monomorphic", {
            "reason": variant.reason,
            "pair": _subset_list(variant.pair),
            "witness": (
                None
                if variant.witness is None
                else [_subset_list(s) for s in variant.witness]
            ),
            "witness_polys": (
                None
                if variant.witness_polys is None
                else [_poly_dict(p) for p in variant.witness_polys]
            ),
        }
    raise InputError(f"unknown classification variant {variant!r}")


def _dispatch_classify(g, k):
    n = g.n
    if k == n - 3 and n >= 6:
        return classify_n_minus_3(g)
    if k == 3 and n >= 5:
        return classify_k3(g)
    if k == 4 and n >= 7:
        return classify_k4(g)
    if n >= 8 and 4 <= k <= n - 4:
        return classify_mid_k(g, k)
    raise TheoremRangeError(
        f"no characterization theorem covers k={k} at n={n}; "
        "pass --force-brute for an enumeration verdict"
    )


def _cmd_classify(args):
    doc = _load(args.input, "hermitian")
    g = doc.value
    try:
        result = _dispatch_classify(g, args.k)
    except TheoremRangeError as exc:
        if not args.force_brute:
            report = {
                "command": "classify",
                "error": {"kind": "theorem_range", "message": str(exc)},
            }
            return report, EXIT_RANGE
        rep = is_k_spectrally_monomorphic(g, args.k)
        report = {
            "command": "classify",
            "n": g.n,
            "k": args.k,
            "mode": g.mode,
            "variant": "brute_force",
            "monomorphic": rep.monomorphic,
            "details": _monomorphy_dict(rep),
        }
        return report, EXIT_TRUE if rep.monomorphic else EXIT_FALSE
    name, details = _variant_dict(result.variant)
    report = {
        "command": "classify",
        "n": g.n,
        "k": result.k,
        "mode": g.mode,
        "variant": name,
        "monomorphic": result.monomorphic,
        "details": details,
        "canonical": (
            None if result.canonical is None else document_dict(result.canonical)
        ),
        "witness_selector": _selector_dict(result.witness_selector),
    }
    return report, EXIT_TRUE if result.monomorphic else EXIT_FALSE


def _parse_rep_label(text, n_hint):
    if text == "i":
        return GaussianScalar.i_unit(EXACT)
    if "," not in text:
        raise InputError(
            f"--rep must be 'i' or 'RE,IM' (rationals for exact, decimals for "
            f"approx), got {text!r}"
        )
    left, _, right = text.partition(",")
    approx = any(ch in part for part in (left, right) for ch in ".eE")
    if approx:
        try:
            return GaussianScalar.approx(float(left), float(right))
        except ValueError as exc:
            raise InputError(f"bad --rep components {text!r}: {exc}")
    return GaussianScalar.exact(rational(left.strip()), rational(right.strip()))


def _cmd_construct(args):
    if args.family != "paley":
        raise InputError(f"unknown construction family {args.family!r}")
    if args.q is None:
        raise InputError("construct paley needs --q")
    t = paley_tournament(args.q)
    if args.hat:
        t = hat(t)
    if args.rep is None:
        return document_dict(t), EXIT_TRUE
    label = _parse_rep_label(args.rep, t.n)
    if label.mode == EXACT and label == GaussianScalar.i_unit(EXACT):
        g = i_representation(t)
    else:
        g = c_representation(t, label)
    return document_dict(g), EXIT_TRUE


def _cmd_validate(args):
    doc = _load(args.input, "sign_matrix")
    report_obj = validate_sign_matrix(doc.value, args.kind)
    report = {
        "command": "validate",
        "kind": report_obj.kind,
        "n": report_obj.n,
        "ok": report_obj.ok,
        "detail": report_obj.detail,
        "locus": _subset_list(report_obj.locus),
    }
    return report, EXIT_TRUE if report_obj.ok else EXIT_FALSE


def _cmd_spectra(args):
    doc = _load(args.input, "sign_matrix")
    rep = verify_deletion_spectra(doc.value, args.max_deletions)
    failure = None
    if rep.failure is not None:
        deleted, expected, actual = rep.failure
        failure = {
            "deleted": _subset_list(deleted),
            "expected": _poly_dict(expected),
            "actual": _poly_dict(actual),
        }
    report = {
        "command": "spectra",
        "n": rep.n,
        "t": rep.t,
        "max_deletions": rep.max_deletions,
        "ok": rep.ok,
        "polys_checked": rep.polys_checked,
        "failure": failure,
    }
    return report, EXIT_TRUE if rep.ok else EXIT_FALSE


def _cmd_convert(args):
    if args.direction == "drt-to-hadamard":
        doc = _load(args.input, "tournament")
        h = skew_hadamard_from_drt(doc.value)
        return document_dict(h), EXIT_TRUE
    if args.direction == "hadamard-to-drt":
        doc = _load(args.input, "sign_matrix")
        t = drt_from_skew_hadamard(doc.value)
        return document_dict(t), EXIT_TRUE
    raise InputError(f"unknown conversion {args.direction!r}")


def _imaginary_tournament(g):
    """Orientation carried by a purely imaginary structure: x -> y when
    im(g(x,y)) > 0. Rejects labels that are not purely imaginary nonzero."""
    from .scalars import get_eps

    n = g.n
    eps = get_eps()
    rows = [0] * n
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            lab = g.label(x, y)
            if g.mode == EXACT:
                bad = lab.re != 0 or lab.im == 0
            else:
                bad = abs(lab.re) > eps * max(1.0, abs(lab.im)) or abs(lab.im) <= eps
            if bad:
                raise InputError(
                    f"label at ({x},{y}) is {lab.to_text()}, not purely "
                    "imaginary nonzero; this command needs an i-weighted input"
                )
            if lab.im > 0:
                rows[x] |= 1 << y
    return Tournament(n, rows)


def _cmd_c3(args):
    doc = _load(args.input, "hermitian")
    g = doc.value
    try:
        x_text, _, y_text = args.pair.partition(",")
        x, y = int(x_text), int(y_text)
    except ValueError:
        raise InputError(f"--pair must be 'X,Y' with integers, got {args.pair!r}")
    t = _imaginary_tournament(g)
    dominator = None
    for v in range(t.n):
        if t.out_degree(v) == t.n - 1:
            dominator = v
            break
    if dominator is None:
        raise InputError("no vertex dominates all others; C3 counting needs one")
    if not (0 <= x < t.n and 0 <= y < t.n):
        raise InputError(f"--pair out of range({t.n}): {x},{y}")
    if x == dominator or y == dominator or x == y:
        raise InputError(
            f"--pair must name two distinct vertices different from the "
            f"dominating vertex {dominator}"
        )
    others = [v for v in range(t.n) if v != dominator]
    sub = t.subtournament(others)
    c3, o3 = pair_cycle_counts(sub, others.index(x), others.index(y))
    report = {
        "command": "c3",
        "n": g.n,
        "dominating_vertex": dominator,
        "pair": [x, y],
        "c3": c3,
        "o3": o3,
        "method": "direct",
    }
    if args.via_determinants:
        det_count = c3_via_determinants(g, dominator, x, y)
        report["method"] = "determinants"
        report["determinant_count"] = det_count
        report["agrees_with_direct"] = det_count == c3
        if det_count != c3:
            # both routes are exact; disagreement is a library bug, not an
            # input problem, so surface it loudly
            from .errors import InvariantError

            raise InvariantError(
                f"determinant count {det_count} != direct count {c3}"
            )
    return report, EXIT_TRUE


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="spectramono",
        description="Exact spectra of Hermitian pair-labeled structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="k-spectral monomorphy by enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--all-k", action="store_true", dest="all_k")
    p.add_argument(
        "--force-brute",
        action="store_true",
        dest="force_brute",
        help="accepted for symmetry with classify; check always enumerates",
    )
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("classify", help="characterization-theorem verdict")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--force-brute",
        action="store_true",
        dest="force_brute",
        help="outside theorem ranges, fall back to plain enumeration",
    )
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("construct", help="build a known family member")
    p.add_argument("family", choices=["paley"])
    p.add_argument("--q", type=int)
    p.add_argument("--hat", action="store_true")
    p.add_argument(
        "--rep",
        help="emit a labeled structure: 'i' for the i-representation, "
        "'RE,IM' for a unit label (rational components for exact mode, "
        "decimal for approx)",
    )
    p.set_defaults(handler=_cmd_construct)

    p = sub.add_parser("validate", help="sign-matrix identity check")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--kind",
        required=True,
        choices=["conference", "skew_conference", "hadamard", "skew_hadamard"],
    )
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("spectra", help="deletion spectra against closed forms")
    p.add_argument("--input", required=True)
    p.add_argument("--max-deletions", type=int, default=3, dest="max_deletions")
    p.set_defaults(handler=_cmd_spectra)

    p = sub.add_parser("convert", help="tournament / skew Hadamard round trip")
    p.add_argument("direction", choices=["drt-to-hadamard", "hadamard-to-drt"])
    p.add_argument("--input", required=True)
    p.set_defaults(handler=_cmd_convert)

    p = sub.add_parser("c3", help="3-cycles through a pair, under a dominator")
    p.add_argument("--input", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument(
        "--via-determinants",
        action="store_true",
        dest="via_determinants",
        help="use the 4x4 determinant identity and cross-check it",
    )
    p.set_defaults(handler=_cmd_c3)

    return parser


def main(argv=None):
    env_eps = os.environ.get("SPECTRAMONO_EPS")
    if env_eps is not None:
        try:
            set_eps(float(env_eps))
        except (ValueError, InputError) as exc:
            print(
                json.dumps(
                    {"error": {"kind": "input", "message": f"SPECTRAMONO_EPS: {exc}"}},
                    indent=2,
                    sort_keys=True,
                )
            )
            return EXIT_INPUT
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except TheoremRangeError as exc:
        print(
            json.dumps(
                {"error": {"kind": "theorem_range", "message": str(exc)}},
                indent=2,
                sort_keys=True,
            )
        )
        return EXIT_RANGE
    except InputError as exc:
        print(
            json.dumps(
                {"error": {"kind": "input", "message": str(exc)}},
                indent=2,
                sort_keys=True,
            )
        )
        return EXIT_INPUT
    except SpectramonoError as exc:
        # invariant violations are bugs and crash loudly; everything else a
        # user can trigger lands here as an input problem
        from .errors import InvariantError

        if isinstance(exc, InvariantError):
            raise
        print(
            json.dumps(
                {"error": {"kind": type(exc).__name__, "message": str(exc)}},
                indent=2,
                sort_keys=True,
            )
        )
        return EXIT_INPUT
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
