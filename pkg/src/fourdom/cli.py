"""Command-line front end.

Every verb maps to one module operation.  Inputs are built-in names,
connected-sum expressions joined with '#', file paths, or inline JSON.
Decision verbs exit 0 for Yes, 1 for No, 2 for Unknown; usage and
validation errors exit 3.  JSON is the source of truth; the text format is
a rendering of the same report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import domination as dom
from . import intforms, laurent, manifolds, modtwo
from .errors import (
    BoundTooLarge,
    FourdomError,
    InvalidDescriptor,
    ParseError,
    Z2ExtrapolationRequired,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

_OUTCOME_EXIT = {
    dom.Outcome.YES: EXIT_YES,
    dom.Outcome.NO: EXIT_NO,
    dom.Outcome.UNKNOWN: EXIT_UNKNOWN,
}


def _load_input(text: str) -> Any:
    """Resolve an input argument to parsed JSON, or return the raw string."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad inline JSON: {exc}") from exc
    if os.path.exists(stripped):
        with open(stripped, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON in {stripped}: {exc}") from exc
    return stripped


def parse_descriptor(text: str) -> manifolds.ManifoldDescriptor:
    """Built-in name, '#'-joined expression, file path, or inline JSON."""
    data = _load_input(text)
    if isinstance(data, str):
        return manifolds.parse_manifold_expression(data)
    return manifolds.descriptor_from_json(data)


def parse_form(text: str) -> intforms.IntForm:
    data = _load_input(text)
    return intforms.form_from_json(data)


def parse_group(text: str) -> dom.GroupDescriptor:
    """Group syntax: '1', 'Z', 'Zn:<n>', 'abelian:<d1>,<d2>,...', 'beta1:<b>'."""
    if text in ("1", "trivial"):
        return dom.trivial_group()
    if text == "Z":
        return dom.infinite_cyclic_group()
    if text.startswith("Zn:"):
        return dom.finite_cyclic_group(int(text[3:]))
    if text.startswith("abelian:"):
        return dom.finite_abelian_group(int(v) for v in text[8:].split(","))
    if text.startswith("beta1:"):
        return dom.other_group(int(text[6:]))
    raise ParseError(f"unknown group syntax {text!r}")


def _registry():
    return laurent.registry_from_env()


# ---------------------------------------------------------------------------
# report rendering


def _render_text(report: dict) -> str:
    lines = [f"verb: {report['verb']}"]
    for key, value in report.items():
        if key == "verb":
            continue
        if isinstance(value, (dict, list)):
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(_render_text(report))


def _descriptor_summary(d: manifolds.ManifoldDescriptor) -> dict:
    out = {
        "pi1": manifolds.pi1_kind(d),
        "betti2": d.int_form.rank,
        "signature": d.int_form.signature,
        "parity": d.int_form.parity.value,
        "chi": manifolds.chi(d),
        "ks": d.ks,
        "form_class": dom.classify(d.int_form).label(),
    }
    if isinstance(d, manifolds.FiniteCyclic):
        out["w2"] = d.w2.value
    return out


# ---------------------------------------------------------------------------
# verb handlers; each returns (report, exit_status)

Handler = "tuple[dict, int]"


def _cmd_classify_form(args) -> tuple[dict, int]:
    form = parse_form(args.form)
    cls = dom.classify(form, definite_cap=args.definite_cap)
    report = {
        "verb": "classify-form",
        "rank": form.rank,
        "signature": form.signature,
        "parity": form.parity.value,
        "class": cls.label(),
    }
    return report, EXIT_YES


def _cmd_split(args) -> tuple[dict, int]:
    x = parse_form(args.x)
    y = parse_form(args.y)
    dec = intforms.split_off(x, y, definite_cap=args.definite_cap)
    report: dict[str, Any] = {"verb": "split", "outcome": dec.outcome.value}
    if dec.complement is not None:
        r, s, p = dec.complement
        report["complement"] = {"rank": r, "signature": s, "parity": p.value}
    if dec.reason:
        report["reason"] = dec.reason
    exit_map = {
        intforms.Ternary.YES: EXIT_YES,
        intforms.Ternary.NO: EXIT_NO,
        intforms.Ternary.UNDECIDED: EXIT_UNKNOWN,
    }
    return report, exit_map[dec.outcome]


def _cmd_classify_manifold(args) -> tuple[dict, int]:
    d = parse_descriptor(args.x)
    return {"verb": "classify-manifold", **_descriptor_summary(d)}, EXIT_YES


def _cmd_validate(args) -> tuple[dict, int]:
    data = _load_input(args.x)
    try:
        if isinstance(data, str):
            d = manifolds.parse_manifold_expression(data)
        else:
            d = manifolds.descriptor_from_json(data)
    except InvalidDescriptor as exc:
        return (
            {"verb": "validate", "valid": False, "violations": exc.violations},
            EXIT_ERROR,
        )
    violations = manifolds.validate(d, _registry())
    report = {"verb": "validate", "valid": not violations, "violations": violations}
    return report, EXIT_YES if not violations else EXIT_ERROR


def _cmd_decompose(args) -> tuple[dict, int]:
    d = parse_descriptor(args.x)
    if not isinstance(d, manifolds.FiniteCyclic):
        raise ParseError("decompose needs a finite cyclic descriptor")
    ds = manifolds.decompose(d)
    report = {
        "verb": "decompose",
        "decompositions": [
            {
                "sigma": dec.sigma.name(),
                "summand": {
                    "form_class": dom.classify(dec.summand.form).label(),
                    "ks": dec.summand.ks,
                },
            }
            for dec in ds.all()
        ],
    }
    return report, EXIT_YES


def _decision_report(verb: str, dec: dom.Decision, extra: dict | None = None) -> tuple[dict, int]:
    report = {"verb": verb, **dec.to_json()}
    if extra:
        report.update(extra)
    return report, _OUTCOME_EXIT[dec.outcome]


def _cmd_dominates(args) -> tuple[dict, int]:
    x = parse_descriptor(args.x)
    y = parse_descriptor(args.y)
    dec = dom.dominates(x, y, registry=_registry(), definite_cap=args.definite_cap)
    return _decision_report("dominates", dec)


def _cmd_stably_dominates(args) -> tuple[dict, int]:
    x = parse_descriptor(args.x)
    y = parse_descriptor(args.y)
    if not isinstance(x, manifolds.InfiniteCyclic) or not isinstance(
        y, manifolds.InfiniteCyclic
    ):
        raise ParseError("stably-dominates needs two infinite cyclic descriptors")
    dec = dom.stably_dominates(x, y, registry=_registry(), definite_cap=args.definite_cap)
    return _decision_report("stably-dominates", dec)


def _cmd_chi4(args) -> tuple[dict, int]:
    g = parse_group(args.group)
    result = dom.chi4(g)
    report = {
        "verb": "chi4",
        "group": args.group,
        "kind": "value" if result.exact else "lower-bound",
        "value": result.value,
    }
    return report, EXIT_YES


def _cmd_minimal_target(args) -> tuple[dict, int]:
    x = parse_descriptor(args.x)
    target, dec = dom.minimal_target(x, registry=_registry())
    extra = {
        "target": manifolds.descriptor_to_json(target),
        "target_chi": manifolds.chi(target),
    }
    return _decision_report("minimal-target", dec, extra)


def _cmd_enumerate_sc(args) -> tuple[dict, int]:
    classes = dom.enumerate_simply_connected(args.bound)
    report = {
        "verb": "enumerate-sc",
        "bound": args.bound,
        "count": len(classes),
        "classes": [
            {
                "rank": c.form.rank,
                "signature": c.form.signature,
                "parity": c.form.parity.value,
                "ks": c.ks,
                "class": dom.classify(c.form).label(),
            }
            for c in classes
        ],
    }
    return report, EXIT_YES


def _cmd_enumerate_stable(args) -> tuple[dict, int]:
    x = parse_descriptor(args.x)
    if not isinstance(x, manifolds.InfiniteCyclic):
        raise ParseError("enumerate-stable needs an infinite cyclic descriptor")
    targets = dom.enumerate_stable_targets_Z(x, definite_cap=args.definite_cap)
    report = {
        "verb": "enumerate-stable",
        "count": len(targets),
        "targets": [
            {
                "class": t.target_label,
                "rank": t.target_form.rank,
                "signature": t.target_form.signature,
                "ks": t.ks,
                "stabilized_betti2": t.stabilized_betti2,
            }
            for t in targets
        ],
    }
    return report, EXIT_YES


def _cmd_enumerate_zn(args) -> tuple[dict, int]:
    x = parse_descriptor(args.x)
    if not isinstance(x, manifolds.FiniteCyclic):
        raise ParseError("enumerate-zn needs a finite cyclic descriptor")
    pairs = dom.enumerate_targets_Zn(x, registry=_registry(), definite_cap=args.definite_cap)
    report = {
        "verb": "enumerate-zn",
        "count": len(pairs),
        "targets": [
            {
                "descriptor": manifolds.descriptor_to_json(y),
                "decision": dec.to_json(),
            }
            for y, dec in pairs
        ],
    }
    return report, EXIT_YES


def _cmd_universal_dominator(args) -> tuple[dict, int]:
    y = dom.universal_dominator_Z(args.bound)
    report = {
        "verb": "universal-dominator",
        "bound": args.bound,
        "betti2": y.int_form.rank,
        "signature": y.int_form.signature,
        "ks": y.ks,
        "classes_summed": len(dom.enumerate_simply_connected(args.bound + 6)),
    }
    return report, EXIT_YES


def _cmd_z2_form(args) -> tuple[dict, int]:
    d = parse_descriptor(args.x)
    if not isinstance(d, manifolds.FiniteCyclic):
        raise ParseError("z2-form needs a finite cyclic descriptor")
    try:
        form = manifolds.z2_form(d, extrapolation=args.z2_extrapolation == "on")
    except Z2ExtrapolationRequired as exc:
        report = {
            "verb": "z2-form",
            "outcome": "unknown",
            "rule": "unknown:z2-extrapolation",
            "reason": str(exc),
        }
        return report, EXIT_UNKNOWN
    cls = modtwo.classify_z2(form)
    report = {
        "verb": "z2-form",
        "outcome": "yes",
        "gram2": [list(row) for row in form.gram],
        "alternating": form.alternating,
        "rank": form.rank,
        "class": (
            f"alternating({cls.planes} planes)"
            if isinstance(cls, modtwo.Alternating)
            else f"identity({cls.rank})"
        ),
    }
    if d.n % 2 == 0 and d.n > 2:
        report["z2-sigma-block"] = "extrapolated"
    return report, EXIT_YES


_COMMANDS = {
    "classify-form": (_cmd_classify_form, ("form",)),
    "split": (_cmd_split, ("x", "y")),
    "classify-manifold": (_cmd_classify_manifold, ("x",)),
    "validate": (_cmd_validate, ("x",)),
    "decompose": (_cmd_decompose, ("x",)),
    "dominates": (_cmd_dominates, ("x", "y")),
    "stably-dominates": (_cmd_stably_dominates, ("x", "y")),
    "chi4": (_cmd_chi4, ("group",)),
    "minimal-target": (_cmd_minimal_target, ("x",)),
    "enumerate-sc": (_cmd_enumerate_sc, ("bound",)),
    "enumerate-stable": (_cmd_enumerate_stable, ("x",)),
    "enumerate-zn": (_cmd_enumerate_zn, ("x",)),
    "universal-dominator": (_cmd_universal_dominator, ("bound",)),
    "z2-form": (_cmd_z2_form, ("x",)),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourdom",
        description="decision engine for degree-one maps between 4-manifolds "
        "with cyclic fundamental group",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, needed) in _COMMANDS.items():
        p = sub.add_parser(verb)
        if "x" in needed:
            p.add_argument("--x", required=True, help="descriptor or form input")
        if "y" in needed:
            p.add_argument("--y", required=True, help="descriptor or form input")
        if "form" in needed:
            p.add_argument("--form", required=True, help="form input")
        if "group" in needed:
            p.add_argument("--group", required=True, help="group, e.g. Zn:7")
        if "bound" in needed:
            p.add_argument("--bound", required=True, type=int)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument(
            "--z2-extrapolation",
            choices=("on", "off"),
            default="off",
            dest="z2_extrapolation",
        )
        p.add_argument("--definite-cap", type=int, default=intforms.DEFAULT_DEFINITE_CAP,
                       dest="definite_cap")
    return parser


def run(argv: list[str]) -> int:
    """Execute one command; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code not in (0, None) else 0
    handler, _ = _COMMANDS[args.verb]
    try:
        report, status = handler(args)
    except InvalidDescriptor as exc:
        _emit({"verb": args.verb, "error": "validation", "violations": exc.violations},
              args.format)
        return EXIT_ERROR
    except (ParseError, BoundTooLarge) as exc:
        _emit({"verb": args.verb, "error": type(exc).__name__, "message": str(exc)},
              args.format)
        return EXIT_ERROR
    except FourdomError as exc:
        _emit({"verb": args.verb, "error": type(exc).__name__, "message": str(exc)},
              args.format)
        return EXIT_ERROR
    _emit(report, args.format)
    return status


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
