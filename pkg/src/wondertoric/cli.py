"""Batch front end: parse inputs, run a pipeline, emit a report.

Commands: poset, building, blowup, toric-betti, model-betti, admissible,
verify.  Inputs are two JSON files:

arrangement: {"ambient_rank": n,
              "subtori": [{"label": str, "chars": [[int]], "phase": ["p/q"]}]}
fan:         {"ambient_rank": n, "rays": [[int]], "max_cones": [[int]]}

Phases must be exact fractions ("1/3", "0"); decimals are rejected.  Rays
are normalized to primitive vectors with a warning.  Exit codes: 0 ok,
1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import admissible
from .arrangement import Layer, ToricArrangement, poset_of_layers
from .fan import Fan, is_smooth, make_fan
from .poset import (
    blowup_building,
    is_building_set,
    iterated_blowup,
    linear_refinements,
    make_building_set,
    minimal_building_set,
    minimal_well_connected,
)
from .presentation import ModelPresentation, presentation_from_arrangement


class InputError(Exception):
    pass


def _parse_phase(value) -> Fraction:
    if not isinstance(value, str):
        raise InputError(f"phase {value!r} must be a string like '1/3'")
    if "." in value or "e" in value.lower():
        raise InputError(
            f"phase {value!r} is not an exact fraction; decimals are "
            "disallowed (only torsion phases 'p/q' are supported)")
    try:
        return Fraction(value)
    except ValueError as exc:
        raise InputError(f"cannot parse phase {value!r}: {exc}") from None


def parse_arrangement(path: str, warnings: list[str]) -> ToricArrangement:
    data = _load_json(path)
    for key in ("ambient_rank", "subtori"):
        if key not in data:
            raise InputError(f"arrangement file is missing the key {key!r}")
    n = int(data["ambient_rank"])
    layers, names = [], []
    for i, entry in enumerate(data["subtori"]):
        for key in ("chars", "phase"):
            if key not in entry:
                raise InputError(f"subtorus #{i} is missing the key {key!r}")
        label = str(entry.get("label", f"S{i}"))
        chars = [[int(x) for x in row] for row in entry["chars"]]
        phases = [_parse_phase(v) for v in entry["phase"]]
        if len(phases) != len(chars):
            raise InputError(f"subtorus {label!r}: one phase per character row")
        try:
            layer = Layer.make(n, chars, phases)
        except ValueError as exc:
            raise InputError(f"subtorus {label!r}: {exc}") from None
        reduced = [p for p in phases]
        if any(p != q for p, q in zip(reduced, phases)):
            warnings.append(f"phases of {label!r} reduced modulo 1")
        layers.append(layer)
        names.append(label)
    return ToricArrangement(n, tuple(layers), tuple(names))


def parse_fan(path: str, warnings: list[str]) -> Fan:
    data = _load_json(path)
    for key in ("ambient_rank", "rays", "max_cones"):
        if key not in data:
            raise InputError(f"fan file is missing the key {key!r}")
    n = int(data["ambient_rank"])
    rays = []
    from math import gcd

    for row in data["rays"]:
        vec = [int(x) for x in row]
        g = 0
        for x in vec:
            g = gcd(g, abs(x))
        if g == 0:
            raise InputError("fan contains a zero ray")
        if g != 1:
            warnings.append(f"ray {row} normalized to a primitive vector")
            vec = [x // g for x in vec]
        rays.append(tuple(vec))
    cones = [frozenset(int(i) for i in c) for c in data["max_cones"]]
    try:
        return make_fan(n, rays, cones)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_inputs(arr_path: str, fan_path: str,
                 warnings: list[str]) -> tuple[ToricArrangement, Fan]:
    arr = parse_arrangement(arr_path, warnings)
    fan = parse_fan(fan_path, warnings)
    if arr.ambient_rank != fan.ambient_rank:
        raise InputError(
            f"ambient rank mismatch: arrangement has {arr.ambient_rank}, "
            f"fan has {fan.ambient_rank}")
    return arr, fan


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _select_building(poset, selector: str, names: dict):
    if selector == "min":
        return minimal_building_set(poset)
    if selector == "max":
        return set(poset.labels) - {poset.zero}
    if selector == "minwc":
        return minimal_well_connected(poset, minimal_building_set(poset))
    data = _load_json(selector)
    if "labels" not in data:
        raise InputError("explicit building-set file must have a 'labels' key")
    by_name = {v: k for k, v in names.items()}
    members = set()
    for lab in data["labels"]:
        if lab not in by_name:
            raise InputError(f"unknown layer label {lab!r}")
        members.add(by_name[lab])
    if not is_building_set(poset, members):
        raise InputError("the labels do not form a building set")
    return members


def _layer_names(arrangement, poset) -> dict:
    names = {poset.zero: "1"}
    for name, layer in arrangement.alias_map().items():
        names[layer] = name
    counters: dict[int, int] = {}
    for layer in poset.labels:
        if layer in names:
            continue
        counters[layer.rank] = counters.get(layer.rank, 0) + 1
        names[layer] = f"W{layer.rank}.{counters[layer.rank]}"
    return names


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wondertoric",
        description="Integer cohomology of toric wonderful models")
    p.add_argument("command", choices=[
        "poset", "building", "blowup", "toric-betti", "model-betti",
        "admissible", "verify"])
    p.add_argument("--arrangement", required=True, metavar="PATH")
    p.add_argument("--fan", metavar="PATH")
    p.add_argument("--building", default="min", metavar="SEL",
                   help="min | max | minwc | FILE with {'labels': [...]}")
    p.add_argument("--cap", type=int, default=None,
                   help="degree cap override for Groebner runs")
    p.add_argument("--deterministic", action="store_true",
                   help="suppress the timestamp for byte-stable reports")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=["json", "table"], default="json")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    warnings: list[str] = []
    try:
        report = _dispatch(args, warnings)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    report["warnings"] = warnings
    if not args.deterministic:
        report["generated_at"] = datetime.now(timezone.utc).isoformat()
    ok = report.pop("_ok", True)
    text = (json.dumps(report, indent=2, sort_keys=True) + "\n"
            if args.format == "json" else _tabulate(args.command, report))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def _dispatch(args, warnings) -> dict:
    arrangement = parse_arrangement(args.arrangement, warnings)
    poset = poset_of_layers(arrangement)
    names = _layer_names(arrangement, poset)

    if args.command == "poset":
        return {
            "command": "poset",
            "layers": [
                {"name": names[x], "rank": poset.rank(x),
                 "lattice": [list(r) for r in x.lattice.basis],
                 "phase": [str(v) for v in x.phase]}
                for x in poset.labels
            ],
            "covers": sorted([names[a], names[b]] for a, b in poset.covers()),
        }

    if args.command == "building":
        members = _select_building(poset, args.building, names)
        return {
            "command": "building",
            "selector": args.building,
            "members": sorted(names[x] for x in members),
            "count": len(members),
            "is_building_set": is_building_set(poset, members),
            "is_geometric": is_building_set(poset, members, geometric=True),
        }

    members = _select_building(poset, args.building, names)
    building = make_building_set(poset, members)

    if args.command == "blowup":
        bl = blowup_building(poset, building)
        elems = []
        for lab in bl.poset.labels:
            ns = bl.nested(lab)
            elems.append({
                "members": sorted(names[m] for m in ns.members),
                "projection": names[ns.x],
                "rank": bl.poset.rank(lab),
            })
        return {
            "command": "blowup",
            "elements": elems,
            "covers": sorted(
                [[sorted(names[m] for m in bl.nested(a).members), names[bl.nested(a).x]],
                 [sorted(names[m] for m in bl.nested(b).members), names[bl.nested(b).x]]]
                for a, b in bl.poset.covers()),
            "locally_boolean": bl.is_locally_boolean(),
        }

    if args.fan is None:
        raise InputError("this command requires --fan")
    fan = parse_fan(args.fan, warnings)
    if arrangement.ambient_rank != fan.ambient_rank:
        raise InputError("ambient rank mismatch between arrangement and fan")
    if not is_smooth(fan):
        raise InputError("the fan is not smooth")

    if args.command == "toric-betti":
        empty = make_building_set(poset, frozenset(), ())
        lattices = {layer: layer.lattice for layer in poset.labels}
        pres = ModelPresentation(poset, lattices, empty, fan, names, args.cap)
        rep = pres.betti()
        out = rep.as_dict()
        out["command"] = "toric-betti"
        out["routes_used"] = ["escalier", "oracle"]
        return out

    lattices = {layer: layer.lattice for layer in poset.labels}
    pres = ModelPresentation(poset, lattices, building, fan, names, args.cap)

    if args.command == "model-betti":
        rep = pres.betti()
        out = rep.as_dict()
        out["command"] = "model-betti"
        out["routes_used"] = ["escalier", "oracle", "admissible"]
        return out

    if args.command == "admissible":
        items = admissible.enumerate_am(pres)
        basis = admissible.enumerate_b(pres)
        return {
            "command": "admissible",
            "admissible_monomials": [
                {"chain": [sorted(names[m] for m in pres.bl.nested(c).members)
                           for c in it.chain],
                 "exponents": list(it.exps), "degree": it.degree}
                for it in items
            ],
            "am_generating_function": admissible.am_generating_function(pres),
            "b_generating_function": admissible.b_generating_function(pres),
            "basis": [pres.table.mono_name(m) for m, _ in basis],
        }

    # verify
    groebner_ok = pres.verify_alpha()
    rec = {w: admissible.check_recursion(pres, w) for w in ("AM", "B")}
    refinements = linear_refinements(poset, building.members, 3)
    bl = pres.bl
    face = {(bl.nested(lab).members, bl.nested(lab).x) for lab in bl.poset.labels}
    order_ok = True
    for order in refinements:
        q, decode = iterated_blowup(poset, order)
        if {(s, x) for s, x in decode.values()} != face or len(q) != len(face):
            order_ok = False
    restriction = pres.restriction_map_check()
    findings = pres.leading_monomial_findings()
    ok = (groebner_ok and order_ok and restriction.ok
          and all(r.ok for r in rec.values()))
    return {
        "command": "verify",
        "groebner_verified": groebner_ok,
        "recursions": {
            w: {"last": r.last_name, "codim": r.codim, "lhs": r.lhs,
                "rhs": r.rhs, "deleted": r.deleted,
                "contracted": r.contracted,
                "correction_is_zero": r.codim == 1, "equal": r.ok}
            for w, r in rec.items()
        },
        "order_invariance": {"refinements_checked": len(refinements),
                             "isomorphic": order_ok},
        "restriction_map": {"generators_checked": restriction.generators_checked,
                            "failures": restriction.failures},
        "leading_monomial_findings": findings,
        "_ok": ok,
    }


def _tabulate(command: str, report: dict) -> str:
    lines = [f"== wondertoric {command} =="]
    if command in ("toric-betti", "model-betti"):
        lines.append("degree  " + "  ".join(
            f"H^{2 * d}" for d in range(len(report["betti"]))))
        lines.append("rank    " + "  ".join(
            str(r) for r in report["betti"]))
        lines.append(f"(halved indexing: rk H^i for i = 0..{len(report['betti']) - 1})")
        lines.append(f"torsion: {report['torsion'] or 'none'}")
        lines.append(f"groebner verified: {report['groebner_verified']}")
    else:
        def emit(prefix, value):
            if isinstance(value, dict):
                for k in sorted(value):
                    emit(f"{prefix}{k}.", value[k])
            elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
                lines.append(f"{prefix[:-1]}: {json.dumps(value)}")
            else:
                lines.append(f"{prefix[:-1]}: {value}")

        for key in sorted(report):
            if key == "command":
                continue
            emit(f"{key}.", report[key])
    return "\n".join(lines) + "\n"


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
