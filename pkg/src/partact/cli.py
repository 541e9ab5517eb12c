"""Command line front end.

    partact <command> --input FILE [--format text|json|tsv] [--max-size N]

Exit status: 0 success, 1 validation or verification failure, 2 I/O or
schema error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import (
    ArgumentError,
    InvalidGlobalActionError,
    InvalidOrderError,
    LayoutError,
    NotAGroupError,
    SizeCapExceeded,
    SpecError,
)
from .globalization import DEFAULT_MAX_SIZE, globalize, verify_globalization
from .orbits import burnside_orbit_count, coset_label, coset_space, fixed_point_counts, global_orbit_size
from .partial import PartialAction, orbit_report, partial_transversal, validate_partial_action
from .report import ValidationReport
from .spec_io import global_to_dict, load_global, parse_spec

COMMANDS = ("validate", "orbits", "globalize", "verify", "burnside")
FORMATS = ("text", "json", "tsv")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _witness_text(w: dict | None) -> str:
    if not w:
        return ""
    return " ".join(f"{k}={v}" for k, v in w.items())


def render_report(rep: ValidationReport, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(rep.to_dict())
    if fmt == "tsv":
        lines = ["check\tstatus\twitness"]
        lines += [f"{c.name}\t{c.status}\t{_witness_text(c.witness)}" for c in rep.checks]
        return "\n".join(lines) + "\n"
    lines = [f"{rep.subject}: {'PASS' if rep.ok else 'FAIL'}"]
    for c in rep.checks:
        line = f"  {c.status} {c.name}"
        if c.witness:
            line += f"  [{_witness_text(c.witness)}]"
        elif c.skipped:
            line += f"  ({c.detail})"
        lines.append(line)
    return "\n".join(lines) + "\n"


def orbits_data(A: PartialAction) -> dict:
    gl, xl = A.glabel, A.xlabel
    out = []
    S = partial_transversal(A)
    for s in S:
        r = orbit_report(A, s)
        space = coset_space(A, s)
        out.append(
            {
                "base": xl(s),
                "orbit": [xl(y) for y in r.orbit],
                "stabilizer": [gl(g) for g in r.stabilizer.members],
                "upper": [gl(g) for g in r.upper],
                "upper_complement": [gl(g) for g in r.upper_complement],
                "cosets": [
                    {
                        "label": coset_label(A, space, i),
                        "representative": gl(rep),
                        "members": [gl(g) for g in members],
                    }
                    for i, (rep, members) in enumerate(r.cosets)
                ],
                "predicted_global_orbit_size": global_orbit_size(A, s),
            }
        )
    return {"transversal": [xl(s) for s in S], "orbits": out}


def render_orbits(A: PartialAction, fmt: str) -> str:
    data = orbits_data(A)
    if fmt == "json":
        return _dump_json(data)

    def js(xs):
        return ", ".join(xs)

    if fmt == "tsv":
        lines = ["base\torbit\tstabilizer\tupper\tupper_complement\tcosets\tpredicted_global_orbit_size"]
        for o in data["orbits"]:
            cosets = "; ".join(f"{c['label']}={js(c['members'])}" for c in o["cosets"])
            lines.append(
                "\t".join(
                    [o["base"], js(o["orbit"]), js(o["stabilizer"]), js(o["upper"]),
                     js(o["upper_complement"]), cosets, str(o["predicted_global_orbit_size"])]
                )
            )
        return "\n".join(lines) + "\n"

    lines = [f"transversal: {js(data['transversal'])}"]
    for o in data["orbits"]:
        k, st, up, co = len(o["orbit"]), len(o["stabilizer"]), len(o["upper"]), len(o["upper_complement"])
        lines += [
            f"orbit of {o['base']}",
            f"  partial orbit:    {{{js(o['orbit'])}}}",
            f"  stabilizer:       {{{js(o['stabilizer'])}}}",
            f"  G^x:              {{{js(o['upper'])}}}",
            f"  complement:       {{{js(o['upper_complement'])}}}",
            "  cosets:           " + "; ".join(f"{c['label']} = {{{js(c['members'])}}}" for c in o["cosets"]),
            f"  |orbit| * |G_x| = {k} * {st} = |G^x| = {up}",
            f"  predicted global orbit size: {k} + {co}/{st} = {o['predicted_global_orbit_size']}",
        ]
    return "\n".join(lines) + "\n"


def render_global(A: PartialAction, glob, fmt: str) -> str:
    data = global_to_dict(A, glob)
    if fmt == "json":
        return _dump_json(data)
    G = A.group
    cols = list(G.elements)
    rows = [[t] + [data["perms"][g][t] for g in cols] for t in data["elements"]]
    if fmt == "tsv":
        return "\n".join("\t".join(r) for r in [["T"] + cols] + rows) + "\n"
    header = ["T"] + [f"beta_{g}" for g in cols]
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    sizes = ", ".join(str(len(o)) for o in data["orbits"])
    lines = [
        f"T: {len(data['elements'])} elements, {len(data['orbits'])} orbits (sizes {sizes})",
        "embedding: " + ", ".join(f"{x} -> {t}" for x, t in data["embedding"].items()),
        "",
    ]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table]
    lines.append("")
    lines += [f"orbit {i + 1}: {{{', '.join(o)}}}" for i, o in enumerate(data["orbits"])]
    return "\n".join(lines) + "\n"


def render_burnside(A: PartialAction, glob, fmt: str) -> str:
    B = glob.action
    counts = fixed_point_counts(B)
    k = burnside_orbit_count(B)
    labels = B.group.elements
    if fmt == "json":
        return _dump_json(
            {
                "k": k,
                "sum_fixed": sum(counts),
                "group_order": B.group.order,
                "fixed_points": dict(zip(labels, counts)),
            }
        )
    if fmt == "tsv":
        lines = ["g\tfixed"] + [f"{g}\t{c}" for g, c in zip(labels, counts)]
        lines += [f"sum\t{sum(counts)}", f"k\t{k}"]
        return "\n".join(lines) + "\n"
    lines = [f"k = {sum(counts)}/{B.group.order} = {k}", "fixed points per element:"]
    lines += [f"  |T_{g}| = {c}" for g, c in zip(labels, counts)]
    return "\n".join(lines) + "\n"


def run_command(cmd: str, input_path: str, fmt: str = "text", max_size: int = DEFAULT_MAX_SIZE,
                global_path: str | None = None) -> tuple[int, str, str]:
    """Run one command and return ``(exit status, stdout text, stderr text)``."""
    if cmd not in COMMANDS:
        return EXIT_INPUT, "", f"unknown command {cmd!r}\n"
    if fmt not in FORMATS:
        return EXIT_INPUT, "", f"unknown format {fmt!r}\n"
    try:
        _, A = parse_spec(input_path)
    except OSError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except SpecError as exc:
        return EXIT_INPUT, "", f"schema error: {exc}\n"
    except (NotAGroupError, LayoutError, InvalidOrderError) as exc:
        return EXIT_FAIL, "", f"invalid group: {exc}\n"

    rep = validate_partial_action(A)
    if cmd == "validate" or not rep.ok:
        return (EXIT_OK if rep.ok else EXIT_FAIL), render_report(rep, fmt), ""

    if cmd == "orbits":
        return EXIT_OK, render_orbits(A, fmt), ""

    try:
        if cmd == "verify" and global_path is not None:
            glob = load_global(global_path, A)
        else:
            glob = globalize(A, max_size=max_size)
    except SizeCapExceeded as exc:
        return EXIT_SIZE, "", f"size cap: {exc}\n"
    except OSError as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    except SpecError as exc:
        return EXIT_INPUT, "", f"schema error: {exc}\n"
    except InvalidGlobalActionError as exc:
        return EXIT_FAIL, "", f"invalid global action: {exc}\n"

    if cmd == "globalize":
        return EXIT_OK, render_global(A, glob, fmt), ""
    if cmd == "burnside":
        return EXIT_OK, render_burnside(A, glob, fmt), ""
    try:
        vrep = verify_globalization(A, glob)
    except ArgumentError as exc:
        return EXIT_FAIL, "", f"incompatible global action: {exc}\n"
    return (EXIT_OK if vrep.ok else EXIT_FAIL), render_report(vrep, fmt), ""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="partact",
        description="Analyse finite partial group actions and build their enveloping actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check the partial-action axioms",
        "orbits": "partial orbits, stabilizers, coset spaces and predicted global orbit sizes",
        "globalize": "construct the enveloping action and print its permutation table",
        "verify": "verify a globalization (constructed, or loaded with --global)",
        "burnside": "count orbits of the enveloping action by fixed points",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--input", "-i", required=True, help="partial action JSON file")
        p.add_argument("--format", "-f", choices=FORMATS, default="text")
        p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                       help="cap on |G|*|X| for the quotient construction (default: %(default)s)")
        if name == "verify":
            p.add_argument("--global", dest="global_path", help="global action JSON to verify instead")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code, out, err = run_command(
        args.command, args.input, args.format, args.max_size, getattr(args, "global_path", None)
    )
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
