"""Command-line interface: ``hyperhodge <command> [options]``.

Exit status is 0 on success, 1 when the input is well formed but violates a
mathematical precondition (singular f, degree mismatch, ...), and 2 for
malformed input.  JSON output is sorted and indented, so identical requests
give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import griffiths, hodge, specseq
from .errors import DomainError, InputError
from .jacobian import HypersurfaceContext, build_context, fermat
from .polyring import GradedPoly, format_poly, parse_poly
from .residue import hodge_type, residue_of, theorem41_report

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# request parsing


def _context(args) -> HypersurfaceContext:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    if args.d < 1:
        raise InputError("--d must be at least 1")
    if args.f is not None and args.f_file is not None:
        raise InputError("give at most one of --f and --f-file")
    if args.f_file is not None:
        try:
            text = Path(args.f_file).read_text().strip()
        except OSError as exc:
            raise InputError(f"cannot read {args.f_file}: {exc.strerror}") from exc
    else:
        text = args.f if args.f is not None else "fermat"
    if text == "fermat":
        f = fermat(args.n, args.d)
    else:
        f = parse_poly(text, args.n + 2, degree=args.d)
        if f.is_zero():
            raise InputError("f is the zero polynomial")
    return build_context(args.n, f)


def parse_form_sum(ctx: HypersurfaceContext, text: str) -> griffiths.FormSum:
    """``"A1:k1,A2:k2,..."`` with each Ai a polynomial and ki its pole order."""
    total = griffiths.FormSum.empty(ctx)
    if not text.strip():
        return total
    for piece in text.split(","):
        num, sep, order = piece.rpartition(":")
        if not sep:
            raise InputError(f"form term {piece.strip()!r} lacks ':POLEORDER'")
        try:
            k = int(order)
        except ValueError as exc:
            raise InputError(f"pole order {order.strip()!r} is not an integer") from exc
        if not 1 <= k <= ctx.n + 2:
            raise griffiths.PoleOrderOutOfRange(f"pole order {k} outside 1..{ctx.n + 2}")
        A = parse_poly(num, ctx.nvars, degree=griffiths.numerator_degree(ctx, k))
        w = griffiths.make_form(ctx, A, k)
        total = total + griffiths.FormSum(ctx, {w.k: w.A})
    return total


# ---------------------------------------------------------------------------
# payloads


def _setting(ctx: HypersurfaceContext) -> dict:
    return {"n": ctx.n, "d": ctx.d, "f": format_poly(ctx.f), "socle_degree": ctx.socle_degree}


def _poly_map(comps: dict[int, GradedPoly]) -> dict[str, str]:
    return {str(j): format_poly(p) for j, p in sorted(comps.items())}


def cmd_hodge(args) -> dict:
    ctx = _context(args)
    prim = hodge.primitive_hodge_numbers(ctx)
    return {
        "setting": _setting(ctx),
        "primitive_hodge_numbers": list(prim.entries),
        "hodge_filtration_dims": hodge.hodge_filtration_dims(ctx),
        "betti_numbers": hodge.betti_table(ctx),
        "euler_characteristic": hodge.euler_characteristic(ctx.n, ctx.d),
        "consistency": hodge.consistency_report(ctx),
    }


def cmd_reduce(args) -> dict:
    ctx = _context(args)
    s = parse_form_sum(ctx, args.form)
    nf = griffiths.normal_form(s)
    return {
        "setting": _setting(ctx),
        "form": {str(k): format_poly(a) for k, a in sorted(s.terms.items())},
        "normal_form": _poly_map(nf.components),
        "verdict": "exact" if nf.is_zero() else "not exact",
    }


def cmd_exact(args) -> dict:
    ctx = _context(args)
    s = parse_form_sum(ctx, args.form)
    rep = griffiths.second_kind_report(s)
    return {
        "setting": _setting(ctx),
        "exact": rep["exact"],
        "second_kind": rep["second_kind"],
        "justification": rep["justification"],
    }


def cmd_residue(args) -> dict:
    ctx = _context(args)
    s = parse_form_sum(ctx, args.form)
    res = residue_of(s)
    comps = []
    for j in sorted(res.components):
        p = res.components[j]
        if p:
            t = hodge_type(ctx.n, j)
            comps.append({"pole_order": j, "hodge_type": list(t), "representative": format_poly(p)})
    return {
        "setting": _setting(ctx),
        "components": comps,
        "zero": res.is_zero(),
        "filtration_level": res.filtration_level(),
    }


def cmd_thm41(args) -> dict:
    ctx = _context(args)
    reports = [theorem41_report(ctx, k) for k in range(ctx.n + 1)]
    return {"setting": _setting(ctx), "reports": reports, "holds": all(r["holds"] for r in reports)}


def cmd_complement(args) -> dict:
    ctx = _context(args)
    cc = hodge.complement_cohomology(ctx)
    return {
        "setting": _setting(ctx),
        "dims": {str(q): v for q, v in enumerate(cc.dims)},
        "weights": {str(q): {str(w): v for w, v in sorted(ws.items())} for q, ws in sorted(cc.weights.items())},
        "hodge_filtration": {str(k): v for k, v in enumerate(cc.hodge_filtration)},
    }


def cmd_specseq(args) -> dict:
    fc = specseq.load_complex(args.file)
    top = specseq.infinity_index(fc)
    pages = [specseq.page_to_dict(specseq.page(fc, r)) for r in range(top + 1)]
    out = {
        "cohomology": {str(m): v for m, v in fc.complex.cohomology_dims().items()},
        "filtration_length": fc.length,
        "pages": pages,
        "e_infinity": pages[-1]["entries"],
        "degeneration_page": specseq.degeneration_page(fc),
    }
    if args.les:
        out["long_exact_sequence"] = specseq.two_term_les(fc).as_dict()
    return out


# ---------------------------------------------------------------------------
# tables


def _table(payload: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    width = max((len(str(k)) for k in payload), default=0)
    for key, val in payload.items():
        if isinstance(val, dict):
            if not val:
                lines.append(f"{pad}{str(key).ljust(width)}  -")
                continue
            lines.append(f"{pad}{key}:")
            lines.extend(_table(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(val):
                lines.append(f"{pad}  [{i}]")
                lines.extend(_table(item, indent + 2))
        else:
            if isinstance(val, list) and val and isinstance(val[0], list):
                val = "[" + "; ".join(" ".join(map(str, row)) for row in val) + "]"
            elif isinstance(val, list):
                val = " ".join(str(v) for v in val) if val else "-"
            elif isinstance(val, bool):
                val = "yes" if val else "no"
            lines.append(f"{pad}{str(key).ljust(width)}  {val}")
    return lines


def _wide_ints_as_strings(obj):
    """Integers that do not fit in a signed 64-bit word become strings."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if not -(2**63) <= obj < 2**63 else obj
    if isinstance(obj, dict):
        return {k: _wide_ints_as_strings(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_wide_ints_as_strings(v) for v in obj]
    return obj


def render(payload: dict, as_json: bool) -> str:
    if as_json:
        payload = _wide_ints_as_strings(payload)
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    body = {k: v for k, v in payload.items() if k not in {"schema_version", "command"}}
    return f"[{payload['command']}]\n" + "\n".join(_table(body)) + "\n"


# ---------------------------------------------------------------------------


COMMANDS = {
    "hodge": (cmd_hodge, "primitive Hodge numbers, filtration, Betti numbers, cross-checks"),
    "reduce": (cmd_reduce, "normal form of a sum of rational forms"),
    "exact": (cmd_exact, "exactness / second-kind verdict"),
    "residue": (cmd_residue, "residue class with Hodge types"),
    "thm41": (cmd_thm41, "Hodge filtration versus residues of pole-order pieces"),
    "complement": (cmd_complement, "cohomology of the complement of Y"),
    "specseq": (cmd_specseq, "spectral sequence of a filtered complex read from JSON"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit status 2 but route through InputError
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperhodge", description="Hodge theory of smooth projective hypersurfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        if name == "specseq":
            p.add_argument("--file", required=True, help="filtered complex in JSON")
            p.add_argument("--les", action="store_true", help="also report the two-level long exact sequence")
            continue
        p.add_argument("--n", type=int, required=True, help="dimension of Y")
        p.add_argument("--d", type=int, required=True, help="degree of f")
        p.add_argument("--f", help='"fermat" (default) or the polynomial in x0..x{n+1}')
        p.add_argument("--f-file", help="file holding the polynomial text")
        if name in {"reduce", "exact", "residue"}:
            p.add_argument("--form", required=True, help='"A1:k1,A2:k2,..." numerator:pole-order pairs')
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        func = COMMANDS[args.command][0]
        payload = {"schema_version": SCHEMA_VERSION, "command": args.command, **func(args)}
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(payload, args.json))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
