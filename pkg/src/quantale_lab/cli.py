"""Command-line interface: ``qlab <command> ...``.

Exit codes: 0 pass, 1 the checked property is false, 2 malformed input or error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import catalog as catalog_entry
from .catalog import catalog_names, enumerate_strictly_quantized
from .errors import QuantaleLabError
from .qnt import export_qnt, export_tensor_qnt, parse_qnt
from .quantale import (
    DEFAULT_MAX_ELEMENTS,
    Quantale,
    find_involutions,
    hermitian_spectrum,
    property_report,
    sided_subquantales,
    spectrum,
    strong_spectrum,
)
from .quotients import coequalizer, induce_involution, quantic_frame_check, spectrum_pushout
from .tensor import DEFAULT_MAX_TENSOR, tensor_quantale
from .topology import (
    DEFAULT_MAX_OPENS,
    export_topology,
    quantic_frame_topologize,
    separation_report,
    sober_check,
    spectral_topology,
)

PASS, FALSE, ERROR = 0, 1, 2


class CliError(Exception):
    pass


def load_ref(ref: str, max_elements: int = DEFAULT_MAX_ELEMENTS) -> Quantale:
    """A file path, ``-`` for stdin, or ``catalog:<name>``."""
    if ref.startswith("catalog:"):
        return catalog_entry(ref.split(":", 1)[1])
    if ref == "-":
        return parse_qnt(sys.stdin.read(), max_elements)
    try:
        text = Path(ref).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {ref}: {e.strerror}") from e
    return parse_qnt(text, max_elements)


def _names(Q, idxs):
    return [Q.names[i] for i in idxs]


def _map_table(dom: Quantale, cod: Quantale, spec, label):
    if isinstance(spec, list):
        return tuple(cod.el(v) for v in spec)
    if not isinstance(spec, dict):
        raise CliError(f"{label} must be an object mapping element names")
    missing = [x for x in dom.names if x not in spec]
    if missing:
        raise CliError(f"{label} has no value for {missing[0]}")
    return tuple(cod.el(spec[x]) for x in dom.names)


def _load_spec(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON at line {e.lineno}") from e


def _field(spec, key):
    if key not in spec:
        raise CliError(f"spec is missing '{key}'")
    return spec[key]


# ---------------------------------------------------------------- commands

def cmd_check(args):
    Q = load_ref(args.file, args.max_elements)
    rep = property_report(Q)
    Ls, Rs, Is = sided_subquantales(Q)
    payload = {
        "quantale": Q.name,
        "size": len(Q),
        "properties": rep.true_flags(),
        "flags": {k: rep.flags[k] for k in rep.flags},
        "left_sided": _names(Q, Ls.elements),
        "right_sided": _names(Q, Rs.elements),
        "two_sided": _names(Q, Is.elements),
        "spectrum": _names(Q, spectrum(Q)),
        "strong_spectrum": _names(Q, strong_spectrum(Q)),
    }
    if Q.is_involutive:
        payload["hermitian_spectrum"] = _names(Q, hermitian_spectrum(Q))
    return payload, PASS


def cmd_spectrum(args):
    Q = load_ref(args.file, args.max_elements)
    if args.hermitian:
        kind, pts = "hermitian", hermitian_spectrum(Q)
    elif args.strong:
        kind, pts = "strong", strong_spectrum(Q)
    else:
        kind, pts = "prime", spectrum(Q)
    return {"quantale": Q.name, "kind": kind, "elements": _names(Q, pts), "count": len(pts)}, (
        PASS if pts else FALSE
    )


def cmd_involutions(args):
    Q = load_ref(args.file, args.max_elements)
    invs = find_involutions(Q)
    out = [{Q.names[a]: Q.names[v] for a, v in enumerate(inv) if a != v} for inv in invs]
    return {"quantale": Q.name, "count": len(invs), "involutions": out}, PASS if invs else FALSE


def cmd_tensor(args):
    Q = load_ref(args.left, args.max_elements)
    R = load_ref(args.right, args.max_elements)
    T = tensor_quantale(Q, R, max_size=args.max_tensor)
    text = export_tensor_qnt(T)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return {"tensor": T.quantale.name, "size": len(T.quantale), "elements": list(T.quantale.names),
            "qnt": text}, PASS


def cmd_coequalizer(args):
    spec = _load_spec(args.spec)
    S = load_ref(_field(spec, "source"), args.max_elements)
    Q = load_ref(_field(spec, "target"), args.max_elements)
    f = _map_table(S, Q, _field(spec, "f"), "f")
    g = _map_table(S, Q, _field(spec, "g"), "g")
    q = coequalizer(S, Q, f, g, spec.get("name", ""))
    if Q.is_involutive and spec.get("involutive", False):
        q = induce_involution(q)
    pi = {Q.names[a]: q.quotient.names[v] for a, v in enumerate(q.pi.table)}
    text = export_qnt(q.quotient)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return {"quotient": q.quotient.name, "size": len(q.quotient),
            "fixed_points": _names(Q, q.carrier), "pi": pi, "qnt": text}, PASS


def cmd_quantic_frame(args):
    Q = load_ref(args.file, args.max_elements)
    rep = quantic_frame_check(Q)
    payload = {
        "quantale": Q.name,
        "quantic_frame": rep.is_quantic_frame,
        "A": rep.condA,
        "B": rep.condB,
        "C": rep.condC,
    }
    for key, w in (("A", rep.witnessA), ("B", rep.witnessB), ("C", rep.witnessC)):
        if w is not None:
            payload[f"witness_{key}"] = list(w) if isinstance(w, tuple) else w
    return payload, PASS if rep.is_quantic_frame else FALSE


def cmd_pushout_spectrum(args):
    spec = _load_spec(args.spec)
    L = load_ref(_field(spec, "left"), args.max_elements)
    R = load_ref(_field(spec, "right"), args.max_elements)
    I = load_ref(_field(spec, "base"), args.max_elements)
    qL = _map_table(I, L, _field(spec, "q_left"), "q_left")
    qR = _map_table(I, R, _field(spec, "q_right"), "q_right")
    tL = _map_table(L, R, _field(spec, "theta_left"), "theta_left")
    tR = _map_table(R, L, _field(spec, "theta_right"), "theta_right")
    res = spectrum_pushout(L, R, I, qL, qR, tL, tR, spec.get("name", "Omega"))
    O = res.omega
    text = export_qnt(O)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return {"omega": O.name, "size": len(O), "left_iso": True,
            "hermitian_spectrum": _names(O, hermitian_spectrum(O)), "qnt": text}, PASS


def _topology_for(Q, space):
    if space == "sigma-s":
        return spectral_topology(Q, hermitian=False)
    if space == "sigma-h":
        return spectral_topology(Q, hermitian=True)
    return quantic_frame_topologize(Q)


def cmd_topologize(args):
    Q = load_ref(args.file, args.max_elements)
    res = _topology_for(Q, args.space)
    T = res.topology
    if len(T) > args.max_opens:
        raise CliError(f"topology has {len(T)} opens, above --max-opens {args.max_opens}")
    reports = [r for r in args.report.split(",") if r] if args.report else []
    payload = {
        "quantale": Q.name,
        "space": args.space,
        "points": list(T.points),
        "opens": len(T),
        "involutive": T.involutive,
    }
    for r in reports:
        if r == "base":
            base = res.extra["base"]
            payload["base"] = [T.values(f) for f in base]
            payload["base_size"] = len(base)
        elif r == "separation":
            sep = separation_report(T)
            payload["separation"] = {k: sep[k] for k in ("T0", "T1", "T2", "strongT2")}
            payload["separation_witnesses"] = {k: list(v) for k, v in sep["witnesses"].items()}
        elif r == "sober":
            if not T.involutive:
                raise CliError("sobriety is only reported for involutive topologies")
            s = sober_check(T)
            payload["sober"] = s.sober
            payload["sober_homs"] = s.homs
        else:
            raise CliError(f"unknown report {r!r}")
    if args.output:
        Path(args.output).write_text(export_topology(T), encoding="utf-8")
    return payload, PASS


def cmd_enumerate_sq2(args):
    classes = enumerate_strictly_quantized()
    return {
        "summary": f"{len(classes)} isomorphism classes",
        "classes": [{"name": Q.name, "size": len(Q)} for Q in classes],
    }, PASS


def cmd_catalog(args):
    if args.name is None:
        return {"catalog": catalog_names()}, PASS
    Q = catalog_entry(args.name)
    return {"name": Q.name, "qnt": export_qnt(Q)}, PASS


# ---------------------------------------------------------------- rendering

def _render_text(command, payload):
    lines = [f"command: {command}"]
    qnt = payload.get("qnt")
    for k, v in payload.items():
        if k == "qnt":
            continue
        if isinstance(v, (list, dict)):
            v = json.dumps(v, ensure_ascii=False)
        lines.append(f"{k}: {v}")
    out = "\n".join(lines) + "\n"
    if qnt is not None:
        out += qnt
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="qlab", description="Finite quantales and quantized topologies.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--max-tensor", type=int, default=DEFAULT_MAX_TENSOR)
    p.add_argument("--max-opens", type=int, default=DEFAULT_MAX_OPENS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("spectrum")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--strong", action="store_true")
    g.add_argument("--hermitian", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("involutions")
    s.add_argument("file")
    s.set_defaults(func=cmd_involutions)

    s = sub.add_parser("tensor")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("coequalizer")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_coequalizer)

    s = sub.add_parser("quantic-frame")
    s.add_argument("file")
    s.set_defaults(func=cmd_quantic_frame)

    s = sub.add_parser("pushout-spectrum")
    s.add_argument("spec")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_pushout_spectrum)

    s = sub.add_parser("topologize")
    s.add_argument("file")
    s.add_argument("--space", choices=("sigma-s", "sigma-h", "sigma-L"), default="sigma-L")
    s.add_argument("--report", default="")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_topologize)

    s = sub.add_parser("enumerate-sq2")
    s.set_defaults(func=cmd_enumerate_sq2)

    s = sub.add_parser("catalog")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except (QuantaleLabError, CliError) as e:
        payload = {"error": type(e).__name__, "message": str(e)}
        w = getattr(e, "witness", None)
        if w is not None:
            payload["witness"] = list(w) if isinstance(w, (tuple, list)) else w
        code = ERROR
    except (KeyError, ValueError, AssertionError) as e:
        payload = {"error": type(e).__name__, "message": str(e) or "internal check failed"}
        code = ERROR
    if args.format == "json":
        out = json.dumps({"command": args.command, "exit": code, **payload}, indent=2,
                         ensure_ascii=False, default=str)
        sys.stdout.write(out + "\n")
    elif args.command == "catalog" and code == PASS and "qnt" in payload:
        sys.stdout.write(payload["qnt"])
    else:
        sys.stdout.write(_render_text(args.command, payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
