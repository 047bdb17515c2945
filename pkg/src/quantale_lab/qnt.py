"""Reading and writing the line-oriented ``.qnt`` quantale format.

    quantale q2
    elements: bot b al ar c top
    order: bot<b b<al b<ar al<c ar<c c<top
    mult: b: b b ar ar ar
    ...
    unit: none
    involution: bot->bot b->b al->ar ar->al c->c top->top

Rows and columns of ``mult`` run over the non-bottom elements in element
order; bottom products are implied.  ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, QuantaleLabError
from .order import validate_lattice
from .quantale import Quantale, validate_quantale


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_qnt(text: str, max_elements: int = 64) -> Quantale:
    name = None
    elements = None
    order_pairs = []
    order_seen = False
    rows = {}
    row_lines = {}
    unit = None
    involution = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("quantale"):
            parts = line.split()
            if len(parts) != 2 or parts[0] != "quantale":
                raise ParseError("expected 'quantale <name>'", no)
            name = parts[1]
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"unrecognised line {raw.strip()!r}", no)
        key, rest = key.strip(), rest.strip()
        if key == "elements":
            elements = rest.split()
            if not elements:
                raise ParseError("empty element list", no)
            if len(set(elements)) != len(elements):
                raise ParseError("duplicate element name", no)
        elif key == "order":
            order_seen = True
            for tok in rest.split():
                a, lt, b = tok.partition("<")
                if not lt or not a or not b:
                    raise ParseError(f"bad order relation {tok!r}", no)
                order_pairs.append((a, b, no))
        elif key == "mult":
            row, sep2, vals = rest.partition(":")
            if not sep2:
                raise ParseError("expected 'mult: <row>: v1 v2 ...'", no)
            row = row.strip()
            if row in rows:
                raise ParseError(f"duplicate row {row}", no)
            rows[row] = vals.split()
            row_lines[row] = no
        elif key == "unit":
            unit = None if rest == "none" else rest
            unit_line = no
        elif key == "involution":
            if rest == "none":
                involution = None
            else:
                involution = {}
                for tok in rest.split():
                    a, arrow, b = tok.partition("->")
                    if not arrow or not a or not b:
                        raise ParseError(f"bad involution entry {tok!r}", no)
                    involution[a] = b
            inv_line = no
        else:
            raise ParseError(f"unknown key {key!r}", no)
    if name is None:
        raise ParseError("missing 'quantale <name>' header", 1)
    if elements is None:
        raise ParseError("missing 'elements:' line", 1)
    known = set(elements)
    for a, b, no in order_pairs:
        for x in (a, b):
            if x not in known:
                raise ParseError(f"unknown element {x!r} in order", no, witness=x)
    if not order_seen and len(elements) > 1:
        raise ParseError("missing 'order:' line", 1)
    try:
        L = validate_lattice(elements, [(a, b) for a, b, _ in order_pairs])
    except QuantaleLabError as e:
        raise ParseError(str(e), order_pairs[0][2] if order_pairs else 1, e.witness) from e
    nonbot = [x for x in elements if x != L.names[L.bottom]]
    mult = {}
    for row, vals in rows.items():
        no = row_lines[row]
        if row not in known:
            raise ParseError(f"unknown row element {row!r}", no, witness=row)
        if row == L.names[L.bottom]:
            if any(v != row for v in vals):
                raise ParseError("bottom row must be all bottom", no)
            continue
        if len(vals) != len(nonbot):
            raise ParseError(f"row {row} has {len(vals)} entries, expected {len(nonbot)}", no)
        for col, v in zip(nonbot, vals):
            if v not in known:
                raise ParseError(f"unknown element {v!r} in row {row}", no, witness=v)
            mult[(row, col)] = v
    missing = [x for x in nonbot if x not in rows]
    if missing:
        raise ParseError(f"missing mult row for {missing[0]}", 1, witness=missing[0])
    if unit is not None and unit not in known:
        raise ParseError(f"unknown unit {unit!r}", unit_line, witness=unit)
    if involution is not None:
        for k, v in involution.items():
            for x in (k, v):
                if x not in known:
                    raise ParseError(f"unknown element {x!r} in involution", inv_line, witness=x)
    return validate_quantale(L, mult, unit, involution, name, max_elements=max_elements)


def load_qnt(path, max_elements: int = 64) -> Quantale:
    return parse_qnt(Path(path).read_text(encoding="utf-8"), max_elements)


def export_qnt(Q: Quantale, comments=()) -> str:
    names = Q.names
    bot = Q.bottom
    nonbot = [x for x in Q.elements if x != bot]
    edges = [f"{names[a]}<{names[b]}" for a, b in Q.lattice.covers]
    lines = [f"quantale {Q.name or 'Q'}"]
    lines.extend(f"# {c}" for c in comments)
    lines.append("elements: " + " ".join(names))
    lines.append("order: " + " ".join(edges))
    for a in nonbot:
        lines.append(f"mult: {names[a]}: " + " ".join(names[Q.m(a, b)] for b in nonbot))
    lines.append("unit: " + (names[Q.unit] if Q.unit is not None else "none"))
    if Q.involution is None:
        lines.append("involution: none")
    else:
        lines.append(
            "involution: " + " ".join(f"{names[a]}->{names[Q.inv(a)]}" for a in Q.elements)
        )
    return "\n".join(lines) + "\n"


def export_tensor_qnt(T) -> str:
    """Tensor quantale export with the elementary-tensor factorization as comments."""
    Q = T.quantale
    comments = ["factorization:"]
    for d in Q.elements:
        parts = [f"{T.Q.names[x]}*{T.R.names[y]}" for x, y in sorted(T.tl.factorization(d))]
        comments.append(f"  {Q.names[d]} = " + (" v ".join(parts) if parts else "bot"))
    return export_qnt(Q, comments)
