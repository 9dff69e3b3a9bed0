"""Reading and writing categories.

The canonical text format is line based::

    dgcat 1
    field Q                      # or Fp:5
    mode table                   # or free
    name A0
    objects X1 X2
    hom X1 X2: f 0               # basis elements "label degree", comma separated
    unit X1 = id1
    d a = 2*b - 1/3*c
    comp g f = h                 # g o f; products not listed are zero

In free mode ``hom``/``unit``/``comp`` are replaced by ``gen name source target degree``
and differentials are combinations of words ``g*f`` (``1`` is the empty word).
Unit products of single-label units are implied and not written.
Every category also has a JSON mirror carrying ``format_version``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from dgquot.category import DGCategory, ValidationError, validate
from dgquot.complexes import Complex
from dgquot.free import FreeCategory, Generator
from dgquot.linalg import Field, Vec

FORMAT_VERSION = 1
IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.'~@]*")
COEF = re.compile(r"\d+(?:/\d+)?")

Category = Union[DGCategory, FreeCategory]


class DGCatSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


# ---------------------------------------------------------------- text parsing

class _Line:
    def __init__(self, text: str, number: int):
        self.raw = text
        self.number = number
        self.body = text.split("#", 1)[0].rstrip()

    def error(self, message: str, at: Optional[str] = None):
        col = self.raw.find(at) + 1 if at and at in self.raw else 1 + len(self.raw) - len(self.raw.lstrip())
        raise DGCatSyntaxError(message, self.number, col)

    def ident(self, tok: str) -> str:
        if not IDENT.fullmatch(tok):
            self.error(f"bad name {tok!r}", tok)
        return tok

    def integer(self, tok: str) -> int:
        try:
            return int(tok)
        except ValueError:
            self.error(f"expected an integer, got {tok!r}", tok)


def _lincomb(line: _Line, text: str, F: Field, atom) -> Dict:
    """Parse ``c1*t1 + c2*t2 - ...``; ``atom`` turns the non-coefficient part into a key."""
    out: Dict = {}
    text = text.strip()
    if text == "0":
        return out
    pieces = re.split(r"([+-])", text)
    if not pieces[0].strip():
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    for op, term in zip(pieces[::2], pieces[1::2]):
        term = term.strip()
        if not term or " " in term:
            line.error(f"malformed term {term!r} in {text!r}", term or text)
        parts = term.split("*")
        coef = Fraction(1)
        if COEF.fullmatch(parts[0]) and (len(parts) > 1 or atom is _word_atom):
            coef = Fraction(parts[0])
            parts = parts[1:] or ["1"]
        key = atom(line, parts, term)
        out[key] = F.norm(out.get(key, 0) + F(-coef if op == "-" else coef))
    if len(pieces) % 2:
        line.error(f"dangling sign in {text!r}", text)
    return {k: v for k, v in out.items() if v}


def _label_atom(line: _Line, parts: List[str], term: str):
    if len(parts) != 1:
        line.error(f"expected a single basis label in {term!r}", term)
    return line.ident(parts[0])


def _word_atom(line: _Line, parts: List[str], term: str):
    if parts == ["1"]:
        return ()
    return tuple(line.ident(p) for p in parts)


def _split_eq(line: _Line, body: str) -> Tuple[str, str]:
    if "=" not in body:
        line.error("expected '='")
    lhs, rhs = body.split("=", 1)
    return lhs.strip(), rhs.strip()


def parse(text: str, check: bool = True) -> Category:
    """Parse the text format. With ``check`` the result must pass validation."""
    lines = [_Line(t, i + 1) for i, t in enumerate(text.splitlines())]
    lines = [ln for ln in lines if ln.body.strip()]
    if not lines:
        raise DGCatSyntaxError("empty file")
    head = lines[0].body.split()
    if head[:1] != ["dgcat"]:
        lines[0].error("file must start with 'dgcat 1'")
    if head != ["dgcat", str(FORMAT_VERSION)]:
        lines[0].error(f"unsupported format version {' '.join(head[1:])!r}")
    F: Optional[Field] = None
    mode = "table"
    name = ""
    objects: List[str] = []
    basis: Dict[Tuple[str, str], List[Tuple[str, int]]] = {}
    where: Dict[str, Tuple[Tuple[str, str], int]] = {}
    gens: List[Generator] = []
    units: Dict[str, Tuple[_Line, str]] = {}
    dlines: List[Tuple[_Line, str, str]] = []
    comps: List[Tuple[_Line, str, str, str]] = []
    for ln in lines[1:]:
        kw, _, rest = ln.body.strip().partition(" ")
        rest = rest.strip()
        if kw == "field":
            try:
                F = Field.from_spec(rest)
            except ValueError as e:
                ln.error(str(e), rest)
        elif kw == "mode":
            if rest not in ("table", "free"):
                ln.error(f"mode must be table or free, got {rest!r}", rest)
            mode = rest
        elif kw == "name":
            name = rest
        elif kw == "objects":
            for tok in rest.split():
                if tok in objects:
                    ln.error(f"object {tok} listed twice", tok)
                objects.append(ln.ident(tok))
        elif kw == "hom":
            if mode != "table":
                ln.error("'hom' lines belong to table mode")
            head_, sep, elems = rest.partition(":")
            if not sep:
                ln.error("expected 'hom X Y: label degree, ...'")
            pair = head_.split()
            if len(pair) != 2 or any(o not in objects for o in pair):
                ln.error(f"unknown object pair {head_.strip()!r}", head_.strip() or None)
            pair = tuple(pair)
            if pair in basis:
                ln.error(f"Hom{pair} given twice")
            basis[pair] = []
            for item in filter(None, (e.strip() for e in elems.split(","))):
                toks = item.split()
                if len(toks) != 2:
                    ln.error(f"expected 'label degree', got {item!r}", item)
                lab = ln.ident(toks[0])
                if lab in where:
                    ln.error(f"basis label {lab} used twice", lab)
                where[lab] = (pair, len(basis[pair]))
                basis[pair].append((lab, ln.integer(toks[1])))
        elif kw == "gen":
            if mode != "free":
                ln.error("'gen' lines belong to free mode")
            toks = rest.split()
            if len(toks) != 4:
                ln.error("expected 'gen name source target degree'")
            g, s, t, deg = toks
            for o in (s, t):
                if o not in objects:
                    ln.error(f"unknown object {o}", o)
            if any(x.name == g for x in gens):
                ln.error(f"generator {g} declared twice", g)
            gens.append(Generator(ln.ident(g), s, t, ln.integer(deg)))
        elif kw == "unit":
            lhs, rhs = _split_eq(ln, rest)
            if lhs not in objects:
                ln.error(f"unknown object {lhs}", lhs)
            units[lhs] = (ln, rhs)
        elif kw == "d":
            lhs, rhs = _split_eq(ln, rest)
            dlines.append((ln, ln.ident(lhs), rhs))
        elif kw == "comp":
            lhs, rhs = _split_eq(ln, rest)
            toks = lhs.split()
            if len(toks) != 2:
                ln.error("expected 'comp g f = ...'")
            comps.append((ln, toks[0], toks[1], rhs))
        else:
            ln.error(f"unknown keyword {kw!r}", kw)
    if F is None:
        raise DGCatSyntaxError("missing 'field' line", lines[0].number, 1)
    if not objects:
        raise DGCatSyntaxError("missing 'objects' line", lines[0].number, 1)
    if mode == "free":
        return _build_free(F, objects, gens, dlines, name, check)
    return _build_table(F, objects, basis, where, units, dlines, comps, name, check)


def _build_free(F, objects, gens, dlines, name, check) -> FreeCategory:
    names = {g.name for g in gens}
    diff: Dict[str, Dict] = {}
    for ln, g, rhs in dlines:
        if g not in names:
            ln.error(f"unknown generator {g}", g)
        if g in diff:
            ln.error(f"d({g}) given twice", g)
        diff[g] = _lincomb(ln, rhs, F, _word_atom)
        for w in diff[g]:
            for x in w:
                if x not in names:
                    ln.error(f"unknown generator {x}", x)
    try:
        return FreeCategory(F, objects, gens, diff, name=name, check=check)
    except (ValueError, KeyError) as e:
        raise DGCatSyntaxError(f"invalid free category: {e}") from None


def _build_table(F, objects, basis, where, units, dlines, comps, name, check) -> DGCategory:
    dcols: Dict[str, Vec] = {}
    for ln, lab, rhs in dlines:
        if lab not in where:
            ln.error(f"unknown basis label {lab}", lab)
        if lab in dcols:
            ln.error(f"d({lab}) given twice", lab)
        pair, _ = where[lab]
        col = {}
        for t, c in _lincomb(ln, rhs, F, _label_atom).items():
            if t not in where:
                ln.error(f"unknown basis label {t}", t)
            if where[t][0] != pair:
                ln.error(f"d({lab}) leaves Hom{pair}", t)
            col[where[t][1]] = c
        dcols[lab] = col
    homs = {}
    for pair, elems in basis.items():
        homs[pair] = Complex.build(F, [deg for _, deg in elems], [dcols.get(lab, {}) for lab, _ in elems],
                                   [lab for lab, _ in elems], check=False)
    uvec: Dict[str, Vec] = {}
    single: Dict[str, str] = {}
    for X in objects:
        if X not in units:
            raise DGCatSyntaxError(f"missing unit for object {X}")
        ln, rhs = units[X]
        v = {}
        for t, c in _lincomb(ln, rhs, F, _label_atom).items():
            if t not in where or where[t][0] != (X, X):
                ln.error(f"{t} is not a basis element of End({X})", t)
            v[where[t][1]] = c
        uvec[X] = v
        if len(v) == 1 and list(v.values())[0] == F(1):
            single[X] = basis[(X, X)][next(iter(v))][0]
    comp: Dict = {}
    given = set()
    for ln, g, f, rhs in comps:
        for t in (g, f):
            if t not in where:
                ln.error(f"unknown basis label {t}", t)
        (Y, Z), i = where[g]
        (X, Y2), j = where[f]
        if Y != Y2:
            ln.error(f"{g} o {f} is not composable", g)
        if (g, f) in given:
            ln.error(f"product {g} {f} given twice", g)
        given.add((g, f))
        out = {}
        for t, c in _lincomb(ln, rhs, F, _label_atom).items():
            if t not in where or where[t][0] != (X, Z):
                ln.error(f"{t} does not lie in Hom({X}, {Z})", t)
            out[where[t][1]] = c
        comp.setdefault((X, Y, Z), {})[(i, j)] = out
    # implied unit products
    for (X, Y), elems in basis.items():
        for k, (lab, _) in enumerate(elems):
            if Y in single and (single[Y], lab) not in given:
                comp.setdefault((X, Y, Y), {})[(where[single[Y]][1], k)] = {k: F(1)}
            if X in single and (lab, single[X]) not in given:
                comp.setdefault((X, X, Y), {})[(k, where[single[X]][1])] = {k: F(1)}
    C = DGCategory(F, objects, homs, comp, uvec, name)
    if check:
        rep = validate(C)
        if not rep.ok:
            raise ValidationError(rep)
    return C


# ---------------------------------------------------------------- rendering

def _sanitize(label) -> str:
    if isinstance(label, tuple):
        nums = [str(x).replace("-", "m") for x in label if not isinstance(x, str)]
        strs = [_sanitize(x) for x in label if isinstance(x, str)]
        base = "_".join(strs) or "e"
        s = f"{base}@{'.'.join(nums)}" if nums else base
    else:
        s = re.sub(r"[^A-Za-z0-9_.'~@]", "_", str(label))
    if not IDENT.fullmatch(s):
        s = "e_" + s
    return s


def table_names(C: DGCategory) -> Dict[Tuple[str, str], List[str]]:
    """Globally unique printable names for the basis of every Hom."""
    used: set = set()
    out = {}
    for X in C.objects:
        for Y in C.objects:
            h = C.hom(X, Y)
            names = []
            for i in range(len(h)):
                s = base = _sanitize(h.label(i))
                k = 1
                while s in used:
                    s = f"{base}~{k}"
                    k += 1
                used.add(s)
                names.append(s)
            out[(X, Y)] = names
    return out


def _render_comb(F: Field, items: Sequence[Tuple[str, object]]) -> str:
    terms = []
    for key, c in items:
        c = F(c)
        if not c:
            continue
        neg = not F.p and c < 0
        a = -c if neg else c
        cs = "" if a == 1 else F.format(a) + "*"
        t = cs + key
        if not terms:
            terms.append(("-" if neg else "") + t)
        else:
            terms.append(("- " if neg else "+ ") + t)
    return " ".join(terms) if terms else "0"


def _word_text(w) -> str:
    return "*".join(w) if w else "1"


def render(C: Category) -> str:
    """Canonical text form; parse(render(C)) reproduces C."""
    F = C.field
    out = [f"dgcat {FORMAT_VERSION}", f"field {F.spec}", f"mode {C.presentation}"]
    if C.name:
        out.append(f"name {C.name}")
    out.append("objects " + " ".join(C.objects))
    if isinstance(C, FreeCategory):
        for g in C.generators:
            out.append(f"gen {g.name} {g.source} {g.target} {g.degree}")
        for g in C.generators:
            dg = C.differential[g.name]
            if dg:
                items = sorted(dg.items(), key=lambda kv: (len(kv[0]), kv[0]))
                out.append(f"d {g.name} = " + _render_comb(F, [(_word_text(w), c) for w, c in items]))
        return "\n".join(out) + "\n"
    names = table_names(C)
    for X in C.objects:
        for Y in C.objects:
            h = C.hom(X, Y)
            if len(h):
                elems = ", ".join(f"{names[(X, Y)][i]} {h.degrees[i]}" for i in range(len(h)))
                out.append(f"hom {X} {Y}: {elems}")
    single = {}
    for X in C.objects:
        u = C.units[X]
        out.append(f"unit {X} = " + _render_comb(F, [(names[(X, X)][i], c) for i, c in sorted(u.items())]))
        if len(u) == 1 and list(u.values())[0] == F(1):
            single[X] = next(iter(u))
    for X in C.objects:
        for Y in C.objects:
            h = C.hom(X, Y)
            for i in range(len(h)):
                if h.d[i]:
                    out.append(f"d {names[(X, Y)][i]} = "
                               + _render_comb(F, [(names[(X, Y)][k], c) for k, c in sorted(h.d[i].items())]))
    for X in C.objects:
        for Y in C.objects:
            for Z in C.objects:
                tab = C.comp.get((X, Y, Z), {})
                for (i, j) in sorted(tab):
                    v = tab[(i, j)]
                    if Y == Z and single.get(Y) == i and v == {j: F(1)}:
                        continue
                    if X == Y and single.get(X) == j and v == {i: F(1)}:
                        continue
                    if v:
                        out.append(f"comp {names[(Y, Z)][i]} {names[(X, Y)][j]} = "
                                   + _render_comb(F, [(names[(X, Z)][k], c) for k, c in sorted(v.items())]))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- json mirror

def to_json(C: Category) -> dict:
    F = C.field
    doc = {"format_version": FORMAT_VERSION, "field": F.spec, "mode": C.presentation,
           "name": C.name, "objects": list(C.objects)}
    if isinstance(C, FreeCategory):
        doc["generators"] = [{"name": g.name, "source": g.source, "target": g.target, "degree": g.degree}
                             for g in C.generators]
        doc["d"] = {g.name: [{"word": list(w), "coeff": F.format(c)}
                             for w, c in sorted(C.differential[g.name].items(), key=lambda kv: (len(kv[0]), kv[0]))]
                    for g in C.generators if C.differential[g.name]}
        return doc
    names = table_names(C)
    doc["homs"] = [{"source": X, "target": Y,
                    "basis": [{"name": names[(X, Y)][i], "degree": C.hom(X, Y).degrees[i],
                               "d": {names[(X, Y)][k]: F.format(c) for k, c in sorted(C.hom(X, Y).d[i].items())}}
                              for i in range(len(C.hom(X, Y)))]}
                   for X in C.objects for Y in C.objects if len(C.hom(X, Y))]
    doc["units"] = {X: {names[(X, X)][i]: F.format(c) for i, c in sorted(C.units[X].items())} for X in C.objects}
    doc["comp"] = [{"g": names[(Y, Z)][i], "f": names[(X, Y)][j],
                    "value": {names[(X, Z)][k]: F.format(c) for k, c in sorted(v.items())}}
                   for X in C.objects for Y in C.objects for Z in C.objects
                   for (i, j), v in sorted(C.comp.get((X, Y, Z), {}).items()) if v]
    return doc


def from_json(doc: Mapping, check: bool = True) -> Category:
    """Inverse of :func:`to_json`; goes through the text form so both share one checker."""
    if doc.get("format_version") != FORMAT_VERSION:
        raise DGCatSyntaxError(f"unsupported format_version {doc.get('format_version')!r}")
    try:
        F = Field.from_spec(doc["field"])
        lines = [f"dgcat {FORMAT_VERSION}", f"field {doc['field']}", f"mode {doc.get('mode', 'table')}"]
        if doc.get("name"):
            lines.append(f"name {doc['name']}")
        lines.append("objects " + " ".join(doc["objects"]))
        if doc.get("mode") == "free":
            for g in doc["generators"]:
                lines.append(f"gen {g['name']} {g['source']} {g['target']} {g['degree']}")
            for g, terms in doc.get("d", {}).items():
                lines.append(f"d {g} = " + _render_comb(F, [(_word_text(t["word"]), F.parse(t["coeff"]))
                                                            for t in terms]))
        else:
            for h in doc["homs"]:
                lines.append(f"hom {h['source']} {h['target']}: "
                             + ", ".join(f"{b['name']} {b['degree']}" for b in h["basis"]))
            for X, u in doc["units"].items():
                lines.append(f"unit {X} = " + _render_comb(F, [(k, F.parse(c)) for k, c in u.items()]))
            for h in doc["homs"]:
                for b in h["basis"]:
                    if b.get("d"):
                        lines.append(f"d {b['name']} = "
                                     + _render_comb(F, [(k, F.parse(c)) for k, c in b["d"].items()]))
            for p in doc.get("comp", []):
                lines.append(f"comp {p['g']} {p['f']} = "
                             + _render_comb(F, [(k, F.parse(c)) for k, c in p["value"].items()]))
    except (KeyError, TypeError) as e:
        raise DGCatSyntaxError(f"malformed json category: missing or bad field {e}") from None
    return parse("\n".join(lines) + "\n", check)


def loads(text: str, check: bool = True) -> Category:
    """Parse either the text format or its JSON mirror."""
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise DGCatSyntaxError(e.msg, e.lineno, e.colno) from None
        return from_json(doc, check)
    return parse(text, check)


def load(path, check: bool = True) -> Category:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), check)


def dumps(C: Category, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(to_json(C), indent=2, sort_keys=False) + "\n"
    return render(C)
