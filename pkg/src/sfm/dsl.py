"""Text format for models and scenarios: lexer, recursive-descent parser, printer.

Grammar (``#`` starts a comment; whitespace and newlines are insignificant)::

    doc          := model_section (contrast | query) expect?
    model_section:= "model" ( "{" node_decl+ "}" | "include" STRING )
    node_decl    := "node" IDENT ( "exo" | "endo" "parents" "(" ident_list ")" )
                    "domain" domain ( "expr" expr | "table" table )?
    domain       := "{" value ("," value)* "}" | "{" INT ".." INT "}" | "real"
    table        := "{" ( "(" value_list ")" "->" value ","? )* "}"
    contrast     := "default" block "actual" block | "actual" block "tweak" block
    query        := "vfi" block
                  | "csp" "known" block "targets" "(" ident_list? ")"
                  | "fd" ( "(" ident_list ")" "->" "(" ident_list ")" )+
    expect       := "expect" ( "cause" block "effect" block
                             | "answer" block+ | "holds" BOOL+ )
    block        := "{" ( IDENT ":" value ","? )* "}"

Expression operators, loosest first: ``if/then/else``, ``|``, ``&``,
comparisons (``== != < <= > >=``), ``+ -``, ``*``, prefix ``! -``, ``^``.
"""

from __future__ import annotations

import os
import re
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, SfmError
from .functions import Binary, Expr, IfElse, Lit, Ref, Table, Unary
from .model import Sfm
from .values import BOOL, INT, KEYWORDS, RAT, SYM, Assignment, Domain, Value, value

MAX_DEPTH = 64  # each level costs several Python frames
MAX_HEIGHT = 128  # evaluation and printing recurse once per tree level


class ParseError(SfmError):
    """Syntax or post-parse validation error at a 1-based line/column."""

    def __init__(self, line: int, column: int, message: str, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.message = message
        self.expected = frozenset(expected)
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(text)


class ModelValidationError(ParseError):
    """The text parsed, but the model it describes fails validation."""

    def __init__(self, line: int, column: int, message: str, report):
        super().__init__(line, column, message)
        self.report = report


# --- lexer ----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT NUMBER STRING PUNCT EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<number>[0-9]+(?:/[0-9]+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>'(?:[^'\\\n]|\\.)*'|"(?:[^"\\\n]|\\.)*")
  | (?P<punct>->|\.\.|==|!=|<=|>=|[{}(),:!&|+\-*^<>])
    """,
    re.VERBOSE,
)


def _decode(text) -> str:
    if isinstance(text, str):
        return text
    try:
        return bytes(text).decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = bytes(text)[: e.start].decode("utf-8", errors="replace")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        raise ParseError(line, col, "invalid UTF-8") from None


def tokenize(text) -> list[Token]:
    text = _decode(text)
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            if ch in "'\"":
                raise ParseError(line, col, "unterminated string")
            raise ParseError(line, col, f"unexpected character {ch!r}")
        kind = m.lastgroup
        s = m.group()
        if kind == "number" and "/" in s and int(s.split("/")[1]) == 0:
            raise ParseError(line, col, f"zero denominator in {s}")
        if kind not in ("ws", "comment"):
            toks.append(Token(kind.upper(), s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            line_start = pos + s.rfind("\n") + 1
        pos = m.end()
    toks.append(Token("EOF", "", line, pos - line_start + 1))
    return toks


def _unquote(s: str) -> str:
    body = s[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


# --- parsed document ------------------------------------------------------

@dataclass(frozen=True)
class FdCheck:
    sources: tuple[str, ...]
    targets: tuple[str, ...]


@dataclass(eq=False)
class _Pending:
    """Raw node declaration, checked against domains once all nodes are known."""
    name: str
    tok: Token
    kind: str
    parents: list
    domain: Domain | None
    fn_kind: str | None = None
    body: object = None
    rows: list | None = None


def _height(node) -> int:
    """Tree height, computed without recursion."""
    best = 0
    stack = [(node, 1)]
    while stack:
        n, h = stack.pop()
        best = max(best, h)
        if isinstance(n, Unary):
            stack.append((n.arg, h + 1))
        elif isinstance(n, Binary):
            stack += [(n.left, h + 1), (n.right, h + 1)]
        elif isinstance(n, IfElse):
            stack += [(n.cond, h + 1), (n.then, h + 1), (n.orelse, h + 1)]
    return best


class Parser:
    def __init__(self, text, base_dir: str | None = None, _depth_files: int = 0):
        self.toks = tokenize(text)
        self.i = 0
        self.base_dir = base_dir
        self.depth = 0
        self._depth_files = _depth_files

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message, expected=(), tok=None):
        t = tok or self.tok
        return ParseError(t.line, t.col, message, expected)

    def _describe(self, t: Token):
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.i += 1
        return t

    def at(self, text) -> bool:
        t = self.tok
        return t.kind in ("PUNCT", "IDENT") and t.text == text

    def accept(self, text) -> Token | None:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text) -> Token:
        if not self.at(text):
            raise self.error(f"unexpected {self._describe(self.tok)}", {repr(text)})
        return self.advance()

    def ident(self, what="identifier") -> Token:
        t = self.tok
        if t.kind != "IDENT" or t.text in _RESERVED:
            raise self.error(f"unexpected {self._describe(t)}", {what})
        return self.advance()

    def expect_eof(self):
        if self.tok.kind != "EOF":
            raise self.error(f"unexpected {self._describe(self.tok)}", {"end of input"})

    # values
    def value_literal(self) -> Value:
        t = self.tok
        if self.at("-"):
            self.advance()
            n = self.tok
            if n.kind != "NUMBER":
                raise self.error(f"unexpected {self._describe(n)}", {"number"})
            self.advance()
            return _number(n.text, negate=True)
        if t.kind == "NUMBER":
            self.advance()
            return _number(t.text)
        if t.kind == "STRING":
            self.advance()
            s = _unquote(t.text)
            if not s:
                raise self.error("empty symbol", tok=t)
            return Value(SYM, s)
        if t.kind == "IDENT":
            if t.text in ("true", "false"):
                self.advance()
                return Value(BOOL, t.text == "true")
            if t.text not in _RESERVED:
                self.advance()
                return Value(SYM, t.text)
        raise self.error(f"unexpected {self._describe(t)}", {"value"})

    def ident_list(self, allow_empty=False) -> list[Token]:
        self.expect("(")
        out = []
        if allow_empty and self.at(")"):
            self.advance()
            return out
        out.append(self.ident())
        while self.accept(","):
            out.append(self.ident())
        self.expect(")")
        return out

    def block(self) -> list[tuple[Token, Value]]:
        self.expect("{")
        out = []
        seen = set()
        while not self.at("}"):
            if self.tok.kind != "IDENT" or self.tok.text in _RESERVED:
                raise self.error(f"unexpected {self._describe(self.tok)}", {"identifier", "'}'"})
            k = self.advance()
            if k.text in seen:
                raise self.error(f"{k.text} bound twice", tok=k)
            seen.add(k.text)
            self.expect(":")
            out.append((k, self.value_literal()))
            self.accept(",")
        self.expect("}")
        return out

    # domains
    def domain(self) -> Domain:
        if self.accept("real"):
            return Domain.real()
        start = self.expect("{")
        if self.at("}"):
            raise self.error("empty domain", {"value"})
        first = self.value_literal()
        if self.at(".."):
            dots = self.advance()
            last = self.value_literal()
            if first.tag != INT or last.tag != INT:
                raise self.error("range bounds must be integers", tok=dots)
            if last.payload < first.payload:
                raise self.error("empty range", tok=dots)
            if last.payload - first.payload >= 10**6:
                raise self.error("range too large", tok=dots)
            self.expect("}")
            return Domain.range(first.payload, last.payload)
        vals = [first]
        while self.accept(","):
            t = self.tok
            v = self.value_literal()
            if v in vals:
                raise self.error(f"duplicate domain value {v}", tok=t)
            vals.append(v)
        self.expect("}")
        try:
            return Domain.finite(vals)
        except DomainError as e:
            raise self.error(str(e), tok=start) from None

    # expressions
    def expression(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")
        try:
            if self.accept("if"):
                c = self.expression()
                self.expect("then")
                a = self.expression()
                self.expect("else")
                b = self.expression()
                return IfElse(c, a, b)
            return self._or()
        finally:
            self.depth -= 1

    def _or(self):
        node = self._and()
        while self.accept("|"):
            node = Binary("|", node, self._and())
        return node

    def _and(self):
        node = self._cmp()
        while self.accept("&"):
            node = Binary("&", node, self._cmp())
        return node

    def _cmp(self):
        node = self._add()
        for op in ("==", "!=", "<=", ">=", "<", ">"):
            if self.at(op):
                self.advance()
                return Binary(op, node, self._add())
        return node

    def _add(self):
        node = self._mul()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            node = Binary(op, node, self._mul())
        return node

    def _mul(self):
        node = self._unary()
        while self.accept("*"):
            node = Binary("*", node, self._unary())
        return node

    def _unary(self):
        if self.at("!") or self.at("-"):
            op = self.advance().text
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise self.error("expression nested too deeply")
            try:
                return Unary(op, self._unary())
            finally:
                self.depth -= 1
        node = self._atom()
        if self.at("^"):
            self.advance()
            t = self.tok
            if t.kind != "NUMBER" or "/" in t.text:
                raise self.error(f"unexpected {self._describe(t)}", {"integer exponent"})
            self.advance()
            node = Binary("^", node, Lit(Value(INT, int(t.text))))
        return node

    def _atom(self):
        t = self.tok
        if t.kind == "NUMBER":
            self.advance()
            return Lit(_number(t.text))
        if t.kind == "STRING":
            self.advance()
            s = _unquote(t.text)
            if not s:
                raise self.error("empty symbol", tok=t)
            return Lit(Value(SYM, s))
        if t.kind == "IDENT":
            if t.text in ("true", "false"):
                self.advance()
                return Lit(Value(BOOL, t.text == "true"))
            if t.text not in _RESERVED:
                self.advance()
                self._refs.append(t)
                return Ref(t.text)
        if self.accept("("):
            node = self.expression()
            self.expect(")")
            return node
        raise self.error(f"unexpected {self._describe(t)}", {"expression"})

    _refs: list

    def parse_expression(self):
        self._refs = []
        start = self.tok
        node = self.expression()
        if _height(node) > MAX_HEIGHT:
            raise self.error(f"expression deeper than {MAX_HEIGHT} levels", tok=start)
        return node, self._refs

    # model
    def model_section(self) -> Sfm:
        self.expect("model")
        if self.at("include"):
            return self._include()
        self.expect("{")
        decls: list[_Pending] = []
        names = {}
        while not self.at("}"):
            if not self.at("node"):
                raise self.error(f"unexpected {self._describe(self.tok)}", {"'node'", "'}'"})
            d = self.node_decl()
            if d.name in names:
                raise self.error(f"node {d.name} declared twice", tok=d.tok)
            names[d.name] = d
            decls.append(d)
        close = self.expect("}")
        if not decls:
            raise self.error("model declares no nodes", {"'node'"}, tok=close)
        return _build_model(decls)

    def _include(self) -> Sfm:
        kw = self.advance()
        t = self.tok
        if t.kind != "STRING":
            raise self.error(f"unexpected {self._describe(t)}", {"string"})
        self.advance()
        if self._depth_files > 8:
            raise self.error("include nested too deeply", tok=kw)
        path = _unquote(t.text)
        if self.base_dir is not None and not os.path.isabs(path):
            path = os.path.join(self.base_dir, path)
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except (OSError, ValueError) as e:
            raise self.error(f"cannot include {path}: {e}", tok=t) from None
        try:
            sub = Parser(data, os.path.dirname(path), self._depth_files + 1)
            model = sub.model_section()
            sub.expect_eof()
        except ParseError as e:
            raise self.error(f"in {path} at {e.line}:{e.column}: {e.message}", tok=t) from None
        return model

    def node_decl(self) -> _Pending:
        self.expect("node")
        name = self.ident("node name")
        parents = []
        if self.accept("exo"):
            kind = "exo"
        elif self.accept("endo"):
            kind = "endo"
            self.expect("parents")
            parents = self.ident_list()
        else:
            raise self.error(f"unexpected {self._describe(self.tok)}", {"'exo'", "'endo'"})
        self.expect("domain")
        d = _Pending(name.text, name, kind, parents, self.domain())
        if self.accept("expr"):
            d.fn_kind = "expr"
            d.body = self.parse_expression()
        elif self.at("table"):
            self.advance()
            d.fn_kind = "table"
            d.rows = self.table_rows()
        return d

    def table_rows(self):
        self.expect("{")
        rows = []
        while not self.at("}"):
            start = self.tok
            if self.accept("("):
                key = [self.value_literal()]
                while self.accept(","):
                    key.append(self.value_literal())
                self.expect(")")
            else:
                key = [self.value_literal()]
            self.expect("->")
            out = self.value_literal()
            rows.append((start, tuple(key), out))
            self.accept(",")
        self.expect("}")
        return rows

    # scenario
    def document(self, require_section: bool):
        from .scenarios import ScenarioDoc

        model = self.model_section()
        doc = ScenarioDoc(model=model)
        t = self.tok
        if self.at("default"):
            self.advance()
            doc.mode = "default"
            doc.default = _bind(model, self.block())
            self.expect("actual")
            doc.actual = _bind(model, self.block())
            if self.at("tweak"):
                raise self.error("contradictory sections: both default and tweak")
        elif self.at("actual"):
            self.advance()
            doc.actual = _bind(model, self.block())
            if self.at("default"):
                raise self.error("contradictory sections: default must precede actual")
            self.expect("tweak")
            doc.mode = "tweak"
            doc.tweak = _bind(model, self.block())
            if self.at("default"):
                raise self.error("contradictory sections: both default and tweak")
        elif self.at("vfi"):
            self.advance()
            doc.mode = "vfi"
            doc.query = _bind(model, self.block())
        elif self.at("csp"):
            self.advance()
            doc.mode = "csp"
            self.expect("known")
            doc.query = _bind(model, self.block())
            self.expect("targets")
            doc.targets = tuple(_check_names(model, self.ident_list(allow_empty=True)))
        elif self.at("fd"):
            self.advance()
            doc.mode = "fd"
            checks = []
            while True:
                xs = _check_names(model, self.ident_list())
                self.expect("->")
                ys = _check_names(model, self.ident_list())
                checks.append(FdCheck(tuple(xs), tuple(ys)))
                if not self.at("("):
                    break
            doc.fd_checks = tuple(checks)
        elif require_section:
            raise self.error(
                f"unexpected {self._describe(t)}",
                {"'default'", "'actual'", "'vfi'", "'csp'", "'fd'"},
            )
        if self.at("expect"):
            if doc.mode is None:
                raise self.error("expectation without a contrast or query section")
            self.advance()
            self._expectation(doc)
        self.expect_eof()
        return doc

    def _expectation(self, doc):
        from .scenarios import ExpectedUtterance

        model = doc.model
        if self.at("cause"):
            kw = self.advance()
            if doc.mode not in ("default", "tweak"):
                raise self.error("cause/effect expectation needs a contrast section", tok=kw)
            cause = _bind(model, self.block())
            self.expect("effect")
            effect = _bind(model, self.block())
            doc.expected = ExpectedUtterance(cause, effect)
        elif self.at("answer"):
            kw = self.advance()
            if doc.mode not in ("vfi", "csp"):
                raise self.error("answer expectation needs a vfi or csp section", tok=kw)
            answers = [_bind(model, self.block())]
            while self.at("{"):
                answers.append(_bind(model, self.block()))
            doc.expected = tuple(answers)
        elif self.at("holds"):
            kw = self.advance()
            if doc.mode != "fd":
                raise self.error("holds expectation needs an fd section", tok=kw)
            flags = []
            while self.at("true") or self.at("false"):
                flags.append(self.advance().text == "true")
            if len(flags) != len(doc.fd_checks):
                raise self.error(f"expected {len(doc.fd_checks)} truth values, got {len(flags)}")
            doc.expected = tuple(flags)
        else:
            raise self.error(f"unexpected {self._describe(self.tok)}", {"'cause'", "'answer'", "'holds'"})


_RESERVED = KEYWORDS


def _number(text: str, negate: bool = False) -> Value:
    sign = -1 if negate else 1
    if "/" in text:
        p, q = text.split("/")
        return Value(RAT, Fraction(sign * int(p), int(q)))
    return Value(INT, sign * int(text))


def _bind(model: Sfm, pairs) -> Assignment:
    out = {}
    for tok, v in pairs:
        if tok.text not in model.domains:
            raise ParseError(tok.line, tok.col, f"unknown node {tok.text}")
        try:
            out[tok.text] = model.domains[tok.text].coerce(v)
        except DomainError as e:
            raise ParseError(tok.line, tok.col, f"{tok.text}: {e}") from None
    return model.assignment(out) if out else Assignment()


def _check_names(model, toks):
    for t in toks:
        if t.text not in model.domains:
            raise ParseError(t.line, t.col, f"unknown node {t.text}")
    return [t.text for t in toks]


def _build_model(decls: list[_Pending]) -> Sfm:
    domains = {d.name: d.domain for d in decls}
    functions = {}
    edges = set()
    for d in decls:
        seen = set()
        for p in d.parents:
            if p.text not in domains:
                raise ParseError(p.line, p.col, f"undeclared parent {p.text} of {d.name}")
            if p.text in seen:
                raise ParseError(p.line, p.col, f"parent {p.text} listed twice")
            seen.add(p.text)
            edges.add((p.text, d.name))
        pnames = [p.text for p in d.parents]
        if d.fn_kind is None:
            continue
        if d.kind == "exo":
            raise ParseError(d.tok.line, d.tok.col, f"exogenous node {d.name} cannot have a function")
        if d.fn_kind == "expr":
            body, refs = d.body
            for r in refs:
                if r.text not in seen:
                    raise ParseError(r.line, r.col, f"undeclared parent {r.text} in expression of {d.name}")
            functions[d.name] = Expr(pnames, body)
        else:
            rows = {}
            pdoms = [domains[p] for p in pnames]
            for tok, key, out in d.rows:
                if len(key) != len(pnames):
                    raise ParseError(tok.line, tok.col, f"table row of {d.name} needs {len(pnames)} values")
                try:
                    k = tuple(dom.coerce(v) for dom, v in zip(pdoms, key))
                    o = domains[d.name].coerce(out)
                except DomainError as e:
                    raise ParseError(tok.line, tok.col, f"table of {d.name}: {e}") from None
                if k in rows:
                    raise ParseError(tok.line, tok.col, f"duplicate table row in {d.name}")
                rows[k] = o
            functions[d.name] = Table(pnames, rows)
    model = Sfm(domains, functions, edges)
    report = model.report
    if not report.ok:
        v = report.violations[0]
        where = next((d.tok for d in decls if d.name == v.subject), decls[0].tok)
        raise ModelValidationError(where.line, where.col, v.message, report)
    return model


# --- public parse entry points --------------------------------------------

def parse_model(text, base_dir: str | None = None) -> Sfm:
    """Parse a ``model { ... }`` section (and nothing else)."""
    p = Parser(text, base_dir)
    m = p.model_section()
    p.expect_eof()
    return m


def parse_scenario(text, base_dir: str | None = None, name: str | None = None):
    """Parse a scenario document: model plus exactly one contrast or query section."""
    doc = Parser(text, base_dir).document(require_section=True)
    doc.name = name
    return doc


def parse_document(text, base_dir: str | None = None, name: str | None = None):
    """Like :func:`parse_scenario` but the contrast/query section is optional."""
    doc = Parser(text, base_dir).document(require_section=False)
    doc.name = name
    return doc


def parse_expr(text):
    p = Parser(text)
    node, _ = p.parse_expression()
    p.expect_eof()
    return node


def parse_assignment(text) -> Assignment:
    """``A:1, B:0`` with or without surrounding braces (node names unchecked)."""
    text = _decode(text).strip()
    if not text.startswith("{"):
        text = "{" + text + "}"
    p = Parser(text)
    pairs = p.block()
    p.expect_eof()
    return Assignment((t.text, v) for t, v in pairs)


def parse_value(text) -> Value:
    """A single value literal."""
    p = Parser(text)
    v = p.value_literal()
    p.expect_eof()
    return v


def parse_names(text) -> list[str]:
    """Comma-separated node names."""
    names = [s.strip() for s in _decode(text).split(",") if s.strip()]
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
            raise ParseError(1, 1, f"bad node name {n!r}")
    return names


# --- printer ----------------------------------------------------------------

_PREC = {"|": 1, "&": 2, "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3, "+": 4, "-": 4, "*": 5}


def _expr_literal(v: Value) -> str:
    if v.tag == SYM:
        return '"' + v.payload.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if v.tag == RAT:
        s = v.literal(force_ratio=True)
    else:
        s = v.literal()
    return f"({s})" if s.startswith("-") else s


def format_expr(node, level: int = 0) -> str:
    if isinstance(node, Lit):
        return _expr_literal(node.value)
    if isinstance(node, Ref):
        return node.name
    if isinstance(node, IfElse):
        s = f"if {format_expr(node.cond)} then {format_expr(node.then)} else {format_expr(node.orelse)}"
        return f"({s})" if level > 0 else s
    if isinstance(node, Unary):
        s = node.op + format_expr(node.arg, 6)
        return f"({s})" if level > 6 else s
    if isinstance(node, Binary):
        if node.op == "^":
            s = f"{format_expr(node.left, 8)} ^ {format_expr(node.right, 8)}"
            return f"({s})" if level > 7 else s
        p = _PREC[node.op]
        if p == 3:
            s = f"{format_expr(node.left, 4)} {node.op} {format_expr(node.right, 4)}"
        else:
            s = f"{format_expr(node.left, p)} {node.op} {format_expr(node.right, p + 1)}"
        return f"({s})" if level > p else s
    raise TypeError(f"not an expression node: {node!r}")


def format_block(a) -> str:
    if not a:
        return "{}"
    return "{" + ", ".join(f"{k}: {value(v).literal()}" for k, v in a.items()) + "}"


def format_model(model: Sfm) -> str:
    lines = ["model {"]
    for n in model.nodes:
        ps = model.parents(n)
        head = f"  node {n} "
        head += f"endo parents ({', '.join(ps)})" if ps else "exo"
        head += f" domain {model.domains[n]}"
        f = model.functions.get(n)
        if isinstance(f, Expr):
            head += f" expr {format_expr(f.body)}"
            lines.append(head)
        elif isinstance(f, Table):
            lines.append(head + " table {")
            for key, out in f.rows.items():
                k = ", ".join(v.literal() for v in key)
                lines.append(f"    ({k}) -> {out.literal()}")
            lines.append("  }")
        else:
            lines.append(head)
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_scenario(doc) -> str:
    out = [format_model(doc.model).rstrip("\n")]
    if doc.mode == "default":
        out.append(f"default {format_block(doc.default)}")
        out.append(f"actual {format_block(doc.actual)}")
    elif doc.mode == "tweak":
        out.append(f"actual {format_block(doc.actual)}")
        out.append(f"tweak {format_block(doc.tweak)}")
    elif doc.mode == "vfi":
        out.append(f"vfi {format_block(doc.query)}")
    elif doc.mode == "csp":
        out.append(f"csp known {format_block(doc.query)} targets ({', '.join(doc.targets)})")
    elif doc.mode == "fd":
        out.append("fd " + " ".join(f"({', '.join(c.sources)}) -> ({', '.join(c.targets)})" for c in doc.fd_checks))
    exp = doc.expected
    if exp is not None:
        if doc.mode in ("default", "tweak"):
            out.append(f"expect cause {format_block(exp.cause)} effect {format_block(exp.effect)}")
        elif doc.mode == "fd":
            out.append("expect holds " + " ".join("true" if f else "false" for f in exp))
        else:
            out.append("expect answer " + " ".join(format_block(a) for a in exp))
    return "\n".join(out) + "\n"
