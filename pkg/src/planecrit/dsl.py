"""The discharging-rule DSL: lexer, recursive-descent parser, printer.

Grammar:

    ruleset := "ruleset" STRING stmt*
    stmt    := "charge" ("vertex"|"face") IDENT ":=" expr
             | "rule" IDENT ":" "from" kind IDENT guard?
               "to" "each" "incident" kind IDENT guard? "send" expr
    guard   := "where" expr cmp expr
    cmp     := "==" | ">=" | "<=" | ">" | "<"
    expr    := integers, "deg(" IDENT ")", + - * / with usual precedence
               and parentheses (rationals are written as divisions, 2/7)

Expressions evaluate to exact rationals.  Unbound identifiers and division
by a syntactically-zero denominator are rejected at parse time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

KEYWORDS = {"ruleset", "charge", "vertex", "face", "rule", "from", "to",
            "each", "incident", "send", "where", "deg"}
CMP_OPS = ("==", ">=", "<=", ">", "<")


class DslError(ValueError):
    """Positioned DSL failure."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class LexError(DslError):
    pass


class ParseError(DslError):
    pass


# -- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Deg:
    var: str


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Deg, BinOp]


@dataclass(frozen=True)
class Guard:
    left: Expr
    op: str
    right: Expr


@dataclass(frozen=True)
class ChargeDecl:
    kind: str  # vertex | face
    var: str
    expr: Expr


@dataclass(frozen=True)
class TransferRule:
    name: str
    sender_kind: str
    sender_var: str
    sender_guard: Optional[Guard]
    receiver_kind: str
    receiver_var: str
    receiver_guard: Optional[Guard]
    amount: Expr


@dataclass(frozen=True)
class RuleSet:
    name: str
    vertex_charge: Optional[ChargeDecl]
    face_charge: Optional[ChargeDecl]
    rules: tuple[TransferRule, ...]


# -- lexer ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # KEYWORD IDENT INT STRING OP EOF
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":  # comment to end of line
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch == '"':
            j = i + 1
            while j < n and text[j] not in '"\n':
                j += 1
            if j >= n or text[j] != '"':
                raise LexError("unterminated string literal", line, start_col)
            tokens.append(Token("STRING", text[i + 1:j], line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, line, start_col))
            col += j - i
            i = j
            continue
        two = text[i:i + 2]
        if two in (":=", "==", ">=", "<="):
            tokens.append(Token("OP", two, line, start_col))
            i += 2
            col += 2
            continue
        if ch in "+-*/()<>:":
            tokens.append(Token("OP", ch, line, start_col))
            i += 1
            col += 1
            continue
        raise LexError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- parser --------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> "ParseError":
        tok = self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.text else "end of input"
            raise self.fail(f"expected {want!r}, got {got!r}")
        return self.advance()

    def ruleset(self) -> RuleSet:
        self.expect("KEYWORD", "ruleset")
        name = self.expect("STRING").text
        vertex_charge = face_charge = None
        rules: list[TransferRule] = []
        rule_names: set[str] = set()
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind != "KEYWORD" or tok.text not in ("charge", "rule"):
                raise self.fail("expected 'charge' or 'rule'")
            if tok.text == "charge":
                decl = self.charge_decl()
                if decl.kind == "vertex":
                    if vertex_charge is not None:
                        raise self.fail("duplicate vertex charge")
                    vertex_charge = decl
                else:
                    if face_charge is not None:
                        raise self.fail("duplicate face charge")
                    face_charge = decl
            else:
                rule = self.rule()
                if rule.name in rule_names:
                    raise self.fail(f"duplicate rule name {rule.name!r}")
                rule_names.add(rule.name)
                rules.append(rule)
        return RuleSet(name=name, vertex_charge=vertex_charge,
                       face_charge=face_charge, rules=tuple(rules))

    def charge_decl(self) -> ChargeDecl:
        self.expect("KEYWORD", "charge")
        kind = self.kind_word()
        var = self.expect("IDENT").text
        self.expect("OP", ":=")
        expr = self.expr({var})
        return ChargeDecl(kind=kind, var=var, expr=expr)

    def rule(self) -> TransferRule:
        self.expect("KEYWORD", "rule")
        name = self.expect("IDENT").text
        self.expect("OP", ":")
        self.expect("KEYWORD", "from")
        sender_kind = self.kind_word()
        sender_var = self.expect("IDENT").text
        sender_guard = self.maybe_guard({sender_var})
        self.expect("KEYWORD", "to")
        self.expect("KEYWORD", "each")
        self.expect("KEYWORD", "incident")
        receiver_kind = self.kind_word()
        if receiver_kind == sender_kind:
            raise self.fail("sender and receiver must be of different kinds")
        receiver_var = self.expect("IDENT").text
        if receiver_var == sender_var:
            raise self.fail(f"receiver variable {receiver_var!r} shadows sender")
        scope = {sender_var, receiver_var}
        receiver_guard = self.maybe_guard(scope)
        self.expect("KEYWORD", "send")
        amount = self.expr(scope)
        return TransferRule(name=name, sender_kind=sender_kind,
                            sender_var=sender_var, sender_guard=sender_guard,
                            receiver_kind=receiver_kind, receiver_var=receiver_var,
                            receiver_guard=receiver_guard, amount=amount)

    def kind_word(self) -> str:
        tok = self.peek()
        if tok.kind == "KEYWORD" and tok.text in ("vertex", "face"):
            return self.advance().text
        raise self.fail("expected 'vertex' or 'face'")

    def maybe_guard(self, scope: set[str]) -> Optional[Guard]:
        if self.peek().kind == "KEYWORD" and self.peek().text == "where":
            self.advance()
            left = self.expr(scope)
            tok = self.peek()
            if tok.kind != "OP" or tok.text not in CMP_OPS:
                raise self.fail("expected a comparison operator")
            self.advance()
            right = self.expr(scope)
            return Guard(left=left, op=tok.text, right=right)
        return None

    def expr(self, scope: set[str]) -> Expr:
        node = self.term(scope)
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance().text
            node = BinOp(op=op, left=node, right=self.term(scope))
        return node

    def term(self, scope: set[str]) -> Expr:
        node = self.factor(scope)
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op_tok = self.advance()
            right = self.factor(scope)
            if op_tok.text == "/" and fold_constant(right) == 0:
                raise ParseError("division by zero denominator",
                                 op_tok.line, op_tok.column)
            node = BinOp(op=op_tok.text, left=node, right=right)
        return node

    def factor(self, scope: set[str]) -> Expr:
        tok = self.peek()
        if tok.kind == "OP" and tok.text == "-":
            self.advance()
            return BinOp(op="-", left=Num(Fraction(0)), right=self.factor(scope))
        if tok.kind == "INT":
            self.advance()
            return Num(Fraction(int(tok.text)))
        if tok.kind == "KEYWORD" and tok.text == "deg":
            self.advance()
            self.expect("OP", "(")
            var = self.expect("IDENT")
            if var.text not in scope:
                raise ParseError(f"unbound variable {var.text!r}",
                                 var.line, var.column)
            self.expect("OP", ")")
            return Deg(var.text)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            node = self.expr(scope)
            self.expect("OP", ")")
            return node
        if tok.kind == "IDENT":
            raise ParseError(f"bare identifier {tok.text!r} (only deg({tok.text}) "
                             "is a value)", tok.line, tok.column)
        raise self.fail("expected an expression")


def parse_ruleset(text: str) -> RuleSet:
    return _Parser(tokenize(text)).ruleset()


def fold_constant(expr: Expr) -> Optional[Fraction]:
    """Value of a degree-free expression, else None."""
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Deg):
        return None
    left, right = fold_constant(expr.left), fold_constant(expr.right)
    if left is None or right is None:
        return None
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if right == 0:
        return None  # caught at parse time; defensive
    return left / right


# -- pretty printer -------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(expr: Expr, parent_prec: int = 0, right_side: bool = False) -> str:
    if isinstance(expr, Num):
        v = expr.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(expr, Deg):
        return f"deg({expr.var})"
    prec = _PREC[expr.op]
    s = (f"{format_expr(expr.left, prec, False)} {expr.op} "
         f"{format_expr(expr.right, prec, True)}")
    if prec < parent_prec or (prec == parent_prec and right_side):
        return f"({s})"
    return s


def format_ruleset(rs: RuleSet) -> str:
    """Canonical text; parsing it back yields an identical AST."""
    lines = [f'ruleset "{rs.name}"']
    for decl in (rs.vertex_charge, rs.face_charge):
        if decl is not None:
            lines.append(f"charge {decl.kind} {decl.var} := {format_expr(decl.expr)}")
    for rule in rs.rules:
        parts = [f"rule {rule.name}: from {rule.sender_kind} {rule.sender_var}"]
        if rule.sender_guard:
            parts.append(_format_guard(rule.sender_guard))
        parts.append(f"to each incident {rule.receiver_kind} {rule.receiver_var}")
        if rule.receiver_guard:
            parts.append(_format_guard(rule.receiver_guard))
        parts.append(f"send {format_expr(rule.amount)}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _format_guard(guard: Guard) -> str:
    return f"where {format_expr(guard.left)} {guard.op} {format_expr(guard.right)}"
