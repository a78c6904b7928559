"""Tiny recursive-descent parser for polynomial-style expressions.

Understands integer literals, named variables, ``+ - * /``, parentheses and
integer exponents written ``^`` or ``**``.  Evaluation is generic: the caller
supplies a constant constructor and a variable lookup, and the parser folds
the expression using the values' own arithmetic operators.  The same few
dozen lines therefore serve prime-field scalars, rational functions and
ternary forms alike.
"""

import re

from .errors import ConfigError

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<pow>\*\*|\^)"
    r"|(?P<op>[()+\-*/]))"
)


class _Parser:
    def __init__(self, text, const, var):
        self.text = text
        self.const = const
        self.var = var
        self.toks = list(self._tokens(text))
        self.pos = 0

    def _tokens(self, text):
        pos, n = 0, len(text)
        while pos < n:
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ConfigError(
                        f"cannot read {text[pos:].strip()!r} in expression {text!r}")
                break
            pos = m.end()
            kind = m.lastgroup
            yield (kind, m.group(kind))
        yield ("end", "")

    def peek(self):
        return self.toks[self.pos]

    def advance(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        kind, text = self.peek()
        if kind != "end":
            raise ConfigError(f"unexpected {text!r} in expression {self.text!r}")
        return value

    def expr(self):
        negate = False
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            if self.advance()[1] == "-":
                negate = not negate
        node = self.term()
        if negate:
            node = -node
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            rhs = self.factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor(self):
        kind, text = self.advance()
        if kind == "int":
            node = self.const(int(text))
        elif kind == "name":
            node = self.var(text)
        elif (kind, text) == ("op", "("):
            node = self.expr()
            if self.advance() != ("op", ")"):
                raise ConfigError(f"missing ')' in expression {self.text!r}")
        elif (kind, text) == ("op", "-"):
            return -self.factor()
        else:
            raise ConfigError(f"unexpected {text!r} in expression {self.text!r}")
        if self.peek()[0] == "pow":
            self.advance()
            ekind, etext = self.advance()
            negative = False
            if (ekind, etext) == ("op", "-"):
                negative = True
                ekind, etext = self.advance()
            if ekind != "int":
                raise ConfigError(f"exponent must be an integer literal in {self.text!r}")
            e = int(etext)
            node = node ** (-e if negative else e)
        return node


def evaluate(text, const, var):
    """Parse *text* and fold it with the supplied constructors.

    ``const`` maps a non-negative integer literal to a value; ``var`` maps a
    variable name to a value (and should raise ConfigError for unknown
    names).  The values must support ``+ - * / **`` as used by the text.
    """
    return _Parser(text, const, var).parse()
