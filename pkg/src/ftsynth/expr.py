"""Tiny integer expression/guard language for action bodies and goals.

Grammar (a strict subset of Python expressions, parsed with `ast`):
  literals        0, 1, 42
  names           m, m_v, A.out (dotted names allowed where the caller maps them)
  arithmetic      +, -, * and unary -
  comparисons     ==, !=, <, <=, >, >=  (chained comparisons allowed)
  boolean         and, or, not          (evaluate to 0/1)

Guards are just expressions used in boolean position (non-zero means true).
"""

import ast

from .errors import ParseError, UndeclaredVariable

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
}

_CMPOPS = {
    ast.Eq: lambda a, b: a == b,
    ast.NotEq: lambda a, b: a != b,
    ast.Lt: lambda a, b: a < b,
    ast.LtE: lambda a, b: a <= b,
    ast.Gt: lambda a, b: a > b,
    ast.GtE: lambda a, b: a >= b,
}


class Expr:
    """A parsed expression: evaluate with a name->int environment."""

    __slots__ = ("text", "_tree", "names")

    def __init__(self, text):
        self.text = text.strip()
        try:
            self._tree = ast.parse(self.text, mode="eval").body
        except SyntaxError as exc:
            raise ParseError(f"bad expression {text!r}: {exc.msg}") from exc
        self.names = frozenset(self._collect(self._tree))

    def __repr__(self):
        return f"Expr({self.text!r})"

    def __eq__(self, other):
        return isinstance(other, Expr) and self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def _collect(self, node):
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool):
                if node.value is True or node.value is False:
                    return
                raise ParseError(f"{self.text!r}: only integer literals allowed")
            return
        elif isinstance(node, ast.Name):
            yield node.id
        elif isinstance(node, ast.Attribute):
            yield self._dotted(node)
        elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            yield from self._collect(node.left)
            yield from self._collect(node.right)
        elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.Not)):
            yield from self._collect(node.operand)
        elif isinstance(node, ast.Compare):
            yield from self._collect(node.left)
            for op, comp in zip(node.ops, node.comparators):
                if type(op) not in _CMPOPS:
                    raise ParseError(f"{self.text!r}: unsupported comparison")
                yield from self._collect(comp)
        elif isinstance(node, ast.BoolOp):
            for value in node.values:
                yield from self._collect(value)
        else:
            raise ParseError(f"{self.text!r}: unsupported construct {type(node).__name__}")

    def _dotted(self, node):
        parts = []
        while isinstance(node, ast.Attribute):
            parts.append(node.attr)
            node = node.value
        if not isinstance(node, ast.Name):
            raise ParseError(f"{self.text!r}: unsupported attribute base")
        parts.append(node.id)
        return ".".join(reversed(parts))

    def eval(self, env):
        """Evaluate to an int; raises UndeclaredVariable for unknown names."""
        return self._eval(self._tree, env)

    def _eval(self, node, env):
        if isinstance(node, ast.Constant):
            if node.value is True:
                return 1
            if node.value is False:
                return 0
            return node.value
        if isinstance(node, ast.Name):
            return self._lookup(node.id, env)
        if isinstance(node, ast.Attribute):
            return self._lookup(self._dotted(node), env)
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](self._eval(node.left, env), self._eval(node.right, env))
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -self._eval(node.operand, env)
            return 0 if self._eval(node.operand, env) else 1
        if isinstance(node, ast.Compare):
            left = self._eval(node.left, env)
            for op, comp in zip(node.ops, node.comparators):
                right = self._eval(comp, env)
                if not _CMPOPS[type(op)](left, right):
                    return 0
                left = right
            return 1
        if isinstance(node, ast.BoolOp):
            if isinstance(node.op, ast.And):
                result = 1
                for value in node.values:
                    result = self._eval(value, env)
                    if not result:
                        return 0
                return 1 if result else 0
            for value in node.values:
                result = self._eval(value, env)
                if result:
                    return 1
            return 0
        raise ParseError(f"{self.text!r}: unsupported construct")

    def _lookup(self, name, env):
        try:
            return env[name]
        except KeyError:
            raise UndeclaredVariable(f"{self.text!r} reads undeclared variable {name!r}") from None


TRUE = Expr("1")


def parse_guard(text):
    """Parse an optional guard; None or '' means the always-true guard."""
    if text is None or (isinstance(text, str) and not text.strip()):
        return TRUE
    if isinstance(text, Expr):
        return text
    return Expr(text)
