"""A small language for naming permutation groups.

    expr   := atom | comb
    atom   := ("Sym" | "Alt" | "Cyc" | "Dih") "(" int ")" | "Q8"
            | ("Affine" | "Lin") "(" int "," int {"," matrix} ")"
            | "Gens" "(" int {";" cycles} ")"
    comb   := ("Direct" | "Wreath" | "CrownPower") "(" expr "," (expr | int) ")"
    matrix := "[" row {"," row} "]"     row := "[" int {"," int} "]"
    cycles := "()" | "(" int {"," int} ")" {"(" int {"," int} ")"}

``Dih(n)`` has order 2n.  ``Lin(p, m, ...)`` is the matrix group generated by
the given matrices acting on the nonzero vectors of F_p^m.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..config import DEFAULT_BUDGETS, Budgets
from ..crowns import crown_based_power
from ..errors import InputError, InvariantError, ResourceError
from ..structure import prime_factors
from ..perm import (PermGroup, Permutation, affine_group, alternating_group, cyclic_group,
                    dihedral_group, direct_product, linear_group, quaternion_group,
                    symmetric_group, wreath_product)

ATOMS_INT = ("Sym", "Alt", "Cyc", "Dih")
MATRIX_ATOMS = ("Affine", "Lin")
COMBINATORS = ("Direct", "Wreath", "CrownPower")


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Node:
    """A parse tree node: kind plus a tuple of arguments (ints, matrices, cycles, nodes)."""

    kind: str
    args: tuple

    def __str__(self) -> str:
        return to_text(self)


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[(),;\[\]]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                while text[pos].isspace():
                    pos += 1
                raise ParseError(f"unexpected character {text[pos]!r}", *self._where(pos))
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def _where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str):
        pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(message, *self._where(pos))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def expect(self, value: str):
        kind, val, _ = self.peek()
        if val != value:
            self.error(f"expected {value!r}, found {val if val is not None else 'end of input'!r}")
        self.i += 1

    def integer(self) -> int:
        kind, val, _ = self.peek()
        if kind != "int":
            self.error(f"expected an integer, found {val if val is not None else 'end of input'!r}")
        self.i += 1
        return int(val)

    def expr(self) -> Node:
        kind, name, _ = self.peek()
        if kind != "name":
            self.error(f"expected a group name, found {name if name is not None else 'end of input'!r}")
        self.i += 1
        if name == "Q8":
            return Node("Q8", ())
        if name in ATOMS_INT:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            low = 3 if name == "Alt" else 1
            if n < low:
                self.i -= 2
                self.error(f"{name} needs n >= {low}")
            return Node(name, (n,))
        if name in MATRIX_ATOMS:
            self.expect("(")
            p = self.integer()
            self.expect(",")
            m = self.integer()
            mats = []
            while self.peek()[1] == ",":
                self.i += 1
                mats.append(self.matrix())
            self.expect(")")
            for M in mats:
                if len(M) != m or any(len(r) != m for r in M):
                    self.error(f"matrix {M} is not {m}x{m}")
            return Node(name, (p, m, tuple(mats)))
        if name == "Gens":
            self.expect("(")
            degree = self.integer()
            if degree < 1:
                self.i -= 1
                self.error("degree must be positive")
            gens = []
            while self.peek()[1] == ";":
                self.i += 1
                gens.append(self.cycles())
            self.expect(")")
            return Node("Gens", (degree, tuple(gens)))
        if name in COMBINATORS:
            self.expect("(")
            left = self.expr()
            self.expect(",")
            if name == "Direct":
                right = self.expr()
            else:
                right = self.integer()
                low = 2 if name == "Wreath" else 1
                if right < low:
                    self.i -= 1
                    self.error(f"{name} needs an integer >= {low}")
            self.expect(")")
            return Node(name, (left, right))
        self.i -= 1
        self.error(f"unknown group name {name!r}")

    def matrix(self):
        self.expect("[")
        rows = [self.row()]
        while self.peek()[1] == ",":
            self.i += 1
            rows.append(self.row())
        self.expect("]")
        return tuple(rows)

    def row(self):
        self.expect("[")
        vals = [self.integer()]
        while self.peek()[1] == ",":
            self.i += 1
            vals.append(self.integer())
        self.expect("]")
        return tuple(vals)

    def cycles(self):
        out = []
        if self.peek()[1] != "(":
            self.error("expected a cycle")
        while self.peek()[1] == "(":
            self.i += 1
            if self.peek()[1] == ")":
                self.i += 1
                continue
            cyc = [self.integer()]
            while self.peek()[1] == ",":
                self.i += 1
                cyc.append(self.integer())
            self.expect(")")
            out.append(tuple(cyc))
        return tuple(out)


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    if p.i != len(p.tokens):
        p.error("trailing input")
    return node


def parse_cycles_list(text: str, degree: int) -> list[Permutation]:
    """Permutations written as cycle lists separated by ';', e.g. "(0,1,2);(0,1)"."""
    text = text.strip()
    if not text:
        return []
    node = parse(f"Gens({degree};{text})")
    return [Permutation.from_cycles(degree, c) for c in node.args[1]]


def _matrix_text(M) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in M) + "]"


def to_text(node: Node) -> str:
    k, a = node.kind, node.args
    if k == "Q8":
        return "Q8"
    if k in ATOMS_INT:
        return f"{k}({a[0]})"
    if k in MATRIX_ATOMS:
        return f"{k}(" + ",".join([str(a[0]), str(a[1])] + [_matrix_text(M) for M in a[2]]) + ")"
    if k == "Gens":
        parts = [str(a[0])]
        for cyc in a[1]:
            parts.append("".join("(" + ",".join(map(str, c)) + ")" for c in cyc) or "()")
        return "Gens(" + ";".join(parts) + ")"
    left, right = a
    return f"{k}({to_text(left)},{right if isinstance(right, int) else to_text(right)})"


def _matrix_group_order(p: int, mats) -> int:
    import numpy as np
    from ..factors import matrix_group_tree
    arrs = [np.array(M, dtype=np.int64) % p for M in mats]
    if not arrs:
        return 1
    elems, _ = matrix_group_tree(arrs, p, 10**6)
    return len(elems)


def _socle_order(node: Node) -> int | None:
    k, a = node.kind, node.args
    if k in ("Sym", "Alt"):
        n = a[0]
        return {2: 2, 3: 3, 4: 4}.get(n, math.factorial(n) // 2) if n >= 2 else None
    if k == "Cyc" and prime_factors(a[0]) == [a[0]]:
        return a[0]
    if k == "Affine":
        return a[0] ** a[1]
    return None


def predicted_order(node: Node) -> int | None:
    """Order implied by the construction, computed without building the group
    (None where no closed formula applies)."""
    k, a = node.kind, node.args
    if k == "Sym":
        return math.factorial(a[0])
    if k == "Alt":
        return math.factorial(a[0]) // 2
    if k == "Cyc":
        return a[0]
    if k == "Dih":
        return 2 * a[0] if a[0] > 1 else 2
    if k == "Q8":
        return 8
    if k == "Affine":
        return a[0] ** a[1] * _matrix_group_order(a[0], a[2])
    if k == "Lin":
        return _matrix_group_order(a[0], a[2])
    if k == "Direct":
        x, y = predicted_order(a[0]), predicted_order(a[1])
        return None if x is None or y is None else x * y
    if k == "Wreath":
        x = predicted_order(a[0])
        return None if x is None else x ** a[1] * math.factorial(a[1])
    if k == "CrownPower":
        x, soc = predicted_order(a[0]), _socle_order(a[0])
        return None if x is None or soc is None else soc ** (a[1] - 1) * x
    return None


def evaluate(node: Node, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """Build the permutation group named by the expression."""
    try:
        return _evaluate(node, budgets)
    except ResourceError as exc:
        if "in subexpression" in str(exc):
            raise
        raise ResourceError(f"{exc} in subexpression {to_text(node)}") from exc


def _degree(node: Node) -> int:
    """Degree of the permutation representation, known before building it."""
    k, a = node.kind, node.args
    if k in ("Sym", "Alt", "Cyc"):
        return a[0]
    if k == "Dih":
        return {1: 2, 2: 4}.get(a[0], a[0])
    if k == "Q8":
        return 8
    if k == "Affine":
        return a[0] ** a[1]
    if k == "Lin":
        return a[0] ** a[1] - 1
    if k == "Gens":
        return a[0]
    if k == "Direct":
        return _degree(a[0]) + _degree(a[1])
    return _degree(a[0]) * a[1]


def _evaluate(node: Node, budgets: Budgets) -> PermGroup:
    k, a = node.kind, node.args
    if _degree(node) > budgets.degree:
        raise ResourceError(f"degree {_degree(node)} exceeds the budget {budgets.degree}")
    if k == "Sym":
        G = symmetric_group(a[0])
    elif k == "Alt":
        G = alternating_group(a[0])
    elif k == "Cyc":
        G = cyclic_group(a[0])
    elif k == "Dih":
        G = dihedral_group(a[0])
    elif k == "Q8":
        G = quaternion_group()
    elif k == "Affine":
        G = affine_group(a[0], a[1], a[2], budgets)
    elif k == "Lin":
        G = linear_group(a[0], a[1], a[2], budgets)
    elif k == "Gens":
        G = PermGroup(a[0], [Permutation.from_cycles(a[0], c) for c in a[1]], budgets=budgets)
    elif k == "Direct":
        G = direct_product(evaluate(a[0], budgets), evaluate(a[1], budgets))
    elif k == "Wreath":
        G = wreath_product(evaluate(a[0], budgets), a[1])
    elif k == "CrownPower":
        G = crown_based_power(evaluate(a[0], budgets), a[1])
    else:  # pragma: no cover - the parser only builds known kinds
        raise InputError(f"unknown node {k}")
    if G.degree > budgets.degree:
        raise ResourceError(f"degree {G.degree} exceeds the budget {budgets.degree}")
    return G


def evaluate_text(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    return evaluate(parse(text), budgets)
