"""Sparse multivariate polynomials over Q with graded-lex term order.

The variable list is part of the value: two polynomials combine only when
their lists agree.  Earlier variables are lex-larger, so with
``vars=("k1", "k2")`` the monomial ``k1`` outranks ``k2``.
"""

import ast
from fractions import Fraction

from .rational import as_fraction, is_scalar


def grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("_vars", "_terms", "_lead")

    def __init__(self, terms, vars):
        vars = tuple(vars)
        n = len(vars)
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has arity {len(e)}, expected {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_fraction(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "_vars", vars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_lead", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, terms, vars):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_vars", vars)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_lead", None)
        return obj

    # construction

    @classmethod
    def zero(cls, vars):
        return cls._raw({}, tuple(vars))

    @classmethod
    def const(cls, c, vars):
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name, vars):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls._raw({tuple(e): Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars):
        vars = tuple(vars)
        return tuple(cls.var(v, vars) for v in vars)

    @classmethod
    def parse(cls, text, vars):
        """Parse an arithmetic expression such as ``"k1*k2 + k3 - 1"``.

        ``^`` and ``**`` both mean exponentiation; division is allowed by
        nonzero constants only.
        """
        vars = tuple(vars)
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return _eval_node(tree.body, vars)

    def coerce(self, x):
        if isinstance(x, MultiPoly):
            if x._vars != self._vars:
                raise ValueError(f"variable mismatch: {x._vars} vs {self._vars}")
            return x
        if is_scalar(x):
            return MultiPoly.const(x, self._vars)
        raise TypeError(f"cannot coerce {x!r} to MultiPoly")

    # inspection

    @property
    def vars(self):
        return self._vars

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or set(self._terms) == {(0,) * len(self._vars)}

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def sorted_terms(self):
        """Terms in descending grlex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lead is None:
            e = max(self._terms, key=grlex_key)
            object.__setattr__(self, "_lead", e)
        return self._lead, self._terms[self._lead]

    @property
    def leading_monomial(self):
        return self.leading_term()[0]

    @property
    def leading_coeff(self):
        return self.leading_term()[1]

    @property
    def total_degree(self):
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, name):
        i = self._vars.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def used_vars(self):
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    # arithmetic

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._vars == other._vars and self._terms == other._terms
        if is_scalar(other):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self._vars, frozenset(self._terms.items())))

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()}, self._vars)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self._vars)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(out, self._vars)

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __mul__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(out, self._vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not is_scalar(other):
            if isinstance(other, MultiPoly) and other.is_constant():
                other = other.constant_value()
            else:
                return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of polynomial by zero")
        inv = 1 / Fraction(other)
        return self.scale(inv)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result = MultiPoly.const(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = as_fraction(c)
        if not c:
            return MultiPoly.zero(self._vars)
        return MultiPoly._raw({e: v * c for e, v in self._terms.items()}, self._vars)

    def mul_term(self, exp, coeff):
        """Multiply by the single term ``coeff * x**exp``."""
        if not coeff:
            return MultiPoly.zero(self._vars)
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self._terms.items()},
            self._vars,
        )

    def monic(self):
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coeff)

    def primitive(self):
        """Return ``(s, q)`` with ``q = s*self`` integral, content 1, positive leading coefficient."""
        from math import gcd, lcm

        if not self._terms:
            return Fraction(1), self
        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, (c * den).numerator)
        s = Fraction(den, num)
        if self.leading_coeff < 0:
            s = -s
        return s, self.scale(s)

    # substitution / ring changes

    def evaluate(self, values):
        """Substitute every variable; ``values`` maps names to ring elements.

        Missing names stay symbolic only if the target ring supports them,
        so callers normally pass all used variables.
        """
        used = self.used_vars()
        missing = [v for v in used if v not in values]
        if missing:
            raise KeyError(f"no value for {missing}")
        idx = [(i, values[v]) for i, v in enumerate(self._vars) if v in used]
        total = 0
        cache = {}
        for e, c in self._terms.items():
            term = c
            for i, val in idx:
                p = e[i]
                if p:
                    key = (i, p)
                    if key not in cache:
                        cache[key] = val**p
                    term = cache[key] * term
            total = total + term
        return total

    def subs(self, mapping):
        """Substitute some variables by polynomials in the same ring."""
        values = {v: mapping.get(v, MultiPoly.var(v, self._vars)) for v in self._vars}
        values = {v: self.coerce(x) if not isinstance(x, MultiPoly) else x for v, x in values.items()}
        result = self.evaluate(values)
        return self.coerce(result) if not isinstance(result, MultiPoly) else result

    def extend(self, new_vars):
        """Embed into a ring whose variable list contains this one's."""
        new_vars = tuple(new_vars)
        if new_vars == self._vars:
            return self
        pos = [new_vars.index(v) for v in self._vars]
        n = len(new_vars)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, p in zip(pos, e):
                ne[i] = p
            out[tuple(ne)] = c
        return MultiPoly._raw(out, new_vars)

    def restrict(self, new_vars):
        """Drop variables that do not occur; the inverse of :meth:`extend`."""
        new_vars = tuple(new_vars)
        for v in self.used_vars():
            if v not in new_vars:
                raise ValueError(f"variable {v} occurs in {self}")
        out = {}
        for e, c in self._terms.items():
            powers = dict(zip(self._vars, e))
            out[tuple(powers.get(v, 0) for v in new_vars)] = c
        return MultiPoly._raw(out, new_vars)

    # display

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self._vars})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for v, p in zip(self._vars, e):
                if p == 1:
                    factors.append(v)
                elif p > 1:
                    factors.append(f"{v}^{p}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _eval_node(node, vars):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MultiPoly.const(node.value, vars)
    if isinstance(node, ast.Name):
        if node.id not in vars:
            raise ValueError(f"unknown variable {node.id!r}")
        return MultiPoly.var(node.id, vars)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(node.operand, vars)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, vars)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** node.right.value
        right = _eval_node(node.right, vars)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant():
                raise ValueError("division only by constants")
            return left / right.constant_value()
    raise ValueError(f"unsupported expression: {ast.dump(node)}")
