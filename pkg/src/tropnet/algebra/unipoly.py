"""Sparse univariate polynomials in the degeneration parameter ``t``."""

from fractions import Fraction

from .rational import as_fraction, is_scalar


class ZeroDegreeError(ArithmeticError):
    """Raised when the degree of the zero polynomial is used as an integer."""


class _MinusInfinity:
    """Degree of the zero polynomial.

    Orders below every integer, but refuses arithmetic and ``int()``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF")

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def _refuse(self, *args):
        raise ZeroDegreeError("degree of the zero polynomial is not an integer")

    __int__ = __index__ = __float__ = _refuse
    __add__ = __radd__ = __sub__ = __rsub__ = __neg__ = _refuse
    __mul__ = __rmul__ = _refuse


NEG_INF = _MinusInfinity()


class UniPoly:
    """Immutable polynomial in ``t`` with rational coefficients.

    Only nonzero coefficients are stored.  Ints and Fractions coerce to
    constants in every arithmetic operation.
    """

    __slots__ = ("_terms",)
    var = "t"

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                e = int(e)
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                c = as_fraction(c)
                if c:
                    clean[e] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def _raw(cls, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def t(cls, power=1):
        return cls({power: 1})

    @classmethod
    def from_coeffs(cls, coeffs):
        """``coeffs[i]`` is the coefficient of ``t**i``."""
        return cls(dict(enumerate(coeffs)))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, UniPoly):
            return x
        if is_scalar(x):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to UniPoly")

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(self._terms)

    def coeff(self, e):
        return self._terms.get(e, Fraction(0))

    @property
    def leading_coeff(self):
        if not self._terms:
            return Fraction(0)
        return self._terms[max(self._terms)]

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._terms == other._terms
        if is_scalar(other):
            return self._terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if not self._terms:
            return hash(0)
        if set(self._terms) == {0}:
            return hash(self._terms[0])
        return hash(frozenset(self._terms.items()))

    def __neg__(self):
        return UniPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = UniPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return UniPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = UniPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = UniPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative int")
        result = UniPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        total = 0
        for e, c in self._terms.items():
            total += c * x**e
        return total

    def sorted_terms(self):
        """Terms in ascending exponent order."""
        return sorted(self._terms.items())

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def unipoly_arith(a, b, op):
    """Apply ``op`` in ``{"add", "sub", "mul"}`` to two polynomials in ``t``."""
    a, b = UniPoly.coerce(a), UniPoly.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
