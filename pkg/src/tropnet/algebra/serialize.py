"""JSON encodings for polynomials and matrices.

A polynomial is an object mapping an exponent (``"3"``) or a comma-joined
exponent vector (``"1,0,2"``) to a ``"num/den"`` string.  Keys are written
in ascending order so identical values always serialize to identical bytes.
"""

from .mat3 import Mat3
from .multipoly import MultiPoly, grlex_key
from .rational import format_rational, parse_rational
from .unipoly import UniPoly


def unipoly_to_json(p):
    return {str(e): format_rational(c) for e, c in p.sorted_terms()}


def unipoly_from_json(obj):
    return UniPoly({int(k): parse_rational(v) for k, v in obj.items()})


def multipoly_to_json(p):
    items = sorted(p.terms.items(), key=lambda kv: grlex_key(kv[0]))
    return {",".join(str(x) for x in e): format_rational(c) for e, c in items}


def multipoly_from_json(obj, vars):
    vars = tuple(vars)
    terms = {}
    for k, v in obj.items():
        e = tuple(int(x) for x in k.split(",")) if k else ()
        terms[e] = parse_rational(v)
    return MultiPoly(terms, vars)


def mat3_to_json(m):
    return [[unipoly_to_json(x) for x in row] for row in m.rows]


def mat3_from_json(obj):
    return Mat3([[unipoly_from_json(x) for x in row] for row in obj])
