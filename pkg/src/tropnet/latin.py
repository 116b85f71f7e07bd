"""Latin squares, orthogonal pairs and their enumeration for orders 2 to 4."""

from dataclasses import dataclass
from itertools import permutations


class MalformedArrayError(ValueError):
    pass


class OrderMismatchError(ValueError):
    pass


class UnsupportedOrderError(ValueError):
    pass


def _shape_check(m):
    rows = [list(r) for r in m]
    d = len(rows)
    if d == 0 or any(len(r) != d for r in rows):
        raise MalformedArrayError("array must be square and nonempty")
    for r in rows:
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= d:
                raise MalformedArrayError(f"entry {x!r} outside 1..{d}")
    return rows


def is_latin(m):
    rows = _shape_check(m)
    full = set(range(1, len(rows) + 1))
    return all(set(r) == full for r in rows) and all(set(c) == full for c in zip(*rows))


@dataclass(frozen=True)
class LatinSquare:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not is_latin(rows):
            raise MalformedArrayError("not a Latin square")
        object.__setattr__(self, "rows", rows)

    @property
    def order(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self):
        return tuple(x for r in self.rows for x in r)

    def to_json(self):
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, obj):
        return cls(obj)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def are_orthogonal(a, b):
    a = a if isinstance(a, LatinSquare) else LatinSquare(a)
    b = b if isinstance(b, LatinSquare) else LatinSquare(b)
    if a.order != b.order:
        raise OrderMismatchError(f"orders {a.order} and {b.order} differ")
    pairs = set(zip(a.flat(), b.flat()))
    return len(pairs) == a.order**2


@dataclass(frozen=True)
class OLSPair:
    first: LatinSquare
    second: LatinSquare

    def __post_init__(self):
        for name in ("first", "second"):
            v = getattr(self, name)
            if not isinstance(v, LatinSquare):
                object.__setattr__(self, name, LatinSquare(v))
        if not are_orthogonal(self.first, self.second):
            raise ValueError("squares are not orthogonal")

    @property
    def order(self):
        return self.first.order

    def key(self):
        return self.first.flat() + self.second.flat()

    def to_json(self):
        return {"first": self.first.to_json(), "second": self.second.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LatinSquare(obj["first"]), LatinSquare(obj["second"]))


# the pairs appearing in the (4,3) and (4,4) arguments
PAIR_ORDER_3 = OLSPair(
    LatinSquare([[1, 2, 3], [2, 3, 1], [3, 1, 2]]),
    LatinSquare([[1, 2, 3], [3, 1, 2], [2, 3, 1]]),
)
PAIR_ORDER_4 = OLSPair(
    LatinSquare([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]]),
    LatinSquare([[1, 2, 3, 4], [3, 4, 1, 2], [4, 3, 2, 1], [2, 1, 4, 3]]),
)


def _relabel_first_seen(flat):
    seen = {}
    out = []
    for x in flat:
        if x not in seen:
            seen[x] = len(seen) + 1
        out.append(seen[x])
    return tuple(out)


def transform(pair, row_perm, col_perm, relabel_first=None, relabel_second=None, swap=False):
    """Apply one element of the equivalence group.

    New row ``i`` is old row ``row_perm[i]`` (same for columns); relabelings
    map old symbol ``s`` to ``relabel[s-1]``.
    """
    a, b = (pair.second, pair.first) if swap else (pair.first, pair.second)
    d = pair.order
    ident = tuple(range(1, d + 1))
    ra = relabel_first or ident
    rb = relabel_second or ident
    na = [[ra[a[row_perm[i], col_perm[j]] - 1] for j in range(d)] for i in range(d)]
    nb = [[rb[b[row_perm[i], col_perm[j]] - 1] for j in range(d)] for i in range(d)]
    return OLSPair(LatinSquare(na), LatinSquare(nb))


def canonical_form(pair):
    """Lexicographically least pair in the orbit of ``pair``.

    For a fixed row/column arrangement, relabeling each square by order of
    first appearance is already the least relabeling, so only swaps and
    row/column permutations are searched.
    """
    d = pair.order
    best = None
    perms = list(permutations(range(d)))
    for a, b in ((pair.first, pair.second), (pair.second, pair.first)):
        for rp in perms:
            rows_a = [a.rows[i] for i in rp]
            rows_b = [b.rows[i] for i in rp]
            for cp in perms:
                fa = _relabel_first_seen([r[j] for r in rows_a for j in cp])
                if best is not None and fa > best[:d * d]:
                    continue
                fb = _relabel_first_seen([r[j] for r in rows_b for j in cp])
                cand = fa + fb
                if best is None or cand < best:
                    best = cand
    n = d * d
    first = [list(best[i * d:(i + 1) * d]) for i in range(d)]
    second = [list(best[n + i * d:n + (i + 1) * d]) for i in range(d)]
    return OLSPair(LatinSquare(first), LatinSquare(second))


def _fill(d, fixed, ok):
    """Backtrack over d x d Latin squares agreeing with ``fixed`` (None = free).

    ``ok(i, j, v)`` may veto a placement; ``on_place``-style state lives in the
    caller's closure.
    """
    grid = [row[:] for row in fixed]
    rows = [set(x for x in r if x) for r in grid]
    cols = [set(grid[i][j] for i in range(d) if grid[i][j]) for j in range(d)]
    cells = [(i, j) for i in range(d) for j in range(d) if not grid[i][j]]

    def rec(k):
        if k == len(cells):
            yield [r[:] for r in grid]
            return
        i, j = cells[k]
        for v in range(1, d + 1):
            if v in rows[i] or v in cols[j] or not ok(grid, i, j, v):
                continue
            grid[i][j] = v
            rows[i].add(v)
            cols[j].add(v)
            yield from rec(k + 1)
            grid[i][j] = 0
            rows[i].discard(v)
            cols[j].discard(v)

    yield from rec(0)


def reduced_latin_squares(d):
    """Latin squares with first row and column equal to 1..d."""
    fixed = [[0] * d for _ in range(d)]
    fixed[0] = list(range(1, d + 1))
    for i in range(d):
        fixed[i][0] = i + 1
    yield from _fill(d, fixed, lambda g, i, j, v: True)


def orthogonal_mates(square):
    """Mates of ``square`` whose first row is 1..d (every mate relabels to one)."""
    d = square.order
    a = square.rows
    fixed = [[0] * d for _ in range(d)]
    fixed[0] = list(range(1, d + 1))
    used = {(a[0][j], j + 1) for j in range(d)}

    def ok(grid, i, j, v):
        pair = (a[i][j], v)
        if pair in used:
            return False
        # the pair is recorded only for cells already filled in row-major order
        for ii in range(1, d):
            for jj in range(d):
                if (ii, jj) >= (i, j):
                    return True
                if grid[ii][jj] and (a[ii][jj], grid[ii][jj]) == pair:
                    return False
        return True

    yield from _fill(d, fixed, ok)


def raw_ols_pairs(d):
    """Every (reduced first square, normalized mate) pair found by backtracking."""
    for first in reduced_latin_squares(d):
        m = LatinSquare(first)
        for mate in orthogonal_mates(m):
            yield OLSPair(m, LatinSquare(mate))


def enumerate_ols(d):
    """Canonical orthogonal pairs of order ``d`` up to equivalence, ascending."""
    if not isinstance(d, int) or not 2 <= d <= 4:
        raise UnsupportedOrderError(f"order {d} unsupported; only 2..4 are enumerated")
    classes = {canonical_form(p) for p in raw_ols_pairs(d)}
    return sorted(classes, key=OLSPair.key)
