"""3x3 matrices with entries in Q[t]."""

from .unipoly import UniPoly


class Mat3:
    """Immutable 3x3 matrix of :class:`UniPoly` entries (row-major)."""

    __slots__ = ("_rows",)

    def __init__(self, rows):
        rows = tuple(tuple(UniPoly.coerce(x) for x in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @classmethod
    def identity(cls):
        return cls([[1 if i == j else 0 for j in range(3)] for i in range(3)])

    @classmethod
    def diag(cls, a, b, c):
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat3) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self._rows)
        return f"Mat3([{body}])"

    def transpose(self):
        return Mat3([[self._rows[j][i] for j in range(3)] for i in range(3)])

    def __matmul__(self, other):
        if isinstance(other, Mat3):
            return Mat3([
                [sum((self._rows[i][k] * other._rows[k][j] for k in range(3)), UniPoly())
                 for j in range(3)]
                for i in range(3)
            ])
        return self.apply(other)

    def scale(self, c):
        return Mat3([[c * x for x in row] for row in self._rows])

    def apply(self, vec):
        """Matrix times a column vector of scalars or polynomials."""
        if len(vec) != 3:
            raise ValueError("vector must have 3 entries")
        return tuple(
            sum((self._rows[i][k] * vec[k] for k in range(3)), UniPoly())
            for i in range(3)
        )

    def minor(self, i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        m = self._rows
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]


def mat3_det(m):
    """Cofactor expansion along the first row."""
    r = m.rows
    return (
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    )


def mat3_cofactor(m):
    """Matrix of signed minors; entry (i, j) is (-1)^(i+j) times minor(i, j)."""
    return Mat3([
        [m.minor(i, j) if (i + j) % 2 == 0 else -m.minor(i, j) for j in range(3)]
        for i in range(3)
    ])


def mat3_adjugate(m):
    """Classical adjugate, the transposed cofactor matrix: m @ adj(m) == det(m) * I."""
    return mat3_cofactor(m).transpose()


def degeneration_T():
    """The fixed degeneration matrix used for the (4,4) and (4,3) arguments."""
    t = UniPoly.t()
    return Mat3([
        [t - t**2, t**2 - t**4, t**4],
        [t**3 + t**2, 1, -t**3],
        [t**2, t**5, 1],
    ])


def degeneration_32():
    """The matrix used for the worked (3,2)-net tropicalization."""
    t = UniPoly.t()
    return Mat3([
        [t, t**2, t**4],
        [t**3, t, t**2],
        [t**2, t**5, 1],
    ])
