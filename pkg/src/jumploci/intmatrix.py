"""Integer matrices: Smith and Hermite normal forms, lattice utilities.

All entries are Python ints (arbitrary precision). The Smith normal form
postcondition D = U*A*V with unimodular U, V and a divisibility chain on the
diagonal is re-checked on every call.
"""

from __future__ import annotations

from fractions import Fraction


class IntMatrix:
    """Immutable integer matrix with exact normal-form computations."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = [tuple(int(x) for x in row) for row in entries]
        self.rows = len(entries)
        if entries:
            self.cols = len(entries[0])
            assert all(len(r) == self.cols for r in entries)
        else:
            assert cols is not None, "empty matrix needs an explicit column count"
            self.cols = cols
        self.entries = tuple(entries)

    @staticmethod
    def identity(n):
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows, cols):
        return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        return "IntMatrix(%r)" % [list(r) for r in self.entries]

    def transpose(self):
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def __mul__(self, other):
        assert self.cols == other.rows
        return IntMatrix(
            [[sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
              for j in range(other.cols)] for i in range(self.rows)],
            cols=other.cols)

    def mul_vector(self, vec):
        assert len(vec) == self.cols
        return [sum(self.entries[i][j] * vec[j] for j in range(self.cols))
                for i in range(self.rows)]

    def det(self):
        """Determinant by fraction-free Bareiss elimination."""
        assert self.rows == self.cols
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def rank(self):
        return len(_row_echelon_rational(self.entries))


def _row_echelon_rational(rows):
    """Pivot columns of a rational row-echelon reduction (list of pivots)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots


class _SNF:
    """Working state for the Smith normal form with all four transforms."""

    def __init__(self, A: IntMatrix):
        self.m = [list(r) for r in A.entries]
        self.rows, self.cols = A.rows, A.cols
        self.U = [list(r) for r in IntMatrix.identity(A.rows).entries]
        self.V = [list(r) for r in IntMatrix.identity(A.cols).entries]

    def swap_rows(self, i, j):
        self.m[i], self.m[j] = self.m[j], self.m[i]
        self.U[i], self.U[j] = self.U[j], self.U[i]

    def add_row(self, dst, src, f):
        self.m[dst] = [a + f * b for a, b in zip(self.m[dst], self.m[src])]
        self.U[dst] = [a + f * b for a, b in zip(self.U[dst], self.U[src])]

    def negate_row(self, i):
        self.m[i] = [-a for a in self.m[i]]
        self.U[i] = [-a for a in self.U[i]]

    def swap_cols(self, i, j):
        for row in self.m:
            row[i], row[j] = row[j], row[i]
        for row in self.V:
            row[i], row[j] = row[j], row[i]

    def add_col(self, dst, src, f):
        for row in self.m:
            row[dst] += f * row[src]
        for row in self.V:
            row[dst] += f * row[src]

    def negate_col(self, i):
        for row in self.m:
            row[i] = -row[i]
        for row in self.V:
            row[i] = -row[i]


def smith_normal_form(A: IntMatrix):
    """Return (U, D, V) with D = U*A*V diagonal, d1 | d2 | ..., U, V unimodular."""
    st = _SNF(A)
    n = min(A.rows, A.cols)
    for s in range(n):
        # minimal-abs nonzero pivot in the trailing block
        pos, best = None, None
        for i in range(s, st.rows):
            for j in range(s, st.cols):
                v = abs(st.m[i][j])
                if v and (best is None or v < best):
                    best, pos = v, (i, j)
        if pos is None:
            break
        st.swap_rows(s, pos[0])
        st.swap_cols(s, pos[1])
        if st.m[s][s] < 0:
            st.negate_row(s)
        while True:
            # clear the pivot cross, shrinking the pivot to the cross gcd
            dirty = True
            while dirty:
                dirty = False
                for i in range(s + 1, st.rows):
                    if st.m[i][s]:
                        q = st.m[i][s] // st.m[s][s]
                        st.add_row(i, s, -q)
                        if st.m[i][s]:
                            st.swap_rows(s, i)
                            if st.m[s][s] < 0:
                                st.negate_row(s)
                            dirty = True
                for j in range(s + 1, st.cols):
                    if st.m[s][j]:
                        q = st.m[s][j] // st.m[s][s]
                        st.add_col(j, s, -q)
                        if st.m[s][j]:
                            st.swap_cols(s, j)
                            if st.m[s][s] < 0:
                                st.negate_col(s)
                            dirty = True
            # pivot must divide the whole trailing block for the chain
            offender = None
            for i in range(s + 1, st.rows):
                for j in range(s + 1, st.cols):
                    if st.m[i][j] % st.m[s][s] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            st.add_row(s, offender, 1)
    U = IntMatrix(st.U)
    D = IntMatrix(st.m, cols=A.cols)
    V = IntMatrix(st.V)
    _check_snf(A, U, D, V)
    return U, D, V


def _check_snf(A, U, D, V):
    assert U * A * V == D, "SNF postcondition D = U*A*V failed"
    assert abs(U.det()) == 1 and abs(V.det()) == 1, "SNF transforms not unimodular"
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0, "SNF result not diagonal"
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0), \
            "SNF divisibility chain violated"


def snf_with_inverse(A: IntMatrix):
    """Like smith_normal_form but also returns V^{-1} (for saturations)."""
    U, D, V = smith_normal_form(A)
    return U, D, V, _unimodular_inverse(V)


def _unimodular_inverse(V: IntMatrix) -> IntMatrix:
    n = V.rows
    assert n == V.cols
    det = V.det()
    assert det in (1, -1)
    # adjugate via cofactors (desk-scale sizes)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[V[r, c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            cof[i][j] = ((-1) ** (i + j)) * IntMatrix(minor, cols=n - 1).det()
    adj = IntMatrix(cof).transpose()
    inv = [[adj[i, j] * det for j in range(n)] for i in range(n)]
    result = IntMatrix(inv)
    assert result * V == IntMatrix.identity(n)
    return result


def row_hermite(A: IntMatrix):
    """Row-style Hermite normal form H = R*A with R unimodular.

    Pivots positive, entries above a pivot reduced into [0, pivot), zero rows at
    the bottom. The nonzero rows are the canonical basis of the row lattice.
    """
    m = [list(r) for r in A.entries]
    R = [list(r) for r in IntMatrix.identity(A.rows).entries]
    r = 0
    for c in range(A.cols):
        pivot = None
        for i in range(r, A.rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        R[r], R[pivot] = R[pivot], R[r]
        # gcd the column below the pivot
        again = True
        while again:
            again = False
            for i in range(r + 1, A.rows):
                if m[i][c]:
                    if abs(m[i][c]) < abs(m[r][c]) or m[r][c] == 0:
                        m[r], m[i] = m[i], m[r]
                        R[r], R[i] = R[i], R[r]
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    R[i] = [a - q * b for a, b in zip(R[i], R[r])]
                    if m[i][c]:
                        again = True
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
            R[r] = [-a for a in R[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                R[i] = [a - q * b for a, b in zip(R[i], R[r])]
        r += 1
        if r == A.rows:
            break
    H = IntMatrix(m, cols=A.cols)
    Rm = IntMatrix(R)
    assert Rm * A == H
    return H, Rm


def saturation(A: IntMatrix) -> IntMatrix:
    """Canonical (Hermite) basis of the saturation of the row lattice of A."""
    U, D, V, Vinv = snf_with_inverse(A)
    s = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    rows = [list(Vinv.entries[i]) for i in range(s)]
    H, _ = row_hermite(IntMatrix(rows, cols=A.cols))
    return IntMatrix([r for r in H.entries if any(r)], cols=A.cols)


def kernel_basis(A: IntMatrix):
    """Basis of the integer right kernel {v : A v = 0} (saturated lattice)."""
    U, D, V = smith_normal_form(A)
    s = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i] != 0)
    return [tuple(V[i, j] for i in range(A.cols)) for j in range(s, A.cols)]


def solve_integer(A: IntMatrix, b):
    """One integer solution x of A x = b, or None."""
    U, D, V = smith_normal_form(A)
    c = U.mul_vector(list(b))
    s = min(D.rows, D.cols)
    y = [0] * A.cols
    for i in range(D.rows):
        d = D[i, i] if i < s else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return V.mul_vector(y)


def solve_rational(A: IntMatrix, b):
    """One rational solution x of A x = b, or None."""
    U, D, V = smith_normal_form(A)
    c = U.mul_vector([Fraction(x) for x in b])
    s = min(D.rows, D.cols)
    y = [Fraction(0)] * A.cols
    for i in range(D.rows):
        d = D[i, i] if i < s else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            y[i] = Fraction(c[i], d)
    acc = [Fraction(0)] * A.cols
    for i in range(A.cols):
        acc[i] = sum(Fraction(V[i, j]) * y[j] for j in range(A.cols))
    return acc


def in_row_lattice(A: IntMatrix, vec):
    """Integer coefficients q with q*A = vec, or None."""
    sol = solve_integer(A.transpose(), list(vec))
    return sol
