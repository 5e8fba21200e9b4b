"""Exact dense linear algebra over Q, Q(x), and their subrings.

Everything is fraction-free where it matters: determinants go through
Bareiss elimination (intermediate entries are minors, kept small by exact
division), characteristic polynomials of rational matrices through integer
evaluation and interpolation, and characteristic polynomials of polynomial
matrices through the division-free Berkowitz recurrence.

Matrices are plain lists of lists. Entry types mix int, Fraction,
Polynomial, and RationalFunction as documented per function.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Callable, Sequence, TypeVar

from .errors import ValidationError
from .polynomials import Polynomial, RationalFunction, interpolate, poly_lcm

T = TypeVar("T")

Matrix = "list[list[T]]"


def _zero_like(e):
    if isinstance(e, RationalFunction):
        return RationalFunction(0)
    if isinstance(e, Polynomial):
        return Polynomial.zero()
    if isinstance(e, Fraction):
        return Fraction(0)
    return 0


def _one_like(e):
    if isinstance(e, RationalFunction):
        return RationalFunction(1)
    if isinstance(e, Polynomial):
        return Polynomial.one()
    if isinstance(e, Fraction):
        return Fraction(1)
    return 1


def identity(n: int, one=Fraction(1)):
    zero = _zero_like(one)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    zero = _zero_like(a[0][0])
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = zero
            for l in range(k):
                v = ai[l]
                if v:
                    acc = acc + v * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    zero = _zero_like(v[0]) if v else Fraction(0)
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


#### determinants


def _bareiss(rows, div: Callable, zero, one):
    """Fraction-free determinant; `div` must be exact in the entry domain."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = m[i][j] * pivot - mik * m[k][j]
                m[i][j] = div(num, prev)
            m[i][k] = zero
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def int_det(rows: "list[list[int]]") -> int:
    return _bareiss(rows, lambda a, b: a // b, 0, 1)


def poly_det(rows: "list[list[Polynomial]]") -> Polynomial:
    return _bareiss(rows, lambda a, b: a.exact_div(b), Polynomial.zero(), Polynomial.one())


def fraction_det(rows: "list[list[Fraction]]") -> Fraction:
    # clear denominators and run the integer kernel
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scaled = []
    scale = Fraction(1)
    for row in rows:
        den = 1
        for e in row:
            den = den * e.denominator // int_gcd(den, e.denominator)
        scale /= den
        scaled.append([int(e * den) for e in row])
    return scale * int_det(scaled)


def field_det(rows):
    """Determinant over Q or Q(x); entries Fraction or RationalFunction."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if isinstance(rows[0][0], RationalFunction):
        den = Polynomial.one()
        for row in rows:
            for e in row:
                den = poly_lcm(den, e.den)
        cleared = [[(e * den).as_polynomial() for e in row] for row in rows]
        d = poly_det(cleared)
        return RationalFunction(d, den ** n)
    return fraction_det([[Fraction(e) if isinstance(e, int) else e for e in row] for row in rows])


#### elimination over a field


def _row_echelon(rows):
    """In-place echelon form over a field; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _one_like(rows[r][c]) / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows) -> int:
    return len(_row_echelon([list(r) for r in rows]))


def kernel_basis(rows):
    """Basis of the right kernel of a matrix over a field."""
    if not rows:
        return []
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    pivots = _row_echelon(work)
    zero = _zero_like(rows[0][0])
    one = _one_like(rows[0][0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            # echelon row r: x_pc + sum coeffs * free parts = 0
            v[pc] = -work[r][fc]
        basis.append(v)
    return basis


def solve_square(a, b):
    """Solve a x = b for square invertible a over a field; raises if singular."""
    n = len(a)
    work = [list(row) + [bv] for row, bv in zip(a, b)]
    pivots = _row_echelon(work)
    if pivots != list(range(n)):
        raise ValidationError("singular linear system")
    return [work[i][n] for i in range(n)]


def invert_matrix(a):
    """Inverse over a field; raises ValidationError when singular."""
    n = len(a)
    one = _one_like(a[0][0])
    work = [list(row) + list(idrow) for row, idrow in zip(a, identity(n, one))]
    pivots = _row_echelon(work)
    if pivots != list(range(n)):
        raise ValidationError("matrix is not invertible")
    return [row[n:] for row in work]


#### symmetric congruence


def symmetric_diagonalize(g):
    """Diagonalize a symmetric matrix by congruence over a field.

    Returns (diag, c) with c invertible and c^T g c = diag(diag).
    """
    n = len(g)
    if n == 0:
        return [], []
    zero = _zero_like(g[0][0])
    one = _one_like(g[0][0])
    d = [list(row) for row in g]
    c = identity(n, one)
    for i in range(n):
        if any(d[i][j] != d[j][i] for j in range(n)):
            raise ValidationError("matrix is not symmetric")

    def col_op(dst: int, src: int, f) -> None:
        # basis change v_dst <- v_dst + f*v_src, applied on both sides
        for r in range(n):
            d[r][dst] = d[r][dst] + f * d[r][src]
        for r in range(n):
            d[dst][r] = d[dst][r] + f * d[src][r]
        for r in range(n):
            c[r][dst] = c[r][dst] + f * c[r][src]

    def swap(i: int, j: int) -> None:
        for r in range(n):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        d[i], d[j] = d[j], d[i]
        for r in range(n):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    for k in range(n):
        if not d[k][k]:
            for l in range(k + 1, n):
                if d[l][l]:
                    swap(k, l)
                    break
            else:
                # all remaining diagonal entries vanish; bring in a cross term
                found = None
                for l in range(k, n):
                    for m_ in range(l + 1, n):
                        if d[l][m_]:
                            found = (l, m_)
                            break
                    if found:
                        break
                if found is None:
                    break  # remaining block is zero
                l, m_ = found
                col_op(l, m_, one)  # new d[l][l] = 2 d[l][m] != 0
                if l != k:
                    swap(k, l)
        pivot = d[k][k]
        if not pivot:
            continue
        for j in range(k + 1, n):
            if d[k][j]:
                col_op(j, k, -d[k][j] / pivot)
    return [d[i][i] for i in range(n)], c


#### block structure


def symmetric_blocks(g) -> "list[list[int]]":
    """Connected components of indices linked by nonzero off-diagonal entries."""
    n = len(g)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] or g[j][i]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[r] for r in sorted(groups, key=lambda r: groups[r][0])]


def submatrix(g, idx: "list[int]"):
    return [[g[i][j] for j in idx] for i in idx]


#### characteristic polynomials


def charpoly_diagonal(diag):
    """Coefficients [u1..un] of prod (X - d_i), descending powers after X^n."""
    coeffs = [_one_like(diag[0]) if diag else Fraction(1)]
    for d in diag:
        nxt = [coeffs[0]]
        for i in range(1, len(coeffs)):
            nxt.append(coeffs[i] - d * coeffs[i - 1])
        nxt.append(-d * coeffs[-1])
        coeffs = nxt
    return coeffs[1:]


def charpoly_rational(rows: "list[list[Fraction]]") -> "list[Fraction]":
    """[u1..un] with det(XI - rows) = X^n + u1 X^(n-1) + ... + un.

    Clears denominators to an integer matrix, evaluates the integer
    characteristic polynomial at n+1 points with Bareiss, interpolates, and
    rescales the coefficients back.
    """
    n = len(rows)
    if n == 0:
        return []
    den = 1
    for row in rows:
        for e in row:
            den = den * e.denominator // int_gcd(den, e.denominator)
    m = [[int(e * den) for e in row] for row in rows]
    points = []
    for t in range(n + 1):
        shifted = [[(t if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]
        points.append((Fraction(t), Fraction(int_det(shifted))))
    chi = interpolate(points)
    # chi is monic of degree n in the scaled variable; undo the scaling
    out = []
    for i in range(1, n + 1):
        out.append(chi.coeff(n - i) / Fraction(den) ** i)
    return out


def charpoly_berkowitz(rows: "list[list[Polynomial]]") -> "list[Polynomial]":
    """[u1..un] for a square matrix over Q[x], division-free."""
    n = len(rows)
    if n == 0:
        return []
    one = Polynomial.one()
    v = [one, -rows[0][0]]
    for r in range(1, n):
        a = rows[r][r]
        row_ = rows[r][:r]
        col = [rows[j][r] for j in range(r)]
        m_ = [rows[i][:r] for i in range(r)]
        q = [one, -a]
        w = col
        for _ in range(r):
            dot = Polynomial.zero()
            for x, y in zip(row_, w):
                if x and y:
                    dot = dot + x * y
            q.append(-dot)
            w = mat_vec(m_, w)
        nxt = []
        for out_i in range(r + 2):
            acc = Polynomial.zero()
            lo = max(0, out_i - len(v) + 1)
            for k in range(lo, min(out_i, r + 1) + 1):
                if q[k] and v[out_i - k]:
                    acc = acc + q[k] * v[out_i - k]
            nxt.append(acc)
        v = nxt
    return v[1:]


def charpoly_rf(rows: "list[list[RationalFunction]]") -> "list[RationalFunction]":
    """[u1..un] for a matrix over Q(x), via denominator clearing + Berkowitz."""
    n = len(rows)
    if n == 0:
        return []
    den = Polynomial.one()
    for row in rows:
        for e in row:
            den = poly_lcm(den, e.den)
    cleared = [[(e * den).as_polynomial() for e in row] for row in rows]
    vs = charpoly_berkowitz(cleared)
    out = []
    dpow = RationalFunction(1)
    denrf = RationalFunction(den)
    for i, vi in enumerate(vs, start=1):
        dpow = dpow * denrf
        out.append(RationalFunction(vi) / dpow)
    return out


def charpoly_coefficients(rows):
    """[u1..un] of det(XI - rows); entries Fraction or RationalFunction."""
    n = len(rows)
    if n == 0:
        return []
    if all(not rows[i][j] for i in range(n) for j in range(n) if i != j):
        return charpoly_diagonal([rows[i][i] for i in range(n)])
    if isinstance(rows[0][0], RationalFunction):
        return charpoly_rf(rows)
    return charpoly_rational(
        [[Fraction(e) if isinstance(e, int) else e for e in row] for row in rows]
    )
