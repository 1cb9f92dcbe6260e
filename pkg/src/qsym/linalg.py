"""Gaussian elimination over any exact field (Fraction or RatFunc entries)."""

from fractions import Fraction


class SingularMatrix(ZeroDivisionError):
    pass


def det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        p = m[col][col]
        result = result * p
        for r in range(col + 1, n):
            f = m[r][col]
            if f:
                f = f / p
                for c in range(col + 1, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return result


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs``; raises SingularMatrix on a zero pivot."""
    n = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise SingularMatrix(f"singular at column {col}")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / p
                for c in range(col, n + 1):
                    m[r][c] = m[r][c] - f * m[col][c]
    return [m[i][n] / m[i][i] for i in range(n)]
