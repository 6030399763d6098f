"""
Exact linear algebra over the rationals.

Matrices are plain lists of rows. Every entry is converted to `Fraction` so that no
rounding ever occurs.
"""

from fractions import Fraction
from math import gcd


def as_fraction(value):
    """
    Convert an int, a Fraction or a "p/q" string into a Fraction.

    Floats are refused since they would silently carry rounding errors.

    Examples
    --------
    >>> as_fraction("3/6"), as_fraction(2)
    (Fraction(1, 2), Fraction(2, 1))

    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted, use integers, Fractions or strings")
    return Fraction(value)


def as_vector(values):
    return tuple(as_fraction(value) for value in values)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def primitive(row):
    """
    Divide an integer row by the gcd of its entries (the zero row is kept).

    Examples
    --------
    >>> primitive([4, -6, 0])
    (2, -3, 0)

    """
    row = [int(value) for value in row]
    divisor = gcd(*row)
    if divisor == 0:
        return tuple(row)
    return tuple(value // divisor for value in row)


def echelon(matrix):
    """
    Reduce a matrix to row echelon form by Gaussian elimination.

    Returns
    -------
    rows : list of list of Fraction
        The reduced rows.
    pivots : list of int
        The pivot column of each nonzero row.

    """
    rows = [list(as_vector(row)) for row in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots = []
    pivot_row = 0
    for col in range(n_cols):
        for idx in range(pivot_row, len(rows)):
            if rows[idx][col] != 0:
                break
        else:
            continue
        rows[pivot_row], rows[idx] = rows[idx], rows[pivot_row]
        pivot = rows[pivot_row][col]
        for idx in range(pivot_row + 1, len(rows)):
            factor = rows[idx][col] / pivot
            if factor != 0:
                rows[idx] = [a - factor * b for a, b in zip(rows[idx], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivots


def rank(matrix):
    """
    Rank of a rational matrix.

    Examples
    --------
    >>> rank([[1, 2], [2, 4], [0, 1]])
    2

    """
    return len(echelon(matrix)[1])


def det(matrix):
    """
    Determinant of a square rational matrix.

    Examples
    --------
    >>> det([[2, 1], [1, 1]])
    Fraction(1, 1)

    """
    rows = [list(as_vector(row)) for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    result = Fraction(1)
    for col in range(n):
        for idx in range(col, n):
            if rows[idx][col] != 0:
                break
        else:
            return Fraction(0)
        if idx != col:
            rows[col], rows[idx] = rows[idx], rows[col]
            result = -result
        pivot = rows[col][col]
        result *= pivot
        for idx in range(col + 1, n):
            factor = rows[idx][col] / pivot
            if factor != 0:
                rows[idx] = [a - factor * b for a, b in zip(rows[idx], rows[col])]
    return result


def format_rational(value):
    """
    Format a rational number as a "p/q" string.

    Examples
    --------
    >>> format_rational(Fraction(2)), format_rational(Fraction(-3, 6))
    ('2/1', '-1/2')

    """
    value = as_fraction(value)
    return f"{value.numerator}/{value.denominator}"
