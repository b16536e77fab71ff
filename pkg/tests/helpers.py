"""Shared builders for the test suite."""

from nilforms.fields import QQ
from nilforms.forms import AlternatingForm, FormTuple


def std_tuple(n, *pairs):
    """Tuple of standard basis forms on Q^n, one per 0-based index pair."""
    return FormTuple([AlternatingForm.standard(QQ, n, i, j) for i, j in pairs])


def heisenberg():
    return std_tuple(2, (0, 1))


def int_entries(matrix):
    return [[int(x) for x in row] for row in matrix.entries]


def basis_vector(field, n, i):
    return [field.of(1 if j == i else 0) for j in range(n)]
