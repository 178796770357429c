import sys
import random

import pytest
import sympy


def exact_inverse_diagonal(G):
    inv = sympy.Matrix(G).inv()
    return [inv[i, i] for i in range(len(G))]


def random_pd_gram(rng: random.Random, max_dim: int, max_entry: int):
    """Random positive definite symmetric integer matrix, by rejection."""
    while True:
        n = rng.randint(1, max_dim)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = rng.randint(1, max_entry)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-max_entry, max_entry)
        if all(sympy.Matrix(g)[:k, :k].det() > 0 for k in range(1, n + 1)):
            return g


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_skewed_gram(rng: random.Random, dim: int, max_entry: int):
    """A^T A for a random nonsingular A with small entries; skewed but positive definite."""
    while True:
        a = [[rng.randint(-2, 2) for _ in range(dim)] for _ in range(dim)]
        if sympy.Matrix(a).det() == 0:
            continue
        g = [[sum(a[k][i] * a[k][j] for k in range(dim)) for j in range(dim)] for i in range(dim)]
        if all(abs(x) <= max_entry for row in g for x in row):
            return g


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
