"""Independent sympy cross-check of the curvature engine on both families."""
import itertools

import numpy as np
import pytest
import sympy as sp

import curvhom as ch

t, x, y = sp.symbols("t x y")
COORDS = (t, x, y)


def tower(g, order, point):
    """R and its covariant derivatives, evaluated at point; R(i,j,k,l) = g(R(d_i,d_j)d_k, d_l)."""
    gi = g.inv()
    G = [[[sum(gi[k, l] * (sp.diff(g[j, l], COORDS[i]) + sp.diff(g[i, l], COORDS[j])
                           - sp.diff(g[i, j], COORDS[l])) for l in range(3)) / 2
           for j in range(3)] for i in range(3)] for k in range(3)]
    R = {}
    for i, j, k, l in itertools.product(range(3), repeat=4):
        op = [sp.diff(G[m][j][k], COORDS[i]) - sp.diff(G[m][i][k], COORDS[j])
              + sum(G[n][j][k] * G[m][i][n] - G[n][i][k] * G[m][j][n] for n in range(3))
              for m in range(3)]
        R[(i, j, k, l)] = sum(g[m, l] * op[m] for m in range(3))
    levels = [R]
    for _ in range(order):
        prev, nxt = levels[-1], {}
        for idx in itertools.product(range(3), repeat=len(next(iter(prev))) + 1):
            *a, j = idx
            a = tuple(a)
            v = sp.diff(prev[a], COORDS[j])
            for s in range(len(a)):
                for m in range(3):
                    b = list(a)
                    b[s] = m
                    v -= G[m][j][a[s]] * prev[tuple(b)]
            nxt[idx] = v
        levels.append(nxt)
    subs = dict(zip(COORDS, point))
    out = []
    for lvl in levels:
        arr = np.zeros((3,) * len(next(iter(lvl))))
        for idx, v in lvl.items():
            arr[idx] = float(v.subs(subs).evalf())
        out.append(arr)
    return out


def compare(engine, reference):
    for a, b in zip(engine, reference):
        scale = max(1.0, np.abs(b).max())
        np.testing.assert_allclose(a, b, rtol=0, atol=1e-9 * scale)


@pytest.mark.parametrize("h", ["t^3", "exp(t)", "t^4 - t"])
def test_h_family_against_sympy(h):
    hs = sp.sympify(h.replace("^", "**"))
    g = sp.Matrix([[1, 0, 0], [0, -2 * hs, 1], [0, 1, 0]])
    p = (1.3, 0.2, -0.7)
    compare(ch.curvature_tower(ch.h_family(h), p, 2), tower(g, 2, p))


@pytest.mark.parametrize("f", ["exp(x)", "x^3 - x", "sin(x)"])
def test_f_family_against_sympy(f):
    fs = sp.sympify(f.replace("^", "**"))
    g = sp.Matrix([[sp.exp(2 * fs), 0, 0], [0, 0, 1], [0, 1, 0]])
    p = (0.4, 0.6, 0.1)
    compare(ch.curvature_tower(ch.f_family(f), p, 2), tower(g, 2, p))


def test_sign_of_first_derivative_term():
    # nabla R(T,X,X,T;T) for g_h is -h''' in these coordinates.
    p = (1.5, 0.0, 0.0)
    a = ch.nabla_k_riemann(ch.h_family("t^3"), p, 1)
    ref = tower(sp.Matrix([[1, 0, 0], [0, -2 * t**3, 1], [0, 1, 0]]), 1, p)[1]
    assert a[0, 1, 1, 0, 0] == pytest.approx(ref[0, 1, 1, 0, 0])
