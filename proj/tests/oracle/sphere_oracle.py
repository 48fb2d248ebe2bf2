"""Symbolic reference values for the pseudo-sphere chart.

Independent of the C++ code: everything here is built from sympy
derivatives of the chart formulas. Run with `python3 sphere_oracle.py`;
the printed numbers are frozen in tests/frozen_values.hpp.
"""
import itertools

import sympy as sp

u = sp.symbols("u1:5", real=True)
u1, u2, u3, u4 = u
d, n = 4, 1
sh, ch, c3 = sp.sinh(u1), sp.cosh(u1), sp.cos(u3)

g = sp.diag(-1, -sh**2, ch**2, ch**2 * c3**2)
J = [sp.zeros(4) for _ in range(3)]
J[0][0, 1], J[0][1, 0], J[0][2, 3], J[0][3, 2] = -sh, 1 / sh, c3, -1 / c3
J[1][0, 2], J[1][2, 0], J[1][1, 3], J[1][3, 1] = -ch, 1 / ch, -(ch / sh) * c3, 1 / ((ch / sh) * c3)
J[2][0, 3], J[2][3, 0], J[2][2, 1], J[2][1, 2] = ch * c3, -1 / (ch * c3), sp.tanh(u1), -1 / sp.tanh(u1)

point = {u1: 1, u2: sp.Rational(1, 2), u3: sp.Rational(3, 10), u4: sp.Rational(7, 10)}


def christoffel(metric):
    gi = metric.inv()
    return [[[sp.simplify(sum(gi[k, m] * (sp.diff(metric[j, m], u[i]) + sp.diff(metric[i, m], u[j])
                                          - sp.diff(metric[i, j], u[m])) for m in range(d)) / 2)
              for j in range(d)] for i in range(d)] for k in range(d)]


def riemann(metric, gam):
    def up(l, i, j, k):
        return (sp.diff(gam[l][j][k], u[i]) - sp.diff(gam[l][i][k], u[j])
                + sum(gam[l][i][m] * gam[m][j][k] - gam[l][j][m] * gam[m][i][k] for m in range(d)))
    return {(i, j, k, l): sp.simplify(sum(metric[m, l] * up(m, i, j, k) for m in range(d)))
            for i, j, k, l in itertools.product(range(d), repeat=4)}


def structural(metric, gam, Ja):
    def nabla(k, i, j):
        return (sp.diff(Ja[i, j], u[k]) + sum(gam[i][k][m] * Ja[m, j] - gam[m][k][j] * Ja[i, m]
                                              for m in range(d)))
    return {(k, j, l): sum(metric[i, l] * nabla(k, i, j) for i in range(d))
            for k, j, l in itertools.product(range(d), repeat=3)}


def num(e):
    return float(sp.N(sp.sympify(e).subs(point), 30))


gam = christoffel(g)
gi = g.inv()
F = [structural(g, gam, Ja) for Ja in J]
theta = [[sum(gi[k, j] * Fa[(k, j, z)] for k in range(d) for j in range(d)) for z in range(d)] for Fa in F]

print("g diag          ", [num(g[i, i]) for i in range(d)])
print("Gamma^2_12      ", num(gam[1][0][1]))
print("theta1          ", [num(t) for t in theta[0]])
print("theta2          ", [num(t) for t in theta[1]])
print("theta3          ", [num(t) for t in theta[2]])


def p_defect(a):
    Gn = sp.Matrix(4, 4, lambda i, j: num(g[i, j]))
    Jn = sp.Matrix(4, 4, lambda i, j: num(J[a][i, j]))
    th = [num(t) for t in theta[a]]
    gJ = Gn * Jn
    thJ = [sum(th[m] * Jn[m, z] for m in range(d)) for z in range(d)]
    worst = 0.0
    for x, y, z in itertools.product(range(d), repeat=3):
        if a == 0:
            b = (Gn[x, y] * th[z] - Gn[x, z] * th[y] - gJ[x, y] * thJ[z] + gJ[x, z] * thJ[y]) / (2 * (2 * n - 1))
        else:
            b = (Gn[x, y] * th[z] + Gn[x, z] * th[y] + gJ[x, y] * thJ[z] + gJ[x, z] * thJ[y]) / (4 * n)
        worst = max(worst, abs(num(F[a][(x, y, z)]) - b))
    return worst


print("max|P_a|        ", [p_defect(a) for a in range(3)])
print("max|F_a|        ", [max(abs(num(v)) for v in Fa.values()) for Fa in F])

R = riemann(g, gam)
pi1 = {(i, j, k, l): g[j, k] * g[i, l] - g[i, k] * g[j, l] for i, j, k, l in itertools.product(range(d), repeat=4)}
print("max|R - pi1|    ", max(abs(num(R[key] - pi1[key])) for key in R))

gauge = -sp.log(sp.cosh(u1))
gbar = sp.exp(2 * gauge) * g
print("gbar_11         ", num(gbar[0, 0]))
Rbar = riemann(gbar, christoffel(gbar))
print("max|Rbar|       ", max(abs(num(v)) for v in Rbar.values()))
