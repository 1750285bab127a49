#!/usr/bin/env python3
# Level-2 newform q-expansions for weights 10 and 14 as NewformData JSON.
# S_k(Gamma0(2)) = D * M_{k-8}(Gamma0(2)) with D = (eta(z) eta(2z))^8, F = 24(E2(z) - 2 E2(2z)).
import json
import sys
from fractions import Fraction

ORDER = 300


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def mul(a, b, order):
    c = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                c[i + j] += x * y
    return c


def eta_quotient(factors, order):
    lead = sum(t * r for t, r in factors) // 24
    p = [0] * (order + 1)
    p[0] = 1
    n_len = order - lead
    for t, r in factors:
        for n in range(1, n_len // t + 1):
            step = t * n
            for _ in range(r):
                for i in range(n_len, step - 1, -1):
                    p[i] -= p[i - step]
    out = [Fraction(0)] * (order + 1)
    for i in range(n_len + 1):
        out[i + lead] = Fraction(p[i])
    return out


def eis(k, order):
    from sympy import bernoulli
    a0 = Fraction(-int(bernoulli(k).p), int(bernoulli(k).q)) / (2 * k)
    return [a0] + [Fraction(sigma(k - 1, n)) for n in range(1, order + 1)]


def main():
    N = 3 * ORDER
    D = eta_quotient([(1, 8), (2, 8)], N)
    F = [Fraction(1)] + [Fraction(24 * (sigma(1, n) - (2 * sigma(1, n // 2) if n % 2 == 0 else 0))) for n in range(1, N + 1)]
    E4 = [x * 240 for x in eis(4, N)]
    forms = {}
    forms[10] = [mul(D, F, N)]
    F3 = mul(mul(F, F, N), F, N)
    basis = [mul(D, F3, N), mul(D, mul(F, E4, N), N)]
    # T3 on the 2-dim space in coordinates (a1, a2)
    def t3(g):
        return [g[3 * n] + (3**13) * (g[n // 3] if n % 3 == 0 else 0) for n in range(0, ORDER + 1)]
    M = [[basis[0][1], basis[1][1]], [basis[0][2], basis[1][2]]]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    inv = [[M[1][1] / det, -M[0][1] / det], [-M[1][0] / det, M[0][0] / det]]
    def coords(g):
        return [inv[0][0] * g[1] + inv[0][1] * g[2], inv[1][0] * g[1] + inv[1][1] * g[2]]
    T = [coords(t3(b)) for b in basis]  # columns
    a, b, c, d = T[0][0], T[1][0], T[0][1], T[1][1]
    tr, dt = a + d, a * d - b * c
    disc = tr * tr - 4 * dt
    from sympy import Rational, sqrt
    r = sqrt(Rational(disc.numerator, disc.denominator))
    if not r.is_rational:
        sys.exit("T3 eigenvalues are not rational")
    rr = Fraction(int(r.p), int(r.q))
    forms[14] = []
    for lam in sorted([(tr - rr) / 2, (tr + rr) / 2]):
        # (T - lam) v = 0
        v = [b, lam - a] if b != 0 else [lam - d, c]
        g = [v[0] * x + v[1] * y for x, y in zip(basis[0], basis[1])]
        g = [x / g[1] for x in g]
        forms[14].append(g)
    for k, fs in forms.items():
        for idx, g in enumerate(fs):
            fricke = -g[2] / Fraction(2 ** (k // 2 - 1))
            assert fricke in (1, -1)
            # Hecke multiplicativity sanity checks
            assert g[6] == g[2] * g[3]
            assert g[9] == g[3] ** 2 - 3 ** (k - 1)
            data = {
                "level": 2,
                "weight": k,
                "character": "trivial",
                "fricke_sign": int(fricke),
                "constant_term": "0",
                "coefficients": [str(x) for x in g[1 : ORDER + 1]],
            }
            name = f"level2_k{k}" + (f"_{'ab'[idx]}" if len(fs) > 1 else "") + ".json"
            with open(name, "w") as fh:
                json.dump(data, fh, indent=1)
                fh.write("\n")
            print(name, "a2 =", g[2], "a3 =", g[3], "fricke =", int(fricke))


if __name__ == "__main__":
    main()
