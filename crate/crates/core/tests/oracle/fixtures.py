#!/usr/bin/env python3
"""Independent oracle for the frozen experiment fixtures.

Recomputes the rho = 1/2 experiment endpoints with Python's `fractions`
module, plain Gauss-Jordan elimination and hand-derived integrals, sharing
no code with the Rust pipeline. Writes one `name = num/den` (or float) line
per fixture to stdout.

    python3 crates/core/tests/oracle/fixtures.py > crates/core/tests/fixtures/rho_half.txt
"""

from fractions import Fraction as F
import sys

RHO = F(1, 2)
S = RHO * RHO
GRID = 1001


def window(n):
    # N_n = round(n (1 - rho) / rho), halves away from zero
    w = n * (1 - RHO) / RHO
    fl = w.numerator // w.denominator
    big_n = fl + 1 if w - fl >= F(1, 2) else fl
    return list(range(n, n + big_n + 1))


def solve(a, b):
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] for i in range(n)]


def indicator_moment(s, k):
    # ∫_s^1 x^k
    return (1 - s ** (k + 1)) / (k + 1)


def ramp_moment(a, k):
    # ∫_a^1 (x - a) x^k, via substitution x = a + t
    total = F(0)
    for j in range(k + 1):
        binom = F(1)
        for i in range(j):
            binom = binom * (k - i) / (i + 1)
        # ∫_0^{1-a} t * a^(k-j) t^j dt
        total += binom * a ** (k - j) * (1 - a) ** (j + 2) / (j + 2)
    return total


def project(moment, norm_sq, degrees):
    g = [[F(1, i + j + 1) for j in degrees] for i in degrees]
    b = [moment(k) for k in degrees]
    c = solve(g, b)
    dist_sq = norm_sq - sum(ci * bi for ci, bi in zip(c, b))
    return dict(zip(degrees, c)), dist_sq


def restricted_norm_sq(coeffs, u):
    # ∫_0^u (Σ a_i x^i)^2 as a double sum
    items = list(coeffs.items())
    return sum(a * b * u ** (i + j + 1) / (i + j + 1) for i, a in items for j, b in items)


OPERATORS = {
    "hardy": (0, lambda k: F(1, k + 1)),
    "volterra": (1, lambda k: F(1, k + 1)),
    "mult_x": (1, lambda k: F(1)),
}


def indicator_case(n):
    return project(lambda k: indicator_moment(S, k), 1 - S, window(n))


def continuous_sup_err(n):
    a = S
    coeffs, _ = project(lambda k: ramp_moment(a, k), (1 - a) ** 3 / 3, window(n))
    # V(2p): 2 c_k x^{k+1} / (k+1)
    v = {k + 1: 2 * c / (k + 1) for k, c in coeffs.items()}
    top = max(v)
    dense = [v.get(d, F(0)) for d in range(top + 1)]
    worst = F(0)
    for i in range(GRID):
        x = F(i, GRID - 1)
        acc = F(0)
        for c in reversed(dense):
            acc = acc * x + c
        f = (x - a) ** 2 if x > a else F(0)
        worst = max(worst, abs(acc - f))
    return worst


def main():
    out = []
    for n in (1, 40):
        coeffs, dist_sq = indicator_case(n)
        out.append((f"sweep_indicator_dist_sq_n{n}", dist_sq))
        for name, (m, rule) in OPERATORS.items():
            image = {k + m: c * rule(k) for k, c in coeffs.items()}
            out.append((f"leak_{name}_n{n}", restricted_norm_sq(image, S)))
        err = continuous_sup_err(n)
        out.append((f"continuous_sup_err_n{n}", repr(float(err))))
    for key, val in out:
        if isinstance(val, F):
            val = f"{val.numerator}/{val.denominator}"
        print(f"{key} = {val}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
