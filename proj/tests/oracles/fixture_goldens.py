#!/usr/bin/env python3
"""Golden gaps for the non-commuting strictness fixtures.

Builds the same closed-form fixtures as include/qre/harness/strictness.hpp and evaluates
gap = rhs - lhs with mpmath at 40 digits (Pade logm / powm, no eigendecompositions).
Writes include/qre/harness/strictness_goldens.hpp.
"""
import math
import sys
from pathlib import Path

import mpmath as mp
import numpy as np

mp.mp.dps = 40
FIXTURES = 10


def givens_unitary(n, a, b):
    u = np.eye(n, dtype=complex)
    for j in range(n - 1):
        th, ph = a + 0.37 * j, b + 0.61 * j
        g = np.eye(n, dtype=complex)
        c, s = math.cos(th), math.sin(th)
        g[j, j] = c
        g[j + 1, j + 1] = c
        g[j, j + 1] = -complex(math.cos(ph), -math.sin(ph)) * s
        g[j + 1, j] = complex(math.cos(ph), math.sin(ph)) * s
        u = u @ g
    return u


def fixture(k):
    n = 2 + k % 3
    x = np.array([0.5 + 0.7 * j + 0.05 * k for j in range(n)])
    y = np.array([1.0 + 0.9 * j * (1.0 + 0.1 * k) for j in range(n)])
    z = np.array([2.0 - 0.4 * j + 0.03 * k for j in range(n)])
    u1 = givens_unitary(n, 0.3 + 0.11 * k, 0.2 + 0.07 * k)
    u2 = givens_unitary(n, 0.9 + 0.13 * k, 1.1 + 0.05 * k)
    xm = u1 @ np.diag(x) @ u1.conj().T
    zm = u2 @ np.diag(z) @ u2.conj().T
    zm = zm * (x.sum() / z.sum())
    return xm, np.diag(y).astype(complex), zm


def params(check, k):
    rs = [0.5, 1.0, 2.0][k % 3]
    if check in ("clA", "HPhard"):
        return {"p": [0.5, 1.0, 2.0, 4.0][k % 4]}
    if check == "clB":
        return {"r": rs, "s": [0.25, 0.5, 0.75][(k // 3) % 3]}
    if check == "secA":
        return {"r": rs, "t": [1.25, 1.5, 2.0][(k // 3) % 3]}
    if check == "secAA":
        return {"r": rs, "t": [-1.0, -0.5, -0.25][(k // 3) % 3]}
    if check == "FrSo":
        return {"r": [0.25, 0.5, 1.0, 2.0, 4.0][k % 5]}
    raise KeyError(check)


def to_mp(a):
    n = a.shape[0]
    return mp.matrix([[mp.mpc(complex(a[i, j])) for j in range(n)] for i in range(n)])


def herm(a):
    return (a + a.H) / 2


def powm(a, p):
    return herm(mp.expm(p * mp.logm(a)))


def gmean(a, b, t):
    ah, aih = powm(a, mp.mpf(1) / 2), powm(a, -mp.mpf(1) / 2)
    return herm(ah * powm(herm(aih * b * aih), t) * ah)


def tr(a):
    return mp.re(sum(a[i, i] for i in range(a.rows)))


def trlog(x, a):
    return tr(x * mp.logm(a))


def gap(check, k):
    xd, yd, zd = fixture(k)
    x, y, z = to_mp(xd), to_mp(yd), to_mp(zd)
    pr = {key: mp.mpf(v) for key, v in params(check, k).items()}
    xlx, xly = trlog(x, x), trlog(x, y)
    if check == "clA":
        p = pr["p"]
        o = powm(y, p / 2)
        return p * (xlx + xly) - trlog(x, herm(o * powm(z, p) * o))
    if check == "clB":
        r, s = pr["r"], pr["s"]
        return r * (s * xlx + (1 - s) * xly) - trlog(x, gmean(powm(y, r), powm(z, r), s))
    if check == "secA":
        r, t = pr["r"], pr["t"]
        return trlog(x, gmean(powm(z, r), powm(y, r), t)) - r * ((1 - t) * xlx + t * xly)
    if check == "secAA":
        r, t = pr["r"], pr["t"]
        return trlog(x, gmean(powm(x, r), powm(y, r), t)) - r * ((1 - t) * xlx + t * xly)
    if check == "HPhard":
        p = pr["p"]
        o = powm(x, p / 2)
        return trlog(x, herm(o * powm(y, p) * o)) - p * (xlx + xly)
    if check == "FrSo":
        r = pr["r"]
        o = powm(x, r / 2)
        lhs = tr(mp.expm(mp.logm(x) + mp.logm(y)))
        return tr(powm(herm(o * powm(y, r) * o), 1 / r)) - lhs
    raise KeyError(check)


CHECKS = ["clA", "clB", "HPhard", "secA", "secAA", "FrSo"]


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else (
        Path(__file__).resolve().parents[2] / "include/qre/harness/strictness_goldens.hpp")
    rows = []
    for check in CHECKS:
        for k in range(FIXTURES):
            g = gap(check, k)
            if g <= 0:
                raise SystemExit(f"{check}[{k}]: golden gap {mp.nstr(g, 5)} is not positive")
            rows.append(f'    {{"{check}", {k}, {mp.nstr(g, 17, min_fixed=1, max_fixed=0)}}},')
    text = "\n".join([
        "#pragma once",
        "",
        "// Generated by tests/oracles/fixture_goldens.py; do not edit.",
        "",
        "namespace qre::harness {",
        "",
        "struct StrictnessGolden {",
        "    const char* check;",
        "    int index;",
        "    double gap;",
        "};",
        "",
        "inline constexpr StrictnessGolden kStrictnessGoldens[] = {",
        *rows,
        "};",
        "",
        "}  // namespace qre::harness",
        "",
    ])
    out.write_text(text)
    print(f"wrote {len(rows)} goldens to {out}")


if __name__ == "__main__":
    main()
