#!/usr/bin/env python3
"""Independent 50-digit reference values for the catalog families.

Writes tests/unit/oracle_values.inc (quantiles, second order ratios and b(u)).
Run from the repository root: python3 tests/oracles/catalog_oracle.py
"""
import pathlib

import mpmath as mp

mp.mp.dps = 50


def normal_z(u):
    return mp.sqrt(2) * mp.erfinv(1 - 2 * u)


def phi(z):
    return mp.exp(-z * z / 2) / mp.sqrt(2 * mp.pi)


def d_gamma(g, x):
    return -mp.log(x) if g == 0 else (x ** (-g) - 1) / g


# name: (Q, s, S, h, gamma, orientation, endpoint)
def burr(g=mp.mpf(1), r=mp.mpf(-1)):
    Q = lambda u: (u**r - 1) ** (-g / r)
    return dict(Q=Q, s=lambda u: g * Q(u), S=lambda u: 1 / (u**r - 1),
                h=lambda x: -(x**r - 1) * x ** (-g - r) / r, gamma=g, orient=1)


def reversed_burr(g=mp.mpf(1), r=mp.mpf(-1)):
    Q = lambda u: -((u**r - 1) ** (g / r))
    return dict(Q=Q, s=lambda u: -g * Q(u), S=lambda u: u ** (-r),
                h=lambda x: -(x**g) * (1 - x ** (-r)) / r, gamma=-g, orient=1, endpoint=0)


def singh_maddala(a=mp.mpf(1), b=mp.mpf(2), c=mp.mpf(1)):
    Q = lambda u: ((u ** (-1 / c) - 1) / a) ** (1 / b)
    return dict(Q=Q, s=lambda u: Q(u) / (b * c), S=lambda u: 1 / (u ** (-1 / c) - 1),
                h=lambda x: c * (x ** (-1 / c) - 1) * x ** (-1 / (b * c) + 1 / c),
                gamma=1 / (b * c), orient=1)


def log_singh_maddala(a=mp.mpf(1), b=mp.mpf(2), c=mp.mpf(1)):
    Q = lambda u: mp.log((u ** (-1 / c) - 1) / a) / b
    return dict(Q=Q, s=lambda u: 1 / (b * c), S=lambda u: u ** (1 / c),
                h=lambda x: c * (1 - x ** (1 / c)), gamma=0, orient=1)


def exponential():
    return dict(Q=lambda u: -mp.log(u), s=lambda u: 1, S=None, h=None, gamma=0, orient=1)


def log_exponential():
    return dict(Q=lambda u: mp.log(-mp.log(u)), s=lambda u: -1 / mp.log(u),
                S=lambda u: 1 / mp.log(u), h=lambda x: -mp.log(x) ** 2 / 2, gamma=0, orient=-1)


def normal():
    def D(u):
        L = -mp.log(u)
        return (mp.log(4 * mp.pi) / 2 + mp.log(L) / 2) / mp.sqrt(2 * L)

    sigma = lambda u: u / phi(normal_z(u))
    return dict(Q=normal_z, s=lambda u: sigma(u) / (1 + D(u)), S=D,
                h=lambda x: -mp.log(x), gamma=0, orient=1)


def lognormal():
    Q = lambda u: mp.exp(normal_z(u))
    s = lambda u: u * mp.exp(normal_z(u)) / phi(normal_z(u))
    S = lambda u: -1 + u * (1 + normal_z(u)) / phi(normal_z(u))
    return dict(Q=Q, s=s, S=S, h=lambda x: mp.log(x) ** 2 / 2, gamma=0, orient=1)


def logistic():
    return dict(Q=lambda u: mp.log((2 - u) / u), s=lambda u: 1, S=lambda u: u / 2,
                h=lambda x: x - 1, gamma=0, orient=-1)


FAMILIES = {
    "burr": burr(),
    "reversedburr": reversed_burr(),
    "singhmaddala": singh_maddala(),
    "logsinghmaddala": log_singh_maddala(),
    "exponential": exponential(),
    "logexponential": log_exponential(),
    "normal": normal(),
    "lognormal": lognormal(),
    "logistic": logistic(),
}


def ratio(f, u, x):
    first = (f["Q"](u * x) - f["Q"](u)) / f["s"](u) - d_gamma(f["gamma"], x)
    return f["orient"] * first / f["S"](u)


def b_of(f, u):
    g = f["gamma"]
    w0 = mp.log(u)
    if g > 0:
        K = lambda w: mp.log(f["Q"](mp.exp(w)))
        return -g - mp.diff(K, w0)
    if g < 0:
        K = lambda w: mp.log(f.get("endpoint", 0) - f["Q"](mp.exp(w)))
        return -g - mp.diff(K, w0)
    Qw = lambda w: f["Q"](mp.exp(w))
    return -mp.diff(Qw, w0, 2) / mp.diff(Qw, w0)


def lit(v):
    return mp.nstr(mp.mpf(v), 25, min_fixed=1, max_fixed=0)


def main():
    out = ["// Generated by tests/oracles/catalog_oracle.py; do not edit.", ""]
    out.append("inline const QuantileOracle kQuantileOracle[] = {")
    for name, f in FAMILIES.items():
        for u in ("1e-2", "1e-4", "1e-6", "1e-12"):
            out.append(f'    {{"{name}", {u}, {lit(f["Q"](mp.mpf(u)))}}},')
    out.append("};")
    out.append("")
    out.append("inline const RatioOracle kRatioOracle[] = {")
    for name, f in FAMILIES.items():
        if f["S"] is None:
            continue
        us = ("1e-4", "1e-10") if name in ("normal", "lognormal") else ("1e-3", "1e-6")
        if name == "logexponential":
            us = ("1e-3", "1e-20")
        for u in us:
            for x in ("0.5", "2"):
                r = ratio(f, mp.mpf(u), mp.mpf(x))
                out.append(f'    {{"{name}", {u}, {x}, {lit(r)}, {lit(f["h"](mp.mpf(x)))}}},')
    out.append("};")
    out.append("")
    out.append("inline const BOracle kBOracle[] = {")
    for name, f in FAMILIES.items():
        for u in ("1e-2", "1e-4"):
            out.append(f'    {{"{name}", {u}, {lit(b_of(f, mp.mpf(u)))}}},')
    out.append("};")
    target = pathlib.Path(__file__).resolve().parents[1] / "unit" / "oracle_values.inc"
    target.write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
