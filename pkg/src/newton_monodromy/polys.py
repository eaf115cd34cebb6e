"""Sparse integer Laurent polynomials in one variable t.

Represented as dicts mapping exponent -> nonzero integer coefficient.
Negative exponents are allowed in intermediates; final results assert
them away where the caller requires a plain polynomial.
"""

from __future__ import annotations

from math import comb


def pzero():
    return {}


def pconst(c):
    return {0: c} if c else {}


def pclean(p):
    return {e: c for e, c in p.items() if c}


def padd(*polys):
    out = {}
    for p in polys:
        for e, c in p.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pscale(c, p):
    if c == 0:
        return {}
    return {e: c * x for e, x in p.items()}


def pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pshift(p, k):
    """Multiply by t^k (k may be negative)."""
    return {e + k: c for e, c in p.items()}


def t2m1_power(m):
    """(t^2 - 1)^m as a sparse polynomial."""
    if m < 0:
        raise ValueError("negative power")
    return {2 * j: (-1) ** (m - j) * comb(m, j) for j in range(m + 1)}


def one_minus_t_power(m):
    """(1 - t)^m as a sparse polynomial."""
    if m < 0:
        raise ValueError("negative power")
    return {j: (-1) ** j * comb(m, j) for j in range(m + 1)}


def peval_one(p):
    return sum(p.values())


def pdegree(p):
    return max(p) if p else None


def pmin_degree(p):
    return min(p) if p else None


def pcoeff(p, e):
    return p.get(e, 0)


def pstr(p, var="t"):
    if not p:
        return "0"
    parts = []
    for e in sorted(p):
        c = p[e]
        if e == 0:
            term = str(c)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{c}*{mono}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += " + " + term if not term.startswith("-") else " - " + term[1:]
    return out
