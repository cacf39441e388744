"""Independent brute-force oracles for the engine tests.

Everything here avoids the Groebner machinery entirely: membership and
dimensions are decided by row-reducing Macaulay-style coefficient matrices
over F_p, and counts come from explicit monomial enumeration.
"""

from itertools import combinations_with_replacement


def monomials_upto(nvars, maxdeg):
    out = []
    for d in range(maxdeg + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def _row_reduce(rows, p):
    """Echelonize dict-rows {monomial: coeff} over F_p.

    Returns {pivot_monomial: row} with each row monic at its pivot. The
    pivot of a row is its degrevlex-largest monomial, so with a
    degree-compatible order a pivot of degree <= t certifies the whole row
    lives in degree <= t.
    """
    def keyf(e):
        return (sum(e), tuple(-x for x in reversed(e)))

    echelon = {}
    for row in rows:
        row = dict(row)
        while row:
            pivot = max(row, key=keyf)
            hit = echelon.get(pivot)
            if hit is None:
                inv = pow(row[pivot], p - 2, p)
                row = {k: v * inv % p for k, v in row.items()}
                echelon[pivot] = row
                break
            c = row[pivot]
            row = {k: (row.get(k, 0) - c * hit.get(k, 0)) % p
                   for k in set(row) | set(hit)}
            row = {k: v for k, v in row.items() if v}
    return echelon


def _reduce_against(row, echelon, p):
    def keyf(e):
        return (sum(e), tuple(-x for x in reversed(e)))

    row = dict(row)
    while row:
        pivot = max(row, key=keyf)
        hit = echelon.get(pivot)
        if hit is None:
            return row
        c = row[pivot]
        row = {k: (row.get(k, 0) - c * hit.get(k, 0)) % p
               for k in set(row) | set(hit)}
        row = {k: v for k, v in row.items() if v}
    return row


def macaulay_rows(gens, nvars, workdeg):
    """All monomial multiples mu*g with total degree <= workdeg."""
    rows = []
    for g in gens:
        gdeg = max(sum(e) for e in g.terms)
        for mu in monomials_upto(nvars, workdeg - gdeg):
            rows.append({tuple(a + b for a, b in zip(mu, e)): c
                         for e, c in g.terms.items()})
    return rows


def oracle_in_ideal(f, gens, p, workdeg):
    """True if f lies in the span of multiples up to workdeg (a certificate
    of membership; False only bounds membership at this working degree)."""
    nvars = len(next(iter(f.terms)))
    echelon = _row_reduce(macaulay_rows(gens, nvars, workdeg), p)
    return not _reduce_against(dict(f.terms), echelon, p)


def oracle_quotient_dim_bounded(gens, nvars, p, t, slack=3):
    """dim_k (k[x]/U) in degrees <= t, by rank computation.

    Works at degree t+slack and counts pivots of degree <= t; exact for
    homogeneous input, and exact for inhomogeneous input once the slack
    covers the cancellation range (callers pick generous slack).
    """
    echelon = _row_reduce(macaulay_rows(gens, nvars, t + slack), p)
    inside = sum(1 for piv in echelon if sum(piv) <= t)
    total = len(monomials_upto(nvars, t))
    return total - inside
