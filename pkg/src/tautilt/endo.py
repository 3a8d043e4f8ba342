"""Finite dimensional algebras given by structure constants.

Used to decide locality of endomorphism rings and to count the pairwise
non-isomorphic indecomposable summands of an object: if
``M = N_1^k_1 + ... + N_t^k_t`` then ``End(M)/rad`` is a product of ``t``
simple algebras, so ``t`` is the number of primitive idempotents of the
center of ``End(M)/rad``.
"""

from __future__ import annotations

import random
from typing import Sequence

import sympy

from .algebra import radical_from_structure
from .exact import ONE, ZERO, Echelon, Q, sparse_kernel, to_q


class IdempotentSearchExhausted(RuntimeError):
    pass


def _vec_mul(struct, x: Sequence, y: Sequence) -> list:
    m = len(struct)
    out = [ZERO] * m
    for i, xi in enumerate(x):
        if not xi:
            continue
        si = struct[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, v in enumerate(si[j]):
                if v:
                    out[k] += c * v
    return out


def semisimple_quotient(struct) -> list:
    """Structure constants of ``E / rad E`` on a complement of the radical."""
    m = len(struct)
    rad = radical_from_structure(struct)
    ech = Echelon({k: to_q(v) for k, v in enumerate(r) if v} for r in rad)
    comp = []
    for k in range(m):
        if ech.add({k: ONE}) is not None:
            comp.append(k)
    # reducer: express vectors modulo rad in the complement coordinates
    red = Echelon({k: to_q(v) for k, v in enumerate(r) if v} for r in rad)
    tag0 = m
    for t, k in enumerate(comp):
        red.add({k: ONE, tag0 + t: ONE})

    def reduce(vec):
        rem = red.reduce({k: to_q(v) for k, v in enumerate(vec) if v})
        out = [ZERO] * len(comp)
        for k, v in rem.items():
            out[k - tag0] = -v
        return out

    q = []
    for a in comp:
        row = []
        for b in comp:
            row.append(reduce(struct[a][b]))
        q.append(row)
    return q, len(rad)


def center(struct) -> list[list]:
    """Basis of the center of an algebra with structure constants ``struct``."""
    m = len(struct)
    rows = []
    for j in range(m):
        for k in range(m):
            # (z b_j - b_j z)_k = sum_i z_i (c[i][j][k] - c[j][i][k])
            r = {}
            for i in range(m):
                v = to_q(struct[i][j][k]) - to_q(struct[j][i][k])
                if v:
                    r[i] = v
            if r:
                rows.append(r)
    return [[z.get(i, ZERO) for i in range(m)] for z in sparse_kernel(rows, m)]


def _identity(struct) -> list:
    """The unit element: solve ``u b_j = b_j`` for all ``j``."""
    from .exact import solve

    m = len(struct)
    eqs = []
    rhs = []
    for j in range(m):
        for k in range(m):
            eqs.append([to_q(struct[i][j][k]) for i in range(m)])
            rhs.append(ONE if j == k else ZERO)
    res = solve(eqs, rhs, m)
    if res is None:
        raise ValueError("algebra has no unit")
    return res[0]


def _minimal_polynomial(struct, z: list, unit: list) -> list:
    """Coefficients (low to high) of the monic minimal polynomial of ``z``."""
    powers = [unit]
    ech = Echelon()
    tagged_tag0 = len(struct)
    ech.add({**{k: v for k, v in enumerate(unit) if v}, tagged_tag0: ONE})
    while True:
        p = _vec_mul(struct, powers[-1], z)
        d = len(powers)
        rem = ech.reduce({k: v for k, v in enumerate(p) if v})
        if all(k >= tagged_tag0 for k in rem):
            # p = sum c_i z^i with c_i = -rem[tag + i]
            coeffs = [-rem.get(tagged_tag0 + i, ZERO) for i in range(d)]
            return [-c for c in coeffs] + [ONE]
        powers.append(p)
        ech.add({**{k: v for k, v in enumerate(p) if v}, tagged_tag0 + d: ONE})


def _poly_eval(struct, coeffs, z, unit):
    acc = [ZERO] * len(unit)
    for c in reversed(coeffs):
        acc = _vec_mul(struct, acc, z)
        if c:
            acc = [a + c * u for a, u in zip(acc, unit)]
    return acc


def primitive_central_idempotents(struct, seed: int = 0, tries: int = 64) -> list[list]:
    """Primitive idempotents of a commutative semisimple algebra.

    A random element whose minimal polynomial has full degree generates the
    algebra; its pairwise coprime irreducible factors give the idempotents
    through the Chinese remainder theorem.
    """
    m = len(struct)
    if m == 0:
        return []
    unit = _identity(struct)
    rng = random.Random(seed)
    x = sympy.Symbol("x")
    for _ in range(tries):
        z = [Q(rng.randint(-9, 9)) for _ in range(m)]
        coeffs = _minimal_polynomial(struct, z, unit)
        if len(coeffs) - 1 < m:
            continue
        poly = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(coeffs)], x, domain="QQ")
        _, factors = sympy.factor_list(poly)
        if any(e > 1 for _, e in factors):
            raise ValueError("algebra is not semisimple")
        polys = [sympy.Poly(f, x, domain="QQ") for f, _ in factors]
        idems = []
        for k, f in enumerate(polys):
            rest = sympy.Poly(1, x, domain="QQ")
            for j, g in enumerate(polys):
                if j != k:
                    rest = rest * g
            # s * rest + t * f = 1 ; e = s * rest is 1 mod f and 0 mod rest
            s, _, h = sympy.gcdex(rest, f)
            e_poly = (s * rest).rem(poly)
            c = [to_q(str(v)) for v in reversed(e_poly.all_coeffs())]
            idems.append(_poly_eval(struct, c, z, unit))
        total = [sum(col, ZERO) for col in zip(*idems)]
        if total != unit:
            raise AssertionError("central idempotents do not sum to 1")
        for e in idems:
            if _vec_mul(struct, e, e) != e:
                raise AssertionError("constructed element is not idempotent")
        return idems
    raise IdempotentSearchExhausted(f"no generating element found in {tries} tries")


def count_simple_components(struct, seed: int = 0) -> int:
    """Number of simple factors of ``E / rad E``."""
    if not struct:
        return 0
    q, _ = semisimple_quotient(struct)
    z = center(q)
    if not z:
        return 0
    # structure constants of the center in the basis z
    flat = z
    ech = Echelon()
    tag0 = len(q)
    for t, v in enumerate(flat):
        ech.add({**{k: x for k, x in enumerate(v) if x}, tag0 + t: ONE})

    def coords(vec):
        rem = ech.reduce({k: x for k, x in enumerate(vec) if x})
        out = [ZERO] * len(flat)
        for k, v in rem.items():
            out[k - tag0] = -v
        return out

    zs = [[coords(_vec_mul(q, a, b)) for b in flat] for a in flat]
    return len(primitive_central_idempotents(zs, seed=seed))


def is_local(struct) -> bool:
    """True iff ``E / rad E`` is a division algebra of dimension one (i.e. K)."""
    if not struct:
        return False
    rad = radical_from_structure(struct)
    return len(struct) - len(rad) == 1
