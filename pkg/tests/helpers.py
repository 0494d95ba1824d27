"""Shared generators and oracles for the test suite."""

import random
from fractions import Fraction

from symgal.exactcore import Matrix, RatFunc, UniPoly
from symgal.lvhier import monomial_index
from symgal.vfields import MvPoly, VerticalField


def rand_poly(rng, deg, lo=-3, hi=3, nonzero=False):
    while True:
        p = UniPoly([rng.randint(lo, hi) for _ in range(deg + 1)])
        if p or not nonzero:
            return p


def rand_ratfunc(rng, deg=2, lo=-3, hi=3, density=0.7):
    if rng.random() > density:
        return RatFunc(UniPoly())
    num = rand_poly(rng, rng.randint(0, deg), lo, hi)
    den = rand_poly(rng, rng.randint(0, deg), lo, hi, nonzero=True)
    return RatFunc(num, den)


def random_system(rng, n=None, deg=2):
    """Matrix of rational functions with numerator/denominator degrees <= deg, coefficients in [-3, 3]."""
    n = n or rng.choice((2, 3))
    return Matrix(n, n, [rand_ratfunc(rng, deg) for _ in range(n * n)])


def random_suite(count, seed=20240601):
    rng = random.Random(seed)
    return [random_system(rng) for _ in range(count)]


def random_field(rng, n, m, deg=1, density=0.5):
    idx = monomial_index(n, m)
    comps = []
    for _ in range(n):
        terms = {e: rand_ratfunc(rng, deg) for e in idx.exponents if rng.random() < density}
        comps.append(MvPoly(n, terms))
    return VerticalField(comps)


def q(v):
    return Fraction(v)


def bracket_oracle(M, Y):
    """[X, Y] expanded term by term from the definition, without the library's bracket.

    Component j is dP_j/dx + sum_k (A y)_k dP_j/dy_k - sum_k P_k A_jk.
    """
    n = M.rows
    out = []
    for j in range(n):
        P = Y.components[j]
        terms = {}

        def add(exp, c):
            v = terms.get(exp, RatFunc(UniPoly())) + c
            terms[exp] = v

        for exp, c in P.terms.items():
            add(exp, c.derivative())
            for k in range(n):
                if not exp[k]:
                    continue
                for l in range(n):
                    a = M[k, l]
                    if not a:
                        continue
                    e = list(exp)
                    e[k] -= 1
                    e[l] += 1
                    add(tuple(e), a * c * exp[k])
        for k in range(n):
            a = M[j, k]
            if not a:
                continue
            for exp, c in Y.components[k].terms.items():
                add(exp, -(a * c))
        out.append(MvPoly(n, terms))
    return VerticalField(out)
