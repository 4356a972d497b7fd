import itertools

from symrel.gf import field_new
from symrel.symfun import EPoly


def parse_all(texts, p, k, n):
    F = field_new(p, k)
    return [EPoly.parse(t, F, n) for t in texts]


def random_epoly(field, n, rng, density=0.5):
    terms = {}
    for alpha in itertools.product(range(field.q), repeat=n):
        if rng.random() < density:
            terms[alpha] = rng.randrange(1, field.q)
    return EPoly(field, n, terms)


def naive_elementary(field, a):
    """e_k(a) as a sum over k-subsets, straight from the definition."""
    out = []
    for k in range(1, len(a) + 1):
        s = 0
        for J in itertools.combinations(a, k):
            prod = 1
            for x in J:
                prod = field.mul(prod, x)
            s = field.add(s, prod)
        out.append(s)
    return tuple(out)
