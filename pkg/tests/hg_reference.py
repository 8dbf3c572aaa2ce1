"""Plain (Z-free) separability on hypergraphs, written directly from the definitions,
plus a seeded generator of small random hypergraphs."""

import random


def plain_t0(Y, x1, x2):
    return any(x1 in y and x2 not in y for y in Y)


def plain_t2(Y, x1, x2):
    return any(x1 in a and x2 in b and not (a & b) for a in Y for b in Y)


def plain_set_t0(Y, X1, X2):
    return any(X1 <= y and not (X2 & y) for y in Y)


def plain_set_t2(Y, X1, X2):
    return any(X1 <= a and X2 <= b and not (a & b) for a in Y for b in Y)


def random_hypergraph(rng: random.Random):
    X = list(range(rng.randint(2, 8)))
    Y = []
    for _ in range(rng.randint(0, 12)):
        Y.append(frozenset(x for x in X if rng.random() < rng.choice((0.2, 0.4, 0.6))))
    return X, Y
