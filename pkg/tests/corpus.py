"""The 50-expression corpus shared by the parser, CLI and acceptance tests.

Half are written by hand to hit specific corners of the grammar; the rest
come from a seeded random generator, so the corpus is fixed across runs.
"""
import random

HAND_WRITTEN = [
    "ad a",
    "a ad",
    "(ad a)^2",
    "(ad a)^3",
    "2 ad^2 a^2 + ad a",
    "a a ad ad",
    "ad^2 a",
    "(ad^2 a)^2",
    "a^3 ad^3",
    "ad a - a ad",
    "-a ad + 3/4",
    "1/2 ad^2 a^2 - 2/3 ad a + 5",
    "(ad + a)^4",
    "(a - ad)^2 (a + ad)",
    "a† a",
    "a^0",
    "7",
    "-1/3",
    "((ad a)^2 + a)^2",
    "ad (a ad)^2 a",
    "3 a ad a ad - ad^2 a^2",
    "(2 ad - 1/2 a)^3",
    "a^2 ad^2 a^2 ad^2",
    "ad^3 a^2 + ad a^0 a",
    "+ad a",
]


def _random_factor(rng, depth):
    if depth == 0 and rng.random() < 0.2:
        base = f"({_random_expr(rng, depth + 1)})"
        power = rng.choice([None, None, 0, 1, 2])
    else:
        base = rng.choice(["a", "ad", "a", "ad", "a†"])
        power = rng.choice([None, None, None, 0, 1, 2, 3])
    return base if power is None else f"{base}^{power}"


def _random_term(rng, depth):
    coeff = rng.choice(["", "", "2 ", "3/2 ", "1/4 ", "5 "])
    factors = " ".join(_random_factor(rng, depth) for _ in range(rng.randint(1, 3 - depth)))
    return coeff + factors


def _random_expr(rng, depth=0):
    out = ("-" if rng.random() < 0.2 else "") + _random_term(rng, depth)
    for _ in range(rng.randint(0, 2 - depth)):
        out += rng.choice([" + ", " - "]) + _random_term(rng, depth)
    return out


def corpus():
    rng = random.Random(50)
    generated = [_random_expr(rng) for _ in range(50 - len(HAND_WRITTEN))]
    return HAND_WRITTEN + generated


CORPUS = corpus()
assert len(CORPUS) == 50
