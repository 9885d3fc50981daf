"""Writes seeds/sampled_<k>.txt for every corpus pair.

Each pair keeps three hand-written examples (seed_*.txt) and gets three
inputs drawn uniformly from its documented input constraints, so seed
composition follows one rule for the whole corpus.
"""

import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent / "corpus"
SAMPLES = 3


def ints(rng, k, lo, hi):
    return [rng.randint(lo, hi) for _ in range(k)]


def range_count(rng):
    lo, hi = sorted(ints(rng, 2, -100, 100))
    return [lo, hi] + ints(rng, rng.randint(1, 10), -100, 100)


def min_trio(rng):
    n = rng.randint(3, 8)
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.5]
    return [n] + [x for e in edges[:40] for x in e]


def rising_triples(rng):
    return ints(rng, rng.randint(3, 12), -50, 50)


def letter_grades(rng):
    return ints(rng, rng.randint(1, 10), 0, 100)


def equal_runs(rng):
    return ints(rng, rng.randint(3, 12), 0, 3)


def points_in_box(rng):
    x1, x2 = sorted(rng.sample(range(-20, 21), 2))
    y1, y2 = sorted(rng.sample(range(-20, 21), 2))
    return [x1, y1, x2, y2] + ints(rng, 2 * rng.randint(1, 8), -25, 25)


def speed_limit(rng):
    vals = [rng.randint(1, 10**9)]
    for _ in range(rng.randint(1, 5)):
        vals += ints(rng, 2, 0, 10**5)
    return vals


def min_speed(rng):
    return [rng.randint(1, 10**5)] + ints(rng, rng.randint(1, 8), 1, 10**5)


def adjacent_product(rng):
    return ints(rng, rng.randint(2, 10), -(10**5), 10**5)


def sum_squares(rng):
    return ints(rng, rng.randint(1, 10), -(10**5), 10**5)


def factorial_mod(rng):
    return ints(rng, rng.randint(1, 4), 0, 5000)


def rect_area(rng):
    return ints(rng, 2 * rng.randint(1, 5), 1, 10**5)


def triangle_numbers(rng):
    return ints(rng, rng.randint(1, 5), 0, 10**5)


GENERATORS = {f.__name__: f for f in [
    range_count, min_trio, rising_triples, letter_grades, equal_runs, points_in_box,
    speed_limit, min_speed, adjacent_product, sum_squares, factorial_mod, rect_area,
    triangle_numbers]}


def main():
    for name, gen in sorted(GENERATORS.items()):
        rng = random.Random(f"seeds:{name}")
        for k in range(SAMPLES):
            path = ROOT / name / "seeds" / f"sampled_{k}.txt"
            path.write_text(" ".join(str(v) for v in gen(rng)) + "\n")
    missing = sorted(p.name for p in ROOT.iterdir() if p.is_dir() and p.name not in GENERATORS)
    if missing:
        raise SystemExit(f"no generator for {missing}")


if __name__ == "__main__":
    main()
