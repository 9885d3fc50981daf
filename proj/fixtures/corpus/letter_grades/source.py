import re
import sys


def read_ints():
    tokens = sys.stdin.buffer.read().split()
    for tok in tokens:
        if not re.fullmatch(rb"-?[0-9]{1,9}", tok):
            sys.exit(2)
    return [int(tok) for tok in tokens]


CUTOFFS = [(90, "A"), (80, "B"), (70, "C"), (60, "D")]


def grade(s):
    for cutoff, letter in CUTOFFS:
        if cutoff <= s < cutoff + 10 or (letter == "A" and s == 100):
            return letter
    return "F"


def main():
    scores = read_ints()
    if not scores or len(scores) > 64:
        sys.exit(2)
    for s in scores:
        if s < 0 or s > 100:
            sys.exit(2)
    counts = {"A": 0, "B": 0, "C": 0, "D": 0, "F": 0}
    letters = []
    for s in scores:
        g = grade(s)
        counts[g] += 1
        letters.append(g)
    print("".join(letters))
    print(" ".join(f"{k}={v}" for k, v in counts.items()))


main()
