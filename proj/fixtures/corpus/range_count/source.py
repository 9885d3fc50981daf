import re
import sys


def read_ints():
    tokens = sys.stdin.buffer.read().split()
    for tok in tokens:
        if not re.fullmatch(rb"-?[0-9]{1,9}", tok):
            sys.exit(2)
    return [int(tok) for tok in tokens]


def main():
    vals = read_ints()
    if len(vals) < 2 or len(vals) > 64:
        sys.exit(2)
    lo, hi = vals[0], vals[1]
    if lo > hi:
        sys.exit(2)
    inside = 0
    total = 0
    for x in vals[2:]:
        if lo <= x <= hi:
            inside += 1
            total += x
    print(inside, total)
    print(len(vals) - 2 - inside)


main()
