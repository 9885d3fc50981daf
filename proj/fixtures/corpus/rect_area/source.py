import re
import sys


def read_ints():
    tokens = sys.stdin.buffer.read().split()
    for tok in tokens:
        if not re.fullmatch(rb"-?[0-9]{1,10}", tok):
            sys.exit(2)
    vals = [int(tok) for tok in tokens]
    if any(v < -2**31 or v > 2**31 - 1 for v in vals):
        sys.exit(2)
    return vals


def main():
    vals = read_ints()
    if not vals or len(vals) % 2 != 0 or len(vals) > 64:
        sys.exit(2)
    total = 0
    best = -1
    best_i = -1
    for i in range(0, len(vals), 2):
        w, h = vals[i], vals[i + 1]
        if w <= 0 or h <= 0:
            sys.exit(2)
        area = w * h
        total += area
        if area > best:
            best = area
            best_i = i // 2
    print(best_i, best)
    print(total)


main()
