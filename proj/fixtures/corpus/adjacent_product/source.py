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
    a = read_ints()
    if len(a) < 2 or len(a) > 64:
        sys.exit(2)
    best = a[0] * a[1]
    idx = 0
    for i in range(1, len(a) - 1):
        if a[i] * a[i + 1] > best:
            best = a[i] * a[i + 1]
            idx = i
    print(idx, best)


main()
