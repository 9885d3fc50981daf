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
    if len(vals) % 2 != 1 or len(vals) > 65:
        sys.exit(2)
    limit = vals[0]
    if limit <= 0:
        sys.exit(2)
    fast = 0
    slow = 0
    best = 0
    for p in range(1, len(vals), 2):
        speed, t = vals[p], vals[p + 1]
        if speed < 0 or t < 0:
            sys.exit(2)
        t *= speed
        if t * 100 >= limit:
            fast += 1
        else:
            slow += 1
        best = max(best, t)
    print(fast, slow)
    print(best)


main()
