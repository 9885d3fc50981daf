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

MOD = 1000000007


def main():
    ns = read_ints()
    if not ns or len(ns) > 32:
        sys.exit(2)
    acc = 0
    for n in ns:
        if n < 0:
            sys.exit(2)
        t = n * (n + 1) // 2
        print(t)
        acc = (acc + t) % MOD
    print(acc)


main()
