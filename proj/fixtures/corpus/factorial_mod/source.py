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


def factorial_mod(n):
    res = 1
    for i in range(2, n + 1):
        res = res * i % MOD
    return res


def main():
    ns = read_ints()
    if not ns or len(ns) > 16:
        sys.exit(2)
    for n in ns:
        if n < 0 or n > 5000:
            sys.exit(2)
    for n in ns:
        print(factorial_mod(n))


main()
