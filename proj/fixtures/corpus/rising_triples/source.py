import re
import sys


def read_ints():
    tokens = sys.stdin.buffer.read().split()
    for tok in tokens:
        if not re.fullmatch(rb"-?[0-9]{1,9}", tok):
            sys.exit(2)
    return [int(tok) for tok in tokens]


def main():
    a = read_ints()
    if len(a) > 64:
        sys.exit(2)
    count = 0
    peaks = []
    for i in range(1, len(a) - 1):
        if a[i - 1] < a[i] < a[i + 1]:
            count += 1
            peaks.append(i)
    print(count)
    print(" ".join(str(p) for p in peaks))


main()
