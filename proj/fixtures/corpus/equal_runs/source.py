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
    runs = 0
    longest = 1 if a else 0
    current = 1
    for i in range(len(a) - 2):
        if a[i] == a[i + 1] == a[i + 2]:
            runs += 1
    for i in range(1, len(a)):
        if a[i] == a[i - 1]:
            current += 1
        else:
            current = 1
        longest = max(longest, current)
    print(runs)
    print(longest)


main()
