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
    if len(vals) < 4 or len(vals) % 2 != 0 or len(vals) > 68:
        sys.exit(2)
    x1, y1, x2, y2 = vals[:4]
    if x1 >= x2 or y1 >= y2:
        sys.exit(2)
    inside = []
    border = 0
    for p in range(4, len(vals), 2):
        x, y = vals[p], vals[p + 1]
        if x1 < x < x2 and y1 < y < y2:
            inside.append((x, y))
        elif x1 <= x <= x2 and y1 <= y <= y2:
            border += 1
    print(len(inside), border)
    for x, y in inside:
        print(x, y)


main()
