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
    if not vals or len(vals) % 2 != 1:
        sys.exit(2)
    n = vals[0]
    if n < 3 or n > 12 or len(vals) > 81:
        sys.exit(2)
    g = [[0] * n for _ in range(n)]
    degree = [0] * n
    for e in range(1, len(vals), 2):
        u, v = vals[e] - 1, vals[e + 1] - 1
        if not (0 <= u < n and 0 <= v < n) or u == v or g[u][v]:
            sys.exit(2)
        g[u][v] = g[v][u] = 1
        degree[u] += 1
        degree[v] += 1
    ans = float("inf")
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] == 1:
                for k in range(j + 1, n):
                    if g[i][k] == g[j][k] == 1:
                        ans = min(ans, degree[i] + degree[j] + degree[k] - 6)
    print(-1 if ans == float("inf") else ans)


main()
