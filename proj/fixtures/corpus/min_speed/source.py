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



def can_arrive(dist, hour100, speed):
    t = 0
    for d in dist[:-1]:
        t += (d + speed - 1) // speed
    t *= speed
    return (t + dist[-1]) * 100 <= hour100 * speed


def main():
    vals = read_ints()
    if len(vals) < 2 or len(vals) > 21:
        sys.exit(2)
    hour100, dist = vals[0], vals[1:]
    if hour100 < 1 or hour100 > 10**9 or any(d < 1 or d > 10**5 for d in dist):
        sys.exit(2)
    lo, hi = 1, 10**7
    ans = -1
    while lo <= hi:
        mid = (lo + hi) // 2
        if can_arrive(dist, hour100, mid):
            ans = mid
            hi = mid - 1
        else:
            lo = mid + 1
    print(ans)


main()
