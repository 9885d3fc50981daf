import sys

tokens = sys.stdin.buffer.read().split()
try:
    n = int(tokens[0])
except (IndexError, ValueError):
    print("none")
    sys.exit(0)
names = ["zero", "one", "two", "three", "four", "five", "six", "seven"]
print(names[n] if 0 <= n < 8 else "other")
