import sys

tokens = sys.stdin.buffer.read().split()
try:
    n = int(tokens[0])
except (IndexError, ValueError):
    n = 0
print(n)
