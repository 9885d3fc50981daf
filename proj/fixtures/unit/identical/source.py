import sys

data = sys.stdin.buffer.read()
print(len(data))
print(data.count(b"\n"))
