import sys

sys.stdin.buffer.read()
print("hello")
