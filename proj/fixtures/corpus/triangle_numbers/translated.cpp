#include <iostream>
#include <vector>

const long long kMod = 1000000007;

std::vector<int> read_ints() {
  std::vector<int> vals;
  int x = 0;
  while (std::cin >> x) {
    vals.push_back(x);
  }
  return vals;
}

int triangle(int n) {
  return n * (n + 1) / 2;
}

int main() {
  std::vector<int> ns = read_ints();
  if (ns.empty() || ns.size() > 32) {
    return 2;
  }
  long long acc = 0;
  for (int n : ns) {
    if (n < 0) {
      return 2;
    }
    int t = triangle(n);
    std::cout << t << "\n";
    acc = (acc + t) % kMod;
  }
  std::cout << acc << "\n";
  return 0;
}
