#include <iostream>
#include <vector>

const int kMod = 1000000007;

std::vector<int> read_ints() {
  std::vector<int> vals;
  int x = 0;
  while (std::cin >> x) {
    vals.push_back(x);
  }
  return vals;
}

int mul_mod(int a, int b) {
  return a * b % kMod;
}

int factorial_mod(int n) {
  int res = 1;
  for (int i = 2; i <= n; ++i) {
    res = mul_mod(res, i);
  }
  return res;
}

int main() {
  std::vector<int> ns = read_ints();
  if (ns.empty() || ns.size() > 16) {
    return 2;
  }
  for (int n : ns) {
    if (n < 0 || n > 5000) {
      return 2;
    }
  }
  for (int n : ns) {
    std::cout << factorial_mod(n) << "\n";
  }
  return 0;
}
