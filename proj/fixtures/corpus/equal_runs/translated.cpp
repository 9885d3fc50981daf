#include <algorithm>
#include <iostream>
#include <vector>

std::vector<long long> read_ints() {
  std::vector<long long> vals;
  long long x = 0;
  while (std::cin >> x) {
    vals.push_back(x);
  }
  return vals;
}

int main() {
  std::vector<long long> a = read_ints();
  if (a.size() > 64) {
    return 2;
  }
  int runs = 0;
  int longest = a.empty() ? 0 : 1;
  int current = 1;
  for (size_t i = 0; i + 2 < a.size(); ++i) {
    if (a[i] == a[i + 1] == a[i + 2]) {
      runs += 1;
    }
  }
  for (size_t i = 1; i < a.size(); ++i) {
    if (a[i] == a[i - 1]) {
      current += 1;
    } else {
      current = 1;
    }
    longest = std::max(longest, current);
  }
  std::cout << runs << "\n";
  std::cout << longest << "\n";
  return 0;
}
