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
  std::vector<long long> vals = read_ints();
  if (vals.size() < 2 || vals.size() > 64) {
    return 2;
  }
  long long lo = vals[0];
  long long hi = vals[1];
  if (lo > hi) {
    return 2;
  }
  long long inside = 0;
  long long total = 0;
  for (size_t i = 2; i < vals.size(); ++i) {
    long long x = vals[i];
    if (lo <= x <= hi) {
      inside += 1;
      total += x;
    }
  }
  long long outside = static_cast<long long>(vals.size()) - 2 - inside;
  std::cout << inside << " " << total << "\n";
  std::cout << outside << "\n";
  return 0;
}
