#include <iostream>
#include <vector>

std::vector<int> read_ints() {
  std::vector<int> vals;
  int x = 0;
  while (std::cin >> x) {
    vals.push_back(x);
  }
  return vals;
}

int main() {
  std::vector<int> a = read_ints();
  if (a.size() > 64) {
    return 2;
  }
  int total = 0;
  for (int x : a) {
    total += x * x;
  }
  std::cout << total << "\n";
  std::cout << total % 1000 << "\n";
  return 0;
}
