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
  if (a.size() < 2 || a.size() > 64) {
    return 2;
  }
  int best = a[0] * a[1];
  size_t idx = 0;
  for (size_t i = 1; i + 1 < a.size(); ++i) {
    if (a[i] * a[i + 1] > best) {
      best = a[i] * a[i + 1];
      idx = i;
    }
  }
  std::cout << idx << " " << best << "\n";
  return 0;
}
