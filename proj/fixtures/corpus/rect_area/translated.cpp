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
  std::vector<int> vals = read_ints();
  if (vals.empty() || vals.size() % 2 != 0 || vals.size() > 64) {
    return 2;
  }
  long long total = 0;
  int best = -1;
  int best_i = -1;
  for (size_t i = 0; i < vals.size(); i += 2) {
    int w = vals[i];
    int h = vals[i + 1];
    if (w <= 0 || h <= 0) {
      return 2;
    }
    int area = w * h;
    total += area;
    if (area > best) {
      best = area;
      best_i = static_cast<int>(i / 2);
    }
  }
  std::cout << best_i << " " << best << "\n";
  std::cout << total << "\n";
  return 0;
}
