#include <algorithm>
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
  if (vals.size() % 2 != 1 || vals.size() > 65) {
    return 2;
  }
  int limit = vals[0];
  if (limit <= 0) {
    return 2;
  }
  int fast = 0;
  int slow = 0;
  int best = 0;
  for (size_t p = 1; p < vals.size(); p += 2) {
    int speed = vals[p];
    int t = vals[p + 1];
    if (speed < 0 || t < 0) {
      return 2;
    }
    t *= speed;
    if (t * 100 >= limit) {
      fast += 1;
    } else {
      slow += 1;
    }
    best = std::max(best, t);
  }
  std::cout << fast << " " << slow << "\n";
  std::cout << best << "\n";
  return 0;
}
