#include <iostream>
#include <utility>
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
  if (vals.size() < 4 || vals.size() % 2 != 0 || vals.size() > 68) {
    return 2;
  }
  long long x1 = vals[0];
  long long y1 = vals[1];
  long long x2 = vals[2];
  long long y2 = vals[3];
  if (x1 >= x2 || y1 >= y2) {
    return 2;
  }
  std::vector<std::pair<long long, long long>> inside;
  int border = 0;
  for (size_t p = 4; p < vals.size(); p += 2) {
    long long x = vals[p];
    long long y = vals[p + 1];
    if (x1 < x < x2 && y1 < y < y2) {
      inside.emplace_back(x, y);
    } else if (x1 <= x && x <= x2 && y1 <= y && y <= y2) {
      border += 1;
    }
  }
  std::cout << inside.size() << " " << border << "\n";
  for (const auto& [x, y] : inside) {
    std::cout << x << " " << y << "\n";
  }
  return 0;
}
