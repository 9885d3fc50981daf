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

bool can_arrive(const std::vector<int>& dist, int hour100, int speed) {
  int t = 0;
  for (size_t i = 0; i + 1 < dist.size(); ++i) {
    t += (dist[i] + speed - 1) / speed;
  }
  t *= speed;
  return (t + dist.back()) * 100 <= hour100 * speed;
}

int main() {
  std::vector<int> vals = read_ints();
  if (vals.size() < 2 || vals.size() > 21) {
    return 2;
  }
  int hour100 = vals[0];
  std::vector<int> dist(vals.begin() + 1, vals.end());
  if (hour100 < 1 || hour100 > 1000000000) {
    return 2;
  }
  for (int d : dist) {
    if (d < 1 || d > 100000) {
      return 2;
    }
  }
  int lo = 1;
  int hi = 10000000;
  int ans = -1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (can_arrive(dist, hour100, mid)) {
      ans = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  std::cout << ans << "\n";
  return 0;
}
