#include <algorithm>
#include <climits>
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
  if (vals.empty() || vals.size() % 2 != 1) {
    return 2;
  }
  int n = static_cast<int>(vals[0]);
  if (vals[0] < 3 || vals[0] > 12 || vals.size() > 81) {
    return 2;
  }
  std::vector<std::vector<int>> g(n, std::vector<int>(n, 0));
  std::vector<int> degree(n, 0);
  for (size_t e = 1; e < vals.size(); e += 2) {
    long long u = vals[e] - 1;
    long long v = vals[e + 1] - 1;
    if (u < 0 || u >= n || v < 0 || v >= n || u == v || g[u][v]) {
      return 2;
    }
    g[u][v] = g[v][u] = 1;
    degree[u]++;
    degree[v]++;
  }
  int ans = INT_MAX;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g[i][j] == 1) {
        for (int k = j + 1; k < n; ++k) {
          if (g[i][k] == g[j][k] == 1) {
            ans = std::min(ans, degree[i] + degree[j] + degree[k] - 6);
          }
        }
      }
    }
  }
  std::cout << (ans == INT_MAX ? -1 : ans) << "\n";
  return 0;
}
