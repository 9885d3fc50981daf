#include <iostream>
#include <string>
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
  int count = 0;
  std::vector<size_t> peaks;
  for (size_t i = 1; i + 1 < a.size(); ++i) {
    if (a[i - 1] < a[i] < a[i + 1]) {
      count += 1;
      peaks.push_back(i);
    }
  }
  std::cout << count << "\n";
  std::string line;
  for (size_t p = 0; p < peaks.size(); ++p) {
    if (p > 0) {
      line += " ";
    }
    line += std::to_string(peaks[p]);
  }
  std::cout << line << "\n";
  return 0;
}
