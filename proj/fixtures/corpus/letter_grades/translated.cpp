#include <iostream>
#include <map>
#include <string>
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

const std::vector<std::pair<int, char>> kCutoffs = {{90, 'A'}, {80, 'B'}, {70, 'C'}, {60, 'D'}};

char grade(long long s) {
  for (const auto& [cutoff, letter] : kCutoffs) {
    if (cutoff <= s < cutoff + 10 || (letter == 'A' && s == 100)) {
      return letter;
    }
  }
  return 'F';
}

int main() {
  std::vector<long long> scores = read_ints();
  if (scores.empty() || scores.size() > 64) {
    return 2;
  }
  for (long long s : scores) {
    if (s < 0 || s > 100) {
      return 2;
    }
  }
  std::map<char, int> counts = {{'A', 0}, {'B', 0}, {'C', 0}, {'D', 0}, {'F', 0}};
  std::string letters;
  for (long long s : scores) {
    char g = grade(s);
    counts[g] += 1;
    letters += g;
  }
  std::cout << letters << "\n";
  std::string sep;
  for (char k : std::string("ABCDF")) {
    std::cout << sep << k << "=" << counts[k];
    sep = " ";
  }
  std::cout << "\n";
  return 0;
}
