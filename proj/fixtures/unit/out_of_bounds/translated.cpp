#include <iostream>
#include <vector>

int main() {
  std::vector<int> values = {3, 5, 7};
  int last = static_cast<int>(values.size());
  std::cout << values.at(last) << "\n";
  return 0;
}
