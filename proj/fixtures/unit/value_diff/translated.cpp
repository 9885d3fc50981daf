#include <iostream>
#include <iterator>
#include <string>

int main() {
  std::string data((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  long long lines = 0;
  for (char c : data) {
    if (c == '\n') {
      lines += 1;
    }
  }
  std::cout << data.size() << "\n";
  std::cout << lines + 1 << "\n";
  return 0;
}
