#include <iostream>

int main() {
  long long n = 0;
  if (!(std::cin >> n)) {
    std::cout << "none\n";
    return 0;
  }
  if (n == 0) {
    std::cout << "zero\n";
  } else if (n == 1) {
    std::cout << "one\n";
  } else if (n == 2) {
    std::cout << "two\n";
  } else if (n == 3) {
    std::cout << "three\n";
  } else if (n == 4) {
    std::cout << "four\n";
  } else if (n == 5) {
    std::cout << "five\n";
  } else if (n == 6) {
    std::cout << "six\n";
  } else if (n == 7) {
    std::cout << "seven\n";
  } else {
    std::cout << "other\n";
  }
  return 0;
}
