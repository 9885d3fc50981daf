#include <iostream>

int main() {
  long long n = 0;
  if (!(std::cin >> n)) {
    n = 0;
  }
  if (n > 0 && n < 0) {
    std::cout << "impossible\n";
    n = -n;
    n = n * 2;
    std::cout << n << "\n";
  }
  std::cout << n << "\n";
  return 0;
}
