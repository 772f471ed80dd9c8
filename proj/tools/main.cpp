#include <cstdio>

int main() {
  std::puts("fresco: not yet wired");
  return 0;
}
