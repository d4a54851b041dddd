// Command-line interface. Subcommands are registered as the corresponding
// library modules land; see the repository README for usage.
#include <cstdio>

int main() {
  std::puts("superdual: no subcommand given (CLI under construction)");
  return 2;
}
