#include "bmspec/verify/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (const char* env = std::getenv("BMSPEC_SEED")) seed = std::stoull(env);
  if (argc > 1) seed = std::stoull(argv[1]);
  std::cout << "acceptance seed " << seed << "\n";
  const auto results = bmspec::verify::run_acceptance(seed, std::cout);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
