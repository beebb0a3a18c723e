// One PASS/FAIL line per primary criterion; exit status 1 if any fails.
// Optional argument: a single suite name.

#include "cellab/acceptance.hpp"
#include "cellab/errors.hpp"

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  cellab::RunConfig config;
  try {
    const auto results = cellab::run_acceptance(suite, config);
    std::cout << cellab::format_text(results);
    for (const auto& r : results) {
      std::printf("  %-10s %.2f s", r.id.c_str(), r.seconds);
      if (r.time_limit > 0) std::printf(" (limit %.0f s)", r.time_limit);
      std::printf("\n");
    }
    return cellab::all_passed(results) ? 0 : 1;
  } catch (const cellab::Error& e) {
    std::cerr << "acceptance: " << e.what() << '\n';
    return 2;
  }
}
