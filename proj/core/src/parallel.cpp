#include "somor/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace somor {

int thread_budget() {
  int budget = static_cast<int>(std::thread::hardware_concurrency());
  if (budget <= 0) budget = 1;
  if (const char* env = std::getenv("SOMOR_THREADS")) {
    try {
      budget = std::min(budget, std::max(1, std::stoi(env)));
    } catch (const std::exception&) {
      // Ignore unparsable values; keep the hardware default.
    }
  }
  return budget;
}

}  // namespace somor
