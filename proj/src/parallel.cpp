#include "stackgame/parallel.hpp"

#include <cstdlib>
#include <string>

namespace stackgame {

int thread_cap() {
  if (const char* env = std::getenv("STACKGAME_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace stackgame
