#include "stackgame/format.hpp"

#include <cstdio>

namespace stackgame {

std::string fmt17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace stackgame
