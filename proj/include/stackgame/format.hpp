#pragma once

#include <string>

namespace stackgame {

/// Lossless decimal rendering of a double (17 significant digits, %.17g).
[[nodiscard]] std::string fmt17(double v);

}  // namespace stackgame
