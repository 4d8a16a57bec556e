#include "driftlab/detect.hpp"

#include <cmath>
#include <string>

#include "driftlab/error.hpp"

namespace driftlab {

void SignificanceConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
}

}  // namespace driftlab
