#include "trigsum/errors.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace trigsum {

UnknownFunction::UnknownFunction(const std::string& name, std::vector<std::string> available)
    : Error(fmt::format("unknown function '{}' (available: {})", name,
                        fmt::join(available, ", "))),
      available_(std::move(available)) {}

NonFiniteSample::NonFiniteSample(double t)
    : Error(fmt::format("integrand is not finite at t = {:.17g}", t)), t_(t) {}

}  // namespace trigsum
