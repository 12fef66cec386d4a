#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "gpw/pde_operator.hpp"

namespace gpw {

/// Key-value run configuration.
///
///     # comment
///     case = cs
///     n = 3
///     [operator]
///     order = 2
///     a20 = -1            # coefficient of d_x^2 d_y^0, closed-form expression
///     a02 = -1
///     a00 = 2*(x+y)
///     gamma = 1, 0, 1     # optional asserted quadratic form (even order > 2)
///
/// Top-level keys are stored verbatim; the [operator] section is turned
/// into an OperatorFamily. Throws std::invalid_argument with a line number.
struct ConfigFile {
  std::map<std::string, std::string> settings;
  std::optional<OperatorFamily> op;
};

ConfigFile parse_config(std::string_view text);
ConfigFile load_config(const std::string& path);

}  // namespace gpw
