#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ckalg::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

// Entry point of the ckalg tool. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ckalg::cli
