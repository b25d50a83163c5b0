#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jcmsim::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

// Exit codes: 0 success, 1 runtime error, 2 usage / validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "0.5", "0.5,0.1", "(0.5,0.1)", "0.5+0.1i", "-0.2i". Throws std::invalid_argument.
std::complex<double> parse_complex(std::string_view text);

// Six significant digits, locale independent.
std::string format_number(double v);

}  // namespace jcmsim::cli
