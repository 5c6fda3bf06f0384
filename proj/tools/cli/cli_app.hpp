#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clickfill::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDiffers = 1;  // compare only
inline constexpr int kUsage = 2;
inline constexpr int kPipeline = 3;

// `args` excludes the program name, e.g. {"run", "--input", "a.png", ...}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace clickfill::cli
