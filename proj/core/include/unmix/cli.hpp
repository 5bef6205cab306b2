#pragma once

#include <string>
#include <vector>

namespace unmix::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kNumericalError = 3;

// Runs one subcommand (svd, scree, btem, tpls, cls, mcr, simplisma, synth,
// eval, pipeline) and returns the process exit status. Never calls exit(),
// so it is callable in-process from tests.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace unmix::cli
