#pragma once

// The mcoe command line: subcommands validate, analyze, slide, pipeline,
// bernoullize, verify and match. Every command prints one JSON report on
// stdout. Exit codes: 0 pass, 1 verification failure, 2 input error.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mcoe/chainspec_io.hpp"

namespace mcoe::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

struct VerifyOptions {
  std::size_t level = 1;
  std::uint64_t seed = 0;
  std::size_t samples = 2000;
};

/// The property suite behind `verify`. The report has "checks" (name, ok,
/// optional witness) and "status".
Json verify_report(const MarkovSpec& spec, const VerifyOptions& options);

}  // namespace mcoe::cli
