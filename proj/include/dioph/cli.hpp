// Copyright 2026 The dioph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The dioph command line: cf, scan, sum, construct, plan, density.

#ifndef DIOPH_CLI_HPP_
#define DIOPH_CLI_HPP_

#include <iosfwd>
#include <map>
#include <string>

#include "dioph/numkernel.hpp"

namespace dioph::cli {

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kInfeasible = 2,          // infeasible plan or violated hypothesis
  kPrecisionExhausted = 3,  // output written but partly uncertified
};

// Environment variable holding the default precision ceiling in bits.
inline constexpr const char* kMaxBitsEnv = "DIOPH_MAX_BITS";

// Parses "key = value" lines; '#' starts a comment. Throws ParseError.
std::map<std::string, std::string> parse_config(std::istream& in);

// "pi", "sqrt2", "golden", "cf-file:PATH" or "decimal-file:PATH".
// A decimal file holds the digits on one line and an absolute error bound
// on another, either bare or as "value = ..." / "error = ...".
RefinableReal load_alpha(const std::string& source, const PrecisionPolicy& policy);

// Runs one command. Documents go to `out` unless --out is given; summaries
// and diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dioph::cli

#endif  // DIOPH_CLI_HPP_
