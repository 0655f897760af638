// Copyright 2026 The gfp Authors
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


#ifndef GFP_CLI_HPP_
#define GFP_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace gfp {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitParse = 4,
};

// Runs one `gfp` command. `args` excludes the program name. Data goes to
// `out` (or the requested files), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "lo:hi:step" ranges (inclusive within 1e-12) and comma lists thereof.
std::vector<double> parse_real_grid(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace gfp

#endif  // GFP_CLI_HPP_
