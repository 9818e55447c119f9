/*
   Copyright 2026 The ppinv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PPINV_CLI_HPP
#define PPINV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ppinv::cli {

/// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_false = 1;
inline constexpr int exit_usage = 2;

/// Runs one command line (without the program name). Output is a single
/// key=value grammar on `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace ppinv::cli

#endif
