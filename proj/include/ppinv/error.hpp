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

#ifndef PPINV_ERROR_HPP
#define PPINV_ERROR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ppinv {

enum class Errc {
    not_prime,
    not_irreducible,
    degree_mismatch,
    tower_mismatch,
    division_by_zero,
    desk_scale_exceeded,
    not_permutation,
    duplicate_node,
    not_bijective_on_domain,
    singular_basis_system,
    singular_dickson,
    hypothesis_violated,
    not_bijective_on_subspace,
    no_solution,
    no_suitable_root,
    zero_c,
    trace_zero,
    bad_exponent,
    no_branch_applies,
    parse_error,
    overflow,
    internal
};

/// Stable snake_case name used in CLI output.
std::string_view errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what, std::optional<std::uint32_t> witness = std::nullopt)
        : std::runtime_error(what), code_(code), witness_(witness) {}

    Errc code() const noexcept { return code_; }

    /// Element code that demonstrates the failure, when one exists.
    std::optional<std::uint32_t> witness() const noexcept { return witness_; }

   private:
    Errc code_;
    std::optional<std::uint32_t> witness_;
};

}  // namespace ppinv

#endif
