// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lemmagraph::testing {

/// Reads RFC 4180 records (quoted fields, doubled quotes, CRLF or LF ends).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace lemmagraph::testing
