#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "harmvol/homology.hpp"

namespace harmvol {

/// Reads {"g": int, "terms": [{"coeff": int, "factors": [["x"|"y", i], …]}]}.
/// The degree is the common length of the factor lists (3 when there are no
/// terms). Throws ParseError naming the offending location.
HTensor parse_tensor(std::string_view text);
HTensor read_tensor_file(const std::filesystem::path& path);

/// Inverse of parse_tensor, terms in canonical order.
std::string tensor_to_json(const HTensor& t, int indent = -1);

}  // namespace harmvol
