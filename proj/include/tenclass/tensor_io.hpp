#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tenclass/tensor.hpp"

namespace tenclass {

/// Parses the tensor JSON format:
///   {"order": m, "dim": n, "format": "coo", "entries": [[[i1,...,im], v], ...]}
/// or "format": "dense" with entries as nested arrays of depth m. Indices are
/// 0-based; absent COO entries are zero. Values may be numbers or numeric
/// strings. Throws std::invalid_argument naming the offending entry for
/// duplicate indices, out-of-range indices and non-finite values (bare NaN /
/// Infinity tokens included). Extra top-level keys are ignored.
Tensor parse_tensor(std::string_view text);
Tensor tensor_from_json(const nlohmann::json& doc);
Tensor load_tensor(const std::filesystem::path& path);

/// COO document listing the nonzero entries in lexicographic order.
nlohmann::json tensor_to_json(const Tensor& a);
std::string tensor_to_string(const Tensor& a);
void save_tensor(const std::filesystem::path& path, const Tensor& a);

/// Reads a JSON document, accepting bare NaN / Infinity tokens by turning them
/// into strings so validation can report where they occur.
nlohmann::json parse_json_lenient(std::string_view text);
std::string read_file(const std::filesystem::path& path);

}  // namespace tenclass
