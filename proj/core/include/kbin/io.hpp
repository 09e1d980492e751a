#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "kbin/instance.hpp"

namespace kbin {

using Json = nlohmann::ordered_json;

/// Integers as JSON numbers, other values as {"num": p, "den": q}. Numbers
/// that overflow int64 are written as strings.
Json rational_to_json(const Rational& value);

/// Accepts an integer, a float (read through its shortest decimal form), a
/// "p/q" or decimal string, or a {"num", "den"} object.
Rational rational_from_json(const Json& value);

/// {"capacity": S, "sizes": [...]}
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& value);

/// {"k": k, "bin_count": q, "bins": [[[item, copy], ...], ...]}
Json packing_to_json(const KPacking& packing);
KPacking packing_from_json(const Json& value);

Json read_json_file(const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace kbin
