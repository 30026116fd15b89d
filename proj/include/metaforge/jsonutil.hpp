#pragma once

#include <string>

#include <json.hpp>

namespace metaforge {

// Insertion-ordered JSON is used everywhere: generated documents control
// their key order explicitly, and fixtures round-trip unchanged.
using Json = nlohmann::ordered_json;

// Key-order-insensitive equality. ordered_json compares objects element-wise,
// which makes {"a":1,"b":2} != {"b":2,"a":1}; golden comparisons must not
// care about that.
bool structurally_equal(const Json& a, const Json& b);

// Canonical (sorted-key) compact serialization, handy for diff output.
std::string canonical_dump(const Json& value);

}  // namespace metaforge
