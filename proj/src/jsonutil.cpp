#include "metaforge/jsonutil.hpp"

#include <algorithm>
#include <vector>

namespace metaforge {

namespace {

Json sort_keys(const Json& value) {
    if (value.is_object()) {
        std::vector<std::string> keys;
        keys.reserve(value.size());
        for (auto it = value.begin(); it != value.end(); ++it) keys.push_back(it.key());
        std::sort(keys.begin(), keys.end());
        Json out = Json::object();
        for (const auto& key : keys) out[key] = sort_keys(value.at(key));
        return out;
    }
    if (value.is_array()) {
        Json out = Json::array();
        for (const auto& item : value) out.push_back(sort_keys(item));
        return out;
    }
    return value;
}

}  // namespace

bool structurally_equal(const Json& a, const Json& b) {
    return sort_keys(a) == sort_keys(b);
}

std::string canonical_dump(const Json& value) {
    return sort_keys(value).dump();
}

}  // namespace metaforge
