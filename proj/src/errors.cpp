#include "metaforge/errors.hpp"

namespace metaforge {

const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::parse: return "parse";
        case Stage::resolve: return "resolve";
        case Stage::fetch: return "fetch";
        case Stage::generate: return "generate";
        case Stage::validate: return "validate";
        case Stage::frame: return "frame";
    }
    return "unknown";
}

std::string ResolveError::join(const std::vector<std::string>& problems) {
    std::string out;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        if (i > 0) out += "; ";
        out += problems[i];
    }
    return out;
}

}  // namespace metaforge
