#include "metaforge/resources.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#ifndef METAFORGE_SOURCE_DIR
#define METAFORGE_SOURCE_DIR "."
#endif

namespace metaforge::resources {

std::filesystem::path root() {
    if (const char* env = std::getenv("METAFORGE_RESOURCES"); env != nullptr && *env != '\0') {
        return env;
    }
    return METAFORGE_SOURCE_DIR;
}

std::filesystem::path data_dir() {
    return root() / "data";
}

std::filesystem::path templates_dir() {
    return root() / "templates";
}

std::filesystem::path fixtures_dir(const std::string& collection) {
    return root() / "fixtures" / collection;
}

Json load_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return Json::parse(in);
}

jsonld::Context bundled_context() {
    return jsonld::Context::parse(load_json(data_dir() / "codemeta_context.json"));
}

std::filesystem::path bundled_shape_schema_path() {
    return data_dir() / "codemeta_shapes.json";
}

shapes::ShapeSchema bundled_shape_schema() {
    return shapes::load_shape_schema(bundled_shape_schema_path());
}

}  // namespace metaforge::resources
