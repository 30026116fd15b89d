#pragma once

#include <filesystem>
#include <string>

#include "metaforge/jsonld.hpp"
#include "metaforge/jsonutil.hpp"
#include "metaforge/shapes.hpp"

namespace metaforge::resources {

// Repository root holding templates/, data/ and fixtures/. Resolution order:
// the METAFORGE_RESOURCES environment variable, then the compiled-in source
// directory.
std::filesystem::path root();

std::filesystem::path data_dir();
std::filesystem::path templates_dir();
std::filesystem::path fixtures_dir(const std::string& collection);

Json load_json(const std::filesystem::path& file);

// The bundled CodeMeta 3.0 context snapshot and shape schema.
jsonld::Context bundled_context();
shapes::ShapeSchema bundled_shape_schema();
std::filesystem::path bundled_shape_schema_path();

}  // namespace metaforge::resources
