#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "metaforge/errors.hpp"
#include "metaforge/query.hpp"

namespace metaforge::sources {

struct FetchSpec {
    std::string locator;
    std::optional<query::Format> expected_format;
};

struct FetchOptions {
    // Replay directory for http(s) locators: when set, no network access
    // happens. Local-file locators always read the filesystem directly.
    std::optional<std::filesystem::path> fixture_dir;
    bool online = false;
    int timeout_seconds = 30;
    int retries = 0;
    std::filesystem::path base_dir = ".";  // resolves bare relative locators
};

// Deterministic fixture file stem for a URL: scheme dropped, every character
// outside [A-Za-z0-9._-] mapped to '_', long names truncated with a hash
// suffix. Distinct URLs that still collide get a hash suffix at record time.
std::string fixture_stem(const std::string& url);

// Fetch and parse one source document. Format detection order: explicit
// expectedFormat, Content-Type, file extension, leading-byte sniffing.
query::SourceDocument fetch_source(const FetchSpec& spec, const FetchOptions& options);

// Fetch a URL online and store body + sidecar metadata (<stem>.<ext> and
// <stem>.meta.json) under out_dir. Returns the body path.
std::filesystem::path record_fixture(const FetchSpec& spec, const std::filesystem::path& out_dir,
                                     const FetchOptions& options);

}  // namespace metaforge::sources
