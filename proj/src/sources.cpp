#include "metaforge/sources.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <httplib.h>

namespace metaforge::sources {

namespace {

std::uint32_t fnv1a(const std::string& text) {
    std::uint32_t hash = 2166136261u;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 16777619u;
    }
    return hash;
}

std::string short_hash(const std::string& text) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", fnv1a(text));
    return buf;
}

struct ParsedUrl {
    std::string scheme;
    std::string host_port;  // scheme://host[:port]
    std::string path;       // path + query, at least "/"
};

std::optional<ParsedUrl> parse_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return std::nullopt;
    ParsedUrl parsed;
    parsed.scheme = url.substr(0, scheme_end);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        parsed.host_port = url;
        parsed.path = "/";
    } else {
        parsed.host_port = url.substr(0, path_start);
        parsed.path = url.substr(path_start);
    }
    return parsed;
}

bool is_http_url(const std::string& locator) {
    auto parsed = parse_url(locator);
    return parsed && (parsed->scheme == "http" || parsed->scheme == "https");
}

std::optional<query::Format> format_from_content_type(const std::string& content_type) {
    if (content_type.find("json") != std::string::npos) return query::Format::json;
    if (content_type.find("xml") != std::string::npos) return query::Format::xml;
    return std::nullopt;
}

std::optional<query::Format> format_from_extension(const std::string& locator) {
    std::string path = locator;
    auto query_start = path.find('?');
    if (query_start != std::string::npos) path = path.substr(0, query_start);
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    std::string ext = path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "json" || ext == "jsonld") return query::Format::json;
    if (ext == "xml" || ext == "pom") return query::Format::xml;
    return std::nullopt;
}

std::optional<query::Format> sniff_format(const std::string& body) {
    for (char c : body) {
        if (std::isspace(static_cast<unsigned char>(c)) != 0) continue;
        if (c == '{' || c == '[') return query::Format::json;
        if (c == '<') return query::Format::xml;
        break;
    }
    return std::nullopt;
}

query::SourceDocument parse_body(const std::string& body, const std::string& origin,
                                 const FetchSpec& spec,
                                 std::optional<query::Format> content_type_format) {
    std::optional<query::Format> format = spec.expected_format;
    if (!format) format = content_type_format;
    if (!format) format = format_from_extension(spec.locator);
    if (!format) format = sniff_format(body);
    if (!format) {
        throw FetchError("cannot detect document format of " + origin);
    }
    try {
        return *format == query::Format::json
                   ? query::SourceDocument::from_json_text(body, origin)
                   : query::SourceDocument::from_xml_text(body, origin);
    } catch (const query::QueryError& e) {
        throw FetchError(e.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FetchError("cannot open file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct HttpResponse {
    std::string body;
    std::string content_type;
};

HttpResponse http_get(const std::string& url, const FetchOptions& options) {
    auto parsed = parse_url(url);
    if (!parsed) throw FetchError("malformed URL " + url);

    int attempts = options.retries + 1;
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        httplib::Client client(parsed->host_port);
        client.set_connection_timeout(options.timeout_seconds, 0);
        client.set_read_timeout(options.timeout_seconds, 0);
        client.set_follow_location(true);
        httplib::Headers headers{{"Accept", "application/json, application/xml"},
                                 {"User-Agent", "metaforge/1.0"}};
        auto result = client.Get(parsed->path, headers);
        if (!result) {
            last_error = "network failure fetching " + url + ": " + httplib::to_string(result.error());
            continue;
        }
        if (result->status >= 400) {
            throw FetchError("HTTP " + std::to_string(result->status) + " fetching " + url);
        }
        return HttpResponse{result->body, result->get_header_value("Content-Type")};
    }
    throw FetchError(last_error);
}

std::optional<std::filesystem::path> find_fixture_body(const std::filesystem::path& dir,
                                                       const std::string& stem,
                                                       const std::string& url) {
    for (const char* ext : {".json", ".xml"}) {
        auto candidate = dir / (stem + ext);
        if (!std::filesystem::exists(candidate)) continue;
        auto meta_path = dir / (stem + ".meta.json");
        if (std::filesystem::exists(meta_path)) {
            Json meta = Json::parse(read_file(meta_path));
            if (meta.value("url", "") != url) continue;
        }
        return candidate;
    }
    return std::nullopt;
}

query::SourceDocument fetch_from_fixture(const FetchSpec& spec,
                                         const std::filesystem::path& dir) {
    std::string stem = fixture_stem(spec.locator);
    auto body_path = find_fixture_body(dir, stem, spec.locator);
    if (!body_path) {
        // Hash-suffixed variant written on stem collision.
        body_path = find_fixture_body(dir, stem + "-" + short_hash(spec.locator), spec.locator);
    }
    if (!body_path) {
        throw FetchError("fixture missing for " + spec.locator + " in " + dir.string());
    }
    std::optional<query::Format> meta_format;
    auto meta_path = body_path->parent_path() / (body_path->stem().string() + ".meta.json");
    if (std::filesystem::exists(meta_path)) {
        Json meta = Json::parse(read_file(meta_path));
        meta_format = format_from_content_type(meta.value("contentType", ""));
    }
    return parse_body(read_file(*body_path), body_path->string(), spec, meta_format);
}

}  // namespace

std::string fixture_stem(const std::string& url) {
    std::string rest = url;
    auto scheme_end = rest.find("://");
    if (scheme_end != std::string::npos) rest = rest.substr(scheme_end + 3);

    std::string stem;
    for (char c : rest) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '_' ||
                  c == '-';
        stem += ok ? c : '_';
    }
    constexpr std::size_t kMaxLength = 100;
    if (stem.size() > kMaxLength) {
        stem = stem.substr(0, kMaxLength) + "-" + short_hash(url);
    }
    return stem;
}

query::SourceDocument fetch_source(const FetchSpec& spec, const FetchOptions& options) {
    if (is_http_url(spec.locator)) {
        if (options.fixture_dir) {
            return fetch_from_fixture(spec, *options.fixture_dir);
        }
        if (!options.online) {
            throw FetchError("network access is disabled; pass a fixture directory or enable "
                             "online mode to fetch " + spec.locator);
        }
        HttpResponse response = http_get(spec.locator, options);
        return parse_body(response.body, spec.locator, spec,
                          format_from_content_type(response.content_type));
    }

    // file:// URL or filesystem path
    std::string path_text = spec.locator;
    const std::string file_scheme = "file://";
    if (path_text.rfind(file_scheme, 0) == 0) path_text = path_text.substr(file_scheme.size());
    std::filesystem::path path(path_text);
    if (path.is_relative()) path = options.base_dir / path;
    return parse_body(read_file(path), path.string(), spec, std::nullopt);
}

std::filesystem::path record_fixture(const FetchSpec& spec, const std::filesystem::path& out_dir,
                                     const FetchOptions& options) {
    if (!is_http_url(spec.locator)) {
        throw FetchError("only http(s) URLs can be recorded, got " + spec.locator);
    }
    HttpResponse response = http_get(spec.locator, options);
    auto content_type_format = format_from_content_type(response.content_type);
    query::SourceDocument doc = parse_body(response.body, spec.locator, spec, content_type_format);

    std::filesystem::create_directories(out_dir);
    std::string stem = fixture_stem(spec.locator);
    auto meta_path = out_dir / (stem + ".meta.json");
    if (std::filesystem::exists(meta_path)) {
        Json existing = Json::parse(read_file(meta_path));
        if (existing.value("url", "") != spec.locator) {
            stem += "-" + short_hash(spec.locator);  // collision with a different URL
            meta_path = out_dir / (stem + ".meta.json");
        }
    }

    auto now = std::chrono::system_clock::now();
    auto time = std::chrono::system_clock::to_time_t(now);
    char date[32];
    std::strftime(date, sizeof date, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&time));

    Json meta;
    meta["url"] = spec.locator;
    meta["contentType"] = response.content_type;
    meta["retrievedAt"] = date;

    const char* ext = doc.format == query::Format::json ? ".json" : ".xml";
    auto body_path = out_dir / (stem + ext);
    std::ofstream body_out(body_path, std::ios::binary);
    body_out << response.body;
    std::ofstream meta_out(meta_path, std::ios::binary);
    meta_out << meta.dump(2) << "\n";
    return body_path;
}

}  // namespace metaforge::sources
