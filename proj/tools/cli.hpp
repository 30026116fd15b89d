#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace metaforge::cli {

// Exit codes by failing stage, stable for CI scripts:
// 0 ok, 2 parse/resolve, 3 fetch, 4 generation, 5 validation, 6 framing.
enum ExitCode {
    kOk = 0,
    kUsage = 1,
    kParseError = 2,
    kFetchError = 3,
    kGenerationError = 4,
    kValidationFailed = 5,
    kFramingError = 6,
};

struct PipelineConfig {
    std::optional<std::string> mapping_path;
    std::optional<std::string> template_id;
    std::map<std::string, std::string> params;
    std::string context = "bundled";  // bundled | file path | URL
    std::string context_emission = "inline";  // inline | url
    std::string root_type = "http://schema.org/SoftwareSourceCode";
    std::string out_dir = ".";
    std::optional<std::string> fixtures_dir;
    bool online = false;
    int timeout_seconds = 30;
    int retries = 0;
    std::optional<std::string> schema_path;
    std::string format = "text";  // text | json
    bool fail_on_warning = false;
};

int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, const char* const* argv);

int cmd_generate(const PipelineConfig& config);
int cmd_validate(const std::filesystem::path& file, const PipelineConfig& config);
int cmd_pipeline(const PipelineConfig& config);
int cmd_scaffold_ci(const std::string& target, const PipelineConfig& config);
int cmd_record(const std::vector<std::string>& urls, const std::filesystem::path& out_dir,
               const PipelineConfig& config);

}  // namespace metaforge::cli
