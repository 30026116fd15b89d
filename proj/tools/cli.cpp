#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "metaforge/crosswalks.hpp"
#include "metaforge/engine.hpp"
#include "metaforge/jsonld.hpp"
#include "metaforge/resources.hpp"
#include "metaforge/shapes.hpp"
#include "metaforge/sources.hpp"

namespace metaforge::cli {

namespace {

int exit_code_for(const Error& error) {
    switch (error.stage()) {
        case Stage::parse:
        case Stage::resolve: return kParseError;
        case Stage::fetch: return kFetchError;
        case Stage::generate: return kGenerationError;
        case Stage::validate: return kValidationFailed;
        case Stage::frame: return kFramingError;
    }
    return kUsage;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string mapping_text_for(const PipelineConfig& config) {
    if (config.mapping_path) {
        if (!std::filesystem::exists(*config.mapping_path)) {
            throw metaforge::ParseError(0, 0, "mapping file not found: " + *config.mapping_path);
        }
        return read_file(*config.mapping_path);
    }
    if (config.template_id) {
        auto tmpl = crosswalks::load_template(*config.template_id);
        return crosswalks::instantiate(tmpl, config.params);
    }
    throw metaforge::ParseError(0, 0, "no mapping given: pass --mapping PATH or --template ID");
}

sources::FetchOptions fetch_options_for(const PipelineConfig& config) {
    sources::FetchOptions options;
    if (const char* env = std::getenv("METAFORGE_FIXTURES"); env != nullptr && *env != '\0') {
        options.fixture_dir = std::filesystem::path(env);
    } else if (config.fixtures_dir) {
        options.fixture_dir = std::filesystem::path(*config.fixtures_dir);
    }
    options.online = config.online;
    options.timeout_seconds = config.timeout_seconds;
    options.retries = config.retries;
    if (config.mapping_path) {
        options.base_dir = std::filesystem::path(*config.mapping_path).parent_path();
        if (options.base_dir.empty()) options.base_dir = ".";
    }
    return options;
}

jsonld::Context context_for(const PipelineConfig& config) {
    if (config.context == "bundled") {
        return resources::bundled_context();
    }
    if (config.context.find("://") != std::string::npos) {
        if (!config.online) {
            throw FramingError("remote context " + config.context +
                               " requires --online; use 'bundled' or a local file otherwise");
        }
        sources::FetchSpec spec{config.context, query::Format::json};
        sources::FetchOptions options;
        options.online = true;
        options.timeout_seconds = config.timeout_seconds;
        auto doc = sources::fetch_source(spec, options);
        return jsonld::Context::parse(Json::parse(doc.raw));
    }
    return jsonld::Context::parse(resources::load_json(config.context));
}

jsonld::FrameOptions frame_options_for(const PipelineConfig& config) {
    jsonld::FrameOptions options;
    options.root_type = config.root_type;
    options.emission = config.context_emission == "url"
                           ? jsonld::FrameOptions::ContextEmission::url_reference
                           : jsonld::FrameOptions::ContextEmission::inline_object;
    return options;
}

shapes::ShapeSchema schema_for(const PipelineConfig& config) {
    if (config.schema_path) return shapes::load_shape_schema(*config.schema_path);
    return resources::bundled_shape_schema();
}

struct GeneratedOutputs {
    std::string framed;
    std::string expanded;
    std::string ntriples;
    rdf::Graph graph;
    Json framed_json;
};

GeneratedOutputs run_generation(const PipelineConfig& config) {
    std::string mapping_text = mapping_text_for(config);
    jsonld::Context context = context_for(config);

    engine::GenerateOptions options;
    options.fetch = fetch_options_for(config);
    engine::GenerateResult result = engine::generate(mapping_text, options);

    for (const auto& warning : result.diagnostics.entries()) {
        std::cerr << "warning [" << warning.stage << "] " << warning.message << "\n";
    }

    GeneratedOutputs outputs;
    outputs.graph = std::move(result.graph);
    outputs.ntriples = rdf::serialize_ntriples(outputs.graph);
    outputs.expanded = jsonld::serialize_expanded(outputs.graph).dump(2) + "\n";
    Diagnostics frame_diag;
    outputs.framed_json = jsonld::frame(outputs.graph, context, frame_options_for(config),
                                        &frame_diag);
    for (const auto& warning : frame_diag.entries()) {
        std::cerr << "warning [" << warning.stage << "] " << warning.message << "\n";
    }
    outputs.framed = outputs.framed_json.dump(2) + "\n";
    return outputs;
}

void write_outputs(const PipelineConfig& config, const GeneratedOutputs& outputs) {
    std::filesystem::path out(config.out_dir);
    std::filesystem::create_directories(out);
    write_file(out / "codemeta.json", outputs.framed);
    write_file(out / "codemeta.expanded.jsonld", outputs.expanded);
    write_file(out / "codemeta.nt", outputs.ntriples);
}

int report_and_exit(const shapes::ValidationReport& report, const PipelineConfig& config) {
    if (config.format == "json") {
        std::cout << report.to_json().dump(2) << "\n";
    } else {
        std::cout << report.to_text();
    }
    if (!report.conforms) return kValidationFailed;
    if (config.fail_on_warning && report.has_warnings()) return kValidationFailed;
    return kOk;
}

}  // namespace

int cmd_generate(const PipelineConfig& config) {
    GeneratedOutputs outputs = run_generation(config);
    write_outputs(config, outputs);
    std::cout << "wrote " << (std::filesystem::path(config.out_dir) / "codemeta.json").string()
              << " (" << outputs.graph.size() << " triples)\n";
    return kOk;
}

int cmd_validate(const std::filesystem::path& file, const PipelineConfig& config) {
    shapes::ShapeSchema schema = schema_for(config);
    shapes::ValidationReport report;
    if (file.extension() == ".nt") {
        report = shapes::validate(rdf::parse_ntriples(read_file(file)), schema);
    } else {
        Json framed = Json::parse(read_file(file));
        report = shapes::validate_framed(framed, context_for(config), schema);
    }
    return report_and_exit(report, config);
}

int cmd_pipeline(const PipelineConfig& config) {
    GeneratedOutputs outputs = run_generation(config);

    shapes::ShapeSchema schema = schema_for(config);
    shapes::ValidationReport report = shapes::validate(outputs.graph, schema);

    // Change detection against the committed file, before overwriting it.
    std::filesystem::path framed_path = std::filesystem::path(config.out_dir) / "codemeta.json";
    bool changed = true;
    if (std::filesystem::exists(framed_path)) {
        try {
            Json existing = Json::parse(read_file(framed_path));
            changed = !structurally_equal(existing, outputs.framed_json);
        } catch (const Json::parse_error&) {
            changed = true;
        }
    }

    write_outputs(config, outputs);
    int validation = report_and_exit(report, config);
    std::cout << "pipeline: " << (changed ? "changed" : "unchanged") << "\n";
    return validation;
}

int cmd_scaffold_ci(const std::string& target, const PipelineConfig& config) {
    if (target != "github-actions") {
        std::cerr << "unsupported scaffold target '" << target << "'\n";
        return kUsage;
    }
    std::string mapping_flag = config.mapping_path
                                   ? "--mapping " + *config.mapping_path
                                   : "--template " + config.template_id.value_or("merged");
    std::string fixtures_flag =
        config.fixtures_dir ? " --fixtures " + *config.fixtures_dir : "";

    std::string workflow;
    workflow += "name: Generate CodeMeta\n";
    workflow += "\n";
    workflow += "on: push\n";
    workflow += "\n";
    workflow += "jobs:\n";
    workflow += "  generate-codemeta:\n";
    workflow += "    runs-on: ubuntu-latest\n";
    workflow += "\n";
    workflow += "    permissions:\n";
    workflow += "      contents: write\n";
    workflow += "\n";
    workflow += "    steps:\n";
    workflow += "      - uses: actions/checkout@v4\n";
    workflow += "        with:\n";
    workflow += "          ref: ${{ github.head_ref }}\n";
    workflow += "\n";
    workflow += "      - name: Build metaforge\n";
    workflow += "        run: cmake -S . -B build && cmake --build build\n";
    workflow += "\n";
    workflow += "      - name: Generate and validate CodeMeta\n";
    workflow += "        run: ./build/tools/metaforge pipeline " + mapping_flag + fixtures_flag +
                " --out " + config.out_dir + "\n";
    workflow += "\n";
    workflow += "      # Auto-commit placeholder: swap in your preferred action.\n";
    workflow += "      - uses: stefanzweifel/git-auto-commit-action@v5\n";
    workflow += "        with:\n";
    workflow += "          commit_message: Automated generation of CodeMeta files\n";

    std::filesystem::path out = std::filesystem::path(config.out_dir) / "codemeta-workflow.yml";
    write_file(out, workflow);
    std::cout << "wrote " << out.string() << "\n";
    return kOk;
}

int cmd_record(const std::vector<std::string>& urls, const std::filesystem::path& out_dir,
               const PipelineConfig& config) {
    sources::FetchOptions options;
    options.online = true;
    options.timeout_seconds = config.timeout_seconds;
    options.retries = config.retries;
    for (const auto& url : urls) {
        sources::FetchSpec spec{url, std::nullopt};
        auto path = sources::record_fixture(spec, out_dir, options);
        std::cout << "recorded " << url << " -> " << path.string() << "\n";
    }
    return kOk;
}

namespace {

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
    Json json = Json::parse(read_file(path));
    if (json.contains("mapping")) config.mapping_path = json.at("mapping").get<std::string>();
    if (json.contains("template")) config.template_id = json.at("template").get<std::string>();
    if (json.contains("params")) {
        for (auto it = json.at("params").begin(); it != json.at("params").end(); ++it) {
            config.params[it.key()] = it.value().is_string() ? it.value().get<std::string>()
                                                             : it.value().dump();
        }
    }
    if (json.contains("context")) config.context = json.at("context").get<std::string>();
    if (json.contains("contextEmission")) {
        config.context_emission = json.at("contextEmission").get<std::string>();
    }
    if (json.contains("rootType")) config.root_type = json.at("rootType").get<std::string>();
    if (json.contains("out")) config.out_dir = json.at("out").get<std::string>();
    if (json.contains("fixtures")) config.fixtures_dir = json.at("fixtures").get<std::string>();
    if (json.contains("online")) config.online = json.at("online").get<bool>();
    if (json.contains("timeoutSeconds")) {
        config.timeout_seconds = json.at("timeoutSeconds").get<int>();
    }
    if (json.contains("retries")) config.retries = json.at("retries").get<int>();
    if (json.contains("schema")) config.schema_path = json.at("schema").get<std::string>();
    if (json.contains("format")) config.format = json.at("format").get<std::string>();
    if (json.contains("failOnWarning")) {
        config.fail_on_warning = json.at("failOnWarning").get<bool>();
    }
}

void add_common_flags(CLI::App* cmd, PipelineConfig& config, std::string& config_file,
                      std::vector<std::string>& raw_params) {
    cmd->add_option("--config", config_file, "JSON config file; flags win over it");
    cmd->add_option("--mapping", config.mapping_path, "mapping file (.shexml)");
    cmd->add_option("--template", config.template_id, "bundled template id");
    cmd->add_option("--param", raw_params, "template parameter K=V (repeatable)");
    cmd->add_option("--context", config.context, "JSON-LD context: bundled, a file, or a URL");
    cmd->add_option("--context-emission", config.context_emission,
                    "@context emission: inline or url")
        ->check(CLI::IsMember({"inline", "url"}));
    cmd->add_option("--root-type", config.root_type, "framing root type IRI");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--fixtures", config.fixtures_dir, "fixture directory for replay mode");
    cmd->add_flag("--online", config.online, "allow network access (default: replay only)");
    cmd->add_option("--timeout", config.timeout_seconds, "HTTP timeout in seconds");
    cmd->add_option("--retries", config.retries, "HTTP retry count (default 0)");
    cmd->add_option("--schema", config.schema_path, "shape schema file (default: bundled)");
    cmd->add_option("--format", config.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--fail-on-warning", config.fail_on_warning,
                  "treat validation warnings as failures");
}

void finish_config(PipelineConfig& config, const std::string& config_file,
                   const std::vector<std::string>& raw_params, const PipelineConfig& flag_values) {
    if (!config_file.empty()) {
        PipelineConfig from_file = flag_values;  // defaults
        apply_config_file(from_file, config_file);
        // Flags win: anything the user set on the command line stays.
        PipelineConfig merged = from_file;
        if (config.mapping_path) merged.mapping_path = config.mapping_path;
        if (config.template_id) merged.template_id = config.template_id;
        if (config.context != flag_values.context) merged.context = config.context;
        if (config.context_emission != flag_values.context_emission) {
            merged.context_emission = config.context_emission;
        }
        if (config.root_type != flag_values.root_type) merged.root_type = config.root_type;
        if (config.out_dir != flag_values.out_dir) merged.out_dir = config.out_dir;
        if (config.fixtures_dir) merged.fixtures_dir = config.fixtures_dir;
        if (config.online != flag_values.online) merged.online = config.online;
        if (config.timeout_seconds != flag_values.timeout_seconds) {
            merged.timeout_seconds = config.timeout_seconds;
        }
        if (config.retries != flag_values.retries) merged.retries = config.retries;
        if (config.schema_path) merged.schema_path = config.schema_path;
        if (config.format != flag_values.format) merged.format = config.format;
        if (config.fail_on_warning != flag_values.fail_on_warning) {
            merged.fail_on_warning = config.fail_on_warning;
        }
        for (const auto& [key, value] : config.params) merged.params[key] = value;
        config = merged;
    }
    for (const auto& raw : raw_params) {
        auto eq = raw.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("--param", "expected K=V, got '" + raw + "'");
        }
        config.params[raw.substr(0, eq)] = raw.substr(eq + 1);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("metaforge");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Declarative metadata mapping: heterogeneous sources to framed CodeMeta"};
    app.require_subcommand(1);

    PipelineConfig config;
    const PipelineConfig defaults = config;
    std::string config_file;
    std::vector<std::string> raw_params;
    std::string validate_file;
    std::string scaffold_target = "github-actions";
    std::vector<std::string> record_urls;
    std::string record_dir;

    CLI::App* generate = app.add_subcommand("generate", "generate codemeta.json from a mapping");
    add_common_flags(generate, config, config_file, raw_params);

    CLI::App* validate = app.add_subcommand("validate", "validate a generated file");
    validate->add_option("file", validate_file, "codemeta.json or .nt file")->required();
    add_common_flags(validate, config, config_file, raw_params);

    CLI::App* pipeline =
        app.add_subcommand("pipeline", "generate, validate, and report change status");
    add_common_flags(pipeline, config, config_file, raw_params);

    CLI::App* scaffold = app.add_subcommand("scaffold-ci", "write a CI workflow file");
    scaffold->add_option("--target", scaffold_target, "CI system (github-actions)");
    add_common_flags(scaffold, config, config_file, raw_params);

    CLI::App* record = app.add_subcommand("record", "record fixtures from live URLs");
    record->add_option("urls", record_urls, "URLs to record")->required();
    record->add_option("--out", record_dir, "fixture directory")->required();
    record->add_option("--timeout", config.timeout_seconds, "HTTP timeout in seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(record)) {
            return cmd_record(record_urls, record_dir, config);
        }
        finish_config(config, config_file, raw_params, defaults);
        if (app.got_subcommand(generate)) return cmd_generate(config);
        if (app.got_subcommand(validate)) return cmd_validate(validate_file, config);
        if (app.got_subcommand(pipeline)) return cmd_pipeline(config);
        if (app.got_subcommand(scaffold)) return cmd_scaffold_ci(scaffold_target, config);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace metaforge::cli
