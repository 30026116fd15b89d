#include "metaforge/crosswalks.hpp"

#include <fstream>
#include <sstream>

#include "metaforge/resources.hpp"

namespace metaforge::crosswalks {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TemplateError("cannot open template " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::map<std::string, std::string> defaults_for(const std::string& id) {
    // The reference instantiation targets the ShExML engine project; these
    // values reproduce the bundled goldens.
    if (id == "github") {
        return {{"owner", "herminiogg"}, {"repo", "ShExML"}};
    }
    if (id == "maven") {
        return {{"pom_url",
                 "https://repo1.maven.org/maven2/com/herminiogarcia/shexml_3/0.6.0/"
                 "shexml_3-0.6.0.pom"}};
    }
    if (id == "zenodo") {
        return {{"zenodo_record", "17092549"}};
    }
    if (id == "merged") {
        return {
            {"github_repo_api", "https://api.github.com/repos/herminiogg/ShExML"},
            {"github_releases_api", "https://api.github.com/repos/herminiogg/ShExML/releases"},
            {"maven_pom_url",
             "https://repo1.maven.org/maven2/com/herminiogarcia/shexml_3/0.6.0/"
             "shexml_3-0.6.0.pom"},
            {"zenodo_record_api", "https://zenodo.org/api/records/17092549"},
            {"release_subject_local", "ShExML"},
            {"reference_publication", "https://doi.org/10.7717/peerj-cs.318"},
            {"include_contributor", "true"},
        };
    }
    throw TemplateError("unknown template '" + id + "'");
}

bool truthy(const std::string& value) {
    return value == "true" || value == "1" || value == "yes";
}

}  // namespace

std::vector<std::string> template_ids() {
    return {"github", "maven", "zenodo", "merged"};
}

CrosswalkTemplate load_template(const std::string& id) {
    CrosswalkTemplate tmpl;
    tmpl.id = id;
    tmpl.defaults = defaults_for(id);
    tmpl.text = read_file(resources::templates_dir() / (id + ".shexml.tmpl"));
    return tmpl;
}

std::string instantiate(const CrosswalkTemplate& tmpl,
                        const std::map<std::string, std::string>& params) {
    std::map<std::string, std::string> bound = tmpl.defaults;
    for (const auto& [key, value] : params) bound[key] = value;

    // Section pass: {{#flag}} / {{/flag}} marker lines guard optional blocks.
    std::istringstream in(tmpl.text);
    std::string out;
    std::string line;
    std::vector<bool> include_stack{true};
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.rfind("{{#", 0) == 0 && trimmed.rfind("}}") == trimmed.size() - 2) {
            std::string flag = trimmed.substr(3, trimmed.size() - 5);
            auto it = bound.find(flag);
            bool enabled = it != bound.end() && truthy(it->second);
            include_stack.push_back(include_stack.back() && enabled);
            continue;
        }
        if (trimmed.rfind("{{/", 0) == 0 && trimmed.rfind("}}") == trimmed.size() - 2) {
            if (include_stack.size() <= 1) {
                throw TemplateError("unbalanced section close in template " + tmpl.id);
            }
            include_stack.pop_back();
            continue;
        }
        if (include_stack.back()) {
            out += line;
            out += '\n';
        }
    }
    if (include_stack.size() != 1) {
        throw TemplateError("unbalanced section in template " + tmpl.id);
    }

    // Placeholder pass.
    std::string result;
    std::size_t pos = 0;
    while (pos < out.size()) {
        auto open = out.find("{{", pos);
        if (open == std::string::npos) {
            result += out.substr(pos);
            break;
        }
        auto close = out.find("}}", open);
        if (close == std::string::npos) {
            throw TemplateError("unterminated placeholder in template " + tmpl.id);
        }
        result += out.substr(pos, open - pos);
        std::string key = out.substr(open + 2, close - open - 2);
        auto it = bound.find(key);
        if (it == bound.end()) {
            throw TemplateError("unbound placeholder '" + key + "' in template " + tmpl.id);
        }
        result += it->second;
        pos = close + 2;
    }
    return result;
}

std::vector<CoverageRow> list_crosswalk_coverage() {
    Json table = resources::load_json(resources::data_dir() / "crosswalk_table.json");
    std::vector<CoverageRow> rows;
    for (const auto& row_json : table.at("rows")) {
        CoverageRow row;
        row.table = row_json.at("table").get<std::string>();
        row.template_id = row_json.at("template").get<std::string>();
        row.codemeta_class = row_json.at("class").get<std::string>();
        row.attribute = row_json.at("attribute").get<std::string>();
        row.provider = row_json.value("provider", "");
        row.provider_attribute = row_json.value("providerAttribute", "");
        row.shape = row_json.at("shape").get<std::string>();
        row.via = row_json.value("via", "");
        row.note = row_json.value("note", "");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace metaforge::crosswalks
