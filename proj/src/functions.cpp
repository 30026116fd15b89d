#include <cctype>
#include <functional>
#include <map>

#include "metaforge/engine.hpp"

namespace metaforge::engine {

namespace {

bool looks_like_date(const std::string& text) {
    if (text.size() != 10) return false;
    for (std::size_t i = 0; i < 10; ++i) {
        if (i == 4 || i == 7) {
            if (text[i] != '-') return false;
        } else if (std::isdigit(static_cast<unsigned char>(text[i])) == 0) {
            return false;
        }
    }
    return true;
}

// First 10 characters of an ISO-8601 timestamp, validated as yyyy-MM-dd.
FunctionResult only_date(const std::string& input) {
    if (input.size() < 10) {
        return FunctionResult::failure("onlyDate: input shorter than a date: '" + input + "'");
    }
    std::string date = input.substr(0, 10);
    if (!looks_like_date(date)) {
        return FunctionResult::failure("onlyDate: '" + input + "' does not start with yyyy-MM-dd");
    }
    return FunctionResult::success(date);
}

// Strip a trailing {...} URI-template segment, if any.
std::string strip_uri_template(const std::string& url) {
    auto brace = url.find('{');
    if (brace == std::string::npos) return url;
    return url.substr(0, brace);
}

const std::string kApiReposPrefix = "https://api.github.com/repos/";
const std::string kGithubPrefix = "https://github.com/";

// https://api.github.com/repos/{owner}/{repo}/{tail}{template} ->
// https://github.com/{owner}/{repo}/{tail}
FunctionResult normalize_github_api_url(const std::string& input) {
    if (input.rfind(kApiReposPrefix, 0) != 0) {
        return FunctionResult::failure("normalizeGitHubAPIUrl: '" + input +
                                       "' is not an api.github.com/repos URL");
    }
    return FunctionResult::success(kGithubPrefix +
                                   strip_uri_template(input.substr(kApiReposPrefix.size())));
}

FunctionResult remove_parameters_github_api(const std::string& input) {
    return FunctionResult::success(strip_uri_template(input));
}

FunctionResult get_local_part_github_repo(const std::string& input) {
    if (input.rfind(kGithubPrefix, 0) != 0) {
        return FunctionResult::failure("getLocalPartGithubRepo: '" + input +
                                       "' is not a github.com URL");
    }
    return FunctionResult::success(input.substr(kGithubPrefix.size()));
}

FunctionResult concatenate_maven_ids(const std::string& group_id, const std::string& artifact_id) {
    return FunctionResult::success(group_id + ":" + artifact_id);
}

struct Builtin {
    std::size_t arity;
    std::function<FunctionResult(const std::vector<std::string>&)> call;
};

const std::map<std::string, Builtin>& registry() {
    static const std::map<std::string, Builtin> table = {
        {"onlyDate", {1, [](const auto& a) { return only_date(a[0]); }}},
        {"normalizeGitHubAPIUrl", {1, [](const auto& a) { return normalize_github_api_url(a[0]); }}},
        {"removeParametersGithubAPI",
         {1, [](const auto& a) { return remove_parameters_github_api(a[0]); }}},
        {"getLocalPartGithubRepo",
         {1, [](const auto& a) { return get_local_part_github_repo(a[0]); }}},
        {"concatenateMavenGroupAndArtifactIds",
         {2, [](const auto& a) { return concatenate_maven_ids(a[0], a[1]); }}},
    };
    return table;
}

}  // namespace

bool is_registered_function(const std::string& name, std::size_t arity) {
    auto it = registry().find(name);
    return it != registry().end() && it->second.arity == arity;
}

FunctionResult apply_function(const std::string& name, const std::vector<std::string>& args) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw GenerationError("unknown function '" + name + "'");
    }
    if (args.size() != it->second.arity) {
        throw GenerationError("function '" + name + "' expects " +
                              std::to_string(it->second.arity) + " argument(s), got " +
                              std::to_string(args.size()));
    }
    return it->second.call(args);
}

}  // namespace metaforge::engine
