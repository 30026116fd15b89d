#include <doctest.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "cli.hpp"
#include "metaforge/crosswalks.hpp"
#include "metaforge/resources.hpp"
#include "metaforge/sources.hpp"
#include "support/testutil.hpp"

using namespace metaforge;

namespace {

class ScopedCapture {
public:
    ScopedCapture()
        : out_buf_(std::cout.rdbuf(out_.rdbuf())), err_buf_(std::cerr.rdbuf(err_.rdbuf())) {}
    ~ScopedCapture() {
        std::cout.rdbuf(out_buf_);
        std::cerr.rdbuf(err_buf_);
    }
    std::string out() const { return out_.str(); }
    std::string err() const { return err_.str(); }

private:
    std::ostringstream out_;
    std::ostringstream err_;
    std::streambuf* out_buf_;
    std::streambuf* err_buf_;
};

int run(const std::vector<std::string>& args, std::string* out = nullptr,
        std::string* err = nullptr) {
    ScopedCapture capture;
    int code = cli::run_cli(args);
    if (out != nullptr) *out = capture.out();
    if (err != nullptr) *err = capture.err();
    return code;
}

std::string fixtures() { return resources::fixtures_dir("shexml").string(); }

}  // namespace

TEST_CASE("generate with the merged template writes the three outputs") {
    auto dir = testutil::temp_dir("cligen");
    int code = run({"generate", "--template", "merged", "--fixtures", fixtures(), "--out",
                    dir.string()});
    CHECK(code == cli::kOk);
    REQUIRE(std::filesystem::exists(dir / "codemeta.json"));
    CHECK(std::filesystem::exists(dir / "codemeta.expanded.jsonld"));
    CHECK(std::filesystem::exists(dir / "codemeta.nt"));

    Json framed = Json::parse(testutil::read_file(dir / "codemeta.json"));
    CHECK(framed.at("id") == "https://github.com/herminiogg/ShExML");
    CHECK(framed.at("name") == "ShExML");
    CHECK(framed.at("version") == "0.6.0");
    CHECK(framed.at("programmingLanguage") == "Scala");
    std::filesystem::remove_all(dir);
}

TEST_CASE("a nonexistent mapping exits with the parse code and no partial outputs") {
    auto dir = testutil::temp_dir("clinomapping");
    std::string err;
    int code = run({"generate", "--mapping", (dir / "missing.shexml").string(), "--out",
                    (dir / "out").string()},
                   nullptr, &err);
    CHECK(code == cli::kParseError);
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "codemeta.json"));
    CHECK(err.find("missing.shexml") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("the github template's framed output carries the reference field set") {
    auto dir = testutil::temp_dir("cligithub");
    int code = run({"generate", "--template", "github", "--fixtures", fixtures(), "--out",
                    dir.string()});
    REQUIRE(code == cli::kOk);
    Json framed = Json::parse(testutil::read_file(dir / "codemeta.json"));
    for (const char* key :
         {"id", "type", "author", "codeRepository", "dateCreated", "dateModified", "description",
          "downloadUrl", "identifier", "license", "name", "programmingLanguage", "issueTracker",
          "@context"}) {
        CHECK(framed.contains(key));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("validate exits zero for a conforming file and five otherwise") {
    auto dir = testutil::temp_dir("clivalidate");
    REQUIRE(run({"generate", "--template", "merged", "--fixtures", fixtures(), "--out",
                 dir.string()}) == cli::kOk);

    std::string out;
    CHECK(run({"validate", (dir / "codemeta.json").string()}, &out) == cli::kOk);
    CHECK(out.find("conforms") != std::string::npos);

    // Corrupt a date and validate again.
    Json framed = Json::parse(testutil::read_file(dir / "codemeta.json"));
    framed["dateCreated"] = "22-02-2018";
    std::ofstream(dir / "broken.json") << framed.dump(2);
    CHECK(run({"validate", (dir / "broken.json").string()}) == cli::kValidationFailed);

    // JSON report format.
    CHECK(run({"validate", (dir / "codemeta.json").string(), "--format", "json"}, &out) ==
          cli::kOk);
    CHECK(Json::parse(out).at("conforms") == true);

    // The .nt debug surface validates too.
    CHECK(run({"validate", (dir / "codemeta.nt").string()}) == cli::kOk);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fail-on-warning turns warnings into a validation failure") {
    auto dir = testutil::temp_dir("cliwarn");
    REQUIRE(run({"generate", "--template", "merged", "--fixtures", fixtures(), "--out",
                 dir.string()}) == cli::kOk);
    // The bundled dependency nodes carry no description, which is a warning.
    CHECK(run({"validate", (dir / "codemeta.json").string()}) == cli::kOk);
    CHECK(run({"validate", (dir / "codemeta.json").string(), "--fail-on-warning"}) ==
          cli::kValidationFailed);
    std::filesystem::remove_all(dir);
}

TEST_CASE("pipeline reports changed on first run and unchanged on rerun") {
    auto dir = testutil::temp_dir("clipipeline");
    std::string out;
    REQUIRE(run({"pipeline", "--template", "merged", "--fixtures", fixtures(), "--out",
                 dir.string()},
                &out) == cli::kOk);
    CHECK(out.find("pipeline: changed") != std::string::npos);

    std::string first = testutil::read_file(dir / "codemeta.json");
    REQUIRE(run({"pipeline", "--template", "merged", "--fixtures", fixtures(), "--out",
                 dir.string()},
                &out) == cli::kOk);
    CHECK(out.find("pipeline: unchanged") != std::string::npos);
    CHECK(testutil::read_file(dir / "codemeta.json") == first);
    std::filesystem::remove_all(dir);
}

TEST_CASE("fetch failures exit with the fetch code") {
    auto empty = testutil::temp_dir("clifetchmiss");
    int code = run({"generate", "--template", "merged", "--fixtures", empty.string(), "--out",
                    (empty / "out").string()});
    CHECK(code == cli::kFetchError);
    std::filesystem::remove_all(empty);
}

TEST_CASE("METAFORGE_FIXTURES overrides the flag") {
    auto dir = testutil::temp_dir("clienv");
    ::setenv("METAFORGE_FIXTURES", fixtures().c_str(), 1);
    int code = run({"generate", "--template", "merged", "--fixtures",
                    (dir / "nonexistent").string(), "--out", dir.string()});
    ::unsetenv("METAFORGE_FIXTURES");
    CHECK(code == cli::kOk);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a JSON config file drives the pipeline, with flags winning") {
    auto dir = testutil::temp_dir("cliconfig");
    Json config;
    config["template"] = "github";
    config["fixtures"] = fixtures();
    config["out"] = (dir / "fromconfig").string();
    std::ofstream(dir / "config.json") << config.dump(2);

    CHECK(run({"generate", "--config", (dir / "config.json").string()}) == cli::kOk);
    CHECK(std::filesystem::exists(dir / "fromconfig" / "codemeta.json"));

    // --out on the command line wins over the config file.
    CHECK(run({"generate", "--config", (dir / "config.json").string(), "--out",
               (dir / "flagwins").string()}) == cli::kOk);
    CHECK(std::filesystem::exists(dir / "flagwins" / "codemeta.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("scaffold-ci writes a pipeline workflow") {
    auto dir = testutil::temp_dir("cliscaffold");
    int code = run({"scaffold-ci", "--template", "merged", "--fixtures", "fixtures/shexml",
                    "--out", dir.string()});
    CHECK(code == cli::kOk);
    std::string workflow = testutil::read_file(dir / "codemeta-workflow.yml");
    CHECK(workflow.find("on: push") != std::string::npos);
    CHECK(workflow.find("metaforge pipeline --template merged") != std::string::npos);
    CHECK(workflow.find("git-auto-commit-action") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("record fetches live URLs into replayable fixtures") {
    httplib::Server server;
    server.Get("/record.json", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"recorded": true})", "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&server] { server.listen_after_bind(); });
    server.wait_until_ready();
    std::string url = "http://127.0.0.1:" + std::to_string(port) + "/record.json";

    auto dir = testutil::temp_dir("clirecord");
    std::string out;
    int code = run({"record", url, "--out", dir.string()}, &out);
    server.stop();
    thread.join();

    CHECK(code == cli::kOk);
    CHECK(out.find("recorded") != std::string::npos);
    CHECK(std::filesystem::exists(dir / (sources::fixture_stem(url) + ".json")));
    std::filesystem::remove_all(dir);
}

TEST_CASE("a mapping file on disk works like a template") {
    auto dir = testutil::temp_dir("climapping");
    auto tmpl = crosswalks::load_template("github");
    std::ofstream(dir / "mapping.shexml") << crosswalks::instantiate(tmpl, {});
    int code = run({"generate", "--mapping", (dir / "mapping.shexml").string(), "--fixtures",
                    fixtures(), "--out", dir.string()});
    CHECK(code == cli::kOk);
    CHECK(std::filesystem::exists(dir / "codemeta.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("the installed binary runs the pipeline end to end") {
    auto dir = testutil::temp_dir("clibinary");
    std::string command = std::string(METAFORGE_BINARY_PATH) + " generate --template merged" +
                          " --fixtures " + fixtures() + " --out " + dir.string() +
                          " > /dev/null 2>&1";
    int status = std::system(command.c_str());
    CHECK(status == 0);
    CHECK(std::filesystem::exists(dir / "codemeta.json"));
    std::filesystem::remove_all(dir);
}
