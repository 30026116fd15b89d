#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace metaforge {

// Pipeline stage an error originated from. The CLI maps these to exit codes,
// so scripts can branch on the failing stage.
enum class Stage {
    parse,
    resolve,
    fetch,
    generate,
    validate,
    frame,
};

const char* stage_name(Stage stage);

class Error : public std::runtime_error {
public:
    Error(Stage stage, std::string message)
        : std::runtime_error(stage_name(stage) + std::string(": ") + message),
          stage_(stage),
          message_(std::move(message)) {}

    Stage stage() const { return stage_; }
    const std::string& message() const { return message_; }

private:
    Stage stage_;
    std::string message_;
};

// Syntax error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error(Stage::parse,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Aggregated reference-resolution failure: carries every unresolved name,
// not just the first one encountered.
class ResolveError : public Error {
public:
    explicit ResolveError(std::vector<std::string> problems)
        : Error(Stage::resolve, join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& problems);
    std::vector<std::string> problems_;
};

class FetchError : public Error {
public:
    explicit FetchError(const std::string& message) : Error(Stage::fetch, message) {}
};

class GenerationError : public Error {
public:
    explicit GenerationError(const std::string& message) : Error(Stage::generate, message) {}
};

class FramingError : public Error {
public:
    explicit FramingError(const std::string& message) : Error(Stage::frame, message) {}
};

}  // namespace metaforge
