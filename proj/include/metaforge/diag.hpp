#pragma once

#include <string>
#include <vector>

namespace metaforge {

// Structured warning channel. Skipped subjects, malformed function inputs and
// similar non-fatal conditions are reported here and never end up in the
// generated graph.
class Diagnostics {
public:
    struct Entry {
        std::string stage;
        std::string message;
    };

    void warn(std::string stage, std::string message) {
        entries_.push_back({std::move(stage), std::move(message)});
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<Entry> entries_;
};

}  // namespace metaforge
