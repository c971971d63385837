#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "semad/log.hpp"

namespace semad {

struct LogReadOptions {
  // Accept traces without events (degenerate inputs for tests only).
  bool allow_empty_traces = false;
};

// XES subset: log/trace/event elements; the activity is the string attribute
// with key "concept:name". Every other attribute is ignored.
EventLog parse_xes(std::string_view document, const LogReadOptions& opts = {});
std::string write_xes(const EventLog& log);

// One trace per line: {"id": "...", "events": ["a", "b"]}.
EventLog read_jsonl_log(std::string_view document, const LogReadOptions& opts = {},
                        std::string name = {});
std::string write_jsonl_log(const EventLog& log);

// Dispatches on extension: ".jsonl" is JSONL, anything else is XES.
EventLog read_log_file(const std::filesystem::path& path, const LogReadOptions& opts = {});
void write_log_file(const std::filesystem::path& path, const EventLog& log);

// Whole-file helpers raising IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace semad
