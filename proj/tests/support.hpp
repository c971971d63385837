#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "semad/diagnostics.hpp"
#include "semad/log.hpp"
#include "semad/log_io.hpp"
#include "semad/net.hpp"

namespace support {

inline semad::Trace trace(std::string id, std::vector<std::string> labels) {
  return semad::Trace(std::move(id), labels);
}

inline semad::EventLog log_of(const std::vector<std::vector<std::string>>& variants) {
  std::vector<semad::Trace> traces;
  for (const auto& v : variants) traces.emplace_back("t" + std::to_string(traces.size() + 1), v);
  return semad::EventLog("test", std::move(traces));
}

#ifdef SEMAD_DATA_DIR
inline semad::WorkflowNet loan_net() {
  return semad::parse_net(semad::read_text_file(std::string(SEMAD_DATA_DIR) + "/nets/loan.net.json"), "loan");
}
#endif

inline const char* kSequenceNet = R"x({
  "places": ["p0", "p1", "pf"],
  "transitions": [{"id": "ta", "label": "a"}, {"id": "tb", "label": "b"}],
  "arcs": [["p0", "ta"], ["ta", "p1"], ["p1", "tb"], ["tb", "pf"]],
  "source": "p0", "sink": "pf"})x";

inline const char* kXorNet = R"x({
  "places": ["p0", "p1", "pf"],
  "transitions": [{"id": "ta", "label": "a"}, {"id": "tb", "label": "b"}, {"id": "tc", "label": "c"}],
  "arcs": [["p0", "ta"], ["ta", "p1"], ["p1", "tb"], ["tb", "pf"], ["p1", "tc"], ["tc", "pf"]],
  "source": "p0", "sink": "pf"})x";

// a, then b repeated any number of times via a silent loop back, then c.
inline const char* kLoopNet = R"x({
  "places": ["p0", "p1", "p2", "pf"],
  "transitions": [{"id": "ta", "label": "a"}, {"id": "tb", "label": "b"},
                  {"id": "back", "label": null}, {"id": "tc", "label": "c"}],
  "arcs": [["p0", "ta"], ["ta", "p1"], ["p1", "tb"], ["tb", "p2"], ["p2", "back"], ["back", "p1"],
           ["p2", "tc"], ["tc", "pf"]],
  "source": "p0", "sink": "pf"})x";

// Collects warnings for the lifetime of the object.
class WarningCapture {
 public:
  WarningCapture() {
    previous_ = semad::set_warning_sink([this](std::string_view m) { messages.emplace_back(m); });
  }
  ~WarningCapture() { semad::set_warning_sink(previous_); }
  WarningCapture(const WarningCapture&) = delete;
  WarningCapture& operator=(const WarningCapture&) = delete;

  bool contains(std::string_view needle) const {
    for (const auto& m : messages)
      if (m.find(needle) != std::string::npos) return true;
    return false;
  }

  std::vector<std::string> messages;

 private:
  semad::WarningSink previous_;
};

// Temporary directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("semad-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace support
