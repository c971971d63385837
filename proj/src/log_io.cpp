#include "semad/log_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "semad/error.hpp"
#include "xml.hpp"

namespace semad {

namespace {

std::optional<std::string_view> concept_name(const xml::Element& el) {
  for (const auto& child : el.children) {
    if (child.name == "string" && child.attribute("key") == "concept:name") {
      if (auto v = child.attribute("value")) return v;
    }
  }
  return std::nullopt;
}

}  // namespace

EventLog parse_xes(std::string_view document, const LogReadOptions& opts) {
  const xml::Element root = xml::parse(document);
  if (root.name != "log") throw ParseError("XES: root element is <" + root.name + ">, expected <log>", root.line, 0);

  std::string name;
  if (auto n = concept_name(root)) name = std::string(*n);

  std::vector<Trace> traces;
  for (const auto& el : root.children) {
    if (el.name != "trace") continue;
    Trace trace;
    if (auto id = concept_name(el)) {
      trace.id = std::string(*id);
    } else {
      trace.id = std::to_string(traces.size() + 1);
    }
    for (const auto& ev : el.children) {
      if (ev.name != "event") continue;
      auto activity = concept_name(ev);
      if (!activity) throw ValidationError("missing activity name in trace " + trace.id);
      trace.events.push_back(Event{normalize_label(*activity)});
    }
    traces.push_back(std::move(trace));
  }
  return EventLog(std::move(name), std::move(traces), opts.allow_empty_traces);
}

std::string write_xes(const EventLog& log) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<log xes.version=\"1.0\" xmlns=\"http://www.xes-standard.org/\">\n";
  if (!log.name().empty()) {
    out << "  <string key=\"concept:name\" value=\"" << xml::escape(log.name()) << "\"/>\n";
  }
  for (const auto& t : log.traces()) {
    out << "  <trace>\n"
        << "    <string key=\"concept:name\" value=\"" << xml::escape(t.id) << "\"/>\n";
    for (const auto& e : t.events) {
      out << "    <event>\n"
          << "      <string key=\"concept:name\" value=\"" << xml::escape(e.label) << "\"/>\n"
          << "    </event>\n";
    }
    out << "  </trace>\n";
  }
  out << "</log>\n";
  return out.str();
}

EventLog read_jsonl_log(std::string_view document, const LogReadOptions& opts, std::string name) {
  std::vector<Trace> traces;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= document.size()) {
    auto end = document.find('\n', start);
    if (end == std::string_view::npos) end = document.size();
    const std::string_view line = document.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("JSONL: ") + e.what(), line_no, e.byte);
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string() || !obj.contains("events") ||
        !obj["events"].is_array()) {
      throw ParseError("JSONL: expected {\"id\": string, \"events\": [string, ...]}", line_no, 1);
    }
    Trace trace;
    trace.id = obj["id"].get<std::string>();
    for (const auto& ev : obj["events"]) {
      if (!ev.is_string()) throw ValidationError("missing activity name in trace " + trace.id);
      trace.events.push_back(Event{normalize_label(ev.get<std::string>())});
    }
    traces.push_back(std::move(trace));
  }
  return EventLog(std::move(name), std::move(traces), opts.allow_empty_traces);
}

std::string write_jsonl_log(const EventLog& log) {
  std::string out;
  for (const auto& t : log.traces()) {
    nlohmann::json obj = {{"id", t.id}, {"events", t.labels()}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

EventLog read_log_file(const std::filesystem::path& path, const LogReadOptions& opts) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".jsonl") return read_jsonl_log(text, opts, path.stem().string());
  return parse_xes(text, opts);
}

void write_log_file(const std::filesystem::path& path, const EventLog& log) {
  write_text_file(path, path.extension() == ".jsonl" ? write_jsonl_log(log) : write_xes(log));
}

}  // namespace semad
