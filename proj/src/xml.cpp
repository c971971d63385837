#include "xml.hpp"

#include <cctype>
#include <cstdint>

#include "semad/error.hpp"

namespace semad::xml {

std::optional<std::string_view> Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return std::string_view(v);
  }
  return std::nullopt;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view doc) : doc_(doc) {}

  Element document() {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    Element root = element();
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError("XML: " + msg, line_, col_); }

  bool at_end() const { return pos_ >= doc_.size(); }
  char peek(std::size_t off = 0) const { return pos_ + off < doc_.size() ? doc_[pos_ + off] : '\0'; }
  bool starts_with(std::string_view s) const { return doc_.substr(pos_).starts_with(s); }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      if (doc_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) advance();
  }

  void skip_until(std::string_view terminator, const char* what) {
    while (!at_end() && !starts_with(terminator)) advance();
    if (at_end()) fail(std::string("unterminated ") + what);
    advance(terminator.size());
  }

  // Prolog, comments, PIs, DOCTYPE and whitespace between top-level nodes.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  void skip_doctype() {
    int depth = 0;
    while (!at_end()) {
      const char c = peek();
      advance();
      if (c == '[') ++depth;
      if (c == ']') --depth;
      if (c == '>' && depth <= 0) return;
    }
    fail("unterminated DOCTYPE");
  }

  static bool name_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == ':' || c == '-' || c == '.' || u >= 0x80;
  }

  std::string name() {
    const std::size_t start = pos_;
    while (!at_end() && name_char(peek())) advance();
    if (pos_ == start) fail("expected name");
    return std::string(doc_.substr(start, pos_ - start));
  }

  static std::string_view local(std::string_view qname) {
    const auto colon = qname.find(':');
    return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  void entity(std::string& out) {
    advance();  // '&'
    const std::size_t start = pos_;
    while (!at_end() && peek() != ';' && pos_ - start < 12) advance();
    if (peek() != ';') fail("unterminated entity reference");
    const std::string_view ent = doc_.substr(start, pos_ - start);
    advance();
    if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "amp") out.push_back('&');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (ent.size() > 1 && ent[0] == '#') {
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const std::string digits(ent.substr(hex ? 2 : 1));
      if (digits.empty()) fail("empty character reference");
      std::uint32_t cp = 0;
      try {
        cp = static_cast<std::uint32_t>(std::stoul(digits, nullptr, hex ? 16 : 10));
      } catch (const std::exception&) {
        fail("bad character reference &" + std::string(ent) + ";");
      }
      append_utf8(out, cp);
    } else {
      fail("unknown entity &" + std::string(ent) + ";");
    }
  }

  std::string attribute_value() {
    const char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
    advance();
    std::string value;
    while (!at_end() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        entity(value);
      } else {
        value.push_back(peek());
        advance();
      }
    }
    if (at_end()) fail("unterminated attribute value");
    advance();
    return value;
  }

  Element element() {
    Element el;
    el.line = line_;
    advance();  // '<'
    const std::string qname = name();
    el.name = std::string(local(qname));
    for (;;) {
      skip_ws();
      if (at_end()) fail("unterminated start tag <" + qname + ">");
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      std::string key = name();
      skip_ws();
      if (peek() != '=') fail("expected '=' after attribute " + key);
      advance();
      skip_ws();
      el.attributes.emplace_back(std::move(key), attribute_value());
    }
    // Content.
    for (;;) {
      if (at_end()) fail("missing end tag </" + qname + ">");
      if (starts_with("</")) {
        advance(2);
        const std::string closing = name();
        if (closing != qname) fail("mismatched end tag </" + closing + ">, expected </" + qname + ">");
        skip_ws();
        if (peek() != '>') fail("expected '>'");
        advance();
        return el;
      }
      if (starts_with("<!--")) {
        skip_until("-->", "comment");
      } else if (starts_with("<![CDATA[")) {
        skip_until("]]>", "CDATA section");
      } else if (starts_with("<?")) {
        skip_until("?>", "processing instruction");
      } else if (peek() == '<') {
        el.children.push_back(element());
      } else if (peek() == '&') {
        std::string sink;
        entity(sink);
      } else {
        advance();
      }
    }
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

Element parse(std::string_view document) { return Reader(document).document(); }

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace semad::xml
