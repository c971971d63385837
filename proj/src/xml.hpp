#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semad::xml {

struct Element {
  std::string name;  // local name, namespace prefix stripped
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  std::size_t line = 0;

  std::optional<std::string_view> attribute(std::string_view key) const;
};

// Non-validating reader for the element/attribute subset of XML 1.0.
// Skips the prolog, comments, processing instructions, DOCTYPE, CDATA and
// character data. Throws ParseError with line/column.
Element parse(std::string_view document);

// Escapes &, <, >, " and ' for use in attribute values.
std::string escape(std::string_view text);

}  // namespace semad::xml
