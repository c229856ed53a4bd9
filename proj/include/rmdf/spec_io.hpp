#pragma once

#include <optional>
#include <string>

#include "rmdf/graph.hpp"

namespace rmdf {

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;

  std::string str() const;
};

// Parsing is total: any byte stream yields a Graph or a ParseError.
struct ParseResult {
  std::optional<Graph> graph;
  std::optional<ParseError> error;

  bool ok() const { return graph.has_value(); }
};

// Line-oriented `.rmdf` text: a `rmdf 1` header, then `[defaults]`,
// `[actors]`, `[channels]` and `[modes]` sections. `#` comments to end of
// line, UTF-8, actor names may be double-quoted to carry spaces.
ParseResult parse_spec(const std::string& text);
ParseResult parse_spec_file(const std::string& path);

// Canonical form; parse_spec(serialize_spec(g)) is structurally identical
// to g.
std::string serialize_spec(const Graph& g);

}  // namespace rmdf
