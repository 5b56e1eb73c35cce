#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/action.hpp"
#include "grpd/butterfly.hpp"
#include "grpd/groupoid.hpp"

namespace grpd {

/// Parse failure with line context.
struct ParseError {
  int line = 0;
  std::string message;
};

struct ParseResult {
  std::optional<RawGroupoid> groupoid;
  std::vector<ParseError> errors;
  bool ok() const { return groupoid.has_value(); }
};

/// Line-oriented groupoid document:
///   grpd v1
///   object <id>
///   arrow <id> <src> <tgt>
///   unit <object> <arrow>
///   inv <arrow> <arrow>
///   comp <left> <right> <result>
/// '#' starts a comment. Identifiers are arbitrary whitespace-free strings.
ParseResult parse_groupoid_text(const std::string& text);
std::string serialize_groupoid_text(const RawGroupoid& raw);

/// JSON alternative with the same fields.
ParseResult parse_groupoid_json(const std::string& text);
std::string serialize_groupoid_json(const RawGroupoid& raw);

/// Normalized form: objects, arrows and tables sorted by identifier.
RawGroupoid normalize(const RawGroupoid& raw);

/// Functor document:
///   fnct v1
///   source <path> | source inline ... end
///   target <path> | target inline ... end
///   obj <source-object> <target-object>
///   arr <source-arrow> <target-arrow>
struct FunctorDocument {
  std::string source_path;  // empty when inline
  std::string target_path;
  std::optional<RawGroupoid> source_inline;
  std::optional<RawGroupoid> target_inline;
  std::map<std::string, std::string> object_map;
  std::map<std::string, std::string> arrow_map;
};

struct FunctorParseResult {
  std::optional<FunctorDocument> doc;
  std::vector<ParseError> errors;
  bool ok() const { return doc.has_value(); }
};

FunctorParseResult parse_functor_text(const std::string& text);
std::string serialize_functor_text(const FunctorDocument& doc);

/// Action document:
///   actn v1
///   groupoid <path> | groupoid inline ... end
///   point <id> <object>
///   act <arrow> <point> <point>
struct ActionDocument {
  std::string groupoid_path;
  std::optional<RawGroupoid> groupoid_inline;
  std::vector<std::pair<std::string, std::string>> points;  // id, object
  std::vector<std::array<std::string, 3>> act;  // arrow, point, result
};

struct ActionParseResult {
  std::optional<ActionDocument> doc;
  std::vector<ParseError> errors;
  bool ok() const { return doc.has_value(); }
};

ActionParseResult parse_action_text(const std::string& text);

// ---------------------------------------------------------------------------
// DOT emission: objects as nodes, non-unit arrows as directed edges.
// Deterministic: byte-identical output for identical input.

std::string emit_dot(const Groupoid& g);
/// Orbits rendered as clusters.
std::string emit_dot_orbits(const Groupoid& g);
/// Core of a butterfly with wing arrows drawn as two edge classes.
std::string emit_dot_butterfly(const Butterfly& b);

}  // namespace grpd
