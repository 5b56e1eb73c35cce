#include "grpd/io.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace grpd {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

}  // namespace

ParseResult parse_groupoid_text(const std::string& text) {
  ParseResult res;
  RawGroupoid raw;
  std::vector<ParseError>& errors = res.errors;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  std::set<std::string> seen_objects, seen_arrows;
  while (std::getline(is, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "grpd" || tok[1] != "v1") {
        errors.push_back({lineno, "expected header 'grpd v1'"});
        return res;
      }
      header = true;
      continue;
    }
    const std::string& kw = tok[0];
    auto arity = [&](size_t n) {
      if (tok.size() == n + 1) return true;
      errors.push_back({lineno, "'" + kw + "' expects " + std::to_string(n) +
                                    " fields"});
      return false;
    };
    if (kw == "object") {
      if (!arity(1)) continue;
      if (!seen_objects.insert(tok[1]).second)
        errors.push_back({lineno, "duplicate object '" + tok[1] + "'"});
      raw.objects.push_back(tok[1]);
    } else if (kw == "arrow") {
      if (!arity(3)) continue;
      if (!seen_arrows.insert(tok[1]).second)
        errors.push_back({lineno, "duplicate arrow '" + tok[1] + "'"});
      raw.arrows.push_back(tok[1]);
      raw.src[tok[1]] = tok[2];
      raw.tgt[tok[1]] = tok[3];
    } else if (kw == "unit") {
      if (!arity(2)) continue;
      raw.unit[tok[1]] = tok[2];
    } else if (kw == "inv") {
      if (!arity(2)) continue;
      raw.inv[tok[1]] = tok[2];
    } else if (kw == "comp") {
      if (!arity(3)) continue;
      raw.compose.push_back({tok[1], tok[2], tok[3]});
    } else {
      errors.push_back({lineno, "unknown keyword '" + kw + "'"});
    }
  }
  if (!header) errors.push_back({lineno, "missing header 'grpd v1'"});
  // dangling references are reported here with context; validate() re-checks
  for (const auto& [arrow, obj] : raw.src)
    if (!seen_objects.count(obj))
      errors.push_back({0, "src of '" + arrow + "' names unknown object '" +
                               obj + "'"});
  for (const auto& [arrow, obj] : raw.tgt)
    if (!seen_objects.count(obj))
      errors.push_back({0, "tgt of '" + arrow + "' names unknown object '" +
                               obj + "'"});
  for (const auto& [obj, arrow] : raw.unit)
    if (!seen_arrows.count(arrow))
      errors.push_back({0, "unit of '" + obj + "' names unknown arrow '" +
                               arrow + "'"});
  if (!errors.empty()) return res;
  res.groupoid = std::move(raw);
  return res;
}

RawGroupoid normalize(const RawGroupoid& raw) {
  RawGroupoid out = raw;
  std::sort(out.objects.begin(), out.objects.end());
  std::sort(out.arrows.begin(), out.arrows.end());
  std::sort(out.compose.begin(), out.compose.end());
  return out;
}

std::string serialize_groupoid_text(const RawGroupoid& raw) {
  RawGroupoid n = normalize(raw);
  std::ostringstream os;
  os << "grpd v1\n";
  for (const auto& b : n.objects) os << "object " << b << "\n";
  for (const auto& a : n.arrows)
    os << "arrow " << a << " " << n.src.at(a) << " " << n.tgt.at(a) << "\n";
  for (const auto& b : n.objects) os << "unit " << b << " " << n.unit.at(b) << "\n";
  for (const auto& a : n.arrows) os << "inv " << a << " " << n.inv.at(a) << "\n";
  for (const auto& t : n.compose)
    os << "comp " << t[0] << " " << t[1] << " " << t[2] << "\n";
  return os.str();
}

ParseResult parse_groupoid_json(const std::string& text) {
  ParseResult res;
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    res.errors.push_back({0, "malformed JSON"});
    return res;
  }
  try {
    RawGroupoid raw;
    if (j.value("format", "") != "grpd-v1") {
      res.errors.push_back({0, "expected \"format\": \"grpd-v1\""});
      return res;
    }
    raw.objects = j.at("objects").get<std::vector<std::string>>();
    for (const auto& a : j.at("arrows")) {
      std::string id = a.at("id").get<std::string>();
      raw.arrows.push_back(id);
      raw.src[id] = a.at("src").get<std::string>();
      raw.tgt[id] = a.at("tgt").get<std::string>();
    }
    raw.unit = j.at("units").get<std::map<std::string, std::string>>();
    raw.inv = j.at("inverses").get<std::map<std::string, std::string>>();
    for (const auto& t : j.at("compose"))
      raw.compose.push_back({t.at(0).get<std::string>(),
                             t.at(1).get<std::string>(),
                             t.at(2).get<std::string>()});
    res.groupoid = std::move(raw);
  } catch (const nlohmann::json::exception& e) {
    res.errors.push_back({0, std::string("bad document: ") + e.what()});
  }
  return res;
}

std::string serialize_groupoid_json(const RawGroupoid& raw) {
  RawGroupoid n = normalize(raw);
  nlohmann::json j;
  j["format"] = "grpd-v1";
  j["objects"] = n.objects;
  j["arrows"] = nlohmann::json::array();
  for (const auto& a : n.arrows)
    j["arrows"].push_back({{"id", a}, {"src", n.src.at(a)}, {"tgt", n.tgt.at(a)}});
  j["units"] = n.unit;
  j["inverses"] = n.inv;
  j["compose"] = nlohmann::json::array();
  for (const auto& t : n.compose) j["compose"].push_back({t[0], t[1], t[2]});
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

namespace {

// Shared reader for documents that may embed a groupoid block:
//   <keyword> inline ... end   or   <keyword> <path>
struct BlockReader {
  std::istringstream is;
  int lineno = 0;
  explicit BlockReader(const std::string& text) : is(text) {}

  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(is, line)) {
      ++lineno;
      std::vector<std::string> tok = tokenize(line);
      if (!tok.empty()) return tok;
    }
    return std::nullopt;
  }

  // collects lines until a bare 'end'
  std::string collect_until_end() {
    std::string out, line;
    while (std::getline(is, line)) {
      ++lineno;
      std::vector<std::string> tok = tokenize(line);
      if (tok.size() == 1 && tok[0] == "end") return out;
      out += line + "\n";
    }
    return out;
  }
};

}  // namespace

FunctorParseResult parse_functor_text(const std::string& text) {
  FunctorParseResult res;
  FunctorDocument doc;
  BlockReader reader(text);
  auto first = reader.next();
  if (!first || first->size() != 2 || (*first)[0] != "fnct" ||
      (*first)[1] != "v1") {
    res.errors.push_back({reader.lineno, "expected header 'fnct v1'"});
    return res;
  }
  while (auto tok = reader.next()) {
    const std::string& kw = (*tok)[0];
    if ((kw == "source" || kw == "target") && tok->size() == 2) {
      std::string ref = (*tok)[1];
      std::optional<RawGroupoid> inline_doc;
      if (ref == "inline") {
        ParseResult inner = parse_groupoid_text(reader.collect_until_end());
        if (!inner.ok()) {
          for (auto& e : inner.errors)
            res.errors.push_back({e.line, kw + " inline: " + e.message});
          continue;
        }
        inline_doc = std::move(inner.groupoid);
        ref.clear();
      }
      if (kw == "source") {
        doc.source_path = ref;
        doc.source_inline = std::move(inline_doc);
      } else {
        doc.target_path = ref;
        doc.target_inline = std::move(inline_doc);
      }
    } else if (kw == "obj" && tok->size() == 3) {
      doc.object_map[(*tok)[1]] = (*tok)[2];
    } else if (kw == "arr" && tok->size() == 3) {
      doc.arrow_map[(*tok)[1]] = (*tok)[2];
    } else {
      res.errors.push_back({reader.lineno, "unknown or malformed line '" + kw + "'"});
    }
  }
  if (!res.errors.empty()) return res;
  res.doc = std::move(doc);
  return res;
}

std::string serialize_functor_text(const FunctorDocument& doc) {
  std::ostringstream os;
  os << "fnct v1\n";
  auto block = [&](const char* kw, const std::string& path,
                   const std::optional<RawGroupoid>& inline_doc) {
    if (inline_doc) {
      os << kw << " inline\n" << serialize_groupoid_text(*inline_doc) << "end\n";
    } else {
      os << kw << " " << path << "\n";
    }
  };
  block("source", doc.source_path, doc.source_inline);
  block("target", doc.target_path, doc.target_inline);
  for (const auto& [from, to] : doc.object_map)
    os << "obj " << from << " " << to << "\n";
  for (const auto& [from, to] : doc.arrow_map)
    os << "arr " << from << " " << to << "\n";
  return os.str();
}

ActionParseResult parse_action_text(const std::string& text) {
  ActionParseResult res;
  ActionDocument doc;
  BlockReader reader(text);
  auto first = reader.next();
  if (!first || first->size() != 2 || (*first)[0] != "actn" ||
      (*first)[1] != "v1") {
    res.errors.push_back({reader.lineno, "expected header 'actn v1'"});
    return res;
  }
  while (auto tok = reader.next()) {
    const std::string& kw = (*tok)[0];
    if (kw == "groupoid" && tok->size() == 2) {
      if ((*tok)[1] == "inline") {
        ParseResult inner = parse_groupoid_text(reader.collect_until_end());
        if (!inner.ok()) {
          for (auto& e : inner.errors)
            res.errors.push_back({e.line, "groupoid inline: " + e.message});
          continue;
        }
        doc.groupoid_inline = std::move(inner.groupoid);
      } else {
        doc.groupoid_path = (*tok)[1];
      }
    } else if (kw == "point" && tok->size() == 3) {
      doc.points.push_back({(*tok)[1], (*tok)[2]});
    } else if (kw == "act" && tok->size() == 4) {
      doc.act.push_back({(*tok)[1], (*tok)[2], (*tok)[3]});
    } else {
      res.errors.push_back({reader.lineno, "unknown or malformed line '" + kw + "'"});
    }
  }
  if (!res.errors.empty()) return res;
  res.doc = std::move(doc);
  return res;
}

// ---------------------------------------------------------------------------
// DOT emission

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

void emit_edges(std::ostringstream& os, const Groupoid& g,
                const std::string& indent) {
  std::vector<int> order(g.arrow_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.arrow_name(a) < g.arrow_name(b);
  });
  for (int a : order) {
    if (g.is_unit(a)) continue;
    os << indent << quote(g.object_name(g.src(a))) << " -> "
       << quote(g.object_name(g.tgt(a))) << " [label=" << quote(g.arrow_name(a))
       << "];\n";
  }
}

}  // namespace

std::string emit_dot(const Groupoid& g) {
  std::ostringstream os;
  os << "digraph groupoid {\n";
  std::vector<std::string> objects = g.object_names();
  std::sort(objects.begin(), objects.end());
  for (const auto& b : objects) os << "  " << quote(b) << ";\n";
  emit_edges(os, g, "  ");
  os << "}\n";
  return os.str();
}

std::string emit_dot_orbits(const Groupoid& g) {
  AnchorAnalysis an = analyze_anchor(g);
  std::ostringstream os;
  os << "digraph groupoid {\n";
  for (size_t k = 0; k < an.orbits.size(); ++k) {
    os << "  subgraph cluster_" << k << " {\n";
    std::vector<std::string> names;
    for (int b : an.orbits[k]) names.push_back(g.object_name(b));
    std::sort(names.begin(), names.end());
    os << "    label=" << quote("orbit " + std::to_string(k)) << ";\n";
    for (const auto& b : names) os << "    " << quote(b) << ";\n";
    os << "  }\n";
  }
  emit_edges(os, g, "  ");
  os << "}\n";
  return os.str();
}

std::string emit_dot_butterfly(const Butterfly& b) {
  const Groupoid& k = *b.core;
  std::set<std::string> in_r(b.wing_r.arrow_names().begin(),
                             b.wing_r.arrow_names().end());
  std::set<std::string> in_r2(b.wing_r2.arrow_names().begin(),
                              b.wing_r2.arrow_names().end());
  std::ostringstream os;
  os << "digraph butterfly {\n";
  std::vector<std::string> objects = k.object_names();
  std::sort(objects.begin(), objects.end());
  for (const auto& o : objects) os << "  " << quote(o) << ";\n";
  std::vector<int> order(k.arrow_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return k.arrow_name(x) < k.arrow_name(y);
  });
  for (int a : order) {
    if (k.is_unit(a)) continue;
    const std::string& name = k.arrow_name(a);
    std::string cls = in_r.count(name)    ? "wingR"
                      : in_r2.count(name) ? "wingR2"
                                          : "core";
    os << "  " << quote(k.object_name(k.src(a))) << " -> "
       << quote(k.object_name(k.tgt(a))) << " [label=" << quote(name)
       << ", class=" << quote(cls) << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace grpd
