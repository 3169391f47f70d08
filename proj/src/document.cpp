#include "causaldt/document.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "causaldt/error.hpp"

namespace causaldt {

namespace {

using json = nlohmann::json;

std::string quote_key(const std::string& key) {
  for (const char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return "[" + json(key).dump() + "]";
  }
  return "." + key;
}

// Builds a DOM like nlohmann's own SAX parser, except that floating-point
// numbers keep their source text (stored as strings) and repeated keys are
// rejected.
class ExactSax {
 public:
  explicit ExactSax(const std::string& text) : text_(text) {}

  json result;

  bool null() { return put(json(nullptr)); }
  bool boolean(bool v) { return put(json(v)); }
  bool number_integer(json::number_integer_t v) { return put(json(v)); }
  bool number_unsigned(json::number_unsigned_t v) { return put(json(v)); }
  bool number_float(json::number_float_t, const json::string_t& text) { return put(json(text)); }
  bool string(json::string_t& v) { return put(json(v)); }
  bool binary(json::binary_t& v) { return put(json(v)); }

  bool start_object(std::size_t) {
    put(json::object());
    return true;
  }
  bool key(json::string_t& k) {
    json& obj = *stack_.back().node;
    if (obj.contains(k)) throw SchemaError(path() + quote_key(k), "duplicate key");
    pending_key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    put(json::array());
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    const std::size_t at = std::min(position == 0 ? 0 : position - 1, text_.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = ex.what();
    if (const auto colon = message.find(": "); colon != std::string::npos) message = message.substr(colon + 2);
    const std::string prefix = "syntax error ";
    if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
    throw ParseError(message, line, column);
  }

 private:
  struct Frame {
    json* node;
    std::string segment;
  };

  std::string path() const {
    std::string out = "$";
    for (const auto& f : stack_) out += f.segment;
    return out;
  }

  bool put(json value) {
    const bool container = value.is_object() || value.is_array();
    if (stack_.empty()) {
      result = std::move(value);
      if (container) stack_.push_back({&result, ""});
      return true;
    }
    json& parent = *stack_.back().node;
    json* slot = nullptr;
    std::string segment;
    if (parent.is_array()) {
      segment = "[" + std::to_string(parent.size()) + "]";
      parent.push_back(std::move(value));
      slot = &parent.back();
    } else {
      segment = quote_key(pending_key_);
      slot = &(parent[pending_key_] = std::move(value));
    }
    if (container) stack_.push_back({slot, segment});
    return true;
  }

  const std::string& text_;
  std::vector<Frame> stack_;
  std::string pending_key_;
};

json parse_json(const std::string& text) {
  ExactSax sax(text);
  json::sax_parse(text, &sax);
  return std::move(sax.result);
}

// Schema helpers. Paths are written relative to the document root.

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + quote_key(key); }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  for (const char* k : required) {
    if (!j.contains(k)) throw SchemaError(at(path, k), "missing field");
  }
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* r : required) known = known || k == r;
    for (const char* o : optional) known = known || k == o;
    if (!known) throw SchemaError(at(path, k), "unexpected field");
  }
  return j;
}

const json& open_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  return j;
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> texts(const json& j, const std::string& path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& e : array(j, path)) out.push_back(text(e, at(path, i++)));
  return out;
}

Probability probability(const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Probability(j.get<long>());
    if (j.is_string()) return Probability::parse(j.get<std::string>());
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path, "expected a probability");
}

int lookup(const std::vector<std::string>& symbols, const std::string& s, const std::string& path) {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == s) return static_cast<int>(i);
  }
  throw SchemaError(path, "undeclared instance \"" + s + "\"");
}

void check_header(const json& root) {
  const json& v = root.at("format_version");
  if (!v.is_number_integer()) throw SchemaError("format_version", "expected an integer");
  if (v.get<long>() != 1) throw SchemaError("format_version", "unsupported version " + std::to_string(v.get<long>()));
}

DecisionProblem read_table(const json& root) {
  object(root, "", {"format_version", "kind", "decisions", "chances", "states"});
  DecisionProblem p;
  std::size_t i = 0;
  for (const auto& d : array(root["decisions"], "decisions")) {
    const auto path = at("decisions", i++);
    object(d, path, {"name", "alternatives"});
    p.decisions.push_back({text(d["name"], at(path, "name")), texts(d["alternatives"], at(path, "alternatives"))});
  }
  i = 0;
  for (const auto& c : array(root["chances"], "chances")) {
    const auto path = at("chances", i++);
    object(c, path, {"name", "instances"});
    p.chances.push_back({text(c["name"], at(path, "name")), texts(c["instances"], at(path, "instances"))});
  }

  std::map<std::string, std::size_t> keys;
  const std::size_t alternatives = p.alternative_count();
  for (std::size_t a = 0; a < alternatives; ++a) keys[p.alternative_key(a)] = a;

  i = 0;
  for (const auto& s : array(root["states"], "states")) {
    const auto path = at("states", i++);
    object(s, path, {"label", "probability", "outcomes"});
    WeightedState ws;
    ws.state.label = text(s["label"], at(path, "label"));
    ws.probability = probability(s["probability"], at(path, "probability"));
    const auto opath = at(path, "outcomes");
    const json& outcomes = open_object(s["outcomes"], opath);
    for (const auto& [key, value] : outcomes.items()) {
      if (!keys.count(key)) throw SchemaError(at(opath, key), "not a joint alternative");
    }
    ws.state.outcome.resize(alternatives);
    for (const auto& [key, a] : keys) {
      const auto apath = at(opath, key);
      if (!outcomes.contains(key)) throw SchemaError(apath, "missing joint alternative");
      const json& realization = outcomes[key];
      if (!realization.is_object()) throw SchemaError(apath, "expected an object");
      for (const auto& [var, inst] : realization.items()) {
        bool known = false;
        for (const auto& c : p.chances) known = known || c.name == var;
        if (!known) throw SchemaError(at(apath, var), "undeclared chance variable");
      }
      for (const auto& c : p.chances) {
        if (!realization.contains(c.name)) throw SchemaError(at(apath, c.name), "missing field");
        ws.state.outcome[a].push_back(lookup(c.instances, text(realization[c.name], at(apath, c.name)), at(apath, c.name)));
      }
    }
    p.states.push_back(std::move(ws));
  }

  const auto v = validate_problem(p);
  if (!v.ok) throw ValidationError(v.path, v.message);
  return normalize(std::move(p));
}

NodeKind node_kind(const json& j, const std::string& path) {
  const auto k = text(j, path);
  if (k == "decision") return NodeKind::decision;
  if (k == "chance") return NodeKind::chance;
  if (k == "deterministic") return NodeKind::deterministic;
  throw SchemaError(path, "unknown node kind \"" + k + "\"");
}

// Parent configuration index of a "given" object, which must bind exactly
// the node's parents.
std::size_t given_config(const StructuralModel& m, std::size_t i, const json& given, const std::string& path) {
  open_object(given, path);
  const Node& n = m.nodes[i];
  for (const auto& [k, v] : given.items()) {
    if (std::find(n.parents.begin(), n.parents.end(), k) == n.parents.end()) throw SchemaError(at(path, k), "not a parent");
  }
  std::size_t config = 0;
  for (const auto& parent : n.parents) {
    if (!given.contains(parent)) throw SchemaError(at(path, parent), "missing field");
    const Node& pn = m.nodes[m.index_of(parent)];
    const int v = lookup(pn.instances, text(given[parent], at(path, parent)), at(path, parent));
    config = config * pn.instances.size() + static_cast<std::size_t>(v);
  }
  return config;
}

StructuralModel read_model(const json& root, DocumentKind kind) {
  object(root, "", {"format_version", "kind", "nodes"});
  StructuralModel m;
  const json& nodes = array(root["nodes"], "nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = at("nodes", i);
    const json& j = object(nodes[i], path, {"name", "kind", "instances", "parents"}, {"latent", "cpt", "function"});
    Node n;
    n.name = text(j["name"], at(path, "name"));
    n.kind = node_kind(j["kind"], at(path, "kind"));
    n.instances = texts(j["instances"], at(path, "instances"));
    n.parents = texts(j["parents"], at(path, "parents"));
    if (j.contains("latent")) {
      if (!j["latent"].is_boolean()) throw SchemaError(at(path, "latent"), "expected a boolean");
      n.latent = j["latent"].get<bool>();
    }
    if (n.kind != NodeKind::chance && j.contains("cpt")) throw SchemaError(at(path, "cpt"), "only chance nodes have a cpt");
    if (n.kind != NodeKind::deterministic && j.contains("function")) {
      throw SchemaError(at(path, "function"), "only deterministic nodes have a function");
    }
    if (n.kind == NodeKind::chance && !j.contains("cpt")) throw SchemaError(at(path, "cpt"), "missing field");
    if (n.kind == NodeKind::deterministic && !j.contains("function")) throw SchemaError(at(path, "function"), "missing field");
    for (const auto& other : m.nodes) {
      if (other.name == n.name) throw SchemaError(at(path, "name"), "duplicate node \"" + n.name + "\"");
    }
    m.nodes.push_back(std::move(n));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = at("nodes", i);
    for (std::size_t k = 0; k < m.nodes[i].parents.size(); ++k) {
      if (!m.contains(m.nodes[i].parents[k])) throw SchemaError(at(at(path, "parents"), k), "unknown node");
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node& n = m.nodes[i];
    if (n.kind == NodeKind::decision) continue;
    const auto path = at("nodes", i);
    const std::size_t configs = m.config_count(i);
    std::vector<bool> seen(configs, false);
    const char* field = n.kind == NodeKind::chance ? "cpt" : "function";
    const auto tpath = at(path, field);
    const json& rows = array(nodes[i][field], tpath);
    if (n.kind == NodeKind::chance) {
      n.cpt.assign(configs, std::vector<Probability>(n.instances.size()));
    } else {
      n.function.assign(configs, kUnreachable);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto rpath = at(tpath, r);
      if (n.kind == NodeKind::chance) {
        object(rows[r], rpath, {"given", "distribution"});
      } else {
        object(rows[r], rpath, {"given", "value"});
      }
      const std::size_t c = given_config(m, i, rows[r]["given"], at(rpath, "given"));
      if (seen[c]) throw SchemaError(at(rpath, "given"), "repeats an earlier row");
      seen[c] = true;
      if (n.kind == NodeKind::chance) {
        const auto dpath = at(rpath, "distribution");
        const json& dist = open_object(rows[r]["distribution"], dpath);
        for (const auto& [inst, p] : dist.items()) {
          n.cpt[c][static_cast<std::size_t>(lookup(n.instances, inst, at(dpath, inst)))] = probability(p, at(dpath, inst));
        }
      } else {
        const json& v = rows[r]["value"];
        if (!v.is_null()) n.function[c] = lookup(n.instances, text(v, at(rpath, "value")), at(rpath, "value"));
      }
    }
    for (std::size_t c = 0; c < configs; ++c) {
      if (!seen[c]) throw SchemaError(tpath, "no row for parent configuration " + std::to_string(c));
    }
  }
  const auto v = kind == DocumentKind::structural ? validate_structural(m) : validate_diagram(m);
  if (!v.ok) throw ValidationError(v.path, v.message);
  return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json given_of(const StructuralModel& m, std::size_t i, std::size_t config) {
  json given = json::object();
  const auto digits = m.config_digits(i, config);
  const auto parents = m.parent_indices(i);
  for (std::size_t k = 0; k < parents.size(); ++k) {
    given[m.nodes[parents[k]].name] = m.nodes[parents[k]].instances[static_cast<std::size_t>(digits[k])];
  }
  return given;
}

}  // namespace

std::string to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::table:
      return "table";
    case DocumentKind::structural:
      return "structural";
    case DocumentKind::diagram:
      return "diagram";
  }
  return "table";
}

Document parse_document(const std::string& source) {
  const json root = parse_json(source);
  if (!root.is_object()) throw SchemaError("$", "expected an object");
  if (!root.contains("format_version")) throw SchemaError("format_version", "missing field");
  if (!root.contains("kind")) throw SchemaError("kind", "missing field");
  const auto kind_text = text(root["kind"], "kind");
  check_header(root);
  Document doc;
  if (kind_text == "table") {
    doc.kind = DocumentKind::table;
    doc.problem = read_table(root);
  } else if (kind_text == "structural" || kind_text == "diagram") {
    doc.kind = kind_text == "structural" ? DocumentKind::structural : DocumentKind::diagram;
    doc.model = read_model(root, doc.kind);
  } else {
    throw SchemaError("kind", "unknown kind \"" + kind_text + "\"");
  }
  return doc;
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string serialize_problem(const DecisionProblem& input) {
  const DecisionProblem p = normalize(input);
  json root = json::object();
  root["format_version"] = 1;
  root["kind"] = "table";
  root["decisions"] = json::array();
  for (const auto& d : p.decisions) root["decisions"].push_back({{"name", d.name}, {"alternatives", d.alternatives}});
  root["chances"] = json::array();
  for (const auto& c : p.chances) root["chances"].push_back({{"name", c.name}, {"instances", c.instances}});
  root["states"] = json::array();
  for (const auto& ws : p.states) {
    json outcomes = json::object();
    for (std::size_t a = 0; a < ws.state.outcome.size(); ++a) {
      json r = json::object();
      for (std::size_t u = 0; u < p.chances.size(); ++u) {
        r[p.chances[u].name] = p.chances[u].instances[static_cast<std::size_t>(ws.state.outcome[a][u])];
      }
      outcomes[p.alternative_key(a)] = std::move(r);
    }
    root["states"].push_back({{"label", ws.state.label}, {"probability", ws.probability.str()}, {"outcomes", std::move(outcomes)}});
  }
  return dump(root);
}

std::string serialize_model(const StructuralModel& m, DocumentKind kind) {
  json root = json::object();
  root["format_version"] = 1;
  root["kind"] = to_string(kind == DocumentKind::table ? DocumentKind::structural : kind);
  root["nodes"] = json::array();
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    const Node& n = m.nodes[i];
    json j = {{"name", n.name}, {"kind", to_string(n.kind)}, {"instances", n.instances}, {"parents", n.parents}};
    if (n.latent) j["latent"] = true;
    if (n.kind == NodeKind::chance) {
      j["cpt"] = json::array();
      for (std::size_t c = 0; c < n.cpt.size(); ++c) {
        json dist = json::object();
        for (std::size_t k = 0; k < n.instances.size(); ++k) {
          if (!n.cpt[c][k].is_zero()) dist[n.instances[k]] = n.cpt[c][k].str();
        }
        j["cpt"].push_back({{"given", given_of(m, i, c)}, {"distribution", std::move(dist)}});
      }
    } else if (n.kind == NodeKind::deterministic) {
      j["function"] = json::array();
      for (std::size_t c = 0; c < n.function.size(); ++c) {
        const int v = n.function[c];
        j["function"].push_back({{"given", given_of(m, i, c)},
                                 {"value", v == kUnreachable ? json(nullptr) : json(n.instances[static_cast<std::size_t>(v)])}});
      }
    }
    root["nodes"].push_back(std::move(j));
  }
  return dump(root);
}

std::string serialize(const Document& document) {
  return document.is_table() ? serialize_problem(document.problem) : serialize_model(document.model, document.kind);
}

}  // namespace causaldt
