#include "causaldt/dot.hpp"

#include <cctype>
#include <sstream>

namespace causaldt {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (const char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string id(const std::string& s) { return is_identifier(s) ? s : quoted(s); }

}  // namespace

std::string display_label(const std::string& name) {
  const auto at = name.find("_of_");
  if (at == std::string::npos || at == 0) return name;
  std::vector<std::string> parts;
  std::string rest = name.substr(at + 4);
  std::size_t start = 0;
  while (true) {
    const auto next = rest.find('_', start);
    parts.push_back(rest.substr(start, next - start));
    if (next == std::string::npos) break;
    start = next + 1;
  }
  std::string out = name.substr(0, at) + "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) return name;
    out += (i ? ", " : "") + parts[i];
  }
  return out + ")";
}

std::string export_dot(const InfluenceDiagram& d) {
  std::ostringstream out;
  out << "digraph diagram {\n";
  for (const auto& n : d.nodes) {
    out << "  " << id(n.name) << " [";
    switch (n.kind) {
      case NodeKind::decision:
        out << "shape=box, label=" << quoted(display_label(n.name));
        break;
      case NodeKind::chance:
        out << "shape=ellipse, label=" << quoted(display_label(n.name));
        break;
      case NodeKind::deterministic: {
        std::string label = display_label(n.name) + " := f(";
        for (std::size_t k = 0; k < n.parents.size(); ++k) label += (k ? ", " : "") + display_label(n.parents[k]);
        out << "shape=ellipse, peripheries=2, label=" << quoted(label + ")");
        break;
      }
    }
    out << "];\n";
  }
  for (const auto& n : d.nodes) {
    for (const auto& p : n.parents) out << "  " << id(p) << " -> " << id(n.name) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace causaldt
