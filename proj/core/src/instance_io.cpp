#include "trivote/instance_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace trivote {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct NumberReader {
  std::istream& in;
  std::size_t line = 0;

  // Reads the next whitespace/comma separated token across lines; empty at EOF.
  std::optional<std::string> next_token() {
    while (true) {
      if (buffer.empty()) {
        std::string raw;
        if (!std::getline(in, raw)) return std::nullopt;
        ++line;
        const std::string t = trim(raw);
        if (t.empty() || t[0] == '#') continue;
        buffer = t;
        pos = 0;
      }
      while (pos < buffer.size() &&
             (std::isspace(static_cast<unsigned char>(buffer[pos])) || buffer[pos] == ','))
        ++pos;
      if (pos >= buffer.size()) {
        buffer.clear();
        continue;
      }
      std::size_t end = pos;
      while (end < buffer.size() &&
             !std::isspace(static_cast<unsigned char>(buffer[end])) && buffer[end] != ',')
        ++end;
      std::string tok = buffer.substr(pos, end - pos);
      pos = end;
      if (pos >= buffer.size()) buffer.clear();
      return tok;
    }
  }

  double next_number(const char* what) {
    auto tok = next_token();
    if (!tok) throw ParseError(line, std::string("unexpected end of file while reading ") + what);
    char* end = nullptr;
    const double v = std::strtod(tok->c_str(), &end);
    if (end != tok->c_str() + tok->size())
      throw ParseError(line, "invalid number '" + *tok + "'");
    if (std::isnan(v)) throw ParseError(line, "NaN is not a valid distance or coordinate");
    if (std::isinf(v)) throw ParseError(line, "infinite values are not allowed");
    return v;
  }

  std::string buffer;
  std::size_t pos = 0;
};

std::size_t parse_count(const std::string& value, std::size_t line, const char* what) {
  if (value.empty()) throw ParseError(line, std::string("missing value for ") + what);
  for (char c : value)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, std::string(what) + " must be a positive integer, got '" + value + "'");
  const unsigned long long v = std::stoull(value);
  if (v == 0) throw ParseError(line, std::string(what) + " must be at least 1");
  return static_cast<std::size_t>(v);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MetricInstance parse_instance(std::istream& in) {
  std::optional<std::string> kind;
  std::optional<std::size_t> agents;
  std::optional<std::size_t> alternatives;

  std::size_t line = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
      throw ParseError(line, "expected 'key: value', got '" + text + "'");
    const std::string key = trim(text.substr(0, colon));
    const std::string value = trim(text.substr(colon + 1));

    if (key == "kind") {
      if (kind) throw ParseError(line, "duplicate 'kind'");
      if (value != "matrix" && value != "planar")
        throw ParseError(line, "kind must be 'matrix' or 'planar', got '" + value + "'");
      kind = value;
    } else if (key == "agents") {
      if (agents) throw ParseError(line, "duplicate 'agents'");
      agents = parse_count(value, line, "agents");
    } else if (key == "alternatives") {
      if (alternatives) throw ParseError(line, "duplicate 'alternatives'");
      alternatives = parse_count(value, line, "alternatives");
    } else if (key == "matrix" || key == "points") {
      if (!value.empty()) throw ParseError(line, "'" + key + ":' must not carry a value");
      if (!kind) throw ParseError(line, "'kind' must appear before the data section");
      if (!agents || !alternatives)
        throw ParseError(line, "'agents' and 'alternatives' must appear before the data section");
      if ((*kind == "matrix") != (key == "matrix"))
        throw ParseError(line, "data section '" + key + "' does not match kind '" + *kind + "'");

      const std::size_t entities = *agents + *alternatives;
      NumberReader reader{in, line, {}, 0};
      MetricInstance result = [&] {
        if (key == "matrix") {
          std::vector<double> m;
          m.reserve(entities * entities);
          for (std::size_t i = 0; i < entities * entities; ++i)
            m.push_back(reader.next_number("matrix entries"));
          try {
            return MetricInstance::from_matrix(*agents, *alternatives, std::move(m));
          } catch (const std::invalid_argument& e) {
            throw ParseError(reader.line, e.what());
          }
        }
        std::vector<Point> pts(entities);
        for (std::size_t i = 0; i < entities; ++i) {
          pts[i].x = reader.next_number("point coordinates");
          pts[i].y = reader.next_number("point coordinates");
        }
        try {
          return MetricInstance::from_points(*agents, *alternatives, std::move(pts));
        } catch (const std::invalid_argument& e) {
          throw ParseError(reader.line, e.what());
        }
      }();
      if (auto extra = reader.next_token())
        throw ParseError(reader.line, "unexpected trailing token '" + *extra + "'");
      return result;
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  throw ParseError(line, "missing data section ('matrix:' or 'points:')");
}

MetricInstance parse_instance_string(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

MetricInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_instance(in);
}

void emit_instance(const MetricInstance& inst, std::ostream& out) {
  const std::size_t entities = inst.entity_count();
  out << "kind: " << (inst.kind() == GeometryKind::Matrix ? "matrix" : "planar") << "\n";
  out << "agents: " << inst.agent_count() << "\n";
  out << "alternatives: " << inst.alternative_count() << "\n";
  if (inst.kind() == GeometryKind::Matrix) {
    out << "matrix:\n";
    const auto& m = inst.matrix();
    for (std::size_t i = 0; i < entities; ++i) {
      for (std::size_t j = 0; j < entities; ++j) {
        if (j) out << ' ';
        out << format_double(m[i * entities + j]);
      }
      out << "\n";
    }
  } else {
    out << "points:\n";
    for (const Point& p : inst.points())
      out << format_double(p.x) << ' ' << format_double(p.y) << "\n";
  }
}

std::string instance_to_string(const MetricInstance& inst) {
  std::ostringstream out;
  emit_instance(inst, out);
  return out.str();
}

void save_instance(const MetricInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  emit_instance(inst, out);
}

}  // namespace trivote
