#include "aniso/config.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace aniso {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::sine: return "sine";
    case ProfileKind::multi_sine: return "multi-sine";
    case ProfileKind::square_wave: return "square-wave";
    case ProfileKind::random: return "random";
  }
  return "sine";
}

namespace {

std::string summarize(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& issue : issues) {
    out << "\n  ";
    if (issue.line > 0) out << "line " << issue.line << ": ";
    out << issue.message;
  }
  return out.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"model", {"name", "state_bound", "dimension", "f1", "f2", "A11", "A12", "A21", "A22"}},
      {"grid", {"periods", "cells"}},
      {"initial", {"profile", "amplitude", "offset", "zero_mean", "modes", "seed"}},
      {"scheme", {"cfl", "integrator", "t_end", "output_every", "snapshot_every"}},
      {"condition", {"delta", "lambdas", "r_max", "n_dir", "n_resonant", "lattice", "lattice_extent"}},
      {"audit", {"contraction_constants"}},
      {"output", {"dir"}},
  };
  return keys;
}

class Interpreter {
public:
  std::vector<ConfigIssue> issues;

  void issue(int line, std::string message) { issues.push_back({line, std::move(message)}); }

  std::optional<double> number(const Entry& e, const std::string& key) {
    double v = 0.0;
    const std::string& s = e.value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
      issue(e.line, "malformed number for '" + key + "': '" + s + "'");
      return std::nullopt;
    }
    return v;
  }

  template <typename Int>
  std::optional<Int> integer(const Entry& e, const std::string& key) {
    Int v = 0;
    const std::string& s = e.value;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
      issue(e.line, "malformed integer for '" + key + "': '" + s + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::vector<double>> numbers(const Entry& e, const std::string& key) {
    std::vector<double> out;
    if (trim(e.value).empty()) return out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Entry part{trim(item), e.line};
      auto v = number(part, key);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  std::optional<bool> boolean(const Entry& e, const std::string& key) {
    const std::string& s = e.value;
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    issue(e.line, "malformed boolean for '" + key + "': '" + s + "'");
    return std::nullopt;
  }
};

const Entry* find(const Section& sec, const std::string& key) {
  auto it = sec.find(key);
  return it == sec.end() ? nullptr : &it->second;
}

}  // namespace

ConfigParseError::ConfigParseError(std::vector<ConfigIssue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

ExperimentConfig parse_config(const std::string& text) {
  Interpreter in;
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::string current;

  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find_first_of("#;"); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        in.issue(line_no, "malformed section header '" + line + "'");
        continue;
      }
      current = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!known_keys().count(current)) {
        in.issue(line_no, "unknown section [" + current + "]");
      } else if (section_lines.count(current)) {
        in.issue(line_no, "duplicate section [" + current + "]");
      }
      section_lines.emplace(current, line_no);
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      in.issue(line_no, "expected 'key = value'");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (current.empty()) {
      in.issue(line_no, "key '" + key + "' appears before any section");
      continue;
    }
    auto known = known_keys().find(current);
    if (known == known_keys().end()) continue;
    if (!known->second.count(key)) {
      in.issue(line_no, "unknown key '" + key + "' in [" + current + "]");
      continue;
    }
    if (!sections[current].emplace(key, Entry{value, line_no}).second) {
      in.issue(line_no, "duplicate key '" + key + "'");
    }
  }

  for (const char* required : {"model", "grid", "scheme"}) {
    if (!sections.count(required)) {
      in.issue(0, std::string("missing required section [") + required + "]");
    }
  }

  ExperimentConfig cfg;
  cfg.contraction_constants = {0.0};

  // [model]
  int dimension = 1;
  {
    const Section& sec = sections["model"];
    if (const Entry* e = find(sec, "state_bound")) {
      if (auto v = in.number(*e, "state_bound")) {
        if (*v > 0.0) cfg.model.state_bound = *v;
        else in.issue(e->line, "state_bound must be positive");
      }
    }
    if (const Entry* e = find(sec, "A21")) {
      in.issue(e->line, "only the upper triangle of A is accepted (use A12)");
    }
    const bool is_inline = find(sec, "f1") || find(sec, "f2") || find(sec, "A11") ||
                           find(sec, "A12") || find(sec, "A22") || find(sec, "dimension");
    const Entry* name = find(sec, "name");
    if (is_inline) {
      PolynomialModel poly;
      poly.name = name ? name->value : "custom";
      if (name && is_preset(name->value)) {
        in.issue(name->line, "inline coefficients cannot reuse the preset name '" + name->value + "'");
      }
      if (const Entry* e = find(sec, "dimension")) {
        if (auto v = in.integer<int>(*e, "dimension")) {
          if (*v == 1 || *v == 2) dimension = *v;
          else in.issue(e->line, "dimension must be 1 or 2");
        }
      } else if (find(sec, "f2") || find(sec, "A12") || find(sec, "A22")) {
        dimension = 2;
      }
      poly.dimension = dimension;
      auto poly_of = [&](const std::string& key) {
        Polynomial p;
        if (const Entry* e = find(sec, key)) {
          if (auto v = in.numbers(*e, key)) p.coeffs = *v;
        }
        if (p.coeffs.empty()) p.coeffs = {0.0};
        return p;
      };
      for (int i = 1; i <= dimension; ++i) poly.flux.push_back(poly_of("f" + std::to_string(i)));
      if (dimension == 1) {
        for (const char* k : {"f2", "A12", "A22"}) {
          if (const Entry* e = find(sec, k)) {
            in.issue(e->line, std::string("'") + k + "' is not valid for a 1-dimensional model");
          }
        }
        poly.diffusion = {poly_of("A11")};
      } else {
        poly.diffusion = {poly_of("A11"), poly_of("A12"), poly_of("A22")};
      }
      poly.state_bound = cfg.model.state_bound;
      cfg.model.name = poly.name;
      cfg.model.inline_model = poly;
    } else if (name) {
      cfg.model.name = name->value;
      if (!is_preset(name->value)) in.issue(name->line, "unknown model preset '" + name->value + "'");
      else dimension = make_preset(name->value).dimension;
    } else if (sections.count("model")) {
      in.issue(section_lines["model"], "[model] needs a preset name or inline coefficients");
    }
  }

  // [grid]
  {
    const Section& sec = sections["grid"];
    if (const Entry* e = find(sec, "cells")) {
      if (auto v = in.numbers(*e, "cells")) {
        bool ok = true;
        for (double c : *v) {
          if (c != static_cast<int>(c)) {
            in.issue(e->line, "cells must be integers");
            ok = false;
            break;
          }
          if (c < 4) {
            in.issue(e->line, "cells must be at least 4 (got " + format_number(c) + ")");
            ok = false;
            break;
          }
        }
        if (ok) {
          for (double c : *v) cfg.grid.cells.push_back(static_cast<int>(c));
          if (static_cast<int>(cfg.grid.cells.size()) != dimension) {
            in.issue(e->line, "cells needs " + std::to_string(dimension) + " entries");
          }
        }
      }
    } else if (sections.count("grid")) {
      in.issue(section_lines["grid"], "[grid] requires 'cells'");
    }
    if (const Entry* e = find(sec, "periods")) {
      if (auto v = in.numbers(*e, "periods")) {
        if (std::any_of(v->begin(), v->end(), [](double p) { return !(p > 0.0); })) {
          in.issue(e->line, "periods must be positive");
        } else if (static_cast<int>(v->size()) != dimension) {
          in.issue(e->line, "periods needs " + std::to_string(dimension) + " entries");
        } else {
          cfg.grid.periods = *v;
        }
      }
    } else {
      cfg.grid.periods.assign(dimension, 1.0);
    }
  }

  // [initial]
  {
    const Section& sec = sections["initial"];
    if (const Entry* e = find(sec, "profile")) {
      const std::string& p = e->value;
      if (p == "sine") cfg.initial.kind = ProfileKind::sine;
      else if (p == "multi-sine") cfg.initial.kind = ProfileKind::multi_sine;
      else if (p == "square-wave") cfg.initial.kind = ProfileKind::square_wave;
      else if (p == "random") cfg.initial.kind = ProfileKind::random;
      else in.issue(e->line, "unknown profile '" + p + "'");
    }
    if (const Entry* e = find(sec, "amplitude"))
      if (auto v = in.number(*e, "amplitude")) cfg.initial.amplitude = *v;
    if (const Entry* e = find(sec, "offset"))
      if (auto v = in.number(*e, "offset")) cfg.initial.offset = *v;
    if (const Entry* e = find(sec, "zero_mean"))
      if (auto v = in.boolean(*e, "zero_mean")) cfg.initial.zero_mean = *v;
    if (const Entry* e = find(sec, "modes")) {
      if (auto v = in.integer<int>(*e, "modes")) {
        if (*v >= 1) cfg.initial.modes = *v;
        else in.issue(e->line, "modes must be at least 1");
      }
    }
    if (const Entry* e = find(sec, "seed"))
      if (auto v = in.integer<std::uint64_t>(*e, "seed")) cfg.initial.seed = *v;
  }

  // [scheme]
  {
    const Section& sec = sections["scheme"];
    if (const Entry* e = find(sec, "cfl")) {
      if (auto v = in.number(*e, "cfl")) {
        if (*v > 0.0) cfg.scheme.cfl = *v;
        else in.issue(e->line, "cfl must be positive");
      }
    }
    if (const Entry* e = find(sec, "integrator")) {
      try {
        cfg.scheme.integrator = parse_integrator(e->value);
      } catch (const std::invalid_argument& ex) {
        in.issue(e->line, ex.what());
      }
    }
    if (const Entry* e = find(sec, "t_end")) {
      if (auto v = in.number(*e, "t_end")) {
        if (*v >= 0.0) cfg.scheme.t_end = *v;
        else in.issue(e->line, "t_end must be non-negative");
      }
    } else if (sections.count("scheme")) {
      in.issue(section_lines["scheme"], "[scheme] requires 't_end'");
    }
    if (const Entry* e = find(sec, "output_every")) {
      if (auto v = in.number(*e, "output_every")) {
        if (*v > 0.0) cfg.scheme.output_every = *v;
        else in.issue(e->line, "output_every must be positive");
      }
    }
    if (const Entry* e = find(sec, "snapshot_every")) {
      if (e->value != "none") {
        if (auto v = in.number(*e, "snapshot_every")) {
          if (*v > 0.0) cfg.scheme.snapshot_every = *v;
          else in.issue(e->line, "snapshot_every must be positive");
        }
      }
    }
  }

  // [condition]
  {
    const Section& sec = sections["condition"];
    if (const Entry* e = find(sec, "delta")) {
      if (auto v = in.number(*e, "delta")) {
        if (*v > 0.0) cfg.condition.delta = *v;
        else in.issue(e->line, "delta must be positive");
      }
    }
    if (const Entry* e = find(sec, "lambdas")) {
      if (auto v = in.numbers(*e, "lambdas")) {
        bool ok = !v->empty();
        for (std::size_t i = 0; i < v->size(); ++i) {
          if (!((*v)[i] > 0.0) || (i > 0 && !((*v)[i] < (*v)[i - 1]))) ok = false;
        }
        if (ok) cfg.condition.lambdas = *v;
        else in.issue(e->line, "lambdas must be positive and strictly decreasing");
      }
    }
    if (const Entry* e = find(sec, "r_max"))
      if (auto v = in.number(*e, "r_max")) cfg.condition.r_max = *v;
    if (const Entry* e = find(sec, "n_dir"))
      if (auto v = in.integer<int>(*e, "n_dir")) cfg.condition.n_dir = *v;
    if (const Entry* e = find(sec, "n_resonant"))
      if (auto v = in.integer<int>(*e, "n_resonant")) cfg.condition.n_resonant = *v;
    if (const Entry* e = find(sec, "lattice"))
      if (auto v = in.boolean(*e, "lattice")) cfg.condition.lattice = *v;
    if (const Entry* e = find(sec, "lattice_extent"))
      if (auto v = in.integer<int>(*e, "lattice_extent")) cfg.condition.lattice_extent = *v;
  }

  if (const Entry* e = find(sections["audit"], "contraction_constants")) {
    if (auto v = in.numbers(*e, "contraction_constants")) cfg.contraction_constants = *v;
  }
  if (const Entry* e = find(sections["output"], "dir")) {
    if (e->value.empty()) in.issue(e->line, "output dir must not be empty");
    else cfg.output_dir = e->value;
  }

  if (!in.issues.empty()) throw ConfigParseError(std::move(in.issues));
  return cfg;
}

namespace {

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) out += format_number(values[i]);
    else out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[model]\n";
  out << "name = " << c.model.name << "\n";
  out << "state_bound = " << format_number(c.model.state_bound) << "\n";
  if (c.model.inline_model) {
    const PolynomialModel& p = *c.model.inline_model;
    out << "dimension = " << p.dimension << "\n";
    for (std::size_t i = 0; i < p.flux.size(); ++i) {
      out << "f" << i + 1 << " = " << join(p.flux[i].coeffs) << "\n";
    }
    if (p.dimension == 1) {
      out << "A11 = " << join(p.diffusion[0].coeffs) << "\n";
    } else {
      out << "A11 = " << join(p.diffusion[0].coeffs) << "\n";
      out << "A12 = " << join(p.diffusion[1].coeffs) << "\n";
      out << "A22 = " << join(p.diffusion[2].coeffs) << "\n";
    }
  }
  out << "\n[grid]\n";
  out << "periods = " << join(c.grid.periods) << "\n";
  out << "cells = " << join(c.grid.cells) << "\n";
  out << "\n[initial]\n";
  out << "profile = " << to_string(c.initial.kind) << "\n";
  out << "amplitude = " << format_number(c.initial.amplitude) << "\n";
  out << "offset = " << format_number(c.initial.offset) << "\n";
  out << "zero_mean = " << (c.initial.zero_mean ? "true" : "false") << "\n";
  out << "modes = " << c.initial.modes << "\n";
  out << "seed = " << c.initial.seed << "\n";
  out << "\n[scheme]\n";
  out << "cfl = " << format_number(c.scheme.cfl) << "\n";
  out << "integrator = " << to_string(c.scheme.integrator) << "\n";
  out << "t_end = " << format_number(c.scheme.t_end) << "\n";
  out << "output_every = " << format_number(c.scheme.output_every) << "\n";
  out << "snapshot_every = "
      << (c.scheme.snapshot_every ? format_number(*c.scheme.snapshot_every) : "none") << "\n";
  out << "\n[condition]\n";
  out << "delta = " << format_number(c.condition.delta) << "\n";
  out << "lambdas = " << join(c.condition.lambdas) << "\n";
  out << "r_max = " << format_number(c.condition.r_max) << "\n";
  out << "n_dir = " << c.condition.n_dir << "\n";
  out << "n_resonant = " << c.condition.n_resonant << "\n";
  out << "lattice = " << (c.condition.lattice ? "true" : "false") << "\n";
  out << "lattice_extent = " << c.condition.lattice_extent << "\n";
  out << "\n[audit]\n";
  out << "contraction_constants = " << join(c.contraction_constants) << "\n";
  out << "\n[output]\n";
  out << "dir = " << c.output_dir << "\n";
  return out.str();
}

ExperimentConfig default_config(const std::string& preset) {
  const ModelSpec model = make_preset(preset);
  ExperimentConfig cfg;
  cfg.model.name = preset;
  cfg.grid.periods.assign(model.dimension, 1.0);
  cfg.grid.cells.assign(model.dimension, model.dimension == 1 ? 256 : 128);
  return cfg;
}

}  // namespace aniso
