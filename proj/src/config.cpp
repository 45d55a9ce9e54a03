#include "mpic/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mpic {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> e) : entries_(std::move(e)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    auto w = list(key, 1);
    return parse_double(key, w[0]);
  }
  long integer(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    auto w = list(key, 1);
    return parse_long(key, w[0]);
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    std::string v = list(key, 1)[0];
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(key, "expected true or false, got '" + v + "'");
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    return list(key, 1)[0];
  }
  Vec3 vec3(const std::string& key, const Vec3& fallback) {
    if (!has(key)) return fallback;
    auto w = list(key, 3);
    return {parse_double(key, w[0]), parse_double(key, w[1]), parse_double(key, w[2])};
  }
  Idx3 idx3(const std::string& key, const Idx3& fallback) {
    if (!has(key)) return fallback;
    auto w = list(key, 3);
    return {static_cast<int>(parse_long(key, w[0])), static_cast<int>(parse_long(key, w[1])),
            static_cast<int>(parse_long(key, w[2]))};
  }
  int axis(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    std::string v = list(key, 1)[0];
    if (v == "x" || v == "0") return 0;
    if (v == "y" || v == "1") return 1;
    if (v == "z" || v == "2") return 2;
    fail(key, "expected x, y or z, got '" + v + "'");
  }

  void consume(const std::string& key) { used_.insert(key); }
  void reject_unused() const {
    for (const auto& [k, e] : entries_)
      if (!used_.count(k))
        throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + k + "'");
  }
  std::vector<std::string> keys_with_prefix(const std::string& p) const {
    std::vector<std::string> out;
    for (const auto& [k, e] : entries_)
      if (k.rfind(p, 0) == 0) out.push_back(k);
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto it = entries_.find(key);
    std::string where = it == entries_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
    throw ConfigError(where + key + ": " + msg);
  }

 private:
  std::vector<std::string> list(const std::string& key, std::size_t n) {
    consume(key);
    auto w = words(entries_.at(key).value);
    if (w.size() != n)
      fail(key, "expected " + std::to_string(n) + " value" + (n > 1 ? "s" : "") + ", got " +
                    std::to_string(w.size()));
    return w;
  }
  double parse_double(const std::string& key, const std::string& s) const {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      fail(key, "not a number: '" + s + "'");
    return v;
  }
  long parse_long(const std::string& key, const std::string& s) const {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail(key, "not an integer: '" + s + "'");
    return v;
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

}  // namespace

long RunConfig::steps() const { return std::lround(t_end / dt); }

RunConfig parse_config(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    if (entries.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    entries[key] = {val, lineno};
  }

  Reader r(std::move(entries));
  RunConfig c;
  c.cells = r.idx3("grid.cells", c.cells);
  c.lengths = r.vec3("grid.lengths", c.lengths);
  c.dt = r.number("scheme.dt", c.dt);
  c.t_end = r.number("scheme.t_end", c.t_end);
  c.hodge_order = static_cast<int>(r.integer("scheme.hodge_order", c.hodge_order));
  if (r.has("scheme.hodge_variant")) {
    try {
      c.hodge_variant = parse_variant(r.text("scheme.hodge_variant", ""));
    } catch (const std::invalid_argument& e) {
      r.fail("scheme.hodge_variant", e.what());
    }
  }
  c.kernel_degree = static_cast<int>(r.integer("scheme.kernel_degree", c.kernel_degree));
  c.quadrature = static_cast<int>(r.integer("scheme.quadrature", c.quadrature));

  c.neutralize = r.boolean("field.neutralize", c.neutralize);
  c.b0 = r.vec3("field.b0", c.b0);
  c.perturbation.amplitude = r.number("field.perturbation.amplitude", 0.0);
  c.perturbation.component = r.axis("field.perturbation.component", 1);
  c.perturbation.axis = r.axis("field.perturbation.axis", 0);
  c.perturbation.mode = static_cast<int>(r.integer("field.perturbation.mode", 1));
  c.wave_amplitude = r.number("field.wave.amplitude", 0.0);
  c.wave_mode = static_cast<int>(r.integer("field.wave.mode", 1));

  for (const char* key : {"material.epsilon", "material.mu"})
    if (r.number(key, 1.0) != 1.0) r.fail(key, "only vacuum (1) is supported");

  c.interval = static_cast<int>(r.integer("diagnostics.interval", c.interval));
  c.slice = r.boolean("diagnostics.slice", c.slice);
  c.slice_axis = r.axis("diagnostics.slice_axis", c.slice_axis);
  c.slice_component = r.axis("diagnostics.slice_component", c.slice_component);
  c.output_dir = r.text("output.dir", c.output_dir);
  c.name = r.text("output.name", c.name);

  std::vector<std::string> labels;
  for (const auto& k : r.keys_with_prefix("species.")) {
    auto dot = k.find('.', 8);
    if (dot == std::string::npos) r.fail(k, "expected species.<name>.<field>");
    std::string label = k.substr(8, dot - 8);
    if (labels.empty() || labels.back() != label) labels.push_back(label);
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string p = "species." + labels[i] + ".";
    SpeciesConfig s;
    s.spec.label = labels[i];
    s.spec.charge = r.number(p + "charge", s.spec.charge);
    s.spec.mass = r.number(p + "mass", s.spec.mass);
    s.spec.density = r.number(p + "density", s.spec.density);
    s.spec.count = static_cast<std::size_t>(r.integer(p + "count", 0));
    s.per_cell = static_cast<std::size_t>(r.integer(p + "ppc", 0));
    s.spec.thermal = r.vec3(p + "thermal", s.spec.thermal);
    s.spec.drift = r.vec3(p + "drift", s.spec.drift);
    if (r.has(p + "sampling")) {
      try {
        s.spec.sampling = parse_sampling(r.text(p + "sampling", ""));
      } catch (const std::invalid_argument& e) {
        r.fail(p + "sampling", e.what());
      }
    }
    s.spec.seed = static_cast<std::uint64_t>(r.integer(p + "seed", static_cast<long>(i + 1)));
    if ((s.spec.count == 0) == (s.per_cell == 0))
      throw ConfigError(p + "*: give exactly one of count or ppc");
    if (!(s.spec.mass > 0.0)) r.fail(p + "mass", "must be positive");
    c.species.push_back(s);
  }
  r.reject_unused();

  if (!(c.dt > 0.0)) throw ConfigError("scheme.dt must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigError("scheme.t_end must be non-negative");
  if (c.hodge_order < 2 || c.hodge_order % 2 != 0)
    throw ConfigError("scheme.hodge_order must be even and >= 2, got " + std::to_string(c.hodge_order));
  if (c.interval < 1) throw ConfigError("diagnostics.interval must be >= 1");
  if (c.quadrature < 0) throw ConfigError("scheme.quadrature must be >= 0");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::filesystem::path output_directory(const RunConfig& cfg) {
  if (const char* env = std::getenv("MGEMPIC_OUTPUT_DIR"); env && *env) return env;
  return cfg.output_dir;
}

}  // namespace mpic
