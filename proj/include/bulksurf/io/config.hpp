#pragma once

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bulksurf/harness/scenario.hpp"

namespace bulksurf {

/// Invalid configuration text. line() is 0 when no single line is to blame.
class config_error : public std::runtime_error {
 public:
  config_error(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct OutputSpec {
  std::string csv;           // empty: no CSV file
  std::string snapshot_dir;  // empty: no snapshots
  double snapshot_every = 0.0;
};

struct Config {
  Scenario scenario;
  OutputSpec output;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

// Parsed text: section -> key -> entry, plus the repeated reaction keys.
struct RawConfig {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::map<std::string, std::size_t> section_lines;
  std::vector<Entry> reactions_bulk;
  std::vector<Entry> reactions_surface;
};

inline const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"grid", {"dim", "nx", "ny", "lx", "ly"}},
      {"species", {"names", "d_bulk", "d_surf"}},
      {"sorption", {"variant", "k_ad", "k_de", "sigma", "c_s_sigma", "beta"}},
      {"reactions_bulk", {"reaction"}},
      {"reactions_surface", {"reaction"}},
      {"velocity", {"variant", "amplitude"}},
      {"stepper",
       {"dt_init", "dt_min", "dt_max", "cfl", "lin_tol", "max_lin_iter", "blowup_threshold",
        "positivity_tol", "t_end", "output_every"}},
      {"initial", {"bulk", "surf", "profile", "amplitude"}},
      {"output", {"csv", "snapshot_dir", "snapshot_every"}},
      {"triangular_bulk", {"q", "c_tr", "mu"}},
      {"triangular_surface", {"q", "c_tr", "mu"}},
  };
  return keys;
}

inline RawConfig tokenize(std::string_view text) {
  RawConfig raw;
  std::string section;
  std::size_t lineno = 0;
  for (auto line : split(text, '\n')) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw config_error(lineno, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().count(section)) throw config_error(lineno, "unknown section [" + section + "]");
      if (raw.section_lines.count(section))
        throw config_error(lineno, "section [" + section + "] appears twice");
      raw.section_lines[section] = lineno;
      raw.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw config_error(lineno, "expected 'key = value'");
    if (section.empty()) throw config_error(lineno, "key outside of any section");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_keys().at(section).count(key))
      throw config_error(lineno, "[" + section + "] unknown key '" + key + "'");
    if (key == "reaction") {
      (section == "reactions_bulk" ? raw.reactions_bulk : raw.reactions_surface)
          .push_back({value, lineno});
      continue;
    }
    auto& slot = raw.sections[section];
    if (slot.count(key)) throw config_error(lineno, "[" + section + "] duplicate key '" + key + "'");
    slot[key] = {value, lineno};
  }
  return raw;
}

inline double to_double(std::string_view s, std::size_t line, const std::string& where) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw config_error(line, where + ": '" + std::string(s) + "' is not a number");
  return v;
}

inline long to_integer(std::string_view s, std::size_t line, const std::string& where) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end)
    throw config_error(line, where + ": '" + std::string(s) + "' is not an integer");
  return v;
}

// Typed access to one section with line-numbered diagnostics.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, std::string name) : name_(std::move(name)) {
    if (auto it = raw.sections.find(name_); it != raw.sections.end()) entries_ = &it->second;
    if (auto it = raw.section_lines.find(name_); it != raw.section_lines.end()) line_ = it->second;
  }

  bool present() const { return entries_ != nullptr; }
  std::size_t line() const { return line_; }
  bool has(const std::string& key) const { return entries_ && entries_->count(key); }
  std::size_t line_of(const std::string& key) const {
    return has(key) ? entries_->at(key).line : line_;
  }
  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return entries_->at(key).value;
  }

  std::string required_text(const std::string& key) const {
    if (!has(key)) throw config_error(line_, where(key) + ": required key is missing");
    return entries_->at(key).value;
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& e = entries_->at(key);
    return to_double(e.value, e.line, where(key));
  }

  long integer(const std::string& key, long fallback) const {
    if (!has(key)) return fallback;
    const auto& e = entries_->at(key);
    return to_integer(e.value, e.line, where(key));
  }

  // Comma separated numbers; a single value is broadcast to n entries.
  std::vector<double> numbers(const std::string& key, std::size_t n, double fallback) const {
    if (!has(key)) return std::vector<double>(n, fallback);
    const auto& e = entries_->at(key);
    std::vector<double> out;
    for (auto part : split(e.value, ',')) out.push_back(to_double(part, e.line, where(key)));
    if (out.size() == 1 && n > 1) out.assign(n, out.front());
    if (out.size() != n)
      throw config_error(e.line, where(key) + ": expected " + std::to_string(n) +
                                     " values, got " + std::to_string(out.size()));
    return out;
  }

  void require_positive(const std::string& key, const std::vector<double>& v,
                        bool allow_zero) const {
    for (double x : v)
      if (allow_zero ? !(x >= 0.0) : !(x > 0.0))
        throw config_error(line_of(key), where(key) + ": must be " + (allow_zero ? ">= 0" : "> 0"));
  }

 private:
  std::string name_;
  const std::map<std::string, Entry>* entries_ = nullptr;
  std::size_t line_ = 0;
};

inline ReactionNetwork parse_reactions(const std::vector<Entry>& lines, const SpeciesSystem& sys,
                                       const std::string& section) {
  const std::size_t n = sys.size();
  ReactionNetwork net(n);
  for (const auto& e : lines) {
    const std::string where = "[" + section + "] reaction";
    const auto at = e.value.find('@');
    if (at == std::string::npos) throw config_error(e.line, where + ": missing '@ k'");
    const std::string_view body = trim(std::string_view(e.value).substr(0, at));
    const double k = to_double(trim(std::string_view(e.value).substr(at + 1)), e.line, where);
    const auto arrow = body.find("->");
    if (arrow == std::string_view::npos) throw config_error(e.line, where + ": missing '->'");

    auto side = [&](std::string_view s) {
      std::vector<int> mult(n, 0);
      s = trim(s);
      if (s.empty() || s == "0") return mult;
      for (auto term : split(s, '+')) {
        if (term.empty()) throw config_error(e.line, where + ": empty term");
        int count = 1;
        std::string_view name = term;
        if (const auto sp = term.find_first_of(" \t"); sp != std::string_view::npos) {
          const long c = to_integer(term.substr(0, sp), e.line, where);
          if (c < 1) throw config_error(e.line, where + ": multiplicity must be >= 1");
          count = static_cast<int>(c);
          name = trim(term.substr(sp));
        }
        const std::size_t idx = sys.index_of(std::string(name));
        if (idx == n)
          throw config_error(e.line, where + ": unknown species '" + std::string(name) + "'");
        mult[idx] += count;
      }
      return mult;
    };
    Reaction rx{side(body.substr(0, arrow)), side(body.substr(arrow + 2)), k};
    try {
      net.add(rx);
    } catch (const std::exception& ex) {
      throw config_error(e.line, where + ": " + ex.what());
    }
  }
  return net;
}

inline std::optional<TriangularStructure> parse_triangular(const RawConfig& raw,
                                                           const std::string& name,
                                                           std::size_t n) {
  SectionReader sec(raw, name);
  if (!sec.present()) return std::nullopt;
  TriangularStructure t;
  const auto q = sec.required_text("q");
  for (auto row : split(q, ';')) {
    std::vector<double> r;
    for (auto x : split(row, ',')) r.push_back(to_double(x, sec.line_of("q"), sec.where("q")));
    t.Q.push_back(std::move(r));
  }
  t.c_tr = sec.number("c_tr", 1.0);
  t.mu = sec.number("mu", 0.0);
  try {
    t.validate();
    if (t.Q.size() != n) throw usage_error("Q must be " + std::to_string(n) + " x " + std::to_string(n));
  } catch (const std::exception& ex) {
    throw config_error(sec.line(), "[" + name + "] " + ex.what());
  }
  return t;
}

}  // namespace detail

/// Parses the INI-style configuration into a validated scenario. Every
/// failure is a config_error naming the line, section and key.
inline Config parse_config(std::string_view text, const std::string& name = "config") {
  using detail::SectionReader;
  const auto raw = detail::tokenize(text);

  SectionReader grid(raw, "grid");
  const long dim = grid.integer("dim", 1);
  if (dim != 1 && dim != 2) throw config_error(grid.line_of("dim"), "[grid] dim: must be 1 or 2");
  const long nx = grid.integer("nx", 32);
  const long ny = dim == 2 ? grid.integer("ny", nx) : 1;
  if (dim == 1 && grid.has("ny") && grid.integer("ny", 1) != 1)
    throw config_error(grid.line_of("ny"), "[grid] ny: must be 1 (or absent) for dim = 1");
  if (nx < 2) throw config_error(grid.line_of("nx"), "[grid] nx: must be >= 2");
  if (dim == 2 && ny < 2) throw config_error(grid.line_of("ny"), "[grid] ny: must be >= 2");
  const double lx = grid.number("lx", 1.0);
  const double ly = dim == 2 ? grid.number("ly", 1.0) : 1.0;
  if (!(lx > 0.0)) throw config_error(grid.line_of("lx"), "[grid] lx: must be > 0");
  if (!(ly > 0.0)) throw config_error(grid.line_of("ly"), "[grid] ly: must be > 0");
  Grid g = build_grid(static_cast<int>(dim),
                      {static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)}, {lx, ly});

  SectionReader sp(raw, "species");
  if (!sp.present()) throw config_error(0, "missing section [species]");
  std::vector<std::string> names;
  for (auto part : detail::split(sp.required_text("names"), ',')) names.emplace_back(part);
  const std::size_t n = names.size();
  const auto d_bulk = sp.numbers("d_bulk", n, 1.0);
  const auto d_surf = sp.numbers("d_surf", n, 1.0);
  sp.require_positive("d_bulk", d_bulk, false);
  sp.require_positive("d_surf", d_surf, false);
  std::optional<SpeciesSystem> system;
  try {
    system.emplace(names, d_bulk, d_surf);
  } catch (const std::exception& ex) {
    throw config_error(sp.line_of("names"), std::string("[species] ") + ex.what());
  }

  SectionReader so(raw, "sorption");
  SorptionParams params;
  if (auto v = so.text("variant")) {
    const auto parsed = parse_sorption_variant(*v);
    if (!parsed)
      throw config_error(so.line_of("variant"),
                         "[sorption] variant: unknown '" + *v +
                             "' (henry, langmuir, volmer, frumkin, vanderwaals)");
    params.variant = *parsed;
  }
  params.k_ad = so.numbers("k_ad", n, 1.0);
  params.k_de = so.numbers("k_de", n, 1.0);
  params.sigma = so.numbers("sigma", n, 1.0);
  params.c_s_sigma = so.number("c_s_sigma", 1.0);
  params.beta = so.number("beta", 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(params.k_ad[i] >= 0.0))
      throw config_error(so.line_of("k_ad"),
                         "[sorption] k_ad: must be >= 0; the adsorption rate is bounded above by "
                         "k_ad (1 + |c|)");
    if (!(params.k_de[i] >= 0.0))
      throw config_error(so.line_of("k_de"),
                         "[sorption] k_de: must be >= 0; the rate is bounded below by "
                         "-k_de (1 + |c_surf|)");
  }
  std::optional<SorptionModel> model;
  try {
    model.emplace(params);
  } catch (const std::exception& ex) {
    throw config_error(so.line(), std::string("[sorption] ") + ex.what());
  }

  ReactionNetwork bulk = detail::parse_reactions(raw.reactions_bulk, *system, "reactions_bulk");
  ReactionNetwork surf = detail::parse_reactions(raw.reactions_surface, *system, "reactions_surface");

  SectionReader ve(raw, "velocity");
  VelocityField vel = VelocityField::zero();
  const std::string vkind = ve.text("variant").value_or("zero");
  if (vkind == "stream") {
    if (dim != 2)
      throw config_error(ve.line_of("variant"),
                         "[velocity] variant: stream needs dim = 2 (a divergence-free field "
                         "without boundary flux vanishes in 1D)");
    vel = VelocityField::stream(ve.number("amplitude", 1.0));
  } else if (vkind != "zero") {
    throw config_error(ve.line_of("variant"), "[velocity] variant: must be zero or stream");
  }

  SectionReader st(raw, "stepper");
  StepperConfig cfg;
  cfg.dt_init = st.number("dt_init", cfg.dt_init);
  cfg.dt_min = st.number("dt_min", cfg.dt_min);
  cfg.dt_max = st.number("dt_max", cfg.dt_max);
  cfg.cfl = st.number("cfl", cfg.cfl);
  cfg.lin_tol = st.number("lin_tol", cfg.lin_tol);
  cfg.max_lin_iter = static_cast<int>(st.integer("max_lin_iter", cfg.max_lin_iter));
  cfg.blowup_threshold = st.number("blowup_threshold", cfg.blowup_threshold);
  cfg.positivity_tol = st.number("positivity_tol", cfg.positivity_tol);
  cfg.output_every = st.number("output_every", cfg.output_every);
  const double t_end = st.number("t_end", 1.0);
  if (!(t_end > 0.0)) throw config_error(st.line_of("t_end"), "[stepper] t_end: must be > 0");
  try {
    cfg.validate();
  } catch (const std::exception& ex) {
    throw config_error(st.line(), std::string("[stepper] ") + ex.what());
  }

  SectionReader in(raw, "initial");
  State init = State::zeros(n, g);
  const auto b0 = in.numbers("bulk", n, 1.0);
  const auto s0 = in.numbers("surf", n, 0.0);
  in.require_positive("bulk", b0, true);
  in.require_positive("surf", s0, true);
  const std::string profile = in.text("profile").value_or("constant");
  std::vector<double> amp(n, 0.0);
  if (profile == "cosine") {
    amp = in.numbers("amplitude", n, 0.0);
  } else if (profile != "constant") {
    throw config_error(in.line_of("profile"), "[initial] profile: must be constant or cosine");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(amp[i]) > b0[i])
      throw config_error(in.line_of("amplitude"),
                         "[initial] amplitude: |amplitude| must not exceed the bulk value (data "
                         "must stay nonnegative)");
    init.c.row(static_cast<Eigen::Index>(i)) = cosine_profile(g, b0[i], amp[i]);
    init.c_surf.row(static_cast<Eigen::Index>(i)).setConstant(s0[i]);
  }
  // cos can overshoot -1 by an ulp; data equal to the amplitude stays >= 0
  init.c = init.c.cwiseMax(0.0);

  SectionReader out(raw, "output");
  OutputSpec output{out.text("csv").value_or(""), out.text("snapshot_dir").value_or(""),
                    out.number("snapshot_every", 0.0)};
  if (output.snapshot_every < 0.0)
    throw config_error(out.line_of("snapshot_every"), "[output] snapshot_every: must be >= 0");

  Scenario s{name,
             std::move(g),
             std::move(*system),
             std::move(*model),
             std::move(bulk),
             std::move(surf),
             vel,
             std::move(init),
             t_end,
             cfg,
             detail::parse_triangular(raw, "triangular_bulk", n),
             detail::parse_triangular(raw, "triangular_surface", n),
             false};
  return Config{std::move(s), std::move(output)};
}

}  // namespace bulksurf
