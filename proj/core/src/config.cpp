// Copyright 2026 The jsdm-hybrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "jsdm/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "jsdm/scenarios.hpp"

namespace jsdm {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  std::size_t key_col = 0;
  std::size_t value_col = 0;
  bool used = false;
};

struct Section {
  std::string kind;
  std::size_t group = 0;
  std::size_t user = 0;
  std::size_t line = 0;
  std::map<std::string, Entry> keys;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool valid_key(std::string_view k) {
  if (k.empty() || !(k[0] >= 'a' && k[0] <= 'z')) return false;
  for (char c : k)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  return true;
}

template <typename T>
bool parse_integer(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view source) : source_(source) { scan(text); }

  ExperimentConfig build();

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what) const {
    throw ConfigError(source_, line, col, what);
  }
  [[noreturn]] void fail(const Entry& e, const std::string& what) const {
    fail(e.line, e.value_col, what);
  }

  void scan(std::string_view text);
  void header(std::string_view body, std::size_t line, std::size_t col);

  Entry* find(Section& s, const std::string& key) {
    auto it = s.keys.find(key);
    if (it == s.keys.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
  Entry& require(Section& s, const std::string& key) {
    Entry* e = find(s, key);
    if (!e) fail(s.line, 1, section_name(s) + ": missing required key '" + key + "'");
    return *e;
  }
  static std::string section_name(const Section& s) {
    std::ostringstream os;
    if (s.kind == "group") {
      os << "[group " << s.group << "]";
    } else if (s.kind == "user") {
      os << "[group " << s.group << " user " << s.user << "]";
    } else {
      os << "[" << s.kind << "]";
    }
    return os.str();
  }

  std::size_t as_size(const Entry& e, std::size_t min_value) const {
    std::size_t v = 0;
    if (!parse_integer(e.value, v)) fail(e, "expected a non-negative integer, got '" + e.value + "'");
    if (v < min_value) {
      std::ostringstream msg;
      msg << "value must be >= " << min_value;
      fail(e, msg.str());
    }
    return v;
  }
  std::uint64_t as_u64(const Entry& e) const {
    std::uint64_t v = 0;
    if (!parse_integer(e.value, v)) fail(e, "expected an unsigned 64-bit integer");
    return v;
  }
  double as_real(const Entry& e) const {
    double v = 0.0;
    if (!parse_real(e.value, v)) fail(e, "expected a finite number, got '" + e.value + "'");
    return v;
  }
  double as_positive(const Entry& e) const {
    const double v = as_real(e);
    if (!(v > 0.0)) fail(e, "value must be positive");
    return v;
  }
  bool as_bool(const Entry& e) const {
    if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
    if (e.value == "false" || e.value == "no" || e.value == "0") return false;
    fail(e, "expected true or false");
  }
  std::vector<std::pair<std::string, std::size_t>> as_list(const Entry& e) const {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t start = 0;
    const std::string& v = e.value;
    while (start <= v.size()) {
      std::size_t end = v.find(',', start);
      if (end == std::string::npos) end = v.size();
      const std::string_view raw(v.data() + start, end - start);
      const std::string_view item = trim(raw);
      const std::size_t col = e.value_col + start + (raw.empty() ? 0 : raw.find_first_not_of(" \t"));
      if (item.empty()) fail(e.line, col, "empty list item");
      out.emplace_back(std::string(item), col);
      start = end + 1;
    }
    return out;
  }

  // Energy in linear units from either `<key>` or `<key>_db`.
  std::optional<double> energy(Section& s, const std::string& key) {
    Entry* lin = find(s, key);
    Entry* db = find(s, key + "_db");
    if (lin && db) fail(*db, "give either " + key + " or " + key + "_db, not both");
    if (lin) return as_positive(*lin);
    if (db) return db_to_linear(as_real(*db));
    return std::nullopt;
  }

  void check_unused() const {
    for (const auto& s : sections_) {
      for (const auto& [key, e] : s.keys) {
        if (!e.used) fail(e.line, e.key_col, section_name(s) + ": unknown key '" + key + "'");
      }
    }
  }

  std::string source_;
  std::vector<Section> sections_;
};

void Parser::scan(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t col = line.find_first_not_of(" \t") + 1;

    if (body.front() == '[') {
      if (body.back() != ']') fail(line_no, col, "section header is missing ']'");
      header(body.substr(1, body.size() - 2), line_no, col);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, col, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    if (!valid_key(key)) fail(line_no, col, "invalid key '" + std::string(key) + "'");
    const std::string_view rest = line.substr(eq + 1);
    const std::string_view value = trim(rest);
    const std::size_t value_col =
        eq + 2 + (value.empty() ? 0 : rest.find_first_not_of(" \t"));
    if (value.empty()) fail(line_no, value_col, "missing value for '" + std::string(key) + "'");
    if (sections_.empty()) fail(line_no, col, "key outside of any section");

    Section& s = sections_.back();
    Entry e{std::string(value), line_no, col, value_col, false};
    if (!s.keys.emplace(std::string(key), e).second)
      fail(line_no, col, "duplicate key '" + std::string(key) + "'");
  }
}

void Parser::header(std::string_view body, std::size_t line, std::size_t col) {
  const auto words = split_words(body);
  Section s;
  s.line = line;
  auto number = [&](std::string_view w) {
    std::size_t v = 0;
    if (!parse_integer(w, v) || v == 0)
      fail(line, col, "expected a positive index, got '" + std::string(w) + "'");
    return v;
  };
  static const char* kSimple[] = {"scenario", "run", "sweep", "mc", "numerics", "output"};
  bool known = false;
  if (words.size() == 1) {
    for (const char* name : kSimple) {
      if (words[0] == name) {
        s.kind = name;
        known = true;
      }
    }
  } else if (words.size() == 2 && words[0] == "group") {
    s.kind = "group";
    s.group = number(words[1]);
    known = true;
  } else if (words.size() == 4 && words[0] == "group" && words[2] == "user") {
    s.kind = "user";
    s.group = number(words[1]);
    s.user = number(words[3]);
    known = true;
  }
  if (!known) fail(line, col, "unknown section [" + std::string(body) + "]");
  for (const auto& other : sections_) {
    if (other.kind == s.kind && other.group == s.group && other.user == s.user)
      fail(line, col, "duplicate section [" + std::string(body) + "]");
  }
  sections_.push_back(std::move(s));
}

ExperimentConfig Parser::build() {
  ExperimentConfig cfg;
  SweepConfig& sw = cfg.sweep;
  Scenario& scn = sw.scenario;
  scn.groups.clear();

  Section* scenario = nullptr;
  std::map<std::size_t, Section*> groups;
  std::map<std::size_t, std::map<std::size_t, Section*>> users;
  std::map<std::string, Section*> simple;
  for (auto& s : sections_) {
    if (s.kind == "group") {
      groups[s.group] = &s;
    } else if (s.kind == "user") {
      users[s.group][s.user] = &s;
    } else if (s.kind == "scenario") {
      scenario = &s;
    } else {
      simple[s.kind] = &s;
    }
  }
  if (!scenario) fail(1, 1, "missing [scenario] section");

  scn.antennas = as_size(require(*scenario, "antennas"), 1);
  scn.taps = as_size(require(*scenario, "taps"), 1);
  scn.noise_power = energy(*scenario, "noise_power").value_or(1.0);
  double default_spread = 2.0;
  if (Entry* e = find(*scenario, "spread")) default_spread = as_positive(*e);
  if (Entry* e = find(*scenario, "total_rf_chains")) scn.total_rf_chains = as_size(*e, 0);
  if (Entry* e = find(*scenario, "phi")) scn.phi_deg = as_real(*e);

  if (groups.empty()) fail(scenario->line, 1, "at least one [group N] section is required");
  std::size_t expected = 1;
  for (auto& [index, gs] : groups) {
    if (index != expected) {
      std::ostringstream msg;
      msg << "group indices must be consecutive from 1; expected [group " << expected << "]";
      fail(gs->line, 1, msg.str());
    }
    ++expected;
    GroupProfile grp;
    grp.rf_chains = as_size(require(*gs, "rf_chains"), 1);
    const auto es = energy(*gs, "symbol_energy");
    if (!es) fail(gs->line, 1, section_name(*gs) + ": missing required key 'symbol_energy_db'");
    grp.symbol_energy = *es;
    if (Entry* e = find(*gs, "mobile")) grp.mobile = as_bool(*e);

    auto it = users.find(index);
    if (it == users.end())
      fail(gs->line, 1, section_name(*gs) + ": needs at least one [group N user M] section");
    std::size_t expected_user = 1;
    for (auto& [uindex, us] : it->second) {
      if (uindex != expected_user) {
        std::ostringstream msg;
        msg << "user indices must be consecutive from 1; expected [group " << index << " user "
            << expected_user << "]";
        fail(us->line, 1, msg.str());
      }
      ++expected_user;
      UserProfile user;
      user.gain = energy(*us, "gain").value_or(1.0);
      double spread = default_spread;
      if (Entry* e = find(*us, "spread")) spread = as_positive(*e);
      Entry& clusters = require(*us, "clusters");
      for (const auto& [item, col] : as_list(clusters)) {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
          const auto colon = item.find(':', start);
          parts.push_back(trim(std::string_view(item).substr(
              start, colon == std::string::npos ? std::string::npos : colon - start)));
          if (colon == std::string::npos) break;
          start = colon + 1;
        }
        if (parts.size() < 2 || parts.size() > 3)
          fail(clusters.line, col, "cluster must be 'delay:aoa' or 'delay:aoa:spread'");
        Mpc mpc;
        mpc.spread_deg = spread;
        if (!parse_integer(parts[0], mpc.delay))
          fail(clusters.line, col, "cluster delay must be a non-negative integer");
        if (!parse_real(parts[1], mpc.aoa_deg))
          fail(clusters.line, col, "cluster angle must be a finite number");
        if (parts.size() == 3 && (!parse_real(parts[2], mpc.spread_deg) || !(mpc.spread_deg > 0.0)))
          fail(clusters.line, col, "cluster spread must be a positive number");
        if (mpc.delay >= scn.taps) fail(clusters.line, col, "cluster delay must be < taps");
        user.mpcs.push_back(mpc);
      }
      grp.users.push_back(std::move(user));
    }
    scn.groups.push_back(std::move(grp));
  }
  for (auto& [index, per_group] : users) {
    if (!groups.count(index)) {
      std::ostringstream msg;
      msg << "user section refers to missing [group " << index << "]";
      fail(per_group.begin()->second->line, 1, msg.str());
    }
  }

  if (auto it = simple.find("run"); it != simple.end()) {
    Section& s = *it->second;
    if (Entry* e = find(s, "group")) {
      const std::size_t g = as_size(*e, 1);
      if (g > scn.groups.size()) fail(*e, "run.group: no such group");
      sw.group = g - 1;
    }
    if (Entry* e = find(s, "beamformers")) {
      sw.beamformers.clear();
      for (const auto& [item, col] : as_list(*e)) {
        const auto kind = parse_beamformer(item);
        if (!kind)
          fail(e->line, col,
               "unknown beamformer '" + item +
                   "' (geb, dft, pe, pe-am, fixed-ordered, fixed-interlaced, dynamic)");
        sw.beamformers.push_back(*kind);
      }
    }
    if (Entry* e = find(s, "combiners")) {
      sw.combiners.clear();
      for (const auto& [item, col] : as_list(*e)) {
        const auto kind = parse_combiner(item);
        if (!kind) fail(e->line, col, "unknown combiner '" + item + "' (zf, lmmse)");
        sw.combiners.push_back(*kind);
      }
    }
    if (Entry* e = find(s, "estimator")) {
      const auto kind = parse_estimator(e->value);
      if (!kind) fail(*e, "unknown estimator '" + e->value + "' (lmmse, ls, none)");
      sw.estimator = *kind;
    }
    if (Entry* e = find(s, "pilot_length")) sw.pilot_length = as_size(*e, 1);
    sw.pilot_energy = energy(s, "pilot_energy");
    if (Entry* e = find(s, "block_length")) sw.block_length = as_size(*e, 1);
  }

  double phi_start = 0.0, phi_stop = 0.0, phi_step = 1.0;
  if (auto it = simple.find("sweep"); it != simple.end()) {
    Section& s = *it->second;
    if (Entry* e = find(s, "phi_start")) phi_start = as_real(*e);
    if (Entry* e = find(s, "phi_stop")) phi_stop = as_real(*e);
    if (Entry* e = find(s, "phi_step")) phi_step = as_positive(*e);
    if (phi_stop < phi_start) fail(s.line, 1, "[sweep]: phi_stop must not be below phi_start");
    if (Entry* e = find(s, "beampattern_phi")) {
      if (e->value == "none") {
        sw.beampattern_phi.reset();
      } else {
        sw.beampattern_phi = as_real(*e);
      }
    }
    if (Entry* e = find(s, "theta_step")) sw.theta_step = as_positive(*e);
  }
  sw.phi_grid = arange_inclusive(phi_start, phi_stop, phi_step);

  if (auto it = simple.find("mc"); it != simple.end()) {
    Section& s = *it->second;
    if (Entry* e = find(s, "trials")) sw.trials = as_size(*e, 1);
    if (Entry* e = find(s, "seed")) sw.seed = as_u64(*e);
  }
  if (auto it = simple.find("numerics"); it != simple.end()) {
    Section& s = *it->second;
    if (Entry* e = find(s, "am_tol")) sw.design.am.tol = as_positive(*e);
    if (Entry* e = find(s, "max_iter")) sw.design.am.max_iter = as_size(*e, 1);
    if (Entry* e = find(s, "restarts")) sw.design.restarts = as_size(*e, 1);
    if (Entry* e = find(s, "quadrature_points")) sw.quadrature_points = as_size(*e, 8);
  }
  if (auto it = simple.find("output"); it != simple.end()) {
    Section& s = *it->second;
    if (Entry* e = find(s, "directory")) cfg.output.directory = e->value;
    if (Entry* e = find(s, "db")) cfg.output.db = as_bool(*e);
    if (Entry* e = find(s, "cdf_points")) cfg.output.cdf_points = as_size(*e, 2);
  }

  check_unused();
  try {
    scn.validate();
  } catch (const ValidationError& e) {
    fail(scenario->line, 1, std::string("invalid scenario: ") + e.what());
  }
  if (sw.block_length < scn.taps) fail(1, 1, "[run] block_length must be >= taps");
  return cfg;
}

// Shortest text that reads back to the same double.
std::string exact(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

// dB form when it reads back to the same linear value.
void write_energy(std::ostream& os, const char* key, double linear) {
  const double db = linear_to_db(linear);
  const std::string text = exact(db);
  double back = 0.0;
  if (parse_real(text, back) && db_to_linear(back) == linear) {
    os << key << "_db = " << text << "\n";
  } else {
    os << key << " = " << exact(linear) << "\n";
  }
}

}  // namespace

ConfigError::ConfigError(std::string source, std::size_t line, std::size_t column,
                         const std::string& what)
    : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  return Parser(text, source).build();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string to_config_text(const ExperimentConfig& cfg) {
  const SweepConfig& sw = cfg.sweep;
  const Scenario& scn = sw.scenario;
  std::ostringstream os;
  os << "[scenario]\n";
  os << "antennas = " << scn.antennas << "\n";
  os << "taps = " << scn.taps << "\n";
  write_energy(os, "noise_power", scn.noise_power);
  if (scn.total_rf_chains != 0) os << "total_rf_chains = " << scn.total_rf_chains << "\n";
  if (scn.phi_deg != 0.0) os << "phi = " << exact(scn.phi_deg) << "\n";

  for (std::size_t g = 0; g < scn.groups.size(); ++g) {
    const auto& grp = scn.groups[g];
    os << "\n[group " << g + 1 << "]\n";
    os << "rf_chains = " << grp.rf_chains << "\n";
    write_energy(os, "symbol_energy", grp.symbol_energy);
    os << "mobile = " << (grp.mobile ? "true" : "false") << "\n";
    for (std::size_t m = 0; m < grp.users.size(); ++m) {
      const auto& user = grp.users[m];
      os << "\n[group " << g + 1 << " user " << m + 1 << "]\n";
      if (user.gain != 1.0) os << "gain = " << exact(user.gain) << "\n";
      const double spread = user.mpcs.empty() ? 2.0 : user.mpcs.front().spread_deg;
      os << "spread = " << exact(spread) << "\n";
      os << "clusters = ";
      for (std::size_t i = 0; i < user.mpcs.size(); ++i) {
        const auto& mpc = user.mpcs[i];
        if (i) os << ", ";
        os << mpc.delay << ":" << exact(mpc.aoa_deg);
        if (mpc.spread_deg != spread) os << ":" << exact(mpc.spread_deg);
      }
      os << "\n";
    }
  }

  os << "\n[run]\n";
  os << "group = " << sw.group + 1 << "\n";
  os << "beamformers = ";
  for (std::size_t i = 0; i < sw.beamformers.size(); ++i)
    os << (i ? ", " : "") << to_string(sw.beamformers[i]);
  os << "\ncombiners = ";
  for (std::size_t i = 0; i < sw.combiners.size(); ++i)
    os << (i ? ", " : "") << to_string(sw.combiners[i]);
  os << "\nestimator = " << to_string(sw.estimator) << "\n";
  os << "pilot_length = " << sw.pilot_length << "\n";
  if (sw.pilot_energy) write_energy(os, "pilot_energy", *sw.pilot_energy);
  os << "block_length = " << sw.block_length << "\n";

  os << "\n[sweep]\n";
  const double start = sw.phi_grid.front();
  const double stop = sw.phi_grid.back();
  const double step = sw.phi_grid.size() > 1
                          ? (stop - start) / static_cast<double>(sw.phi_grid.size() - 1)
                          : 1.0;
  os << "phi_start = " << exact(start) << "\n";
  os << "phi_stop = " << exact(stop) << "\n";
  os << "phi_step = " << exact(step) << "\n";
  os << "beampattern_phi = " << (sw.beampattern_phi ? exact(*sw.beampattern_phi) : "none")
     << "\n";
  os << "theta_step = " << exact(sw.theta_step) << "\n";

  os << "\n[mc]\n";
  os << "trials = " << sw.trials << "\n";
  os << "seed = " << sw.seed << "\n";

  os << "\n[numerics]\n";
  os << "am_tol = " << exact(sw.design.am.tol) << "\n";
  os << "max_iter = " << sw.design.am.max_iter << "\n";
  os << "restarts = " << sw.design.restarts << "\n";
  os << "quadrature_points = " << sw.quadrature_points << "\n";

  os << "\n[output]\n";
  os << "directory = " << cfg.output.directory << "\n";
  os << "db = " << (cfg.output.db ? "true" : "false") << "\n";
  os << "cdf_points = " << cfg.output.cdf_points << "\n";
  return os.str();
}

ExperimentConfig table1_experiment(std::size_t antennas) {
  ExperimentConfig cfg;
  cfg.sweep.scenario = table1_scenario(antennas);
  cfg.sweep.group = 0;
  cfg.sweep.phi_grid = arange_inclusive(-45.0, 45.0, 1.0);
  cfg.sweep.beampattern_phi = 0.0;
  return cfg;
}

}  // namespace jsdm
