#include "swampcast/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "swampcast/discovery.hpp"
#include "swampcast/lattice.hpp"
#include "swampcast/partition.hpp"
#include "swampcast/spokesmen.hpp"

namespace swampcast {

namespace {

using Kind = PlacementSpec::Kind;

[[noreturn]] void fail_at(const std::string& file, int line, const std::string& msg) {
  throw ConfigError(file + ":" + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail(const std::string& file, const std::string& msg) {
  throw ConfigError(file + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// One key = value occurrence, with the line it came from for error messages.
struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

struct RawConfig {
  std::string file;
  std::vector<Entry> entries;     // in file order
  std::vector<Point> points;      // bare coordinate lines under [placement]
  int point_dim = 0;              // 1 or 2 once the first point is seen
};

bool known_section(const std::string& s) {
  return s == "placement" || s == "radio" || s == "algorithm" || s == "run";
}

bool known_key(const std::string& sec, const std::string& key) {
  if (sec == "placement")
    return key == "kind" || key == "n" || key == "length" || key == "width" ||
           key == "height";
  if (sec == "radio") return key == "r" || key == "s" || key == "gamma";
  if (sec == "algorithm")
    return key == "name" || key == "source" || key == "horizon-mult";
  if (sec == "run") return key == "id" || key == "seed" || key == "trace";
  return false;
}

RawConfig parse_raw(const std::string& text, const std::string& file) {
  RawConfig raw;
  raw.file = file;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail_at(file, lineno, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (!known_section(section))
        fail_at(file, lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      if (section != "placement")
        fail_at(file, lineno, "expected key = value");
      std::istringstream ps(t);
      double x = 0.0, y = 0.0;
      if (!(ps >> x)) fail_at(file, lineno, "expected coordinates");
      int d = 1;
      if (ps >> y) d = 2;
      ps.clear();
      std::string rest;
      std::getline(ps, rest);
      if (!trim(rest).empty())
        fail_at(file, lineno, "trailing text after coordinates");
      if (raw.point_dim == 0) raw.point_dim = d;
      if (raw.point_dim != d)
        fail_at(file, lineno, "mixed 1-d and 2-d coordinates");
      raw.points.push_back(d == 1 ? Point{x, 0.0} : Point{x, y});
      continue;
    }
    if (section.empty()) fail_at(file, lineno, "key before any [section]");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (!known_key(section, key))
      fail_at(file, lineno, "unknown key '" + key + "' in [" + section + "]");
    if (value.empty()) fail_at(file, lineno, "empty value for '" + key + "'");
    for (const Entry& e : raw.entries)
      if (e.section == section && e.key == key)
        fail_at(file, lineno, "duplicate key '" + key + "'");
    raw.entries.push_back({section, key, value, lineno});
  }
  return raw;
}

double to_double(const RawConfig& raw, const Entry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail_at(raw.file, e.line,
            "expected a number for '" + e.key + "', got '" + e.value + "'");
  }
}

long long to_int(const RawConfig& raw, const Entry& e) {
  long long v = 0;
  const char* b = e.value.data();
  const char* en = b + e.value.size();
  const auto res = std::from_chars(b, en, v);
  if (res.ec != std::errc{} || res.ptr != en)
    fail_at(raw.file, e.line,
            "expected an integer for '" + e.key + "', got '" + e.value + "'");
  return v;
}

std::uint64_t to_seed(const RawConfig& raw, const Entry& e) {
  std::uint64_t v = 0;
  const char* b = e.value.data();
  const char* en = b + e.value.size();
  const auto res = std::from_chars(b, en, v);
  if (res.ec != std::errc{} || res.ptr != en)
    fail_at(raw.file, e.line,
            "expected an unsigned integer for '" + e.key + "'");
  return v;
}

bool to_bool(const RawConfig& raw, const Entry& e) {
  if (e.value == "on" || e.value == "true" || e.value == "1") return true;
  if (e.value == "off" || e.value == "false" || e.value == "0") return false;
  fail_at(raw.file, e.line, "expected on/off for '" + e.key + "'");
}

Kind parse_kind(const RawConfig& raw, const Entry& e) {
  if (e.value == "lattice-line") return Kind::LatticeLine;
  if (e.value == "lattice-grid") return Kind::LatticeGrid;
  if (e.value == "random-line") return Kind::RandomLine;
  if (e.value == "random-plane") return Kind::RandomPlane;
  if (e.value == "explicit") return Kind::Explicit;
  fail_at(raw.file, e.line, "unknown placement kind '" + e.value + "'");
}

AlgorithmId parse_algorithm(const RawConfig& raw, const Entry& e) {
  if (e.value == "A" || e.value == "a") return AlgorithmId::A;
  if (e.value == "A2" || e.value == "a2") return AlgorithmId::A2;
  if (e.value == "B" || e.value == "b") return AlgorithmId::B;
  if (e.value == "B2" || e.value == "b2") return AlgorithmId::B2;
  fail_at(raw.file, e.line, "unknown algorithm '" + e.value + "'");
}

void require_integer_radio(const std::string& file, const Scenario& sc,
                           const char* name) {
  if (sc.radio.r != std::floor(sc.radio.r) || sc.radio.s != std::floor(sc.radio.s))
    fail(file, std::string("algorithm ") + name + " needs integer r and s");
}

void check_compat(const std::string& file, const Scenario& sc) {
  const Kind k = sc.placement.kind;
  switch (sc.algorithm) {
    case AlgorithmId::A:
      if (k != Kind::LatticeLine)
        fail(file, "algorithm A runs on lattice-line placements");
      require_integer_radio(file, sc, "A");
      break;
    case AlgorithmId::A2:
      if (k != Kind::LatticeGrid)
        fail(file, "algorithm A2 runs on lattice-grid placements");
      require_integer_radio(file, sc, "A2");
      break;
    case AlgorithmId::B:
      if (!(k == Kind::RandomLine ||
            (k == Kind::Explicit && sc.placement.dim == 1)))
        fail(file, "algorithm B needs a line placement");
      if (sc.radio.r != 1.0) fail(file, "algorithm B needs r = 1");
      break;
    case AlgorithmId::B2:
      if (!(k == Kind::RandomPlane ||
            (k == Kind::Explicit && sc.placement.dim == 2)))
        fail(file, "algorithm B2 needs a plane placement");
      if (sc.radio.r != 1.0) fail(file, "algorithm B2 needs r = 1");
      break;
  }
}

// Build one Scenario from the parsed entries with `values[i]` substituted for
// entry i's value. parse_scenario passes values through unchanged; the sweep
// expansion passes one choice per list-valued key.
Scenario make_scenario(const RawConfig& raw,
                       const std::vector<std::string>& values) {
  Scenario sc;
  bool kind_set = false, n_set = false;
  bool length_set = false, width_set = false, height_set = false;
  long long n = 0;
  for (std::size_t i = 0; i < raw.entries.size(); ++i) {
    Entry e = raw.entries[i];
    e.value = values[i];
    if (e.section == "placement") {
      if (e.key == "kind") {
        sc.placement.kind = parse_kind(raw, e);
        kind_set = true;
      } else if (e.key == "n") {
        n = to_int(raw, e);
        if (n < 1) fail_at(raw.file, e.line, "n must be positive");
        n_set = true;
      } else if (e.key == "length") {
        sc.placement.length = to_double(raw, e);
        if (sc.placement.length <= 0) fail_at(raw.file, e.line, "length must be positive");
        length_set = true;
      } else if (e.key == "width") {
        sc.placement.width = to_double(raw, e);
        if (sc.placement.width <= 0) fail_at(raw.file, e.line, "width must be positive");
        width_set = true;
      } else {
        sc.placement.height = to_double(raw, e);
        if (sc.placement.height <= 0) fail_at(raw.file, e.line, "height must be positive");
        height_set = true;
      }
    } else if (e.section == "radio") {
      if (e.key == "r") sc.radio.r = to_double(raw, e);
      else if (e.key == "s") sc.radio.s = to_double(raw, e);
      else sc.radio.gamma = to_double(raw, e);
    } else if (e.section == "algorithm") {
      if (e.key == "name") sc.algorithm = parse_algorithm(raw, e);
      else if (e.key == "source") sc.source = static_cast<int>(to_int(raw, e));
      else {
        sc.horizon_mult = static_cast<int>(to_int(raw, e));
        if (sc.horizon_mult < 1)
          fail_at(raw.file, e.line, "horizon-mult must be at least 1");
      }
    } else {
      if (e.key == "id") {
        if (e.value.find(',') != std::string::npos ||
            e.value.find('"') != std::string::npos)
          fail_at(raw.file, e.line, "id must not contain ',' or '\"'");
        sc.id = e.value;
      } else if (e.key == "seed") {
        sc.seed = to_seed(raw, e);
      } else {
        sc.trace = to_bool(raw, e);
      }
    }
  }

  if (!raw.points.empty()) {
    if (kind_set && sc.placement.kind != Kind::Explicit)
      fail(raw.file, "coordinates listed but kind is not 'explicit'");
    sc.placement.kind = Kind::Explicit;
    sc.placement.points = raw.points;
    sc.placement.dim = raw.point_dim;
    sc.placement.n = static_cast<int>(raw.points.size());
    if (n_set && n != static_cast<long long>(raw.points.size()))
      fail(raw.file, "n disagrees with the number of listed points");
    for (const Point& p : raw.points)
      if (p.x < 0.0 || p.y < 0.0)
        fail(raw.file, "explicit coordinates must be nonnegative");
  } else {
    if (!kind_set) fail(raw.file, "[placement] needs kind or explicit points");
    if (sc.placement.kind == Kind::Explicit)
      fail(raw.file, "explicit placement without coordinates");
    if (!n_set) fail(raw.file, "[placement] needs n");
    sc.placement.n = static_cast<int>(n);
    sc.placement.dim =
        (sc.placement.kind == Kind::LatticeLine || sc.placement.kind == Kind::RandomLine)
            ? 1
            : 2;
    if (sc.placement.kind == Kind::RandomLine && !length_set)
      fail(raw.file, "random-line needs length");
    if (sc.placement.kind == Kind::RandomPlane && !(width_set && height_set))
      fail(raw.file, "random-plane needs width and height");
    if (sc.placement.kind == Kind::LatticeGrid) {
      const long long root = std::llround(std::sqrt(static_cast<double>(n)));
      if (root * root != n) fail(raw.file, "lattice-grid needs a square n");
    }
  }

  try {
    sc.radio.validate();
  } catch (const std::exception& e) {
    fail(raw.file, e.what());
  }
  check_compat(raw.file, sc);
  if (sc.source < 0 || sc.source >= sc.placement.n)
    fail(raw.file, "source out of range");
  return sc;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string fmt_num(double v) {
  std::ostringstream o;
  o << v;
  return o.str();
}

void append_detail(VerificationReport& rep, const std::string& msg) {
  if (!rep.detail.empty()) rep.detail += "; ";
  rep.detail += msg;
}

// Domain the partition must cover. Configured extents for the random
// families; for explicit placements, the farthest coordinate plus a hair so
// boundary points land inside the last cell.
double line_extent(const Scenario& sc, const Network& net) {
  if (sc.placement.kind == Kind::RandomLine) return sc.placement.length;
  double m = 0.0;
  for (const Point& p : net.positions()) m = std::max(m, p.x);
  return std::max(m, sc.radio.gamma) + 1e-9;
}

std::pair<double, double> plane_extent(const Scenario& sc, const Network& net) {
  if (sc.placement.kind == Kind::RandomPlane)
    return {sc.placement.width, sc.placement.height};
  double mx = 0.0, my = 0.0;
  for (const Point& p : net.positions()) {
    mx = std::max(mx, p.x);
    my = std::max(my, p.y);
  }
  return {std::max(mx, sc.radio.gamma) + 1e-9,
          std::max(my, sc.radio.gamma) + 1e-9};
}

}  // namespace

std::string algorithm_name(AlgorithmId a) {
  switch (a) {
    case AlgorithmId::A: return "A";
    case AlgorithmId::A2: return "A2";
    case AlgorithmId::B: return "B";
    case AlgorithmId::B2: return "B2";
  }
  return "?";
}

bool VerificationReport::pass() const {
  const bool goal = impossible ? !informed_all : informed_all;
  return goal && within_bound && links_match && reception_match && lemmas_pass;
}

Scenario parse_scenario(const std::string& text, const std::string& filename) {
  const RawConfig raw = parse_raw(text, filename);
  std::vector<std::string> values;
  values.reserve(raw.entries.size());
  for (const Entry& e : raw.entries) {
    if (e.value.find(',') != std::string::npos)
      fail_at(filename, e.line,
              "list value for '" + e.key + "' needs the sweep command");
    values.push_back(e.value);
  }
  return make_scenario(raw, values);
}

std::vector<Scenario> parse_sweep(const std::string& text,
                                  const std::string& filename) {
  const RawConfig raw = parse_raw(text, filename);
  std::vector<std::vector<std::string>> choices;
  choices.reserve(raw.entries.size());
  long long total = 1;
  for (const Entry& e : raw.entries) {
    choices.push_back(split_list(e.value));
    for (const std::string& v : choices.back())
      if (v.empty()) fail_at(filename, e.line, "empty list item for '" + e.key + "'");
    total *= static_cast<long long>(choices.back().size());
    if (total > 100000) fail_at(filename, e.line, "sweep expands past 100000 scenarios");
  }
  const int width = static_cast<int>(std::to_string(total).size());
  std::vector<Scenario> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::string> pick(raw.entries.size());
  for (long long idx = 0; idx < total; ++idx) {
    long long rem = idx;
    // Mixed radix with the last listed key fastest: the first key varies
    // slowest, matching the file's reading order.
    for (int i = static_cast<int>(choices.size()) - 1; i >= 0; --i) {
      const auto count = static_cast<long long>(choices[i].size());
      pick[i] = choices[i][static_cast<std::size_t>(rem % count)];
      rem /= count;
    }
    Scenario sc = make_scenario(raw, pick);
    std::ostringstream id;
    id << sc.id << '-' << std::setw(width) << std::setfill('0') << (idx + 1);
    sc.id = id.str();
    out.push_back(std::move(sc));
  }
  return out;
}

std::uint64_t effective_seed(const Scenario& sc) {
  const char* env = std::getenv("SWAMPCAST_SEED");
  if (env == nullptr || *env == '\0') return sc.seed;
  std::uint64_t v = 0;
  const auto res = std::from_chars(env, env + std::strlen(env), v);
  if (res.ec != std::errc{} || *res.ptr != '\0')
    throw ConfigError(std::string("SWAMPCAST_SEED: expected an unsigned integer, got '") +
                      env + "'");
  return v;
}

Network build_network(const Scenario& sc) {
  const PlacementSpec& p = sc.placement;
  switch (p.kind) {
    case Kind::LatticeLine: return lattice_line(p.n, sc.radio);
    case Kind::LatticeGrid: return lattice_grid(p.n, sc.radio);
    case Kind::RandomLine:
      return random_line(p.length, p.n, sc.radio, effective_seed(sc));
    case Kind::RandomPlane:
      return random_plane(p.width, p.height, p.n, sc.radio, effective_seed(sc));
    case Kind::Explicit: return Network(p.points, p.dim, sc.radio);
  }
  throw std::logic_error("unreachable placement kind");
}

std::string placement_text(const Network& net) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (const Point& p : net.positions()) {
    out << p.x;
    if (net.dim() == 2) out << ' ' << p.y;
    out << '\n';
  }
  return out.str();
}

ScenarioRun execute_scenario(const Scenario& sc, bool audit, TraceMode trace_mode) {
  const auto t0 = std::chrono::steady_clock::now();
  if (audit && trace_mode == TraceMode::Off) trace_mode = TraceMode::Lite;

  ScenarioRun out;
  VerificationReport& rep = out.report;
  rep.id = sc.id;

  const Network net = build_network(sc);
  rep.n = net.size();
  const FloodingResult flood = flooding_baseline(net, sc.source);
  rep.flood_depth = flood.eccentricity;

  std::optional<Partition> part;
  std::vector<CoverageAuditRow> audits;
  try {
    switch (sc.algorithm) {
      case AlgorithmId::A: {
        const int r = static_cast<int>(sc.radio.r);
        const int s = static_cast<int>(sc.radio.s);
        rep.bound = line_bound(rep.n, r, s);
        out.sim = run_algorithm_a(rep.n, r, s, sc.source, trace_mode);
        rep.within_bound = out.sim.completion_round >= 0 &&
                           out.sim.completion_round <= rep.bound;
        break;
      }
      case AlgorithmId::A2: {
        const int r = static_cast<int>(sc.radio.r);
        const int s = static_cast<int>(sc.radio.s);
        rep.bound = grid_bound(rep.n, r, s);
        out.sim = run_algorithm_a2(rep.n, r, s, sc.source, trace_mode);
        rep.within_bound = out.sim.completion_round >= 0 &&
                           out.sim.completion_round <= rep.bound;
        break;
      }
      case AlgorithmId::B: {
        part.emplace(Partition::line(sc.radio.s, sc.radio.gamma, line_extent(sc, net)));
        BroadcastOptions opt;
        opt.horizon_mult = sc.horizon_mult;
        opt.trace = trace_mode;
        BroadcastRun run = run_algorithm_b(net, *part, sc.source, opt);
        const long long budget =
            std::max(1LL, static_cast<long long>(sc.horizon_mult) *
                              (flood.eccentricity + 2));
        rep.bound = run.discovery_rounds + budget * 6LL * part->mu();
        out.sim = std::move(run.sim);
        rep.within_bound = run.quiescent && out.sim.rounds <= rep.bound;
        break;
      }
      case AlgorithmId::B2: {
        const auto [w, h] = plane_extent(sc, net);
        part.emplace(Partition::plane(sc.radio.s, sc.radio.gamma, w, h));
        BroadcastOptions opt;
        opt.horizon_mult = sc.horizon_mult;
        opt.trace = trace_mode;
        opt.audit_coverage = audit;
        BroadcastRun run = run_algorithm_b2(net, *part, sc.source, opt);
        const long long budget =
            std::max(1LL, static_cast<long long>(sc.horizon_mult) *
                              (flood.eccentricity + 2));
        const long long sweep_len =
            static_cast<long long>(plane_slots_per_block(part->homes_per_side())) *
            part->mu();
        rep.bound = run.discovery_rounds + budget * sweep_len;
        audits = std::move(run.audits);
        out.sim = std::move(run.sim);
        rep.within_bound = run.quiescent && out.sim.rounds <= rep.bound;
        break;
      }
    }
    rep.rounds = out.sim.rounds;
    rep.completion_round = out.sim.completion_round;
    rep.informed_all = out.sim.informed_count == rep.n;
    rep.within_bound = rep.within_bound && rep.informed_all;
  } catch (const ImpossibilityError& e) {
    rep.impossible = true;
    rep.informed_all = false;
    rep.within_bound = !flood.connected;  // the refusal must be earned
    rep.detail = e.what();
  }

  rep.links_match = true;
  rep.reception_match = true;
  rep.lemmas_pass = true;
  if (audit) {
    for (int u = 0; u < rep.n; ++u) {
      if (oracle_neighbors(net, u) != net.neighbors_of(u)) {
        rep.links_match = false;
        append_detail(rep, "adjacency mismatch at node " + std::to_string(u));
        break;
      }
    }
    for (const RoundTrace& row : out.sim.trace) {
      const RoundDeliveries rd = oracle_deliveries(net, row.transmitters);
      const int delivered = static_cast<int>(
          std::count_if(rd.heard_from.begin(), rd.heard_from.end(),
                        [](int h) { return h >= 0; }));
      if (delivered != row.delivered ||
          static_cast<int>(rd.collision_nodes.size()) != row.collision_blocked ||
          static_cast<int>(rd.swamp_nodes.size()) != row.swamp_blocked) {
        rep.reception_match = false;
        append_detail(rep, "round " + std::to_string(row.round) +
                               ": engine and oracle disagree on receptions");
        break;
      }
    }
    std::vector<std::pair<std::string, CheckResult>> checks;
    if (part) {
      checks.emplace_back("single-occupancy", check_single_occupancy(*part, net));
      checks.emplace_back("label-separation", check_label_separation(*part, net));
      std::mt19937_64 rng(effective_seed(sc) ^ 0x9e3779b97f4a7c15ull);
      checks.emplace_back("block-separation", check_block_separation(*part, rng));
    }
    if (net.dim() == 1)
      checks.emplace_back("range-overlap", check_range_overlap(net));
    for (const auto& [name, res] : checks) {
      if (!res.pass) {
        rep.lemmas_pass = false;
        append_detail(rep, name + ": " + res.detail);
      }
    }
    for (const CoverageAuditRow& row : audits) {
      if (!row.covered) {
        rep.lemmas_pass = false;
        append_detail(rep, "sweep " + std::to_string(row.sweep) + " region " +
                               std::to_string(row.region) + " block " +
                               std::to_string(row.block) +
                               ": elected relays miss part of the block's reach");
        break;
      }
    }
  }

  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

VerificationReport run_scenario(const Scenario& sc) {
  return execute_scenario(sc, false, TraceMode::Off).report;
}

VerificationReport verify_scenario(const Scenario& sc) {
  return execute_scenario(sc, true, TraceMode::Lite).report;
}

std::string sweep_csv(const std::vector<Scenario>& scenarios, bool audit,
                      std::vector<VerificationReport>* reports) {
  std::ostringstream out;
  out << "id,n,r,s,gamma,D,rounds,bound,informed,within_bound,links,reception,"
         "lemmas,pass\n";
  for (const Scenario& sc : scenarios) {
    const VerificationReport rep = execute_scenario(sc, audit, TraceMode::Lite).report;
    if (reports != nullptr) reports->push_back(rep);
    out << rep.id << ',' << rep.n << ',' << fmt_num(sc.radio.r) << ','
        << fmt_num(sc.radio.s) << ',' << fmt_num(sc.radio.gamma) << ','
        << rep.flood_depth << ',' << rep.rounds << ',' << rep.bound << ','
        << (rep.informed_all ? 1 : 0) << ',' << (rep.within_bound ? 1 : 0) << ','
        << (rep.links_match ? 1 : 0) << ',' << (rep.reception_match ? 1 : 0) << ','
        << (rep.lemmas_pass ? 1 : 0) << ',' << (rep.pass() ? 1 : 0) << '\n';
  }
  return out.str();
}

void write_trace_jsonl(std::ostream& out, const Scenario& sc, const SimResult& sim) {
  nlohmann::json head{{"schema", 1},
                      {"id", sc.id},
                      {"algorithm", algorithm_name(sc.algorithm)},
                      {"n", static_cast<int>(sim.informed_round.size())},
                      {"r", sc.radio.r},
                      {"s", sc.radio.s},
                      {"gamma", sc.radio.gamma},
                      {"seed", effective_seed(sc)},
                      {"rounds", sim.rounds},
                      {"completion_round", sim.completion_round},
                      {"informed", sim.informed_count}};
  out << head.dump() << '\n';
  for (const RoundTrace& row : sim.trace) {
    nlohmann::json j{{"round", row.round},
                     {"transmitters", row.transmitters},
                     {"delivered", row.delivered},
                     {"collision_blocked", row.collision_blocked},
                     {"swamp_blocked", row.swamp_blocked}};
    if (!row.deliveries.empty()) j["deliveries"] = row.deliveries;
    out << j.dump() << '\n';
  }
}

CheckResult check_closer_farther_samples(std::uint64_t seed, int trials) {
  CheckResult out;
  // Block side must span several home cells: an occupant escapes every role
  // only when its row, column, and both diagonals are occupied on both sides,
  // so the block needs room for many separated points. s = 0.4 with
  // gamma = 0.02 gives ten cells per side and ~30 occupants per fill.
  const double s = 0.4;
  const double gamma = 0.02;
  const Partition part = Partition::plane(s, gamma, 3.0, 3.0);
  const int k = part.homes_per_side();
  const Box block = part.block_box(0, 1);
  std::mt19937_64 rng(seed);

  int done = 0;
  long long placements = 0;
  const long long max_placements = 50LL * trials + 1000;
  while (done < trials) {
    if (++placements > max_placements) {
      out.pass = false;
      out.detail = "sampler starved before reaching the trial count";
      return out;
    }
    std::vector<Point> pts;
    for (int c = 0; c < 80; ++c) {
      const Point q{uniform_double(rng, block.xlo + 1e-7, block.xhi - 1e-7),
                    uniform_double(rng, block.ylo + 1e-7, block.yhi - 1e-7)};
      bool apart = true;
      for (const Point& p : pts) apart = apart && dist(p, q) >= gamma + 1e-9;
      if (apart) pts.push_back(q);
    }
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(k) * k, 0);
    std::vector<int> node_home(pts.size(), -1);
    bool clean = true;
    for (std::size_t i = 0; i < pts.size() && clean; ++i) {
      const PartitionLabel lab = part.label_of(pts[i]);
      clean = lab.region == 0 && lab.block == 1 && !flags[lab.home - 1];
      if (clean) {
        flags[lab.home - 1] = 1;
        node_home[i] = lab.home - 1;
      }
    }
    if (!clean) continue;
    const std::vector<int> spokes = plane_spokesman_homes(k, flags);
    std::vector<Point> spokesmen;
    std::vector<int> quiet;  // indices of occupants with no slot of their own
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::binary_search(spokes.begin(), spokes.end(), node_home[i]))
        spokesmen.push_back(pts[i]);
      else
        quiet.push_back(static_cast<int>(i));
    }
    if (quiet.empty()) continue;
    // One placement feeds several trials: fresh u and p per probe.
    for (int probe = 0; probe < 10 && done < trials; ++probe) {
      const Point& u = pts[static_cast<std::size_t>(
          quiet[uniform_int(rng, 0, static_cast<int>(quiet.size()) - 1)])];
      Point p{};
      do {
        p = {uniform_double(rng, block.xlo - 1.0, block.xhi + 1.0),
             uniform_double(rng, block.ylo - 1.0, block.yhi + 1.0)};
      } while (p.x >= block.xlo - 1e-9 && p.x <= block.xhi + 1e-9 &&
               p.y >= block.ylo - 1e-9 && p.y <= block.yhi + 1e-9);
      const auto [closer, farther] = check_closer_farther(spokesmen, u, p);
      if (!closer || !farther) {
        std::ostringstream w;
        w << std::setprecision(17) << "u=(" << u.x << ',' << u.y << ") p=(" << p.x
          << ',' << p.y << ") lacks a " << (closer ? "farther" : "closer")
          << " spokesman among " << spokesmen.size();
        out.pass = false;
        out.detail = w.str();
        return out;
      }
      ++done;
    }
  }
  return out;
}

std::vector<LemmaOutcome> run_lemma_battery(std::uint64_t seed) {
  std::vector<LemmaOutcome> out;
  const auto add = [&out](std::string name, CheckResult res) {
    out.push_back({std::move(name), res.pass, std::move(res.detail)});
  };

  {
    CheckResult res;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10 && res.pass; ++i) {
      const Network net =
          (i % 2 == 0)
              ? random_line(8.0, 12, RadioParams{1.0, 0.5, 0.25}, seed + i)
              : random_plane(2.5, 2.5, 10, RadioParams{1.0, 0.5, 0.2}, seed + i);
      for (int t = 0; t < 50 && res.pass; ++t) {
        std::vector<int> tx;
        for (int v = 0; v < net.size(); ++v)
          if (uniform_int(rng, 0, 3) == 0) tx.push_back(v);
        const RoundDeliveries a = deliveries_for_round(net, tx);
        const RoundDeliveries b = oracle_deliveries(net, tx);
        if (a.heard_from != b.heard_from || a.collision_nodes != b.collision_nodes ||
            a.swamp_nodes != b.swamp_nodes)
          res = {false, "engine and oracle disagree on a random round (net " +
                            std::to_string(i) + ")"};
      }
    }
    add("reception-rule-agreement", res);
  }

  {
    CheckResult res;
    for (int r = 2; r <= 10 && res.pass; ++r) {
      for (int sv = 0; sv <= r - 2 && res.pass; ++sv) {
        const int dmax = static_cast<int>(std::floor(std::sqrt(3.0) * r / 2.0));
        for (int d = 0; d <= dmax && res.pass; ++d) {
          if (annulus_line_coverage(r, sv, d) < r - sv - 1e-9)
            res = {false, "r=" + std::to_string(r) + " s=" + std::to_string(sv) +
                              " dist=" + std::to_string(d)};
        }
      }
    }
    add("annulus-coverage", res);
  }

  {
    CheckResult occ, lab, sep;
    std::mt19937_64 rng(seed ^ 0x5bf03635u);
    for (int i = 0; i < 6 && occ.pass && lab.pass && sep.pass; ++i) {
      const bool plane = i % 2 == 1;
      const Network net =
          plane ? random_plane(2.5, 2.5, 10, RadioParams{1.0, 0.4, 0.2}, seed + 100 + i)
                : random_line(10.0, 12, RadioParams{1.0, 0.5, 0.25}, seed + 100 + i);
      const Partition part = plane ? Partition::plane(0.4, 0.2, 2.5, 2.5)
                                   : Partition::line(0.5, 0.25, 10.0);
      if (occ.pass) occ = check_single_occupancy(part, net);
      if (lab.pass) lab = check_label_separation(part, net);
      if (sep.pass) sep = check_block_separation(part, rng);
    }
    add("single-occupancy", occ);
    add("label-separation", lab);
    add("block-separation", sep);
  }

  {
    CheckResult res;
    for (int i = 0; i < 4 && res.pass; ++i) {
      const Network net = random_line(9.0, 12, RadioParams{1.0, 0.4, 0.2}, seed + 200 + i);
      res = check_range_overlap(net);
    }
    if (res.pass) res = check_range_overlap(lattice_line(24, RadioParams{4.0, 1.0, 1.0}));
    add("range-overlap", res);
  }

  {
    CheckResult res;
    {
      const Network net = random_line(10.0, 14, RadioParams{1.0, 0.5, 0.25}, seed + 300);
      const Partition part = Partition::line(0.5, 0.25, 10.0);
      const DiscoveryOutcome disc = run_procedure_d_star(net, part, TraceMode::Off);
      BroadcastOptions opt;
      opt.trace = TraceMode::Off;
      const BroadcastRun run = run_procedure_t(net, part, disc.knowledge, 0, opt);
      if (run.sim.collision_blocked_total != 0)
        res = {false, "line relay produced a collision-blocked reception"};
    }
    if (res.pass) {
      const Network net = random_plane(2.0, 2.0, 8, RadioParams{1.0, 0.4, 0.1}, seed + 301);
      const Partition part = Partition::plane(0.4, 0.1, 2.0, 2.0);
      BroadcastOptions opt;
      opt.trace = TraceMode::Off;
      const BroadcastRun run = run_procedure_t2(net, part, 0, opt);
      if (run.sim.collision_blocked_total != 0)
        res = {false, "plane relay produced a collision-blocked reception"};
    }
    add("relay-no-collide", res);
  }

  {
    CheckResult res;
    const Network net = random_plane(2.0, 2.0, 8, RadioParams{1.0, 0.4, 0.3}, seed + 400);
    const Partition part = Partition::plane(0.4, 0.3, 2.0, 2.0);
    BroadcastOptions opt;
    opt.trace = TraceMode::Off;
    opt.audit_coverage = true;
    const BroadcastRun run = run_algorithm_b2(net, part, 0, opt);
    if (run.sim.informed_count != net.size())
      res = {false, "relay left nodes uninformed"};
    for (const CoverageAuditRow& row : run.audits)
      if (res.pass && !row.covered)
        res = {false, "sweep " + std::to_string(row.sweep) + " block " +
                          std::to_string(row.block) + " left reach uncovered"};
    add("spokesman-coverage", res);
  }

  add("closer-farther", check_closer_farther_samples(seed ^ 0xc2b2ae35u, 500));
  return out;
}

}  // namespace swampcast
