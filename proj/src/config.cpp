#include "qpic/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace qpic {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_factor(std::string_view t) {
  t = trim(t);
  if (t == "pi") return std::numbers::pi;
  if (t == "-pi") return -std::numbers::pi;
  if (t.empty()) return std::nullopt;
  if (t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> parse_int(std::string_view t) {
  t = trim(t);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Entry {
  std::string value;
  int line;
};

const std::map<std::string, int, std::less<>>& key_index() {
  static const std::map<std::string, int, std::less<>> keys = {
      {"name", 0},           {"initial.mu_x", 0},    {"initial.s", 0},      {"initial.sigma_x", 0},
      {"drive.kind", 0},     {"drive.omega0", 0},    {"drive.g", 1},        {"drive.a", 1},
      {"drive.b", 1},        {"drive.omega1", 1},    {"drive.kappa", 2},    {"picture", 0},
      {"time.t_max", 0},     {"time.samples", 0},    {"outputs.csv", 0},    {"outputs.svg_dir", 0},
      {"outputs.summary", 0}, {"outputs.frames", 0}, {"oracle.enabled", 0}, {"oracle.cutoff", 0},
      {"oracle.steps", 0}};
  return keys;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Entry& e = entries_.at(key);
    auto v = parse_number(e.value);
    if (!v) throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
    return v;
  }

  std::optional<int> integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Entry& e = entries_.at(key);
    auto v = parse_int(e.value);
    if (!v) throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
    return v;
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return entries_.at(key).value;
  }

  std::optional<bool> flag(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Entry& e = entries_.at(key);
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ConfigError(e.line, key, "expected true or false, got '" + e.value + "'");
  }

 private:
  std::map<std::string, Entry> entries_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return (base / p).lexically_normal();
}

}  // namespace

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? std::string() : key + ": ") + message),
      line_(line),
      key_(std::move(key)) {}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  std::string_view num = text;
  std::string_view den;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (den.find('/') != std::string_view::npos) return std::nullopt;
  }
  double value = 1.0;
  std::string_view rest = num;
  while (true) {
    const auto star = rest.find('*');
    auto f = parse_factor(rest.substr(0, star));
    if (!f) return std::nullopt;
    value *= *f;
    if (star == std::string_view::npos) break;
    rest = rest.substr(star + 1);
  }
  if (!den.empty() || text.find('/') != std::string_view::npos) {
    auto d = parse_factor(den);
    if (!d || *d == 0.0) return std::nullopt;
    value /= *d;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

double slowest_frequency(const DriveSpec& d) {
  double slow = d.omega0;
  if (d.drive_kind() == DriveKind::linear) {
    for (double f : {std::abs(d.linear_drive().omega1), std::abs(d.big_omega())}) {
      if (f > d.resonance_threshold() && f < slow) slow = f;
    }
  }
  return slow;
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, Entry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key");
    if (!key_index().count(key)) throw ConfigError(line_no, key, "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(line_no, key, "missing value");
    if (entries.count(key)) {
      throw ConfigError(line_no, key, "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, line_no};
    if (end == text.size()) break;
  }

  const Reader r(entries);
  ScenarioConfig cfg;
  if (auto v = r.text("name")) cfg.name = *v;

  cfg.initial.mu_x = r.number("initial.mu_x").value_or(0.0);
  if (r.has("initial.s") && r.has("initial.sigma_x")) {
    throw ConfigError(r.line("initial.sigma_x"), "initial.sigma_x", "give either initial.s or initial.sigma_x, not both");
  }
  if (auto s = r.number("initial.s")) cfg.initial.s = *s;
  if (auto sx = r.number("initial.sigma_x")) {
    if (!(*sx > 0.0)) throw ConfigError(r.line("initial.sigma_x"), "initial.sigma_x", "must be > 0");
    cfg.initial.s = squeeze_for_sigma_x(*sx);
  }

  const std::string kind = r.text("drive.kind").value_or("free");
  int kind_index = 0;
  if (kind == "free") {
    kind_index = 0;
  } else if (kind == "linear") {
    kind_index = 1;
  } else if (kind == "quadratic") {
    kind_index = 2;
  } else {
    throw ConfigError(r.line("drive.kind"), "drive.kind", "expected free, linear or quadratic, got '" + kind + "'");
  }
  for (const auto& [key, entry] : entries) {
    const int owner = key_index().find(key)->second;
    if (owner != 0 && owner != kind_index) {
      throw ConfigError(entry.line, key, "not valid for drive.kind = " + kind);
    }
  }

  const double omega0 = r.number("drive.omega0").value_or(1.0);
  if (!(omega0 > 0.0)) throw ConfigError(r.line("drive.omega0"), "drive.omega0", "must be > 0");
  try {
    if (kind_index == 0) {
      cfg.drive = DriveSpec::free(omega0);
    } else if (kind_index == 1) {
      LinearDrive ld;
      ld.g = r.number("drive.g").value_or(0.0);
      ld.a = r.number("drive.a").value_or(0.0);
      ld.b = r.number("drive.b").value_or(0.0);
      ld.omega1 = r.number("drive.omega1").value_or(0.0);
      cfg.drive = DriveSpec::linear(omega0, ld);
    } else {
      cfg.drive = DriveSpec::quadratic(omega0, r.number("drive.kappa").value_or(0.0));
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(0, "drive", e.what());
  }

  if (auto p = r.text("picture")) {
    auto tag = parse_picture(*p);
    if (!tag) throw ConfigError(r.line("picture"), "picture", "expected SP, HP, SIP or HIP, got '" + *p + "'");
    cfg.picture = *tag;
  }

  const double period = 2.0 * std::numbers::pi / slowest_frequency(cfg.drive);
  cfg.time.t_max = r.number("time.t_max").value_or(period);
  if (!(cfg.time.t_max > 0.0)) throw ConfigError(r.line("time.t_max"), "time.t_max", "must be > 0");
  if (auto n = r.integer("time.samples")) {
    cfg.time.samples = *n;
  } else {
    cfg.time.samples = std::max(2, static_cast<int>(std::ceil(256.0 * cfg.time.t_max / period - 1e-9)));
  }
  if (cfg.time.samples < 2) throw ConfigError(r.line("time.samples"), "time.samples", "must be >= 2");

  if (auto v = r.text("outputs.csv")) cfg.outputs.csv = resolve(base_dir, *v);
  if (auto v = r.text("outputs.svg_dir")) cfg.outputs.svg_dir = resolve(base_dir, *v);
  if (auto v = r.text("outputs.summary")) cfg.outputs.summary = resolve(base_dir, *v);
  if (auto n = r.integer("outputs.frames")) cfg.outputs.frames = *n;
  if (cfg.outputs.frames < 1) throw ConfigError(r.line("outputs.frames"), "outputs.frames", "must be >= 1");

  if (auto b = r.flag("oracle.enabled")) cfg.oracle.enabled = *b;
  if (auto n = r.integer("oracle.cutoff")) cfg.oracle.cutoff = *n;
  if (cfg.oracle.cutoff < 3) throw ConfigError(r.line("oracle.cutoff"), "oracle.cutoff", "must be >= 3");
  if (auto n = r.integer("oracle.steps")) cfg.oracle.steps = *n;
  if (cfg.oracle.steps < 0) throw ConfigError(r.line("oracle.steps"), "oracle.steps", "must be >= 0 (0 = automatic)");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "name = " << cfg.name << "\n\n";
  out << "initial.mu_x = " << format_double(cfg.initial.mu_x) << "\n";
  out << "initial.s = " << format_double(cfg.initial.s) << "\n\n";
  out << "drive.kind = " << to_string(cfg.drive.drive_kind()) << "\n";
  out << "drive.omega0 = " << format_double(cfg.drive.omega0) << "\n";
  if (cfg.drive.drive_kind() == DriveKind::linear) {
    const LinearDrive& ld = cfg.drive.linear_drive();
    out << "drive.g = " << format_double(ld.g) << "\n";
    out << "drive.a = " << format_double(ld.a) << "\n";
    out << "drive.b = " << format_double(ld.b) << "\n";
    out << "drive.omega1 = " << format_double(ld.omega1) << "\n";
  } else if (cfg.drive.drive_kind() == DriveKind::quadratic) {
    out << "drive.kappa = " << format_double(cfg.drive.quadratic_drive().kappa) << "\n";
  }
  out << "\npicture = " << to_string(cfg.picture) << "\n\n";
  out << "time.t_max = " << format_double(cfg.time.t_max) << "\n";
  out << "time.samples = " << cfg.time.samples << "\n\n";
  if (!cfg.outputs.csv.empty()) out << "outputs.csv = " << cfg.outputs.csv.string() << "\n";
  if (!cfg.outputs.svg_dir.empty()) out << "outputs.svg_dir = " << cfg.outputs.svg_dir.string() << "\n";
  if (!cfg.outputs.summary.empty()) out << "outputs.summary = " << cfg.outputs.summary.string() << "\n";
  out << "outputs.frames = " << cfg.outputs.frames << "\n\n";
  out << "oracle.enabled = " << (cfg.oracle.enabled ? "true" : "false") << "\n";
  out << "oracle.cutoff = " << cfg.oracle.cutoff << "\n";
  out << "oracle.steps = " << cfg.oracle.steps << "\n";
  return out.str();
}

}  // namespace qpic
