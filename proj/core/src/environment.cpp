#include "condspec/environment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "condspec/numeric.hpp"
#include "condspec/rng.hpp"

namespace condspec {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double draw_resistance(const Distribution& dist, SplitMix64& edge_stream) {
  if (std::holds_alternative<HomogeneousDist>(dist)) return 1.0;
  if (const auto* u = std::get_if<UniformDist>(&dist)) {
    return u->a + (u->b - u->a) * edge_stream.next_u01();
  }
  if (const auto* ln = std::get_if<LognormalDist>(&dist)) {
    // Box-Muller; two draws per edge, consumed in a fixed order.
    const double u1 = edge_stream.next_u01();
    const double u2 = edge_stream.next_u01();
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return std::exp(ln->m + ln->s * z);
  }
  const auto& p = std::get<ParetoDist>(dist);
  return std::pow(edge_stream.next_u01(), -1.0 / p.alpha);
}

void validate_distribution(const Distribution& dist) {
  if (const auto* u = std::get_if<UniformDist>(&dist)) {
    require(std::isfinite(u->a) && u->a > 0.0, "uniform: a must be > 0");
    require(std::isfinite(u->b) && u->b >= u->a, "uniform: b must be >= a");
  } else if (const auto* ln = std::get_if<LognormalDist>(&dist)) {
    require(std::isfinite(ln->m), "lognormal: m must be finite");
    require(std::isfinite(ln->s) && ln->s > 0.0, "lognormal: s must be > 0");
  } else if (const auto* p = std::get_if<ParetoDist>(&dist)) {
    require(p->alpha > 0.0 && p->alpha < 1.0,
            "pareto: alpha must lie in (0,1)");
  }
}

}  // namespace

std::string distribution_label(const Distribution& dist) {
  std::ostringstream os;
  if (std::holds_alternative<HomogeneousDist>(dist)) {
    os << "homogeneous";
  } else if (const auto* u = std::get_if<UniformDist>(&dist)) {
    os << "uniform(" << u->a << "," << u->b << ")";
  } else if (const auto* ln = std::get_if<LognormalDist>(&dist)) {
    os << "lognormal(" << ln->m << "," << ln->s << ")";
  } else {
    os << "pareto(" << std::get<ParetoDist>(dist).alpha << ")";
  }
  return os.str();
}

Distribution parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args =
      colon == std::string::npos ? std::string{} : text.substr(colon + 1);

  auto split2 = [&](double& x, double& y) {
    const auto comma = args.find(',');
    require(comma != std::string::npos,
            "distribution '" + name + "' needs two parameters");
    x = std::stod(args.substr(0, comma));
    y = std::stod(args.substr(comma + 1));
  };

  Distribution dist;
  if (name == "homog" || name == "homogeneous") {
    dist = HomogeneousDist{};
  } else if (name == "uniform") {
    UniformDist u;
    split2(u.a, u.b);
    dist = u;
  } else if (name == "lognormal") {
    LognormalDist ln;
    split2(ln.m, ln.s);
    dist = ln;
  } else if (name == "pareto") {
    require(!args.empty(), "pareto needs one parameter");
    dist = ParetoDist{std::stod(args)};
  } else {
    throw std::invalid_argument("unknown distribution '" + name + "'");
  }
  validate_distribution(dist);
  return dist;
}

Environment::Environment(int n, std::vector<double> conductances,
                         std::string label, std::optional<std::uint64_t> seed)
    : n_(n),
      conductances_(std::move(conductances)),
      label_(std::move(label)),
      seed_(seed) {
  require(n_ >= 1, "n must be >= 1");
  require(static_cast<int>(conductances_.size()) == n_ - 1,
          "conductances: expected exactly n-1 values");
  for (double c : conductances_) {
    require(std::isfinite(c) && c > 0.0,
            "conductances: every value must be finite and > 0");
  }
}

std::vector<double> Environment::resistances() const {
  std::vector<double> r(conductances_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = 1.0 / conductances_[i];
  return r;
}

Environment make_homogeneous(int n) {
  require(n >= 1, "n must be >= 1");
  return Environment(n, std::vector<double>(std::size_t(n - 1), 1.0),
                     "homogeneous");
}

Environment make_iid(int n, const Distribution& dist, std::uint64_t seed) {
  require(n >= 1, "n must be >= 1");
  validate_distribution(dist);

  SplitMix64 key_stream(seed);
  std::vector<double> conductances;
  conductances.reserve(std::size_t(n - 1));
  for (int x = 1; x < n; ++x) {
    SplitMix64 edge_stream(key_stream.next());
    const double r = draw_resistance(dist, edge_stream);
    require(std::isfinite(r) && r > 0.0,
            "distribution produced a non-positive resistance");
    conductances.push_back(1.0 / r);
  }
  return Environment(n, std::move(conductances), distribution_label(dist),
                     seed);
}

LlnDiagnostics lln_diagnostics(const Environment& env) {
  const int n = env.n();
  if (n < 2) throw std::invalid_argument("lln_diagnostics: n >= 2 required");

  // Prefix sums S_k = sum_{x<=k} (r(x,x+1) - 1), k = 0..n-1; the deviation of
  // window (a,b) is S_{b-1} - S_{a-1}, so the sup is the prefix range.
  double prefix = 0.0;
  double lo = 0.0, hi = 0.0;
  int lo_at = 0, hi_at = 0;
  double max_resistance = 0.0;
  for (int x = 1; x < n; ++x) {
    const double r = env.resistance(x);
    max_resistance = std::max(max_resistance, r);
    prefix += r - 1.0;
    if (prefix > hi) {
      hi = prefix;
      hi_at = x;
    }
    if (prefix < lo) {
      lo = prefix;
      lo_at = x;
    }
  }

  LlnDiagnostics d;
  d.delta0 = (hi - lo) / n;
  d.delta1 = max_resistance / n;
  const int i = std::min(lo_at, hi_at);
  const int j = std::max(lo_at, hi_at);
  d.argmax_window = (i == j) ? std::pair{1, 2} : std::pair{i + 1, j + 1};
  return d;
}

std::string serialize_environment(const Environment& env) {
  // Hand-composed so every float is the shortest decimal that parses back to
  // the same bits (std::to_chars); nlohmann handles string escaping only.
  std::ostringstream os;
  os << "{\"n\":" << env.n() << ",\"conductances\":[";
  const auto& cs = env.conductances();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) os << ',';
    os << format_double(cs[i]);
  }
  os << "],\"label\":" << nlohmann::json(env.label()).dump() << ",\"seed\":";
  if (env.seed()) {
    os << *env.seed();
  } else {
    os << "null";
  }
  os << '}';
  return os.str();
}

Environment parse_environment(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("environment JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("conductances")) {
    throw std::invalid_argument(
        "environment JSON: object with 'n' and 'conductances' required");
  }
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j["seed"].is_null()) {
    seed = j["seed"].get<std::uint64_t>();
  }
  return Environment(j["n"].get<int>(),
                     j["conductances"].get<std::vector<double>>(),
                     j.value("label", std::string{}), seed);
}

void save_environment(const Environment& env, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << serialize_environment(env) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

Environment load_environment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_environment(buf.str());
}

}  // namespace condspec
