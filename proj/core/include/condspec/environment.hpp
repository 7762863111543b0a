#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace condspec {

// Resistance laws for IID environment generation. Resistances are drawn and
// inverted to conductances; parameters are validated at construction time.
struct HomogeneousDist {};
struct UniformDist {
  double a = 0.0;
  double b = 0.0;
};
struct LognormalDist {
  double m = 0.0;
  double s = 0.0;
};
// r = U^{-1/alpha}, U uniform(0,1). Mean is infinite for alpha < 1, so this
// law falls outside the regime where the partial-sum deviations vanish; it
// exists for the heavy-tail scaling study only.
struct ParetoDist {
  double alpha = 0.0;
};

using Distribution =
    std::variant<HomogeneousDist, UniformDist, LognormalDist, ParetoDist>;

std::string distribution_label(const Distribution& dist);

// Parses "homog", "uniform:a,b", "lognormal:m,s", "pareto:alpha".
Distribution parse_distribution(const std::string& text);

// Conductance environment on the sites 1..n of a line segment. Conductances
// are the source of truth; resistances are their exact reciprocals, computed
// on demand. Immutable after construction.
class Environment {
 public:
  // Validates: n >= 1, exactly n-1 conductances, each finite and > 0.
  Environment(int n, std::vector<double> conductances, std::string label,
              std::optional<std::uint64_t> seed = std::nullopt);

  int n() const { return n_; }
  const std::vector<double>& conductances() const { return conductances_; }
  const std::string& label() const { return label_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  // c(x, x+1) for 1 <= x < n.
  double conductance(int x) const { return conductances_[x - 1]; }
  // r(x, x+1) = 1 / c(x, x+1).
  double resistance(int x) const { return 1.0 / conductances_[x - 1]; }
  // Boundary convention: edges {0,1} and {n,n+1} carry zero conductance.
  double conductance_or_zero(int x) const {
    return (x >= 1 && x < n_) ? conductances_[x - 1] : 0.0;
  }
  std::vector<double> resistances() const;

 private:
  int n_;
  std::vector<double> conductances_;
  std::string label_;
  std::optional<std::uint64_t> seed_;
};

// All conductances equal to one.
Environment make_homogeneous(int n);

// IID resistances from `dist`, inverted to conductances. Deterministic in
// (n, dist, seed); see rng.hpp for the per-edge stream-splitting rule.
Environment make_iid(int n, const Distribution& dist, std::uint64_t seed);

struct LlnDiagnostics {
  // (1/N) max_{1<=n<m<=N} | r(n,m) - (m-n) | with r(n,m) the resistance sum
  // over edges n..m-1.
  double delta0 = 0.0;
  // max_x r(x-1,x) / N.
  double delta1 = 0.0;
  // The (n,m) window achieving delta0.
  std::pair<int, int> argmax_window{1, 2};
};

// Computed via prefix sums of r(x,x+1) - 1: the double sup collapses to
// (max prefix - min prefix) / N. Requires n >= 2.
LlnDiagnostics lln_diagnostics(const Environment& env);

// JSON object {"n": int, "conductances": [..], "label": str, "seed": int|null}
// with round-trip-exact floats.
std::string serialize_environment(const Environment& env);
Environment parse_environment(const std::string& json_text);

void save_environment(const Environment& env, const std::string& path);
Environment load_environment(const std::string& path);

}  // namespace condspec
