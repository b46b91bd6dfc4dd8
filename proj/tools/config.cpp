#include "config.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace boidol::cli {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }
  Node at(const char* key) const { return {j_.at(key), path_ + "/" + key}; }
  std::vector<Node> items() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
    return out;
  }
  void object(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j_.items())
      if (!ok.count(k)) throw ConfigError(path_ + "/" + k, "unknown field");
  }
  double number() const {
    if (!j_.is_number()) fail("expected a number");
    return j_.get<double>();
  }
  long integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<long>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected true or false");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  const json& raw() const { return j_; }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(path_.empty() ? "/" : path_, what); }

  template <class F>
  void opt(const char* key, F&& f) const {
    if (has(key)) f(at(key));
  }

 private:
  const json& j_;
  std::string path_;
};

Sign sign_from(const Node& n) {
  const long v = n.integer();
  if (v != 1 && v != -1) n.fail("expected +1 or -1");
  return v > 0 ? Sign::Plus : Sign::Minus;
}

int positive_even(const Node& n) {
  const long v = n.integer();
  if (v <= 0 || v % 2 != 0) n.fail("expected a positive even integer");
  return static_cast<int>(v);
}

double positive(const Node& n) {
  const double v = n.number();
  if (!(v > 0)) n.fail("expected a positive number");
  return v;
}

PowerLaw power_law(const Node& n) {
  n.object({"coeff", "power", "offset"});
  PowerLaw p;
  n.opt("coeff", [&](const Node& c) { p.coeff = c.number(); });
  n.opt("power", [&](const Node& c) { p.power = c.number(); });
  n.opt("offset", [&](const Node& c) { p.offset = c.number(); });
  return p;
}

ojson power_json(const PowerLaw& p) { return {{"coeff", p.coeff}, {"power", p.power}, {"offset", p.offset}}; }

std::vector<long> index_list(const Node& n) {
  std::vector<long> out;
  for (const auto& e : n.items()) {
    const long k = e.integer();
    if (k <= 0) e.fail("indices must be positive");
    if (!out.empty() && k <= out.back()) e.fail("indices must be increasing");
    out.push_back(k);
  }
  return out;
}

std::vector<Point2> point_list(const Node& n) {
  std::vector<Point2> out;
  for (const auto& e : n.items()) {
    const auto xs = e.items();
    if (xs.size() != 2) e.fail("expected a pair [a, b]");
    out.emplace_back(xs[0].number(), xs[1].number());
  }
  return out;
}

Regime regime_from(const Node& n) {
  const std::string s = n.string();
  if (s == "omega") return Regime::OmegaNonzero;
  if (s == "zero") return Regime::OmegaZero;
  if (s == "gamma2") return Regime::Gamma2;
  n.fail("expected \"omega\", \"zero\" or \"gamma2\"");
}

const char* regime_key(Regime r) {
  switch (r) {
    case Regime::OmegaNonzero:
      return "omega";
    case Regime::OmegaZero:
      return "zero";
    case Regime::Gamma2:
      return "gamma2";
  }
  return "";
}

PlanSpec plan_from(const Node& n) {
  n.object({"name", "regime", "rho", "lambda", "omega", "eps", "ks", "use_omega_k", "R", "S", "T"});
  PlanSpec p;
  n.opt("name", [&](const Node& c) { p.name = c.string(); });
  n.opt("regime", [&](const Node& c) { p.regime = regime_from(c); });
  n.opt("rho", [&](const Node& c) { p.rho = power_law(c); });
  n.opt("lambda", [&](const Node& c) { p.lambda = power_law(c); });
  n.opt("omega", [&](const Node& c) { p.omega = power_law(c); });
  n.opt("eps", [&](const Node& c) { p.eps = sign_from(c); });
  n.opt("ks", [&](const Node& c) {
    p.ks = index_list(c);
    if (p.ks.empty()) c.fail("at least one index is required");
  });
  n.opt("use_omega_k", [&](const Node& c) { p.use_omega_k = c.boolean(); });
  n.opt("R", [&](const Node& c) { p.R = power_law(c); });
  n.opt("S", [&](const Node& c) { p.S = power_law(c); });
  n.opt("T", [&](const Node& c) { p.T = power_law(c); });
  if (p.name.empty()) p.name = std::string(regime_key(p.regime)) + "_plan";
  return p;
}

ojson plan_json(const PlanSpec& p) {
  ojson j{{"name", p.name}, {"regime", regime_key(p.regime)}};
  if (p.regime == Regime::Gamma2) {
    j["omega"] = power_json(p.omega);
    j["eps"] = static_cast<int>(p.eps);
  } else {
    j["rho"] = power_json(p.rho);
    j["lambda"] = power_json(p.lambda);
  }
  j["ks"] = p.ks;
  j["use_omega_k"] = p.use_omega_k;
  if (p.R) j["R"] = power_json(*p.R);
  if (p.S) j["S"] = power_json(*p.S);
  if (p.T) j["T"] = power_json(*p.T);
  return j;
}

std::vector<PlanSpec> plan_list(const Node& n) {
  n.object({"plans"});
  std::vector<PlanSpec> out;
  n.opt("plans", [&](const Node& c) {
    for (const auto& e : c.items()) out.push_back(plan_from(e));
  });
  return out;
}

SequenceSpec sequence_from(const Node& n) {
  n.object({"name", "kind", "rho", "lambda", "eps", "sigma"});
  SequenceSpec s;
  n.opt("name", [&](const Node& c) { s.name = c.string(); });
  n.opt("kind", [&](const Node& c) {
    const std::string k = c.string();
    if (k == "gamma3")
      s.kind = OrbitSequence::Kind::Gamma3;
    else if (k == "gamma2")
      s.kind = OrbitSequence::Kind::Gamma2;
    else
      c.fail("expected \"gamma3\" or \"gamma2\"");
  });
  n.opt("rho", [&](const Node& c) { s.rho = power_law(c); });
  n.opt("lambda", [&](const Node& c) { s.lambda = power_law(c); });
  n.opt("eps", [&](const Node& c) { s.eps = sign_from(c); });
  n.opt("sigma", [&](const Node& c) { s.sigma = sign_from(c); });
  if (s.name.empty()) s.name = "sequence";
  return s;
}

std::string location_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

SequencePlan PlanSpec::build() const {
  SequencePlan p = regime == Regime::Gamma2 ? gamma2_plan(eps, omega, ks, name)
                                            : default_plan(regime, rho, lambda, ks, name);
  p.use_omega_k = use_omega_k;
  if (R) {
    p.R = *R;
    if (regime != Regime::OmegaNonzero) attach_zone_scales(p);
  }
  if (S) p.S = *S;
  if (T) p.T = *T;
  return p;
}

ExperimentConfig::ExperimentConfig() {
  sequences = {
      {"omega_one", OrbitSequence::Kind::Gamma3, {1.0, 1.0}, {1.0, -1.0}, Sign::Plus, Sign::Plus},
      {"omega_zero", OrbitSequence::Kind::Gamma3, {1.0, 1.0}, {1.0, -2.0}, Sign::Plus, Sign::Plus},
      {"hausdorff", OrbitSequence::Kind::Gamma3, {1.0, -1.0, 1.0}, {0.0, 0.0, 2.0}, Sign::Plus, Sign::Plus},
      {"gamma2", OrbitSequence::Kind::Gamma2, {1.0, -1.0}, {}, Sign::Plus, Sign::Minus},
  };
  PlanSpec om;
  om.name = "omega1_k2";
  omega_plans = {om};
  PlanSpec z;
  z.name = "omega0_k2_k4";
  z.regime = Regime::OmegaZero;
  z.lambda = {1.0, -4.0};
  PlanSpec g;
  g.name = "gamma2_k2";
  g.regime = Regime::Gamma2;
  zero_plans = {z, g};
  dstar_plans = {om, z, g};
}

FieldGrids ExperimentConfig::grids() const {
  FieldGrids g;
  g.linear = GridSpec::linear(L, n_linear);
  g.log_pair = GridSpec::log_pair(V, n_log);
  g.kernel.quad.nodes = quad_nodes;
  g.kernel.window_tol = window_tol;
  g.frame_nodes = frame_nodes;
  return grid_scale == 1 ? g : g.scaled(grid_scale);
}

ConvergenceOptions ExperimentConfig::convergence() const {
  ConvergenceOptions o;
  o.ratio = ratio;
  o.wiggle = wiggle;
  o.envelope_slack = envelope_slack;
  return o;
}

DstarConfig ExperimentConfig::dstar() const {
  DstarConfig d;
  d.grids = grids();
  d.sigma0 = sigma0;
  d.sigma0.nodes = quad_nodes;
  d.convergence = convergence();
  d.rank_budget = rank_budget;
  d.compact_tol = compact_tol;
  d.vanish_tol = vanish_tol;
  d.adjoint_suite = adjoint_suite;
  return d;
}

ojson ExperimentConfig::to_json() const {
  ojson j;
  j["seed"] = seed;
  j["threads"] = threads;
  j["grid_scale"] = grid_scale;
  j["output_dir"] = output_dir;
  json tf;
  boidol::to_json(tf, test_function);
  j["test_function"] = ojson::parse(tf.dump());
  j["grids"] = {{"L", L},
                {"n_linear", n_linear},
                {"V", V},
                {"n_log", n_log},
                {"quad_nodes", quad_nodes},
                {"frame_nodes", frame_nodes},
                {"window_tol", window_tol}};
  j["tolerances"] = {{"ratio", ratio},
                     {"wiggle", wiggle},
                     {"envelope_slack", envelope_slack},
                     {"compact_tol", compact_tol},
                     {"vanish_tol", vanish_tol},
                     {"rank_budget", rank_budget},
                     {"orbit_tol", orbit_tol}};
  ojson seqs = ojson::array();
  for (const auto& s : sequences) {
    ojson e{{"name", s.name}, {"kind", s.kind == OrbitSequence::Kind::Gamma3 ? "gamma3" : "gamma2"},
            {"rho", power_json(s.rho)}};
    if (s.kind == OrbitSequence::Kind::Gamma3) {
      e["lambda"] = power_json(s.lambda);
    } else {
      e["eps"] = static_cast<int>(s.eps);
      e["sigma"] = static_cast<int>(s.sigma);
    }
    seqs.push_back(std::move(e));
  }
  j["orbits"] = {{"k_max", k_max}, {"witness_ks", witness_ks}, {"sequences", seqs}};
  auto plans = [](const std::vector<PlanSpec>& ps) {
    ojson a = ojson::array();
    for (const auto& p : ps) a.push_back(plan_json(p));
    return ojson{{"plans", a}};
  };
  j["converge"] = {{"omega", plans(omega_plans)}, {"zero", plans(zero_plans)}};
  ojson d = plans(dstar_plans);
  d["tamper"] = boidol::to_string(tamper);
  d["adjoint_suite"] = adjoint_suite;
  d["sigma0"] = {{"q_width", sigma0.q_width}, {"T0", sigma0.T0}, {"dtau", sigma0.dtau}, {"t_width", sigma0.t_width}};
  j["dstar"] = d;
  auto pts = [](const std::vector<Point2>& v) {
    ojson a = ojson::array();
    for (const auto& p : v) a.push_back({p.first, p.second});
    return a;
  };
  j["norms"] = {{"gamma3", pts(norm_gamma3)}, {"plane", pts(norm_plane)}};
  j["diagnostic"] = diagnostic;
  return j;
}

std::string ExperimentConfig::hash() const {
  ojson j = to_json();
  j.erase("output_dir");
  j.erase("threads");
  const std::string canon = json::parse(j.dump()).dump();  // sorted keys
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  os << std::hex;
  for (unsigned int i = 0; i < len; ++i) os << (md[i] < 16 ? "0" : "") << static_cast<int>(md[i]);
  return os.str();
}

ExperimentConfig parse_config(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(location_of(text, e.byte), "malformed JSON");
  }
  ExperimentConfig c;
  const Node root(doc, "");
  root.object({"seed", "threads", "grid_scale", "output_dir", "test_function", "grids", "tolerances", "orbits",
               "converge", "dstar", "norms", "diagnostic"});
  root.opt("seed", [&](const Node& n) { c.seed = static_cast<int>(n.integer()); });
  root.opt("threads", [&](const Node& n) {
    c.threads = static_cast<int>(n.integer());
    if (c.threads < 1) n.fail("expected at least 1");
  });
  root.opt("grid_scale", [&](const Node& n) {
    c.grid_scale = static_cast<int>(n.integer());
    if (c.grid_scale != 1 && c.grid_scale != 2 && c.grid_scale != 4) n.fail("expected 1, 2 or 4");
  });
  root.opt("output_dir", [&](const Node& n) { c.output_dir = n.string(); });
  root.opt("test_function", [&](const Node& n) {
    json tf = n.raw();
    if (tf.is_string()) {
      std::filesystem::path p = tf.get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      std::ifstream is(p);
      if (!is) n.fail("cannot open " + p.string());
      try {
        tf = json::parse(is);
      } catch (const json::parse_error& e) {
        n.fail(p.string() + ": malformed JSON");
      }
    }
    try {
      c.test_function = tf.get<TestFunction>();
    } catch (const std::exception& e) {
      n.fail(std::string("invalid test function: ") + e.what());
    }
  });
  root.opt("grids", [&](const Node& g) {
    g.object({"L", "n_linear", "V", "n_log", "quad_nodes", "frame_nodes", "window_tol"});
    g.opt("L", [&](const Node& n) { c.L = positive(n); });
    g.opt("n_linear", [&](const Node& n) { c.n_linear = positive_even(n); });
    g.opt("V", [&](const Node& n) { c.V = positive(n); });
    g.opt("n_log", [&](const Node& n) { c.n_log = positive_even(n); });
    g.opt("quad_nodes", [&](const Node& n) { c.quad_nodes = static_cast<int>(n.integer()); });
    g.opt("frame_nodes", [&](const Node& n) { c.frame_nodes = static_cast<int>(n.integer()); });
    g.opt("window_tol", [&](const Node& n) { c.window_tol = positive(n); });
  });
  root.opt("tolerances", [&](const Node& t) {
    t.object({"ratio", "wiggle", "envelope_slack", "compact_tol", "vanish_tol", "rank_budget", "orbit_tol"});
    t.opt("ratio", [&](const Node& n) { c.ratio = positive(n); });
    t.opt("wiggle", [&](const Node& n) { c.wiggle = n.number(); });
    t.opt("envelope_slack", [&](const Node& n) { c.envelope_slack = positive(n); });
    t.opt("compact_tol", [&](const Node& n) { c.compact_tol = positive(n); });
    t.opt("vanish_tol", [&](const Node& n) { c.vanish_tol = positive(n); });
    t.opt("rank_budget", [&](const Node& n) { c.rank_budget = static_cast<int>(n.integer()); });
    t.opt("orbit_tol", [&](const Node& n) { c.orbit_tol = positive(n); });
  });
  root.opt("orbits", [&](const Node& o) {
    o.object({"k_max", "witness_ks", "sequences"});
    o.opt("k_max", [&](const Node& n) { c.k_max = n.integer(); });
    o.opt("witness_ks", [&](const Node& n) { c.witness_ks = index_list(n); });
    o.opt("sequences", [&](const Node& n) {
      c.sequences.clear();
      for (const auto& e : n.items()) c.sequences.push_back(sequence_from(e));
    });
  });
  root.opt("converge", [&](const Node& v) {
    v.object({"omega", "zero"});
    v.opt("omega", [&](const Node& n) { c.omega_plans = plan_list(n); });
    v.opt("zero", [&](const Node& n) { c.zero_plans = plan_list(n); });
  });
  root.opt("dstar", [&](const Node& d) {
    d.object({"plans", "tamper", "adjoint_suite", "sigma0"});
    d.opt("plans", [&](const Node& n) {
      c.dstar_plans.clear();
      for (const auto& e : n.items()) c.dstar_plans.push_back(plan_from(e));
    });
    d.opt("tamper", [&](const Node& n) {
      try {
        c.tamper = tamper_from_string(n.string());
      } catch (const std::invalid_argument& e) {
        n.fail(e.what());
      }
    });
    d.opt("adjoint_suite", [&](const Node& n) { c.adjoint_suite = n.boolean(); });
    d.opt("sigma0", [&](const Node& s) {
      s.object({"q_width", "T0", "dtau", "t_width"});
      s.opt("q_width", [&](const Node& n) { c.sigma0.q_width = positive(n); });
      s.opt("T0", [&](const Node& n) { c.sigma0.T0 = positive(n); });
      s.opt("dtau", [&](const Node& n) { c.sigma0.dtau = positive(n); });
      s.opt("t_width", [&](const Node& n) { c.sigma0.t_width = positive(n); });
    });
  });
  root.opt("norms", [&](const Node& n) {
    n.object({"gamma3", "plane"});
    n.opt("gamma3", [&](const Node& p) { c.norm_gamma3 = point_list(p); });
    n.opt("plane", [&](const Node& p) { c.norm_plane = point_list(p); });
  });
  root.opt("diagnostic", [&](const Node& n) { c.diagnostic = n.boolean(); });
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << is.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

}  // namespace boidol::cli
