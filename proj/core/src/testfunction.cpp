#include "boidol/testfunction.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numbers>
#include <shared_mutex>
#include <unordered_map>

#include "boidol/errors.hpp"

namespace boidol {

namespace {

constexpr double kPi = std::numbers::pi;
// |B(beta)| < 1e-25 beyond this; treated as an exact zero
constexpr double kBetaCutoff = 2000.0;

std::uint64_t bits_of(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  return u;
}

}  // namespace

struct FourierCache {
  struct Key {
    int nodes;
    std::uint64_t beta;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}(k.beta * 1099511628211ULL ^ static_cast<std::uint64_t>(k.nodes));
    }
  };
  std::shared_mutex mu;
  std::unordered_map<Key, double, Hash> values;
};

double Bump::operator()(double s) const {
  const double z = (s - centre) / width;
  if (!(std::abs(z) < 1.0)) return 0.0;
  return std::exp(-1.0 / (1.0 - z * z));
}

double unit_bump_cosine_transform(double beta, int nodes) {
  if (nodes < 16) throw QuadratureUnderresolved("fewer than 16 nodes per bump width");
  beta = std::abs(beta);
  if (beta > kBetaCutoff) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(beta / 16.0)));
  const Rule r = composite_gauss_legendre(-1.0, 1.0, nodes, panels);
  const Bump unit{};
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * unit(r.x[i]) * std::cos(beta * r.x[i]);
  return s;
}

TestFunction::TestFunction() : cache_(std::make_shared<FourierCache>()) {}

TestFunction::TestFunction(std::vector<SeparableTerm> terms, bool adjoint_form)
    : terms_(std::move(terms)), adjoint_(adjoint_form), cache_(std::make_shared<FourierCache>()) {
  for (const auto& t : terms_) {
    for (const Bump* b : {&t.bt, &t.bx, &t.ba, &t.bb})
      if (!(b->width > 0.0)) throw std::invalid_argument("bump width must be positive");
  }
}

TestFunction TestFunction::default_function() {
  SeparableTerm t;
  t.bb.width = 2.0;
  return TestFunction({t});
}

bool TestFunction::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const SeparableTerm& t) { return t.coeff == cplx{}; });
}

TestFunction TestFunction::adjoint() const {
  TestFunction out(terms_, !adjoint_);
  out.cache_ = cache_;
  return out;
}

TestFunction TestFunction::scaled(cplx c) const {
  // F -> cF means F* -> conj(c) F*; stored terms are those of the non-adjoint side
  auto t = terms_;
  for (auto& s : t) s.coeff *= adjoint_ ? std::conj(c) : c;
  TestFunction out(std::move(t), adjoint_);
  out.cache_ = cache_;
  return out;
}

TestFunction operator+(const TestFunction& a, const TestFunction& b) {
  if (a.adjoint_ != b.adjoint_) throw std::invalid_argument("cannot add plain and adjoint forms");
  auto t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  TestFunction out(std::move(t), a.adjoint_);
  out.cache_ = a.cache_;
  return out;
}

SupportBox TestFunction::support_box() const {
  SupportBox s{0, 0, 0, 0, 0, 0, 0, 0};
  bool first = true;
  for (const auto& t : terms_) {
    const SupportBox b{t.bt.lo(), t.bt.hi(), t.bx.lo(), t.bx.hi(),
                       t.ba.lo(), t.ba.hi(), t.bb.lo(), t.bb.hi()};
    if (first) {
      s = b;
      first = false;
    } else {
      s = {std::min(s.t0, b.t0), std::max(s.t1, b.t1), std::min(s.x0, b.x0), std::max(s.x1, b.x1),
           std::min(s.a0, b.a0), std::max(s.a1, b.a1), std::min(s.b0, b.b0), std::max(s.b1, b.b1)};
    }
  }
  if (!adjoint_) return s;
  // arguments of the adjoint: (-t, -e^{-t} x, a e^{-t}, b)
  const double e_hi = std::exp(std::max(std::abs(s.t0), std::abs(s.t1)));
  auto scaled = [&](double lo, double hi, double sign) {
    const double c[4] = {sign * lo * e_hi, sign * lo / e_hi, sign * hi * e_hi, sign * hi / e_hi};
    return std::pair{*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  };
  const auto [x0, x1] = scaled(s.x0, s.x1, -1.0);
  const auto [a0, a1] = scaled(s.a0, s.a1, 1.0);
  return {-s.t1, -s.t0, x0, x1, a0, a1, s.b0, s.b1};
}

std::pair<double, double> TestFunction::t_support() const {
  const SupportBox b = support_box();
  return {b.t0, b.t1};
}

std::pair<double, double> TestFunction::x_support(double t) const {
  if (!adjoint_) {
    const SupportBox b = support_box();
    return {b.x0, b.x1};
  }
  SupportBox plain = TestFunction(terms_, false).support_box();
  const double e = std::exp(t);
  return {-e * plain.x1, -e * plain.x0};
}

cplx TestFunction::bump_hat(const Bump& b, double alpha, int nodes) const {
  const double beta = std::abs(b.width * alpha);
  double B;
  if (beta > kBetaCutoff) {
    B = 0.0;
  } else {
    const FourierCache::Key key{nodes, bits_of(beta)};
    {
      std::shared_lock lock(cache_->mu);
      auto it = cache_->values.find(key);
      if (it != cache_->values.end()) {
        B = it->second;
        goto have;
      }
    }
    B = unit_bump_cosine_transform(beta, nodes);
    {
      std::unique_lock lock(cache_->mu);
      if (cache_->values.size() > (1u << 22)) cache_->values.clear();
      cache_->values.emplace(key, B);
    }
  }
have:
  return std::polar(b.width * B, -alpha * b.centre);
}

namespace {

cplx plain_hatF34(const TestFunction& f, double t, double x, double a, double b) {
  cplx s{};
  for (const auto& term : f.terms()) {
    const double v = term.bt(t);
    if (v == 0.0) continue;
    const double w = v * term.bx(x);
    if (w == 0.0) continue;
    s += term.coeff * (w * term.ba(a) * term.bb(b));
  }
  return s;
}

cplx plain_hatF234(const TestFunction& f, double t, double a, double b, double c, int nodes) {
  cplx s{};
  for (const auto& term : f.terms()) {
    const double v = term.bt(t);
    if (v == 0.0) continue;
    const double w = v * term.ba(b) * term.bb(c);
    if (w == 0.0) continue;
    s += term.coeff * w * f.bump_hat(term.bx, a, nodes);
  }
  return s;
}

}  // namespace

cplx eval_hatF34(const TestFunction& f, double t, double x, double a, double b) {
  if (!f.adjoint_form()) return plain_hatF34(f, t, x, a, b);
  const double em = std::exp(-t);
  return em * std::conj(plain_hatF34(f, -t, -em * x, a * em, b));
}

cplx eval_hatF234(const TestFunction& f, double t, double a, double b, double c,
                  const QuadratureSpec& quad) {
  if (quad.nodes < 16) throw QuadratureUnderresolved("fewer than 16 nodes per bump width");
  if (!f.adjoint_form()) return plain_hatF234(f, t, a, b, c, quad.nodes);
  const double e = std::exp(t);
  return std::conj(plain_hatF234(f, -t, a * e, b / e, c, quad.nodes));
}

InverseTransform inverse_bump_transform(const Bump& b, double window, double dy) {
  static std::mutex planner_mu;
  std::size_t n = 1;
  while (static_cast<double>(n) * dy < 2.0 * window) n <<= 1;
  const double da = 2.0 * kPi / (static_cast<double>(n) * dy);
  if (da * static_cast<double>(n) < 2.0 * b.width) throw std::invalid_argument("dy too coarse");
  fftw_complex* buf = fftw_alloc_complex(n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mu);
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  const double a0 = b.lo();
  for (std::size_t j = 0; j < n; ++j) {
    buf[j][0] = b(a0 + static_cast<double>(j) * da);
    buf[j][1] = 0.0;
  }
  fftw_execute(plan);
  InverseTransform out;
  out.dy = dy;
  out.window = 0.5 * static_cast<double>(n) * dy;
  out.values.resize(n);
  const long half = static_cast<long>(n / 2);
  for (long m = -half; m < half; ++m) {
    const std::size_t k = static_cast<std::size_t>(m < 0 ? m + static_cast<long>(n) : m);
    const double y = static_cast<double>(m) * dy;
    const cplx v{buf[k][0], buf[k][1]};
    out.values[static_cast<std::size_t>(m + half)] = (da / (2.0 * kPi)) * std::polar(1.0, a0 * y) * v;
  }
  {
    std::lock_guard<std::mutex> lock(planner_mu);
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

namespace {

struct Decayed {
  InverseTransform g;
  double edge_ratio;  // max |g| near the window edge over peak
};

Decayed decayed_transform(const Bump& b, double window, double dy) {
  Decayed d{inverse_bump_transform(b, window, dy), 0.0};
  double peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < d.g.values.size(); ++i) {
    const double a = std::abs(d.g.values[i]);
    peak = std::max(peak, a);
    if (std::abs(d.g.y(i)) >= 0.95 * d.g.window) edge = std::max(edge, a);
  }
  d.edge_ratio = peak > 0 ? edge / peak : 0.0;
  return d;
}

Decayed windowed(const Bump& b, double requested, const GridSpec4D& grid) {
  const double dy = std::min(grid.dy, 0.3 / (std::abs(b.centre) + b.width));
  if (requested > 0.0) {
    Decayed d = decayed_transform(b, requested, dy);
    if (d.edge_ratio >= grid.decay_threshold)
      throw WindowTooSmall("inverse transform has not decayed at the window boundary");
    return d;
  }
  for (double w = 64.0; w <= 16384.0; w *= 2.0) {
    Decayed d = decayed_transform(b, w, dy);
    if (d.edge_ratio < grid.decay_threshold) return d;
  }
  throw WindowTooSmall("no window up to 16384 meets the decay criterion");
}

double l1_of(const InverseTransform& g) {
  double s = 0.0;
  for (const auto& v : g.values) s += std::abs(v);
  return s * g.dy;
}

double tail_bound(const Decayed& d, double l1) {
  double edge = 0.0;
  for (std::size_t i = 0; i < d.g.values.size(); ++i)
    if (std::abs(d.g.y(i)) >= 0.95 * d.g.window) edge = std::max(edge, std::abs(d.g.values[i]));
  return l1 > 0 ? 2.0 * d.g.window * edge / l1 : 0.0;
}

}  // namespace

L1Result l1_norm_F1(const TestFunction& f, const GridSpec4D& grid) {
  L1Result out;
  if (f.is_zero()) return out;
  // |t F*(g)| integrates to the same value as |t F(g)| (t(g^-1) = -t, Haar is bi-invariant)
  const auto& terms = f.terms();
  std::vector<std::pair<Bump, Bump>> groups;
  for (const auto& t : terms) {
    std::pair<Bump, Bump> key{t.ba, t.bb};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) groups.push_back(key);
  }
  SupportBox box = TestFunction(terms, false).support_box();
  const Rule rt = composite_gauss_legendre(box.t0, box.t1, grid.t_nodes, 4);
  const Rule rx = composite_gauss_legendre(box.x0, box.x1, grid.x_nodes, 4);

  if (groups.size() == 1) {
    double tx = 0.0;
    for (std::size_t i = 0; i < rt.x.size(); ++i) {
      for (std::size_t j = 0; j < rx.x.size(); ++j) {
        cplx s{};
        for (const auto& t : terms) s += t.coeff * (t.bt(rt.x[i]) * t.bx(rx.x[j]));
        tx += rt.w[i] * rx.w[j] * std::abs(rt.x[i]) * std::abs(s);
      }
    }
    // 2D inverse FFT of b_a (x) b_b factorizes into two 1D transforms
    const Decayed ga = windowed(groups[0].first, grid.y_window, grid);
    const Decayed gb = windowed(groups[0].second, grid.z_window, grid);
    const double la = l1_of(ga.g), lb = l1_of(gb.g);
    out.value = tx * la * lb;
    out.truncation_bound = tail_bound(ga, la) + tail_bound(gb, lb);
    out.y_window = ga.g.window;
    out.z_window = gb.g.window;
    return out;
  }

  // several (b_a, b_b) groups: direct sum over the (t,x,y,z) grid
  std::vector<Decayed> ya, zb;
  double wy = grid.y_window, wz = grid.z_window;
  for (const auto& g : groups) {
    ya.push_back(windowed(g.first, wy, grid));
    zb.push_back(windowed(g.second, wz, grid));
  }
  for (const auto& d : ya) wy = std::max(wy, d.g.window);
  for (const auto& d : zb) wz = std::max(wz, d.g.window);
  const double step = 0.1;
  const int ny = static_cast<int>(2.0 * wy / step), nz = static_cast<int>(2.0 * wz / step);
  auto sample = [](const InverseTransform& g, double y) -> cplx {
    const double pos = y / g.dy + static_cast<double>(g.values.size()) / 2.0;
    const long i = std::lround(pos);
    if (i < 0 || i >= static_cast<long>(g.values.size())) return {};
    return g.values[static_cast<std::size_t>(i)];
  };
  std::vector<std::vector<cplx>> A(groups.size(), std::vector<cplx>(ny)),
      B(groups.size(), std::vector<cplx>(nz));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int i = 0; i < ny; ++i) A[g][i] = sample(ya[g].g, -wy + (i + 0.5) * step);
    for (int i = 0; i < nz; ++i) B[g][i] = sample(zb[g].g, -wz + (i + 0.5) * step);
  }
  const Rule ct = composite_gauss_legendre(box.t0, box.t1, 16, 2);
  const Rule cx = composite_gauss_legendre(box.x0, box.x1, 16, 2);
  double total = 0.0;
  std::vector<cplx> alpha(groups.size());
  for (std::size_t i = 0; i < ct.x.size(); ++i) {
    for (std::size_t j = 0; j < cx.x.size(); ++j) {
      std::fill(alpha.begin(), alpha.end(), cplx{});
      for (const auto& t : terms) {
        const auto g = std::find(groups.begin(), groups.end(), std::pair{t.ba, t.bb}) - groups.begin();
        alpha[g] += t.coeff * (t.bt(ct.x[i]) * t.bx(cx.x[j]));
      }
      double s = 0.0;
      for (int a = 0; a < ny; ++a)
        for (int b = 0; b < nz; ++b) {
          cplx v{};
          for (std::size_t g = 0; g < groups.size(); ++g) v += alpha[g] * A[g][a] * B[g][b];
          s += std::abs(v);
        }
      total += ct.w[i] * cx.w[j] * std::abs(ct.x[i]) * s * step * step;
    }
  }
  out.value = total;
  for (std::size_t g = 0; g < groups.size(); ++g)
    out.truncation_bound += tail_bound(ya[g], l1_of(ya[g].g)) + tail_bound(zb[g], l1_of(zb[g].g));
  out.y_window = wy;
  out.z_window = wz;
  return out;
}

namespace {

nlohmann::json bump_json(const Bump& b) { return {{"centre", b.centre}, {"width", b.width}}; }
Bump bump_from(const nlohmann::json& j) {
  return {j.at("centre").get<double>(), j.at("width").get<double>()};
}

}  // namespace

void to_json(nlohmann::json& j, const TestFunction& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    terms.push_back({{"coeff", {{"re", t.coeff.real()}, {"im", t.coeff.imag()}}},
                     {"t", bump_json(t.bt)},
                     {"x", bump_json(t.bx)},
                     {"a", bump_json(t.ba)},
                     {"b", bump_json(t.bb)}});
  }
  j = {{"adjoint", f.adjoint_form()}, {"terms", terms}};
}

void from_json(const nlohmann::json& j, TestFunction& f) {
  std::vector<SeparableTerm> terms;
  for (const auto& t : j.at("terms")) {
    SeparableTerm s;
    s.coeff = {t.at("coeff").at("re").get<double>(), t.at("coeff").at("im").get<double>()};
    s.bt = bump_from(t.at("t"));
    s.bx = bump_from(t.at("x"));
    s.ba = bump_from(t.at("a"));
    s.bb = bump_from(t.at("b"));
    terms.push_back(s);
  }
  f = TestFunction(std::move(terms), j.value("adjoint", false));
}

}  // namespace boidol
