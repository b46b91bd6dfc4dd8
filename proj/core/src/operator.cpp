#include "boidol/operator.hpp"

#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "boidol/errors.hpp"

namespace boidol {

namespace {

void require_same(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) throw GridMismatch(what);
}

}  // namespace

KernelOperator KernelOperator::zero(const GridSpec& codomain, const GridSpec& domain,
                                    std::string label) {
  return {domain, codomain, Eigen::MatrixXcd::Zero(codomain.size(), domain.size()),
          std::move(label)};
}

KernelOperator KernelOperator::identity(const GridSpec& grid) {
  KernelOperator id = zero(grid, grid, "identity");
  for (int i = 0; i < grid.size(); ++i) id.entries(i, i) = 1.0 / grid.weight(i);
  return id;
}

Eigen::VectorXcd KernelOperator::apply(const Eigen::VectorXcd& xi) const {
  if (xi.size() != domain.size()) throw GridMismatch("vector length differs from domain size");
  return entries * (xi * domain.step());
}

Eigen::MatrixXcd KernelOperator::weighted() const {
  return entries * std::sqrt(codomain.step() * domain.step());
}

KernelOperator KernelOperator::adjoint() const {
  return {codomain, domain, entries.adjoint(), label + "*"};
}

KernelOperator KernelOperator::scaled(cplx c) const {
  return {domain, codomain, entries * c, label};
}

KernelOperator operator+(const KernelOperator& a, const KernelOperator& b) {
  require_same(a.domain, b.domain, "sum: domains differ");
  require_same(a.codomain, b.codomain, "sum: codomains differ");
  return {a.domain, a.codomain, a.entries + b.entries, a.label + "+" + b.label};
}

KernelOperator operator-(const KernelOperator& a, const KernelOperator& b) {
  require_same(a.domain, b.domain, "difference: domains differ");
  require_same(a.codomain, b.codomain, "difference: codomains differ");
  return {a.domain, a.codomain, a.entries - b.entries, a.label + "-" + b.label};
}

KernelOperator compose(const KernelOperator& a, const KernelOperator& b) {
  require_same(a.domain, b.codomain, "compose: inner grids differ");
  KernelOperator out{b.domain, a.codomain, {}, a.label + "o" + b.label};
  out.entries.noalias() = (a.entries * b.codomain.step()) * b.entries;
  return out;
}

KernelOperator direct_sum(const KernelOperator& plus, const KernelOperator& minus) {
  if (plus.domain.kind != GridKind::LogHalfLine || !(plus.domain == plus.codomain) ||
      !(minus.domain == minus.codomain) || plus.domain.n != minus.domain.n ||
      plus.domain.half_width != minus.domain.half_width)
    throw GridMismatch("direct_sum expects two half-line operators of equal size");
  const GridSpec pair = GridSpec::log_pair(plus.domain.half_width, plus.domain.n);
  KernelOperator out = KernelOperator::zero(pair, pair, "(" + plus.label + ")+(" + minus.label + ")");
  const int n = pair.n;
  out.entries.topLeftCorner(n, n) = plus.entries;
  out.entries.bottomRightCorner(n, n) = minus.entries;
  return out;
}

KernelOperator block(const KernelOperator& a, Sign out, Sign in) {
  if (a.domain.kind != GridKind::LogPair || a.codomain.kind != GridKind::LogPair)
    throw GridMismatch("block expects a LogPair operator");
  const int n = a.domain.n;
  const int r = out == Sign::Plus ? 0 : n;
  const int c = in == Sign::Plus ? 0 : n;
  return {a.domain.half(in), a.codomain.half(out), a.entries.block(r, c, n, n), a.label};
}

double l2_norm(const GridSpec& g, const Eigen::VectorXcd& v) {
  return std::sqrt(v.squaredNorm() * g.step());
}

bool IntervalSpec::contains(double u) const {
  const double x = absolute ? std::abs(u) : u;
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

KernelOperator cutoff_M(const IntervalSpec& spec, const GridSpec& grid) {
  KernelOperator m = KernelOperator::zero(grid, grid, "M");
  for (int i = 0; i < grid.size(); ++i)
    if (spec.contains(grid.point(i))) m.entries(i, i) = 1.0 / grid.weight(i);
  return m;
}

KernelOperator apply_cutoff_right(const KernelOperator& a, const IntervalSpec& spec) {
  KernelOperator out = a;
  for (int j = 0; j < a.domain.size(); ++j)
    if (!spec.contains(a.domain.point(j))) out.entries.col(j).setZero();
  out.label += "oM";
  return out;
}

Eigen::VectorXd singular_values(const KernelOperator& a) {
  if (a.entries.size() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a.weighted());
  return svd.singularValues();
}

double op_norm(const Eigen::MatrixXcd& w, const NormOptions& opt) {
  if (w.size() == 0) return 0.0;
  NormMethod m = opt.method;
  if (m == NormMethod::Auto)
    m = std::max(w.rows(), w.cols()) <= opt.svd_limit ? NormMethod::SVD : NormMethod::PowerIteration;
  if (m == NormMethod::SVD) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(w);
    return svd.singularValues()(0);
  }
  if (w.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // power iteration on w^H w from a fixed, generic start vector
  Eigen::VectorXcd x(w.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = cplx(1.0 + 0.5 * std::sin(1.3 * i), 0.25 * std::cos(0.7 * i));
  x.normalize();
  double prev = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    Eigen::VectorXcd y = w.adjoint() * (w * x);
    const double lam = y.norm();
    if (lam == 0.0) return 0.0;
    x = y / lam;
    if (std::abs(lam - prev) <= opt.tol * lam) return std::sqrt(lam);
    prev = lam;
  }
  throw NoConvergence("power iteration exceeded the iteration cap");
}

double op_norm(const KernelOperator& a, const NormOptions& opt) { return op_norm(a.weighted(), opt); }

double compact_defect(const KernelOperator& a, int rank) {
  const Eigen::VectorXd s = singular_values(a);
  if (rank < 0 || rank >= s.size()) throw std::invalid_argument("rank must be below the matrix size");
  return s(rank);
}

namespace {

constexpr char kMagic[8] = {'B', 'O', 'I', 'D', 'O', 'L', 'O', 'P'};
constexpr std::uint32_t kVersion = 1;

const char* kind_name(GridKind k) {
  switch (k) {
    case GridKind::Linear:
      return "Linear";
    case GridKind::LogHalfLine:
      return "LogHalfLine";
    case GridKind::LogPair:
      return "LogPair";
  }
  return "";
}

GridKind kind_from(const std::string& s) {
  if (s == "Linear") return GridKind::Linear;
  if (s == "LogHalfLine") return GridKind::LogHalfLine;
  if (s == "LogPair") return GridKind::LogPair;
  throw FormatError("unknown grid kind " + s);
}

nlohmann::ordered_json grid_json(const GridSpec& g) {
  return {{"kind", kind_name(g.kind)},
          {"sigma", static_cast<int>(g.sigma)},
          {"half_width", g.half_width},
          {"n", g.n}};
}

GridSpec grid_from(const nlohmann::json& j) {
  GridSpec g;
  g.kind = kind_from(j.at("kind").get<std::string>());
  g.sigma = j.at("sigma").get<int>() < 0 ? Sign::Minus : Sign::Plus;
  g.half_width = j.at("half_width").get<double>();
  g.n = j.at("n").get<int>();
  g.check();
  return g;
}

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("truncated dump header");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, double v) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(const unsigned char* b) {
  std::uint64_t u = 0;
  for (int i = 7; i >= 0; --i) u = (u << 8) | b[i];
  return std::bit_cast<double>(u);
}

}  // namespace

void write_operator_dump(const std::string& path, const KernelOperator& a) {
  nlohmann::ordered_json h = {{"format", "boidol-operator"},
                              {"version", kVersion},
                              {"label", a.label},
                              {"rows", a.entries.rows()},
                              {"cols", a.entries.cols()},
                              {"dtype", "complex128-le"},
                              {"order", "row-major"},
                              {"domain", grid_json(a.domain)},
                              {"codomain", grid_json(a.codomain)}};
  const std::string header = h.dump();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.write(kMagic, 8);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(header.size()));
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  const std::size_t used = 16 + header.size();
  for (std::size_t p = used; p % 8 != 0; ++p) os.put('\0');
  for (Eigen::Index i = 0; i < a.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < a.entries.cols(); ++j) {
      put_f64(os, a.entries(i, j).real());
      put_f64(os, a.entries(i, j).imag());
    }
  if (!os) throw std::runtime_error("write failed for " + path);
}

KernelOperator read_operator_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw FormatError("bad magic");
  const std::uint32_t version = get_u32(is);
  if (version != kVersion) throw FormatError("unsupported dump version");
  const std::uint32_t len = get_u32(is);
  std::string header(len, '\0');
  if (!is.read(header.data(), len)) throw FormatError("truncated JSON header");
  for (std::size_t p = 16 + len; p % 8 != 0; ++p) is.get();
  const auto h = nlohmann::json::parse(header);
  KernelOperator a;
  a.label = h.at("label").get<std::string>();
  a.domain = grid_from(h.at("domain"));
  a.codomain = grid_from(h.at("codomain"));
  const auto rows = h.at("rows").get<Eigen::Index>();
  const auto cols = h.at("cols").get<Eigen::Index>();
  if (rows != a.codomain.size() || cols != a.domain.size()) throw FormatError("shape/grid mismatch");
  a.entries.resize(rows, cols);
  std::vector<unsigned char> buf(static_cast<std::size_t>(cols) * 16);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
      throw FormatError("truncated payload");
    for (Eigen::Index j = 0; j < cols; ++j)
      a.entries(i, j) = {get_f64(&buf[16 * j]), get_f64(&buf[16 * j + 8])};
  }
  return a;
}

}  // namespace boidol
