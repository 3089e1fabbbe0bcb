#include "talbot/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "talbot/errors.hpp"

namespace talbot::spectra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (e^z - 1) / z for purely imaginary z = i w.
cplx expm1_ratio(double w) {
  if (std::abs(w) < 1e-3) {
    const cplx z(0.0, w);
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  const double h = std::sin(0.5 * w);
  return cplx(std::sin(w), 2.0 * h * h) / w;
}

// integral_0^1 u e^{z u} du for z = i w.
cplx ramp_ratio(double w) {
  const cplx z(0.0, w);
  if (std::abs(w) < 1e-2) {
    // sum_k z^k / (k! (k + 2))
    cplx term = 1.0, sum = 0.5;
    for (int k = 1; k <= 6; ++k) {
      term *= z / static_cast<double>(k);
      sum += term / static_cast<double>(k + 2);
    }
    return sum;
  }
  return (std::polar(1.0, w) - expm1_ratio(w)) / z;
}

double wrap_position(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

// Oriented integral over x in [a.x, b.x] (sign from the direction) of
// integral_0^{l(x)} e^{-i(m1 x + m2 y)} dy, l the line through a and b.
cplx edge_trapezoid(const Point2& a, const Point2& b, int m1, int m2) {
  const double len = b.x - a.x;
  if (len == 0.0) return 0.0;
  const double dy = b.y - a.y;
  if (m2 == 0) {
    const double w = -m1 * len;
    return len * std::polar(1.0, -m1 * a.x) * (a.y * expm1_ratio(w) + dy * ramp_ratio(w));
  }
  // m1 len + m2 dy == 0 is the direction in which the slanted side carries no
  // oscillation; expm1_ratio switches to its series there.
  const cplx first = std::polar(1.0, -m1 * a.x) * expm1_ratio(-m1 * len);
  const cplx second =
      std::polar(1.0, -(m1 * a.x + m2 * a.y)) * expm1_ratio(-(m1 * len + m2 * dy));
  return len / cplx(0.0, m2) * (first - second);
}

cplx triangle_integral(const Point2& p, const Point2& q, const Point2& r, int m1, int m2) {
  // Counter-clockwise triangle: integral = -sum of oriented edge trapezoids.
  return -(edge_trapezoid(p, q, m1, m2) + edge_trapezoid(q, r, m1, m2) +
           edge_trapezoid(r, p, m1, m2));
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool inside_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
  const double d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
  return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// TorusSpectrum

TorusSpectrum::TorusSpectrum(int dim, int radius) : dim_(dim), radius_(radius) {
  if (dim < 1) throw InputError("torus dimension must be positive");
  if (radius < 0) throw InputError("spectrum radius must be non-negative");
  side_ = 2 * static_cast<std::size_t>(radius) + 1;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= side_;
  coeffs_.assign(total, 0.0);
}

bool TorusSpectrum::contains(std::span<const int> m) const {
  if (static_cast<int>(m.size()) != dim_) return false;
  return std::all_of(m.begin(), m.end(), [&](int v) { return std::abs(v) <= radius_; });
}

std::size_t TorusSpectrum::flat(std::span<const int> m) const {
  std::size_t idx = 0;
  for (int v : m) idx = idx * side_ + static_cast<std::size_t>(v + radius_);
  return idx;
}

cplx TorusSpectrum::at(std::span<const int> m) const {
  if (static_cast<int>(m.size()) != dim_) throw IndexError("multi-index dimension mismatch");
  return contains(m) ? coeffs_[flat(m)] : cplx{};
}

cplx& TorusSpectrum::ref(std::span<const int> m) {
  if (!contains(m)) throw IndexError("multi-index outside the spectrum box");
  return coeffs_[flat(m)];
}

cplx TorusSpectrum::operator()(int m) const {
  const int idx[1] = {m};
  return at(idx);
}
cplx TorusSpectrum::operator()(int m1, int m2) const {
  const int idx[2] = {m1, m2};
  return at(idx);
}
cplx& TorusSpectrum::ref(int m) {
  const int idx[1] = {m};
  return ref(std::span<const int>(idx));
}
cplx& TorusSpectrum::ref(int m1, int m2) {
  const int idx[2] = {m1, m2};
  return ref(std::span<const int>(idx));
}

std::vector<int> TorusSpectrum::index_of(std::size_t flat_idx) const {
  std::vector<int> m(static_cast<std::size_t>(dim_));
  for (int i = dim_ - 1; i >= 0; --i) {
    m[static_cast<std::size_t>(i)] = static_cast<int>(flat_idx % side_) - radius_;
    flat_idx /= side_;
  }
  return m;
}

int TorusSpectrum::sup_norm_of(std::size_t flat_idx) const {
  int best = 0;
  for (int i = 0; i < dim_; ++i) {
    best = std::max(best, std::abs(static_cast<int>(flat_idx % side_) - radius_));
    flat_idx /= side_;
  }
  return best;
}

std::int64_t TorusSpectrum::norm2_of(std::size_t flat_idx) const {
  std::int64_t s = 0;
  for (int i = 0; i < dim_; ++i) {
    const std::int64_t v = static_cast<std::int64_t>(flat_idx % side_) - radius_;
    s += v * v;
    flat_idx /= side_;
  }
  return s;
}

double TorusSpectrum::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

double TorusSpectrum::hermitian_defect() const {
  double worst = 0.0;
  const std::size_t n = coeffs_.size();
  // Negating every component maps flat index i to n - 1 - i.
  for (std::size_t i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(coeffs_[n - 1 - i] - std::conj(coeffs_[i])));
  return worst;
}

// ---------------------------------------------------------------------------
// Sphere containers

ZonalSpectrum::ZonalSpectrum(int d, int n_max) : dim(d) {
  if (d < 2) throw InputError("zonal spectra need d >= 2");
  if (n_max < 0) throw InputError("n_max must be non-negative");
  coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
}

double ZonalSpectrum::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

double ZonalSpectrum::sobolev_norm(double s) const {
  double acc = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n)
    acc += std::pow(1.0 + static_cast<double>(n * n), s) * std::norm(coeffs[n]);
  return std::sqrt(acc);
}

FiberSpectrum::FiberSpectrum(int k, int n_max) : order(k) {
  const int first = k < 0 ? -k : k;
  if (n_max < first) throw IndexError("fiber spectrum needs n_max >= |k|");
  coeffs.assign(static_cast<std::size_t>(n_max - first) + 1, 0.0);
}

cplx FiberSpectrum::at(int n) const {
  if (n < first_degree() || n > n_max()) return 0.0;
  return coeffs[static_cast<std::size_t>(n - first_degree())];
}

cplx& FiberSpectrum::ref(int n) {
  if (n < first_degree() || n > n_max()) throw IndexError("fiber degree out of range");
  return coeffs[static_cast<std::size_t>(n - first_degree())];
}

double FiberSpectrum::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

BeamSpectrum::BeamSpectrum(int s, int n_max) : sign(s) {
  if (s != 1 && s != -1) throw InputError("beam sign must be +1 or -1");
  if (n_max < 0) throw InputError("n_max must be non-negative");
  coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
}

double BeamSpectrum::l2_norm_squared() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return s;
}

SigmaDifferences sigma_differences(const TorusSpectrum& f, int m1, int m2) {
  if (f.dim() != 2) throw IndexError("sigma differences are defined on T^2");
  SigmaDifferences out;
  out.sigma = f(m1 + 1, m2 + 1) - f(m1 + 1, m2) - f(m1, m2 + 1) + f(m1, m2);
  out.sigma1 = f(m1 + 1, m2) - f(m1, m2);
  out.sigma2 = f(m1, m2 + 1) - f(m1, m2);
  return out;
}

// ---------------------------------------------------------------------------
// Families

namespace {
std::vector<Jump> normalized_jumps(std::vector<Jump> jumps) {
  if (jumps.empty()) throw InputError("step data needs at least one breakpoint");
  for (auto& j : jumps) j.position = wrap_position(j.position);
  std::sort(jumps.begin(), jumps.end(),
            [](const Jump& a, const Jump& b) { return a.position < b.position; });
  for (std::size_t i = 1; i < jumps.size(); ++i)
    if (jumps[i].position == jumps[i - 1].position)
      throw InputError("step breakpoints must be distinct");
  return jumps;
}
}  // namespace

TorusSpectrum torus_step(std::vector<Jump> jumps, int radius) {
  jumps = normalized_jumps(std::move(jumps));
  TorusSpectrum out(1, radius);
  bool real = true;
  for (const auto& j : jumps) real = real && j.value.imag() == 0.0;
  out.set_real_valued(real);
  const std::size_t count = jumps.size();
  for (int m = -radius; m <= radius; ++m) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double start = jumps[i].position;
      const double stop = i + 1 < count ? jumps[i + 1].position : jumps[0].position + kTwoPi;
      const double width = stop - start;
      acc += jumps[i].value * width * std::polar(1.0, -m * start) * expm1_ratio(-m * width);
    }
    out.ref(m) = acc / kTwoPi;
  }
  return out;
}

double step_variation(std::vector<Jump> jumps) {
  jumps = normalized_jumps(std::move(jumps));
  double v = 0.0;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const cplx prev = jumps[(i + jumps.size() - 1) % jumps.size()].value;
    v += std::abs(jumps[i].value - prev);
  }
  return v;
}

double polygon_signed_area(const std::vector<Point2>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& p = v[i];
    const Point2& q = v[(i + 1) % v.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

std::vector<std::array<std::size_t, 3>> triangulate(const std::vector<Point2>& vertices,
                                                    std::size_t start) {
  if (vertices.size() < 3) throw InputError("polygon needs at least three vertices");
  const double area = polygon_signed_area(vertices);
  if (std::abs(area) < 1e-14) throw InputError("degenerate polygon (zero area)");
  std::vector<std::size_t> ring(vertices.size());
  for (std::size_t i = 0; i < ring.size(); ++i) ring[i] = i;
  if (area < 0.0) std::reverse(ring.begin(), ring.end());
  std::rotate(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(start % ring.size()),
              ring.end());

  std::vector<std::array<std::size_t, 3>> triangles;
  std::size_t cursor = 0;
  std::size_t guard = 0;
  while (ring.size() > 3) {
    const std::size_t n = ring.size();
    const std::size_t ip = (cursor + n - 1) % n, in = (cursor + 1) % n;
    const Point2& a = vertices[ring[ip]];
    const Point2& b = vertices[ring[cursor]];
    const Point2& c = vertices[ring[in]];
    bool ear = cross(a, b, c) > 0.0;
    for (std::size_t k = 0; ear && k < n; ++k) {
      if (k == ip || k == cursor || k == in) continue;
      if (inside_triangle(vertices[ring[k]], a, b, c)) ear = false;
    }
    if (ear) {
      triangles.push_back({ring[ip], ring[cursor], ring[in]});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(cursor));
      cursor %= ring.size();
      guard = 0;
    } else {
      cursor = (cursor + 1) % n;
      if (++guard > n) throw InputError("polygon is not simple");
    }
  }
  triangles.push_back({ring[0], ring[1], ring[2]});
  return triangles;
}

cplx polygon_coefficient(const std::vector<Point2>& vertices, int m1, int m2,
                         std::size_t triangulation_start) {
  const auto tris = triangulate(vertices, triangulation_start);
  cplx acc = 0.0;
  for (const auto& t : tris)
    acc += triangle_integral(vertices[t[0]], vertices[t[1]], vertices[t[2]], m1, m2);
  return acc / (kTwoPi * kTwoPi);
}

TorusSpectrum torus_polygon_indicator(const std::vector<Point2>& vertices, int radius,
                                      std::size_t triangulation_start) {
  for (const auto& p : vertices)
    if (!(p.x >= 0.0 && p.x <= kTwoPi && p.y >= 0.0 && p.y <= kTwoPi))
      throw InputError("polygon vertices must lie in [0, 2pi]^2");
  const auto tris = triangulate(vertices, triangulation_start);
  TorusSpectrum out(2, radius);
  out.set_real_valued(true);
  for (int m1 = -radius; m1 <= radius; ++m1) {
    for (int m2 = -radius; m2 <= radius; ++m2) {
      cplx acc = 0.0;
      for (const auto& t : tris)
        acc += triangle_integral(vertices[t[0]], vertices[t[1]], vertices[t[2]], m1, m2);
      out.ref(m1, m2) = acc / (kTwoPi * kTwoPi);
    }
  }
  return out;
}

ZonalSpectrum zonal_decay_family(double p, int n_max, int d) {
  if (!(p > 0.0)) throw InputError("decay exponent must be positive");
  ZonalSpectrum out(d, n_max);
  out.coeffs[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) out.coeffs[static_cast<std::size_t>(n)] = std::pow(n, -p);
  return out;
}

ZonalSpectrum zonal_decay_family_random_phase(double p, int n_max, std::uint64_t seed, int d) {
  ZonalSpectrum out = zonal_decay_family(p, n_max, d);
  std::mt19937_64 engine(seed);
  for (auto& c : out.coeffs) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    c *= std::polar(1.0, kTwoPi * u);
  }
  return out;
}

TorusSpectrum torus_decay_family_2d(double s, int radius) {
  if (!(s > 0.0 && s < 1.0)) throw InputError("decay family needs s in (0, 1)");
  TorusSpectrum out(2, radius);
  out.set_real_valued(true);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.data()[i] = std::pow(1.0 + static_cast<double>(out.norm2_of(i)), -0.5 * (1.0 + s));
  return out;
}

TorusSpectrum tensor_data(const std::vector<TorusSpectrum>& factors) {
  if (factors.empty()) throw InputError("tensor product of no factors");
  int radius = 0;
  bool real = true;
  for (const auto& f : factors) {
    if (f.dim() != 1) throw IndexError("tensor factors must be one-dimensional spectra");
    radius = std::max(radius, f.radius());
    real = real && f.real_valued();
  }
  TorusSpectrum out(static_cast<int>(factors.size()), radius);
  out.set_real_valued(real);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto m = out.index_of(i);
    cplx v = 1.0;
    for (std::size_t k = 0; k < factors.size() && v != cplx{}; ++k) v *= factors[k](m[k]);
    out.data()[i] = v;
  }
  return out;
}

TorusSpectrum torus_mode(int dim, int radius, std::span<const int> m, cplx value) {
  TorusSpectrum out(dim, radius);
  out.ref(m) = value;
  return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {
constexpr const char* kTorusConvention = "torus:[0,2pi)^d,e^{im.x},(2pi)^-d";
constexpr const char* kZonalConvention = "sphere:zonal,unit-norm (1/omega_d)";
}  // namespace

std::string to_json(const TorusSpectrum& s) {
  nlohmann::json doc;
  doc["convention"] = kTorusConvention;
  doc["d"] = s.dim();
  doc["real_valued"] = s.real_valued();
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const cplx c = s.data()[i];
    if (c == cplx{}) continue;
    entries.push_back({{"m", s.index_of(i)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return doc.dump();
}

std::string to_json(const ZonalSpectrum& s) {
  nlohmann::json doc;
  doc["convention"] = kZonalConvention;
  doc["d"] = s.dim;
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (std::size_t n = 0; n < s.coeffs.size(); ++n)
    entries.push_back({{"n", n}, {"re", s.coeffs[n].real()}, {"im", s.coeffs[n].imag()}});
  return doc.dump();
}

TorusSpectrum torus_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const int d = doc.at("d").get<int>();
  int radius = 0;
  for (const auto& e : doc.at("entries"))
    for (int v : e.at("m").get<std::vector<int>>()) radius = std::max(radius, std::abs(v));
  TorusSpectrum out(d, radius);
  out.set_real_valued(doc.value("real_valued", false));
  for (const auto& e : doc.at("entries")) {
    const auto m = e.at("m").get<std::vector<int>>();
    out.ref(m) = cplx(e.at("re").get<double>(), e.at("im").get<double>());
  }
  return out;
}

ZonalSpectrum zonal_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  int n_max = 0;
  for (const auto& e : doc.at("entries")) n_max = std::max(n_max, e.at("n").get<int>());
  ZonalSpectrum out(doc.at("d").get<int>(), n_max);
  for (const auto& e : doc.at("entries"))
    out.coeffs[e.at("n").get<std::size_t>()] =
        cplx(e.at("re").get<double>(), e.at("im").get<double>());
  return out;
}

}  // namespace talbot::spectra
