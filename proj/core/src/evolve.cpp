#include "talbot/evolve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"
#include "talbot/specialfun.hpp"

namespace talbot::evolve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// e^{2 pi i r / q} for an integer residue r.
cplx root_of_unity(std::int64_t r, std::int64_t q) {
  r %= q;
  if (r < 0) r += q;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(q));
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t q) {
  __extension__ using wide = __int128;
  const wide prod = static_cast<wide>(a) * static_cast<wide>(b);
  auto r = static_cast<std::int64_t>(prod % q);
  return r < 0 ? r + q : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// TimePoint

TimePoint TimePoint::rational(std::int64_t p, std::int64_t q) {
  if (q < 1) throw InputError("rational time needs q >= 1");
  if (std::gcd(p < 0 ? -p : p, q) != 1 && !(p == 0 && q == 1))
    throw InputError("rational time needs gcd(p, q) = 1");
  TimePoint tp;
  tp.kind_ = Kind::rational;
  tp.p_ = p;
  tp.q_ = q;
  tp.t_ = kTwoPi * static_cast<double>(p) / static_cast<double>(q);
  return tp;
}

TimePoint TimePoint::sampled(double t) {
  TimePoint tp;
  tp.kind_ = Kind::sampled;
  tp.t_ = t;
  return tp;
}

TimePoint TimePoint::arbitrary(double t) {
  TimePoint tp;
  tp.kind_ = Kind::arbitrary;
  tp.t_ = t;
  return tp;
}

cplx TimePoint::phase(std::int64_t k) const {
  if (kind_ == Kind::rational) return root_of_unity(mod_mul(p_ % q_, k % q_, q_), q_);
  const long double angle = std::fmod(static_cast<long double>(t_) * static_cast<long double>(k), kTwoPiL);
  return std::polar(1.0, static_cast<double>(angle));
}

std::string TimePoint::label() const {
  std::ostringstream os;
  if (kind_ == Kind::rational)
    os << "2pi*" << p_ << "/" << q_;
  else
    os << std::setprecision(17) << t_;
  return os.str();
}

std::vector<TimePoint> time_panel(std::uint64_t seed, int draws) {
  std::vector<TimePoint> panel;
  const double fixed[] = {0.5 * (std::sqrt(5.0) - 1.0), std::sqrt(2.0) - 1.0,
                          std::sqrt(3.0) - 1.0, std::numbers::e - 2.0};
  for (double f : fixed) panel.push_back(TimePoint::sampled(kTwoPi * f));
  std::mt19937_64 engine(seed);
  while (static_cast<int>(panel.size()) < 4 + draws) {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (u > 0.0) panel.push_back(TimePoint::sampled(kTwoPi * u));
  }
  return panel;
}

// ---------------------------------------------------------------------------
// SampledField

std::string to_string(Domain d) {
  switch (d) {
    case Domain::torus1d: return "torus-1d";
    case Domain::torus2d: return "torus-2d";
    case Domain::sphere_greatcircle: return "sphere-greatcircle";
    case Domain::sphere_surface: return "sphere-surface";
  }
  return "unknown";
}

std::size_t SampledField::count() const {
  std::size_t n = 1;
  for (auto s : sizes) n *= s;
  return n;
}

double SampledField::coordinate(std::size_t axis, std::size_t j) const {
  const auto n = static_cast<double>(sizes.at(axis));
  if (domain == Domain::sphere_greatcircle || (domain == Domain::sphere_surface && axis == 0))
    return n > 1.0 ? std::numbers::pi * static_cast<double>(j) / (n - 1.0) : 0.0;
  return kTwoPi * static_cast<double>(j) / n;
}

void SampledField::write_csv(std::ostream& out) const {
  if (domain == Domain::sphere_greatcircle)
    out << "theta";
  else if (domain == Domain::sphere_surface)
    out << "theta,phi";
  else if (sizes.size() == 1)
    out << "x";
  else
    for (std::size_t a = 0; a < sizes.size(); ++a) out << (a ? ",x" : "x") << a + 1;
  out << ",re,im\n";
  out << std::setprecision(17);
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (const auto& v : values) {
    for (std::size_t a = 0; a < sizes.size(); ++a) out << coordinate(a, idx[a]) << ',';
    out << v.real() << ',' << v.imag() << '\n';
    for (std::size_t a = sizes.size(); a-- > 0;) {
      if (++idx[a] < sizes[a]) break;
      idx[a] = 0;
    }
  }
}

std::string SampledField::metadata_json() const {
  nlohmann::json doc;
  doc["domain"] = to_string(domain);
  doc["sizes"] = sizes;
  doc["t"] = t;
  doc["count"] = count();
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Propagators

spectra::TorusSpectrum propagate_torus(const spectra::TorusSpectrum& f, const TimePoint& t) {
  spectra::TorusSpectrum out = f;
  out.set_real_valued(false);
  auto data = out.data();
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data[i] != cplx{}) data[i] *= t.phase(f.norm2_of(i));
  return out;
}

spectra::ZonalSpectrum propagate_sphere(const spectra::ZonalSpectrum& f, const TimePoint& t) {
  spectra::ZonalSpectrum out = f;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    out.coeffs[n] *= t.phase(nn * (nn + f.dim - 1));
  }
  return out;
}

spectra::FiberSpectrum propagate_sphere(const spectra::FiberSpectrum& f, const TimePoint& t) {
  spectra::FiberSpectrum out = f;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    const auto n = static_cast<std::int64_t>(f.first_degree() + static_cast<int>(i));
    out.coeffs[i] *= t.phase(n * (n + 1));
  }
  return out;
}

spectra::BeamSpectrum propagate_sphere(const spectra::BeamSpectrum& f, const TimePoint& t) {
  spectra::BeamSpectrum out = f;
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    const auto nn = static_cast<std::int64_t>(n);
    out.coeffs[n] *= t.phase(nn * (nn + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid synthesis

namespace {

void check_sizes(const spectra::TorusSpectrum& f, std::span<const std::size_t> sizes,
                 bool allow_aliasing) {
  if (static_cast<int>(sizes.size()) != f.dim())
    throw IndexError("grid rank does not match the spectrum dimension");
  for (auto s : sizes) {
    if (s == 0) throw InputError("empty grid axis");
    if (!allow_aliasing && s < f.side())
      throw ResolutionError("grid axis of " + std::to_string(s) + " points aliases radius " +
                            std::to_string(f.radius()));
  }
}

}  // namespace

SampledField evaluate_torus(const spectra::TorusSpectrum& f, std::span<const std::size_t> sizes,
                            bool allow_aliasing) {
  check_sizes(f, sizes, allow_aliasing);
  SampledField out;
  out.domain = f.dim() == 1 ? Domain::torus1d : Domain::torus2d;
  out.sizes.assign(sizes.begin(), sizes.end());
  out.values.assign(out.count(), 0.0);

  const auto data = f.data();
  const int dim = f.dim();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] == cplx{}) continue;
    const auto m = f.index_of(i);
    std::size_t pos = 0;
    for (int a = 0; a < dim; ++a) {
      const auto n = static_cast<std::int64_t>(sizes[static_cast<std::size_t>(a)]);
      std::int64_t r = m[static_cast<std::size_t>(a)] % n;
      if (r < 0) r += n;
      pos = pos * static_cast<std::size_t>(n) + static_cast<std::size_t>(r);
    }
    out.values[pos] += data[i];
  }

  std::vector<int> dims(sizes.begin(), sizes.end());
  auto* buffer = reinterpret_cast<fftw_complex*>(out.values.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft(dim, dims.data(), buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

SampledField evaluate_torus_direct(const spectra::TorusSpectrum& f,
                                   std::span<const std::size_t> sizes) {
  check_sizes(f, sizes, true);
  SampledField out;
  out.domain = f.dim() == 1 ? Domain::torus1d : Domain::torus2d;
  out.sizes.assign(sizes.begin(), sizes.end());
  out.values.assign(out.count(), 0.0);

  std::vector<std::size_t> support;
  std::vector<std::vector<int>> modes;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.data()[i] != cplx{}) {
      support.push_back(i);
      modes.push_back(f.index_of(i));
    }

  const auto dim = sizes.size();
  parallel_chunks(out.count(), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx(dim);
    for (std::size_t g = lo; g < hi; ++g) {
      std::size_t rest = g;
      for (std::size_t a = dim; a-- > 0;) {
        idx[a] = rest % sizes[a];
        rest /= sizes[a];
      }
      cplx acc = 0.0;
      for (std::size_t s = 0; s < support.size(); ++s) {
        // e^{i m.x} = prod_a e^{2 pi i m_a j_a / n_a}, each reduced exactly.
        cplx ph = 1.0;
        for (std::size_t a = 0; a < dim; ++a)
          ph *= root_of_unity(static_cast<std::int64_t>(modes[s][a]) *
                                  static_cast<std::int64_t>(idx[a]),
                              static_cast<std::int64_t>(sizes[a]));
        acc += f.data()[support[s]] * ph;
      }
      out.values[g] = acc;
    }
  });
  return out;
}

SampledField evaluate_zonal(const spectra::ZonalSpectrum& f, std::size_t points) {
  if (points < 2) throw InputError("great-circle grid needs at least two points");
  SampledField out;
  out.domain = Domain::sphere_greatcircle;
  out.sizes = {points};
  out.values.assign(points, 0.0);
  const std::size_t count = f.coeffs.size();
  std::vector<double> norms(count);
  specialfun::zonal_norms(f.dim, norms);
  parallel_chunks(points, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> ys(count);
    for (std::size_t j = lo; j < hi; ++j) {
      const double x = std::cos(out.coordinate(0, j));
      specialfun::zonal_harmonics_all(f.dim, x, norms, ys);
      cplx acc = 0.0;
      for (std::size_t n = 0; n < count; ++n) acc += f.coeffs[n] * ys[n];
      out.values[j] = acc;
    }
  });
  return out;
}

namespace {

// One FFT row: v_j = sum_n b_n e^{i sign n phi_j}.
void beam_row(const std::vector<cplx>& b, int sign, std::size_t points, cplx* out) {
  std::vector<cplx> buf(points, 0.0);
  const auto np = static_cast<std::int64_t>(points);
  for (std::size_t n = 0; n < b.size(); ++n) {
    std::int64_t r = (sign * static_cast<std::int64_t>(n)) % np;
    if (r < 0) r += np;
    buf[static_cast<std::size_t>(r)] += b[n];
  }
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(points), data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::copy(buf.begin(), buf.end(), out);
}

// Coefficients of the phi-series at polar angle theta.
std::vector<cplx> beam_profile(const spectra::BeamSpectrum& f, double theta) {
  std::vector<cplx> b(f.coeffs.size(), 0.0);
  const double s = std::sin(theta);
  for (std::size_t n = 0; n < b.size(); ++n) {
    if (f.coeffs[n] == cplx{}) continue;
    const int ni = static_cast<int>(n);
    double modulus = ni == 0 ? 1.0 : 0.0;
    if (ni > 0 && s > 0.0)
      modulus = std::exp(specialfun::gaussian_beam_log_constant(ni) + ni * std::log(s));
    if (f.sign == 1 && ni % 2 == 1) modulus = -modulus;
    b[n] = f.coeffs[n] * modulus;
  }
  return b;
}

}  // namespace

SampledField evaluate_beam_equator(const spectra::BeamSpectrum& f, std::size_t points) {
  if (points < f.coeffs.size()) throw ResolutionError("equator grid aliases the beam series");
  SampledField out;
  out.domain = Domain::torus1d;
  out.sizes = {points};
  out.values.resize(points);
  beam_row(beam_profile(f, 0.5 * std::numbers::pi), f.sign, points, out.values.data());
  return out;
}

SampledField evaluate_beam_surface(const spectra::BeamSpectrum& f, std::size_t n_theta,
                                   std::size_t n_phi) {
  if (n_theta < 2) throw InputError("surface grid needs at least two polar samples");
  if (n_phi < f.coeffs.size()) throw ResolutionError("azimuthal grid aliases the beam series");
  SampledField out;
  out.domain = Domain::sphere_surface;
  out.sizes = {n_theta, n_phi};
  out.values.resize(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i)
    beam_row(beam_profile(f, out.coordinate(0, i)), f.sign, n_phi, out.values.data() + i * n_phi);
  return out;
}

// ---------------------------------------------------------------------------
// Quantization

QuantizationResult quantization_check(const spectra::TorusSpectrum& f, std::int64_t p,
                                      std::int64_t q, std::size_t grid) {
  if (f.dim() != 1) throw IndexError("quantization check is one-dimensional");
  const TimePoint tp = TimePoint::rational(p, q);
  const auto uq = static_cast<std::size_t>(q);
  if (grid == 0) {
    const std::size_t base = 2 * f.side();
    grid = (base + uq - 1) / uq * uq;
  }
  if (grid % uq != 0) throw InputError("quantization grid must be a multiple of q");
  if (grid < f.side()) throw ResolutionError("quantization grid aliases the spectrum");

  QuantizationResult res;
  res.grid = grid;
  res.weights.assign(uq, 0.0);
  for (std::int64_t l = 0; l < q; ++l) {
    cplx acc = 0.0;
    for (std::int64_t n = 0; n < q; ++n)
      acc += root_of_unity(mod_mul(p % q, mod_mul(n, n, q), q) + mod_mul(n, l, q), q);
    res.weights[static_cast<std::size_t>(l)] = acc / static_cast<double>(q);
  }

  const std::size_t sizes[1] = {grid};
  const SampledField data = evaluate_torus(f, sizes);
  const SampledField exact = evaluate_torus(propagate_torus(f, tp), sizes);
  const std::size_t shift = grid / uq;
  double worst = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    cplx acc = 0.0;
    for (std::size_t l = 0; l < uq; ++l) {
      if (res.weights[l] == cplx{}) continue;
      acc += res.weights[l] * data.values[(j + grid - (l * shift) % grid) % grid];
    }
    worst = std::max(worst, std::abs(acc - exact.values[j]));
  }
  res.residual = worst;
  return res;
}

}  // namespace talbot::evolve
