#include "talbot/gaunt.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "talbot/errors.hpp"
#include "talbot/parallel.hpp"
#include "talbot/specialfun.hpp"

namespace talbot::gaunt {

namespace {

void check_indices(std::span<const int> indices) {
  if (indices.size() < 2 || indices.size() > 4) throw InputError("kappa takes 2, 3 or 4 indices");
  for (int n : indices)
    if (n < 0) throw DomainError("negative degree in kappa");
}

std::uint64_t key_of(std::span<const int> sorted) {
  std::uint64_t key = sorted.size();
  for (int n : sorted) key = (key << 15) | static_cast<std::uint64_t>(n);
  return key;
}

// Inverse of key_of: the arity sits above the 15-bit index fields.
std::vector<int> unpack(std::uint64_t key) {
  std::size_t n = 2;
  for (std::size_t cand = 4; cand >= 2; --cand)
    if ((key >> (15 * cand)) == cand) {
      n = cand;
      break;
    }
  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[n - 1 - i] = static_cast<int>((key >> (15 * i)) & 0x7fff);
  return idx;
}

double product_quadrature(const QuadratureRule& rule, std::span<const int> indices, int top) {
  std::vector<double> norms(static_cast<std::size_t>(top) + 1), ys(norms.size());
  specialfun::zonal_norms(rule.dim(), norms);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    specialfun::zonal_harmonics_all(rule.dim(), rule.nodes()[i], norms, ys);
    double prod = rule.sphere_weights()[i];
    for (int n : indices) prod *= ys[static_cast<std::size_t>(n)];
    acc += prod;
  }
  return acc;
}

}  // namespace

double kappa(std::span<const int> indices, int d, int node_count) {
  check_indices(indices);
  const int sum = std::accumulate(indices.begin(), indices.end(), 0);
  if (node_count == 0) node_count = sum / 2 + 8;
  if (node_count < sum / 2 + 2)
    throw ResolutionError("kappa needs at least " + std::to_string(sum / 2 + 2) + " nodes");
  const QuadratureRule rule(node_count, d);
  return product_quadrature(rule, indices, *std::max_element(indices.begin(), indices.end()));
}

// ---------------------------------------------------------------------------
// KappaTable

KappaTable::KappaTable(int d, int n_max)
    : d_(d), n_max_(n_max), rule_(2 * n_max + 8, d), table_(rule_, n_max) {
  if (n_max < 0 || n_max >= (1 << 15)) throw InputError("kappa table n_max out of range");
}

double KappaTable::compute(std::span<const int> sorted) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < table_.nodes(); ++i) {
    const double* row = table_.row(i);
    double prod = rule_.sphere_weights()[i];
    for (int n : sorted) prod *= row[n];
    acc += prod;
  }
  return acc;
}

double KappaTable::value(std::span<const int> indices) const {
  check_indices(indices);
  std::array<int, 4> sorted{};
  std::copy(indices.begin(), indices.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(indices.size()));
  const std::span<const int> s(sorted.data(), indices.size());
  if (s.back() > n_max_) throw IndexError("kappa index beyond the table range");
  const auto key = key_of(s);
  {
    std::lock_guard<std::mutex> lock(*mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double v = compute(s);
  std::lock_guard<std::mutex> lock(*mutex_);
  cache_.emplace(key, v);
  return v;
}

double KappaTable::operator()(int a, int b, int c) const {
  const int idx[3] = {a, b, c};
  return value(idx);
}

double KappaTable::operator()(int a, int b, int c, int e) const {
  const int idx[4] = {a, b, c, e};
  return value(idx);
}

void KappaTable::fill(int up_to) {
  up_to = std::min(up_to, n_max_);
  std::vector<std::array<int, 4>> todo;
  for (int a = 0; a <= up_to; ++a)
    for (int b = a; b <= up_to; ++b)
      for (int c = b; c <= up_to; ++c) {
        todo.push_back({a, b, c, -1});
        for (int e = c; e <= up_to; ++e) todo.push_back({a, b, c, e});
      }
  std::vector<double> values(todo.size());
  parallel_chunks(todo.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t arity = todo[i][3] < 0 ? 3 : 4;
      values[i] = compute(std::span<const int>(todo[i].data(), arity));
    }
  });
  std::lock_guard<std::mutex> lock(*mutex_);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const std::size_t arity = todo[i][3] < 0 ? 3 : 4;
    cache_.emplace(key_of(std::span<const int>(todo[i].data(), arity)), values[i]);
  }
}

std::size_t KappaTable::cached() const {
  std::lock_guard<std::mutex> lock(*mutex_);
  return cache_.size();
}

void KappaTable::save(std::ostream& out) const {
  nlohmann::json header;
  header["format"] = "kappa-table";
  header["d"] = d_;
  header["n_max"] = n_max_;
  header["nodes"] = rule_.size();
  header["normalization"] = "(1/omega_d) integral of unit-norm zonal harmonics";
  out << header.dump() << '\n';
  out << "arity,n1,n2,n3,n4,value\n" << std::setprecision(17);

  std::vector<std::pair<std::uint64_t, double>> rows;
  {
    std::lock_guard<std::mutex> lock(*mutex_);
    rows.assign(cache_.begin(), cache_.end());
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [key, v] : rows) {
    const auto idx = unpack(key);
    const std::size_t n = idx.size();
    out << n;
    for (std::size_t i = 0; i < 4; ++i) {
      out << ',';
      if (i < n) out << idx[i];
    }
    out << ',' << v << '\n';
  }
}

KappaTable KappaTable::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty kappa table stream");
  const auto header = nlohmann::json::parse(line);
  if (header.value("format", "") != "kappa-table") throw InputError("not a kappa table");
  KappaTable table(header.at("d").get<int>(), header.at("n_max").get<int>());
  std::getline(in, line);  // column names
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw InputError("malformed kappa table row: " + line);
    const int arity = std::stoi(cells[0]);
    std::array<int, 4> idx{};
    for (int i = 0; i < arity; ++i) idx[static_cast<std::size_t>(i)] = std::stoi(cells[static_cast<std::size_t>(i) + 1]);
    table.cache_.emplace(key_of(std::span<const int>(idx.data(), static_cast<std::size_t>(arity))),
                         std::stod(cells[5]));
  }
  return table;
}

// ---------------------------------------------------------------------------
// Identities

bool admissible(std::span<const int> indices) {
  const int sum = std::accumulate(indices.begin(), indices.end(), 0);
  return std::all_of(indices.begin(), indices.end(), [&](int n) { return 2 * n <= sum; });
}

double kappa4_parseval(int a, int b, int c, int e, int d) {
  const int top = std::max({a + b, c + e, a, b, c, e});
  const KappaTable table(d, top);
  double acc = 0.0;
  for (int n = 0; n <= std::min(a + b, c + e); ++n) acc += table(n, a, b) * table(n, c, e);
  return acc;
}

double parseval_compose_check(int a, int b, int c, int e, int d) {
  const int idx[4] = {a, b, c, e};
  return std::abs(kappa4_parseval(a, b, c, e, d) - kappa(idx, d));
}

std::int64_t h_symbol(int n1, int n2, int n3, int n, int d) {
  auto lam = [d](std::int64_t k) { return k * (k + d - 1); };
  return lam(n) - lam(n1) + lam(n2) - lam(n3);
}

std::string to_string(Lambda l) {
  switch (l) {
    case Lambda::lambda0: return "Lambda0";
    case Lambda::lambda1: return "Lambda1";
    case Lambda::lambda2: return "Lambda2";
    case Lambda::unclassified: return "unclassified";
  }
  return "unknown";
}

namespace {

struct Ratios {
  double r1;
  double r2;
};

// r1 = <n1><n2><n3> / n^{3/2}, r2 = |H| / (max(n1,n2,n3) |n - max(n1,n3)|);
// only meaningful off Lambda0.
Ratios ratios(int n1, int n2, int n3, int n, int d) {
  const double b1 = std::sqrt(1.0 + double(n1) * n1);
  const double b2 = std::sqrt(1.0 + double(n2) * n2);
  const double b3 = std::sqrt(1.0 + double(n3) * n3);
  const double r1 = n == 0 ? std::numeric_limits<double>::infinity() : b1 * b2 * b3 / std::pow(n, 1.5);
  const double denom = double(std::max({n1, n2, n3})) * std::abs(n - std::max(n1, n3));
  const double h = std::abs(static_cast<double>(h_symbol(n1, n2, n3, n, d)));
  const double r2 = denom == 0.0 ? std::numeric_limits<double>::infinity() : h / denom;
  return {r1, r2};
}

template <typename Visit>
void for_each_admissible(int n_max, Visit&& visit) {
  for (int n = 0; n <= n_max; ++n)
    for (int n1 = 0; n1 <= n_max; ++n1)
      for (int n2 = 0; n2 <= n_max; ++n2)
        for (int n3 = 0; n3 <= n_max; ++n3) {
          const int idx[4] = {n1, n2, n3, n};
          if (admissible(idx)) visit(n1, n2, n3, n);
        }
}

}  // namespace

Lambda lambda_classify(int n1, int n2, int n3, int n, const LambdaConstants& c, int d) {
  const int idx[4] = {n1, n2, n3, n};
  for (int v : idx)
    if (v < 0) throw DomainError("negative degree");
  if (!admissible(idx)) throw InputError("inadmissible tuple: one index exceeds the sum of the others");
  if (n1 == n || n3 == n) return Lambda::lambda0;
  const auto r = ratios(n1, n2, n3, n, d);
  if (r.r1 >= c.c1) return Lambda::lambda1;
  if (r.r2 >= c.c2) return Lambda::lambda2;
  return Lambda::unclassified;
}

LambdaScan lambda_scan(int n_max, const LambdaConstants& c, int d) {
  LambdaScan scan;
  for_each_admissible(n_max, [&](int n1, int n2, int n3, int n) {
    ++scan.admissible;
    ++scan.counts[static_cast<int>(lambda_classify(n1, n2, n3, n, c, d))];
  });
  return scan;
}

LambdaConstants calibrate_lambda(int n_max, int d) {
  std::vector<Ratios> rs;
  for_each_admissible(n_max, [&](int n1, int n2, int n3, int n) {
    if (n1 == n || n3 == n) return;
    rs.push_back(ratios(n1, n2, n3, n, d));
  });
  std::sort(rs.begin(), rs.end(), [](const Ratios& a, const Ratios& b) { return a.r1 < b.r1; });
  // Choosing c1 = rs[k].r1 classifies every tuple from k on as Lambda1; the
  // rest need r2 >= c2, so c2 is the running minimum of r2 before k.
  LambdaConstants best;
  double best_product = -1.0;
  double prefix_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (k == 0 || rs[k].r1 > rs[k - 1].r1) {
      const double c2 = prefix_min;
      if (c2 > 0.0 && std::isfinite(c2) && std::isfinite(rs[k].r1) && rs[k].r1 * c2 > best_product) {
        best_product = rs[k].r1 * c2;
        best = {rs[k].r1, c2};
      }
    }
    prefix_min = std::min(prefix_min, rs[k].r2);
  }
  return best;
}

double line_integral(int a, int b, int d) {
  if (a < 0 || b < 0) throw DomainError("negative degree");
  const int top = std::max(a, b);
  const int points = a + b + 16;
  std::vector<double> norms(static_cast<std::size_t>(top) + 1), ys(norms.size());
  specialfun::zonal_norms(d, norms);
  double acc = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = std::numbers::pi * (j + 0.5) / points;
    specialfun::zonal_harmonics_all(d, std::cos(theta), norms, ys);
    acc += ys[static_cast<std::size_t>(a)] * ys[static_cast<std::size_t>(b)];
  }
  return acc / points;
}

ResonanceComparison resonance_compare(int n, int n2, int n3, int d) {
  if (n2 > n || n3 > n) throw InputError("resonance comparison needs n2, n3 <= n");
  const int idx[4] = {n, n, n2, n3};
  ResonanceComparison out;
  out.kappa = kappa(idx, d);
  out.line = line_integral(n2, n3, d);
  out.difference = out.kappa - out.line;
  return out;
}

}  // namespace talbot::gaunt
