#include "goi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>

namespace goi {

std::string to_string(Index const& i) {
  std::ostringstream os;
  os << i;
  return os.str();
}

double tau_num() {
  static double const tol = [] {
    if (char const* env = std::getenv("GOI_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0.0 && std::isfinite(v))
        return v;
    }
    return 1e-9;
  }();
  return tol;
}

namespace {

void check_unique(std::vector<Index> const& carrier) {
  std::vector<Index> sorted = carrier;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end())
    throw CarrierError("duplicate carrier label " + to_string(*dup));
}

DenseOperator align_like(DenseOperator const& a, DenseOperator const& b) {
  if (a.carrier() == b.carrier())
    return b;
  if (!a.same_carrier_set(b))
    throw CarrierError("carrier mismatch");
  return b.aligned_to(a.carrier());
}

} // namespace

DenseOperator::DenseOperator(std::vector<Index> carrier)
    : carrier_(std::move(carrier)),
      entries_(carrier_.size() * carrier_.size(), cplx(0.0)) {
  check_unique(carrier_);
}

DenseOperator::DenseOperator(std::vector<Index> carrier,
                             std::vector<cplx> entries)
    : carrier_(std::move(carrier)), entries_(std::move(entries)) {
  check_unique(carrier_);
  if (entries_.size() != carrier_.size() * carrier_.size())
    throw CarrierError("entry count does not match carrier size");
}

DenseOperator DenseOperator::from_rows(
    std::initializer_list<std::initializer_list<cplx>> rows) {
  std::size_t n = rows.size();
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (auto const& row : rows) {
    if (row.size() != n)
      throw CarrierError("from_rows: matrix is not square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseOperator(natural_carrier(n), std::move(entries));
}

DenseOperator DenseOperator::identity(std::vector<Index> carrier) {
  DenseOperator result(std::move(carrier));
  for (std::size_t i = 0; i < result.size(); ++i)
    result(i, i) = 1.0;
  return result;
}

DenseOperator DenseOperator::diagonal(std::vector<cplx> const& diag) {
  DenseOperator result(natural_carrier(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i)
    result(i, i) = diag[i];
  return result;
}

std::optional<std::size_t> DenseOperator::position(Index label) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), label);
  if (it == carrier_.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - carrier_.begin());
}

bool DenseOperator::same_carrier_set(DenseOperator const& other) const {
  if (size() != other.size())
    return false;
  std::vector<Index> a = carrier_, b = other.carrier_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

DenseOperator DenseOperator::aligned_to(std::vector<Index> const& order) const {
  if (order.size() != size())
    throw CarrierError("alignment target has a different size");
  return restricted(order);
}

DenseOperator DenseOperator::restricted(std::vector<Index> const& sub) const {
  std::map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < size(); ++i)
    pos[carrier_[i]] = i;
  std::vector<std::size_t> idx;
  idx.reserve(sub.size());
  for (auto const& l : sub) {
    auto it = pos.find(l);
    if (it == pos.end())
      throw CarrierError("label " + to_string(l) + " not in carrier");
    idx.push_back(it->second);
  }
  DenseOperator result(sub);
  for (std::size_t i = 0; i < sub.size(); ++i)
    for (std::size_t j = 0; j < sub.size(); ++j)
      result(i, j) = (*this)(idx[i], idx[j]);
  return result;
}

DenseOperator DenseOperator::extended(std::vector<Index> const& super) const {
  std::map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < super.size(); ++i)
    pos[super[i]] = i;
  std::vector<std::size_t> idx;
  for (auto const& l : carrier_) {
    auto it = pos.find(l);
    if (it == pos.end())
      throw CarrierError("label " + to_string(l) + " missing from extension");
    idx.push_back(it->second);
  }
  DenseOperator result(super);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      result(idx[i], idx[j]) = (*this)(i, j);
  return result;
}

bool DenseOperator::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](cplx z) { return z == cplx(0.0); });
}

std::vector<Index> natural_carrier(std::size_t n) {
  std::vector<Index> c(n);
  for (std::size_t i = 0; i < n; ++i)
    c[i] = Index{i, 0};
  return c;
}

DenseOperator mat_mul(DenseOperator const& a, DenseOperator const& b_in) {
  DenseOperator b = align_like(a, b_in);
  std::size_t n = a.size();
  DenseOperator result(a.carrier());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cplx aik = a(i, k);
      if (aik == cplx(0.0))
        continue;
      for (std::size_t j = 0; j < n; ++j)
        result(i, j) += aik * b(k, j);
    }
  return result;
}

DenseOperator add(DenseOperator const& a, DenseOperator const& b_in) {
  DenseOperator b = align_like(a, b_in);
  std::vector<cplx> e(a.entries());
  for (std::size_t i = 0; i < e.size(); ++i)
    e[i] += b.entries()[i];
  return DenseOperator(a.carrier(), std::move(e));
}

DenseOperator sub(DenseOperator const& a, DenseOperator const& b) {
  return add(a, scale(b, -1.0));
}

DenseOperator scale(DenseOperator const& a, cplx s) {
  std::vector<cplx> e(a.entries());
  for (auto& z : e)
    z *= s;
  return DenseOperator(a.carrier(), std::move(e));
}

DenseOperator adjoint(DenseOperator const& a) {
  DenseOperator result(a.carrier());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      result(j, i) = std::conj(a(i, j));
  return result;
}

DenseOperator one_minus(DenseOperator const& a) {
  DenseOperator result = scale(a, -1.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    result(i, i) += 1.0;
  return result;
}

cplx trace(DenseOperator const& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    t += a(i, i);
  return t;
}

DenseOperator power(DenseOperator const& a, unsigned k) {
  DenseOperator result = DenseOperator::identity(a.carrier());
  DenseOperator base = a;
  while (k > 0) {
    if (k & 1u)
      result = mat_mul(result, base);
    k >>= 1u;
    if (k > 0)
      base = mat_mul(base, base);
  }
  return result;
}

double max_abs_diff(DenseOperator const& a, DenseOperator const& b_in) {
  DenseOperator b = align_like(a, b_in);
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

double frobenius_norm(DenseOperator const& a) {
  double s = 0.0;
  for (auto z : a.entries())
    s += std::norm(z);
  return std::sqrt(s);
}

double operator_norm(DenseOperator const& a) {
  std::size_t n = a.size();
  if (n == 0 || a.is_zero())
    return 0.0;
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

bool is_hermitian(DenseOperator const& a, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
        return false;
  return true;
}

bool is_projection(DenseOperator const& a, double tol) {
  return is_hermitian(a, tol) && max_abs_diff(mat_mul(a, a), a) <= tol;
}

bool is_partial_isometry(DenseOperator const& a, double tol) {
  DenseOperator aa = mat_mul(adjoint(a), a);
  return max_abs_diff(mat_mul(aa, aa), aa) <= tol;
}

bool is_normal(DenseOperator const& a, double tol) {
  DenseOperator as = adjoint(a);
  double scale_ = std::max(1.0, frobenius_norm(a) * frobenius_norm(a));
  return max_abs_diff(mat_mul(a, as), mat_mul(as, a)) <= tol * scale_;
}

bool is_weighted_partial_permutation(DenseOperator const& a, double tol) {
  std::size_t n = a.size();
  std::vector<int> col_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double m = std::abs(a(i, j));
      if (m <= tol)
        continue;
      if (std::abs(m - 1.0) > tol)
        return false;
      if (++row_count > 1 || ++col_count[j] > 1)
        return false;
    }
  }
  return true;
}

UnitGate SpectralReport::gate(double margin) const {
  if (exact_zero || upper < 1.0 - margin)
    return UnitGate::below;
  if (lower >= 1.0 - margin)
    return UnitGate::at_least;
  return UnitGate::straddle;
}

SpectralReport spectral_radius(DenseOperator const& a, double tol,
                               double settle_below) {
  SpectralReport rep;
  std::size_t n = a.size();
  if (n == 0 || a.is_zero()) {
    rep.exact_zero = true;
    rep.note = "zero operator";
    rep.upper_sequence.push_back(0.0);
    return rep;
  }
  rep.norm = operator_norm(a);

  // Repeated squaring with renormalization: c holds A^{2^k} / exp(logscale).
  DenseOperator c = a;
  double logscale = 0.0;
  double best = std::numeric_limits<double>::infinity();
  constexpr int kMaxSquarings = 48;
  for (int k = 0; k <= kMaxSquarings; ++k) {
    double f = frobenius_norm(c);
    if (f == 0.0) {
      rep.exact_zero = true;
      rep.note = "A^{2^" + std::to_string(k) + "} vanishes";
      break;
    }
    double est = std::exp((logscale + std::log(f)) / std::ldexp(1.0, k));
    double prev = best;
    best = std::min(best, est);
    rep.upper_sequence.push_back(best);
    if (k > 2 && prev - best <= tol * best)
      break;
    if (best < settle_below) {
      rep.settled = true;
      break;
    }
    c = scale(c, 1.0 / f);
    logscale = 2.0 * (logscale + std::log(f));
    c = mat_mul(c, c);
  }
  if (rep.exact_zero) {
    rep.upper_sequence.push_back(0.0);
    rep.note += "; nilpotent";
    return rep;
  }

  rep.upper = std::min(best, rep.norm);
  if (rep.settled) {
    rep.lower = std::min(
        std::pow(std::abs(plain_det(a)), 1.0 / static_cast<double>(n)), rep.upper);
    rep.note = "Gelfand upper bound settled below " + std::to_string(settle_below);
  } else if (is_weighted_partial_permutation(a)) {
    // Powers of a groupoid element are groupoid elements: norm 0 or 1.
    rep.lower = rep.upper = 1.0;
    rep.note = "groupoid element, not nilpotent";
  } else if (is_normal(a)) {
    rep.lower = rep.upper = rep.norm;
    rep.note = "normal operator, radius equals norm";
  } else {
    // rho >= (|tr A^k| / n)^{1/k} and rho >= |det A|^{1/n}.
    double lower = std::pow(std::abs(plain_det(a)), 1.0 / static_cast<double>(n));
    DenseOperator p = a;
    double plog = 0.0;
    std::size_t kmax = std::min<std::size_t>(2 * n, 64);
    for (std::size_t k = 1; k <= kmax; ++k) {
      double t = std::abs(trace(p));
      if (t > 0.0) {
        double lb = std::exp((plog + std::log(t) - std::log(static_cast<double>(n))) /
                             static_cast<double>(k));
        lower = std::max(lower, lb);
      }
      double f = frobenius_norm(p);
      if (f == 0.0)
        break;
      p = scale(p, 1.0 / f);
      plog += std::log(f);
      p = mat_mul(p, a);
    }
    rep.lower = std::min(lower, rep.upper);
    rep.note = "Gelfand upper bound, trace lower bound";
  }
  rep.spectral_radius = rep.upper;
  rep.error_bound = rep.upper - rep.lower;
  if (rep.lower < 1.0 && rep.upper >= 1.0)
    rep.note += "; bounds straddle 1";
  return rep;
}

namespace {

// In-place LU with partial pivoting; returns false on a tiny pivot.
bool lu_decompose(std::vector<cplx>& m, std::size_t n,
                  std::vector<std::size_t>& perm, int& sign, double pivot_tol) {
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    perm[i] = i;
  sign = 1;
  double scale_ = 0.0;
  for (auto z : m)
    scale_ = std::max(scale_, std::abs(z));
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k]) > best) {
        best = std::abs(m[i * n + k]);
        piv = i;
      }
    if (best <= pivot_tol * scale_ || best == 0.0) {
      ok = false;
      if (best == 0.0)
        continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m[k * n + j], m[piv * n + j]);
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    cplx d = m[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx f = m[i * n + k] / d;
      m[i * n + k] = f;
      if (f == cplx(0.0))
        continue;
      for (std::size_t j = k + 1; j < n; ++j)
        m[i * n + j] -= f * m[k * n + j];
    }
  }
  return ok;
}

} // namespace

cplx plain_det(DenseOperator const& a) {
  std::size_t n = a.size();
  std::vector<cplx> m = a.entries();
  std::vector<std::size_t> perm;
  int sign = 1;
  lu_decompose(m, n, perm, sign, 0.0);
  cplx det = static_cast<double>(sign);
  for (std::size_t k = 0; k < n; ++k)
    det *= m[k * n + k];
  return det;
}

std::optional<DenseOperator> solve(DenseOperator const& a,
                                   DenseOperator const& b_in,
                                   double pivot_tol) {
  DenseOperator b = align_like(a, b_in);
  std::size_t n = a.size();
  std::vector<cplx> m = a.entries();
  std::vector<std::size_t> perm;
  int sign = 1;
  if (!lu_decompose(m, n, perm, sign, pivot_tol))
    return std::nullopt;
  DenseOperator x(a.carrier());
  std::vector<cplx> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i)
      col[i] = b(perm[i], c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        col[i] -= m[i * n + j] * col[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j)
        col[ii] -= m[ii * n + j] * col[j];
      col[ii] /= m[ii * n + ii];
    }
    for (std::size_t i = 0; i < n; ++i)
      x(i, c) = col[i];
  }
  return x;
}

double fk_det(DenseOperator const& a,
              std::optional<std::vector<double>> const& weights) {
  std::size_t n = a.size();
  if (n == 0)
    return 1.0;
  std::vector<double> w;
  if (weights) {
    if (weights->size() != n)
      throw CarrierError("fk_det: weight vector does not match carrier");
    w = *weights;
  } else {
    w.assign(n, 1.0 / static_cast<double>(n));
  }
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::MatrixXcd aa = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(aa);
  if (es.info() != Eigen::Success)
    throw NumericError("fk_det: eigendecomposition failed");
  auto const& ev = es.eigenvalues();
  auto const& vecs = es.eigenvectors();
  double top = ev.maxCoeff();
  if (top <= 0.0)
    return 0.0;
  // log|a| = V diag(log(sigma)) V*, sigma^2 the eigenvalues of a*a.
  double log_det = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      mass += w[i] * std::norm(vecs(static_cast<Eigen::Index>(i), k));
    if (mass == 0.0)
      continue;
    if (ev(k) <= 1e-28 * top)
      return 0.0;
    log_det += mass * 0.5 * std::log(ev(k));
  }
  return std::exp(log_det);
}

DenseOperator direct_sum(DenseOperator const& a, DenseOperator const& b) {
  std::vector<Index> carrier = a.carrier();
  carrier.insert(carrier.end(), b.carrier().begin(), b.carrier().end());
  DenseOperator result(carrier); // throws on overlap
  std::size_t na = a.size();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      result(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      result(na + i, na + j) = b(i, j);
  return result;
}

DenseOperator tensor(DenseOperator const& a, DenseOperator const& b) {
  std::size_t na = a.size(), nb = b.size();
  DenseOperator result(natural_carrier(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      cplx aij = a(i, j);
      if (aij == cplx(0.0))
        continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          result(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return result;
}

} // namespace goi
