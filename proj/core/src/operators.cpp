#include "wcop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "numeric_util.hpp"
#include "wcop/errors.hpp"
#include "wcop/fft.hpp"

namespace wcop {
namespace {

constexpr int kLanczosMaxSteps = 300;
constexpr int kLanczosCheckEvery = 5;
constexpr double kLanczosTol = 1e-13;
constexpr long kGramEntryBudget = 1L << 24;
constexpr double kGramTailEnergy = 1e-26;

void check_order(int order) {
  if (order < 1) throw ParameterError("truncation order must be >= 1");
  if (order > kMaxDenseOrder)
    throw ResourceLimit("truncation order " + std::to_string(order) + " exceeds " +
                        std::to_string(kMaxDenseOrder));
}

std::vector<cplx> padded_spectrum(const PowerSeries& s, std::size_t length) {
  std::vector<cplx> buf(length);
  std::copy(s.coeffs().begin(), s.coeffs().end(), buf.begin());
  fft::forward(buf);
  return buf;
}

// Coefficients 0..rows of h phi^k for k = 0..cols, by iterated FFT products.
Eigen::MatrixXcd power_columns(const PowerSeries& hs, const PowerSeries& ps, int rows, int cols) {
  const std::size_t length = fft::next_power_of_two(2 * (static_cast<std::size_t>(rows) + 1));
  const auto h_hat = padded_spectrum(hs, length);
  const auto phi_hat = padded_spectrum(ps, length);
  const double inv = 1.0 / static_cast<double>(length);

  Eigen::MatrixXcd a(rows + 1, cols + 1);
  std::vector<cplx> power(rows + 1);  // phi^k truncated at rows
  power[0] = 1.0;
  std::vector<cplx> buf(length), col(length);
  for (int k = 0; k <= cols; ++k) {
    std::fill(buf.begin(), buf.end(), cplx{});
    std::copy(power.begin(), power.end(), buf.begin());
    fft::forward(buf);
    for (std::size_t i = 0; i < length; ++i) col[i] = buf[i] * h_hat[i];
    fft::backward(col);
    for (int m = 0; m <= rows; ++m) a(m, k) = col[m] * inv;
    if (k == cols) break;
    for (std::size_t i = 0; i < length; ++i) buf[i] *= phi_hat[i];
    fft::backward(buf);
    for (int m = 0; m <= rows; ++m) power[m] = buf[m] * inv;
  }
  return a;
}

}  // namespace

const char* to_string(TraceFlag f) {
  switch (f) {
    case TraceFlag::Converged: return "CONVERGED";
    case TraceFlag::Divergent: return "DIVERGENT";
    case TraceFlag::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

TruncationMatrix::TruncationMatrix(SpaceSpec space, Eigen::MatrixXcd entries,
                                   std::vector<double> column_tail)
    : space_(space),
      entries_(std::move(entries)),
      column_tail_(std::move(column_tail)),
      cache_(std::make_shared<Cache>()) {
  if (!entries_.allFinite()) throw ParameterError("operator matrix has non-finite entries");
}

const std::vector<double>& TruncationMatrix::singular_values() const {
  std::call_once(cache_->once, [&] { cache_->values = wcop::singular_values(entries_); });
  return cache_->values;
}

std::vector<double> singular_values(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  std::vector<double> v(s.data(), s.data() + s.size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

TruncationMatrix build_operator_matrix(const FunctionSpec& h, const FunctionSpec& phi,
                                       const SpaceSpec& space, int order) {
  check_order(order);
  require_self_map(phi);
  const int n = order;
  const auto beta = monomial_norms_sq(space, n);
  Eigen::MatrixXcd a = power_columns(taylor_coefficients(h, n), taylor_coefficients(phi, n), n, n);
  std::vector<double> tail(n + 1, 0.0);
  const int top = (3 * n) / 4;
  for (int k = 0; k <= n; ++k) {
    const double sk = std::sqrt(beta[k]);
    double total = 0.0, upper = 0.0;
    for (int m = 0; m <= n; ++m) {
      a(m, k) *= std::sqrt(beta[m]) / sk;
      total += std::norm(a(m, k));
      if (m > top) upper += std::norm(a(m, k));
    }
    tail[k] = total > 0.0 ? std::sqrt(upper / total) : 0.0;
  }
  return TruncationMatrix(space, std::move(a), std::move(tail));
}

std::vector<double> leading_singular_values(const TruncationMatrix& mat, int k) {
  const auto& a = mat.entries();
  const Eigen::Index n = a.cols();
  k = std::clamp<int>(k, 1, static_cast<int>(n));
  const int max_steps = std::min<int>(static_cast<int>(n), kLanczosMaxSteps);

  std::mt19937_64 rng(0x5eed'c0ffeeULL);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd q(n);
  for (Eigen::Index i = 0; i < n; ++i) q[i] = cplx(gauss(rng), gauss(rng));
  q.normalize();

  Eigen::MatrixXcd basis(n, max_steps + 1);
  std::vector<double> alpha, beta;
  basis.col(0) = q;
  Eigen::VectorXd prev;
  Eigen::VectorXd theta;

  auto ritz = [&](int m) {
    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                              : Eigen::VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = es.eigenvalues().reverse();  // descending
    return ev;
  };

  int steps = 0;
  for (int j = 0; j < max_steps; ++j) {
    Eigen::VectorXcd v = a.adjoint() * (a * basis.col(j));
    const double aj = basis.col(j).dot(v).real();
    alpha.push_back(aj);
    steps = j + 1;
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass) {
      const auto qb = basis.leftCols(j + 1);
      v -= qb * (qb.adjoint() * v);
    }
    const double bj = v.norm();
    const bool done = bj <= 1e-14 * std::max(1.0, std::abs(alpha.front()));
    if (done || j + 1 == max_steps) break;
    beta.push_back(bj);
    basis.col(j + 1) = v / bj;
    if (steps >= k && steps % kLanczosCheckEvery == 0) {
      theta = ritz(steps);
      if (prev.size() >= k) {
        const double scale = std::max(std::abs(theta[0]), 1e-300);
        bool converged = true;
        for (int i = 0; i < k; ++i)
          if (std::abs(theta[i] - prev[i]) > kLanczosTol * scale) converged = false;
        if (converged) break;
      }
      prev = theta;
    }
  }
  theta = ritz(steps);
  std::vector<double> out;
  for (int i = 0; i < k; ++i)
    out.push_back(i < theta.size() ? std::sqrt(std::max(theta[i], 0.0)) : 0.0);
  return out;
}

double operator_norm_estimate(const TruncationMatrix& a) {
  return leading_singular_values(a, 1).front();
}

SchattenEstimate schatten_norm(const TruncationMatrix& a, double p, const TraceRule& rule) {
  if (!(p >= 1.0)) throw ParameterError("Schatten exponent needs p >= 1");
  const int n = a.order();
  SchattenEstimate est;
  est.p = p;
  std::vector<int> cols = {n / 4 + 1, n / 2 + 1, n + 1};
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  for (int c : cols) {
    const auto s = c == n + 1 ? a.singular_values() : singular_values(a.entries().leftCols(c));
    std::vector<double> terms;
    terms.reserve(s.size());
    for (double x : s) terms.push_back(std::pow(x, p));
    std::sort(terms.begin(), terms.end());
    est.truncation_trace.push_back({c, std::pow(detail::pairwise_sum<double>(terms), 1.0 / p)});
  }
  const auto& tr = est.truncation_trace;
  est.value = tr.back().value;
  if (tr.size() >= 2) {
    est.cauchy_gap = std::abs(tr.back().value - tr[tr.size() - 2].value);
    // growth over the whole trace wins: a flat tail can come from columns
    // whose mass has left the truncation
    if (tr.front().value > 0.0 && tr.back().value / tr.front().value >= rule.growth) {
      est.flag = TraceFlag::Divergent;
      est.infinite = true;
    } else if (est.cauchy_gap < rule.cauchy_gap) {
      est.flag = TraceFlag::Converged;
    }
  }
  return est;
}

double adjoint_kernel_check(const TruncationMatrix& a, const FunctionSpec& h,
                            const FunctionSpec& phi, cplx w) {
  if (!(std::abs(w) <= 0.9 + 1e-15))
    throw PreconditionError("adjoint kernel check needs |w| <= 0.9");
  const int n = a.order();
  const auto beta = monomial_norms_sq(a.space(), n);
  const cplx pw = eval(phi, w);
  const cplx hw = eval(h, w);
  Eigen::VectorXcd kw(n + 1), kp(n + 1);
  cplx x = 1.0, y = 1.0;
  for (int m = 0; m <= n; ++m) {
    const double s = 1.0 / std::sqrt(beta[m]);
    kw[m] = x * s;
    kp[m] = y * s;
    x *= std::conj(w);
    y *= std::conj(pw);
  }
  const Eigen::VectorXcd r = a.entries().adjoint() * kw - std::conj(hw) * kp;
  return r.norm() / kw.norm();
}

Eigen::MatrixXcd gram_moments(const TruncationMatrix& a) {
  const int n = a.order();
  const auto beta = monomial_norms_sq(a.space(), n);
  Eigen::VectorXd d(n + 1);
  for (int m = 0; m <= n; ++m) d[m] = std::sqrt(beta[m]);
  Eigen::MatrixXcd g = a.entries().adjoint() * a.entries();
  g = d.asDiagonal() * g * d.asDiagonal();
  // Symmetrize away roundoff.
  return (0.5 * (g + g.adjoint())).eval();
}

Eigen::MatrixXcd gram_moments(const FunctionSpec& h, const FunctionSpec& phi,
                              const SpaceSpec& space, int order) {
  check_order(order);
  require_self_map(phi);
  const int n = order;
  // h phi^n spreads past degree n; grow the row count until the last column
  // has no energy left in its top quarter, within a fixed memory budget
  const long budget = std::max<long>(4L * (n + 1), kGramEntryBudget / (n + 1));
  int rows = std::max(4 * n, 64);
  Eigen::MatrixXcd c;
  std::vector<double> beta;
  while (true) {
    beta = monomial_norms_sq(space, rows);
    c = power_columns(taylor_coefficients(h, rows), taylor_coefficients(phi, rows), rows, n);
    double total = 0.0, upper = 0.0;
    for (int m = 0; m <= rows; ++m) {
      const double e = std::norm(c(m, n)) * beta[m];
      total += e;
      if (m > (3 * rows) / 4) upper += e;
    }
    if (!(total > 0.0) || upper <= kGramTailEnergy * total || 2L * rows > budget) break;
    rows *= 2;
  }
  Eigen::VectorXd d(rows + 1);
  for (int m = 0; m <= rows; ++m) d[m] = std::sqrt(beta[m]);
  const Eigen::MatrixXcd w = d.asDiagonal() * c;
  Eigen::MatrixXcd g = w.adjoint() * w;
  return (0.5 * (g + g.adjoint())).eval();
}

}  // namespace wcop
