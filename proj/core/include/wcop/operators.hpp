#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "wcop/functions.hpp"
#include "wcop/spaces.hpp"

namespace wcop {

/// Largest truncation order handled by dense decompositions.
inline constexpr int kMaxDenseOrder = 4096;

/// Matrix of W_{h,phi} = T_h C_phi against normalized monomials
/// e_n = z^n / ||z^n||, orders 0..N. Entries are immutable; singular values
/// are computed on first request and shared between copies.
class TruncationMatrix {
 public:
  TruncationMatrix(SpaceSpec space, Eigen::MatrixXcd entries, std::vector<double> column_tail);

  const SpaceSpec& space() const { return space_; }
  int order() const { return static_cast<int>(entries_.cols()) - 1; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  /// Relative energy of column n in its top quarter of rows (3N/4, N].
  /// Large values mean the column is not resolved by the truncation.
  const std::vector<double>& column_tail() const { return column_tail_; }

  /// Full set, nonincreasing (BDCSVD).
  const std::vector<double>& singular_values() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<double> values;
  };
  SpaceSpec space_;
  Eigen::MatrixXcd entries_;
  std::vector<double> column_tail_;
  std::shared_ptr<Cache> cache_;
};

/// Column n holds the coefficients of h phi^n, built by iterated products
/// phi^n = phi^{n-1} phi, rescaled to sqrt(||z^m||^2 / ||z^n||^2).
/// Throws PreconditionError for non-self-maps, ParameterError for N < 1 and
/// ResourceLimit beyond kMaxDenseOrder.
TruncationMatrix build_operator_matrix(const FunctionSpec& h, const FunctionSpec& phi,
                                       const SpaceSpec& space, int order);

/// Singular values of an arbitrary dense block, nonincreasing.
std::vector<double> singular_values(const Eigen::MatrixXcd& a);

/// Leading k singular values by Lanczos on A*A with full
/// reorthogonalization and a fixed start vector.
std::vector<double> leading_singular_values(const TruncationMatrix& a, int k);

/// sigma_max of the truncation.
double operator_norm_estimate(const TruncationMatrix& a);

enum class TraceFlag { Converged, Divergent, Inconclusive };
const char* to_string(TraceFlag f);

struct TracePoint {
  int columns = 0;  // leading columns kept (N/4 + 1, N/2 + 1, N + 1)
  double value = 0.0;
};

struct SchattenEstimate {
  double p = 1.0;
  double value = 0.0;
  bool infinite = false;  // set when the trace is flagged divergent
  std::vector<TracePoint> truncation_trace;
  TraceFlag flag = TraceFlag::Inconclusive;
  double cauchy_gap = 0.0;
};

struct TraceRule {
  double cauchy_gap = 1e-6;
  double growth = 1.1;
};

/// (sum sigma_i^p)^{1/p} of the leading column blocks of A. The blocks are
/// compressions of each other so the trace is nondecreasing.
/// Throws ParameterError for p < 1.
SchattenEstimate schatten_norm(const TruncationMatrix& a, double p, const TraceRule& rule = {});

/// ||A* kappa_w - conj(h(w)) kappa_{phi(w)}|| / ||kappa_w|| with kappa the
/// kernel in normalized-monomial coordinates. Requires |w| <= 0.9.
double adjoint_kernel_check(const TruncationMatrix& a, const FunctionSpec& h,
                            const FunctionSpec& phi, cplx w);

/// G_{m,n} = <h phi^n, h phi^m> = int conj(z)^m z^n dmu. The FunctionSpec form
/// resolves h phi^n past degree N; the matrix form reads the truncation as is.
Eigen::MatrixXcd gram_moments(const FunctionSpec& h, const FunctionSpec& phi,
                              const SpaceSpec& space, int order);
Eigen::MatrixXcd gram_moments(const TruncationMatrix& a);

}  // namespace wcop
