#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "paretolab/landscape.hpp"

// Scalarizing functionals use the minimization convention: smaller is better.
// scalarize_landscape bridges to the maximized landscape objectives.

namespace paretolab {

/// One inequality <a, y> <= alpha.
struct HalfSpace {
  std::vector<double> a;
  double alpha = 0.0;
};

/// A_L = { y : <a^i, y> <= alpha_i for every row i }.
class PolyhedralSet {
 public:
  explicit PolyhedralSet(std::vector<HalfSpace> rows);

  std::size_t dimension() const noexcept { return rows_.front().a.size(); }
  const std::vector<HalfSpace>& rows() const noexcept { return rows_; }
  bool contains(std::span<const double> y, double tolerance = 0.0) const;

 private:
  std::vector<HalfSpace> rows_;
};

/// phi(y) = inf { t : y in t*k + w + A_L }, evaluated as
/// max_i (<a^i, y> - <a^i, w> - alpha_i) / <a^i, k>. Requires <a^i, k> > 0.
class GeneralScalarizer {
 public:
  GeneralScalarizer(PolyhedralSet set, std::vector<double> w, std::vector<double> k);

  const PolyhedralSet& set() const noexcept { return set_; }
  const std::vector<double>& reference() const noexcept { return w_; }
  const std::vector<double>& direction() const noexcept { return k_; }

  double operator()(std::span<const double> y) const;

 private:
  PolyhedralSet set_;
  std::vector<double> w_;
  std::vector<double> k_;
  std::vector<double> offset_;  // <a^i, w> + alpha_i
  std::vector<double> scale_;   // <a^i, k>
};

double phi_general(const GeneralScalarizer& s, std::span<const double> y);

/// max_i lambda_i (y_i - w_i), lambda > 0.
double chebyshev(std::span<const double> y, std::span<const double> lambda, std::span<const double> w);
/// <a, y>, a >= 0 and a != 0.
double weighted_sum(std::span<const double> y, std::span<const double> a);
/// y_j if y_i <= eps_i for all i != j, otherwise nullopt (infeasible).
/// eps lists the m-1 bounds for the other objectives in index order.
std::optional<double> epsilon_constraint(std::span<const double> y, std::size_t j, std::span<const double> eps);
/// min { t : y in t*k + a - R^m_+ } = max_i (y_i - a_i) / k_i, k > 0.
double pascoletti_serafini(std::span<const double> y, std::span<const double> a, std::span<const double> k);

/// phi_general forms of the named functionals.
GeneralScalarizer chebyshev_as_general(std::span<const double> lambda, std::span<const double> w);
GeneralScalarizer weighted_sum_as_general(std::span<const double> a);
GeneralScalarizer pascoletti_serafini_as_general(std::span<const double> a, std::span<const double> k);

/// A functional on objective vectors; non-finite values mark infeasible points.
using Functional = std::function<double(std::span<const double>)>;

enum class Sense {
  Minimize,  // argmin functional(-f(x)), the minimization frame
  Maximize,  // argmax functional(f(x))
};

struct ScalarizeResult {
  Solution solution;
  ObjectiveVector objectives;
  double value;
};

/// Exhaustive scan over all 2^n solutions. Ties go to the smallest bit string.
/// Throws DomainError if every solution is infeasible.
ScalarizeResult scalarize_landscape(const NkInstance& inst, const Functional& functional, Sense sense = Sense::Minimize);
ScalarizeResult scalarize_landscape_serial(const NkInstance& inst, const Functional& functional,
                                           Sense sense = Sense::Minimize);

}  // namespace paretolab
