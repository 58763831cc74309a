#pragma once

#include <array>
#include <string>
#include <vector>

#include "lpt/besov.hpp"
#include "lpt/field.hpp"

namespace lpt {

/// Nonnegative point masses on the torus.
struct DiscreteMeasure {
  int dim = 1;
  std::vector<std::array<double, 2>> points;  // (x, y); y = 0 when dim == 1
  std::vector<double> masses;                 // strictly positive entries

  std::size_t size() const { return masses.size(); }
  double total() const;
};

/// Concave logarithmic cost c_delta(z) = log(z/delta + 1); delta > 0.
double log_cost(double z, double delta);

/// Geodesic torus distance (coordinate-wise wrap, Euclidean combination).
double torus_distance(const std::array<double, 2>& a, const std::array<double, 2>& b,
                      int dim);

/// Positive/negative part split of a mean-free field into measures weighted
/// by cell volume; the negative side is rescaled multiplicatively so the
/// totals match.  Throws on identically-zero fields and on fields whose
/// parts are visibly unbalanced (non-mean-free input).
struct SignedSplit {
  DiscreteMeasure positive;
  DiscreteMeasure negative;
  double imbalance = 0.0;  // relative mass mismatch before rescaling
};
SignedSplit signed_split(const PhysicalField& theta);

struct TransportPlan {
  std::size_t rows = 0, cols = 0;
  struct Entry {
    int i, j;
    double mass;
  };
  std::vector<Entry> entries;
};

struct OTResult {
  double cost = 0.0;
  TransportPlan plan;
  /// Kantorovich potential (d_delta-Lipschitz for the exact method),
  /// evaluated on source and target support points.
  std::vector<double> potential_source;
  std::vector<double> potential_target;
  double duality_gap = 0.0;
  double marginal_violation = 0.0;
  std::string method;
};

/// Exact minimum of sum c_delta(dist(x_i, y_j)) pi(i,j) over couplings,
/// solved by a transportation network simplex on the dense bipartite graph.
/// Requires equal totals (to 1e-9 relative) and combined support <= 4096.
OTResult exact_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double delta);

struct SinkhornOptions {
  long max_iterations = 200000;
  double tolerance = 1e-10;  // max absolute marginal violation (unit total mass)
};

/// Entropically regularized approximation via log-domain alternating scaling.
OTResult entropic_ot(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double delta, double epsilon, const SinkhornOptions& = {});

struct KROptions {
  bool entropic = false;
  double epsilon = 1e-2;
  std::size_t max_support = 2048;  // per measure; box-coarsen beyond this
};

struct KRResult {
  double value = 0.0;
  std::string method;
  double coarsen_radius = 0.0;  // 0 when no aggregation was applied
  std::size_t support_positive = 0;
  std::size_t support_negative = 0;
  double duality_gap = 0.0;
};

/// D_delta(theta1 - theta2) = D_delta((theta1-theta2)^+, (theta1-theta2)^-).
KRResult kr_distance(const PhysicalField& theta1, const PhysicalField& theta2,
                     double delta, const KROptions& options = {});

/// Mass-preserving box aggregation onto a boxes^d partition (mass-weighted
/// centroids).
DiscreteMeasure coarsen_measure(const DiscreteMeasure& m, int boxes_per_axis);

/// ||sigma||_{L1} <= C ( D_delta(sigma)/c_delta(1/l) + log^{-a} l ||sigma||_B ).
struct TransportInterpolationReport {
  double l1_norm = 0.0;
  double kr_value = 0.0;
  double transport_term = 0.0;  // D_delta / c_delta(1/l)
  double besov_term = 0.0;      // log^{-a} l * ||sigma||_B
  double min_constant = 0.0;
};
TransportInterpolationReport check_l1_transport_interpolation(
    const PhysicalField& sigma, double a, double ell, double delta,
    const LPFamily& fam, const KROptions& options = {});

}  // namespace lpt
