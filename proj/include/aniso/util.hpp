#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace aniso {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// C-infinity smoothstep: 0 for t <= 0, 1 for t >= 1, strictly increasing in
// between, every derivative vanishes at both endpoints.
double smoothstep(double t);

// Inverse of smoothstep restricted to [0, 1].
double smoothstep_inv(double s);

// (sum_k v_k^p)^(1/p) over nonnegative values, max-scaled so that p < 1 and
// widely spread magnitudes stay in range. p = kInf gives the maximum.
double lp_aggregate(const double* v, std::size_t n, double p);
double lp_aggregate(const std::vector<double>& v, double p);

// (sum_k v_k^p * cell)^(1/p) for p < inf, max_k v_k for p = inf.
double lp_cell_integral(const std::vector<double>& v, double p, double cell);

// Deterministic uniforms/normals built directly on the mt19937_64 stream, so
// results do not depend on the standard library's distribution internals.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double a, double b);
double normal(std::mt19937_64& rng);
Eigen::VectorXd normal_vector(std::mt19937_64& rng, int d);
Eigen::VectorXd unit_vector(std::mt19937_64& rng, int d);

// Deterministic direction sets covering the unit sphere: evenly spaced angles
// for d = 2, a Fibonacci sphere for d = 3, seeded uniform directions above.
std::vector<Eigen::VectorXd> direction_set(int d, int n, std::uint64_t seed = 71u);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace aniso
