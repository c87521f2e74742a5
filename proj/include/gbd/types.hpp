#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbd {

using BinaryVector = std::vector<std::uint8_t>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Sentinel for the master objective when no optimality cut exists yet.
// The engine treats a lower bound at this value as "minus infinity".
inline constexpr double kEtaFloor = -1e12;

// Tolerance under which a feasibility cut (value <= 0) counts as satisfied.
inline constexpr double kFeasTol = 1e-9;

enum class CutKind { Optimality, Feasibility };

// One affine inequality coeff . y <= rhs over the binary vector y.
struct LinearConstraint {
  std::vector<double> coeff;
  double rhs = 0.0;

  double lhs_at(const BinaryVector& y) const {
    double v = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j)
      if (y[j]) v += coeff[j];
    return v;
  }
};

// An optimality cut encodes eta >= coeff_y . y + const_term, a feasibility
// cut encodes 0 >= coeff_y . y + const_term.
struct Cut {
  CutKind kind = CutKind::Optimality;
  std::vector<double> coeff_y;
  double const_term = 0.0;
  int gen_iteration = 1;  // depth i of the iteration that produced the cut
  int gen_order = 1;      // pool rank s of the generating solution
  BinaryVector gen_y;     // the discrete solution that produced the cut
  int repeat_count = 0;   // prior generations from the same y in this run
  double violation = 0.0; // cut value at the generating (y, eta)

  double value_at(const BinaryVector& y) const {
    double v = const_term;
    for (std::size_t j = 0; j < coeff_y.size(); ++j)
      if (y[j]) v += coeff_y[j];
    return v;
  }
};

struct CutLogEntry {
  Cut cut;
  bool kept = true;           // entered the master
  bool judged_useful = true;  // filter verdict (kept may differ on fallback)
  double gen_eta = kEtaFloor; // master objective of the generating solution
};

struct CutLog {
  std::vector<CutLogEntry> entries;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The discrete set Y is empty, or every member was excluded by feasibility
// cuts: the original problem has no feasible discrete assignment.
struct NoFeasibleDiscreteError : Error {
  using Error::Error;
};

// The lower bound never left the floor sentinel within the iteration cap.
struct UnboundedError : Error {
  using Error::Error;
};

struct MasterInfeasibleError : Error {
  using Error::Error;
};

struct TooLargeError : Error {
  using Error::Error;
};

struct ModelMismatchError : Error {
  using Error::Error;
};

struct DualityGapError : Error {
  using Error::Error;
};

struct SingleClassError : Error {
  using Error::Error;
};

inline std::string binary_to_string(const BinaryVector& y) {
  std::string s(y.size(), '0');
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i]) s[i] = '1';
  return s;
}

}  // namespace gbd
