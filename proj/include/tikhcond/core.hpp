#pragma once
// Shared aliases, the error taxonomy, and default numerical tolerances.

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tikhcond {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorKind {
  InvalidArgument,
  RankDeficient,
  DegenerateStructure,
  NotInClass,
  UnsupportedForNonlinear,
  BasisMismatch,
  SizeCap,
  ZeroOperator,
  ZeroDenominator,
  MNotSingleRow,
  DegenerateSamples,
  UnknownExample,
  BadDimension,
  PerturbedRankDeficient,
  SingularShift,
  NumericalFailure,
  Io,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateStructure: return "DegenerateStructure";
    case ErrorKind::NotInClass: return "NotInClass";
    case ErrorKind::UnsupportedForNonlinear: return "UnsupportedForNonlinear";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::ZeroOperator: return "ZeroOperator";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::MNotSingleRow: return "MNotSingleRow";
    case ErrorKind::DegenerateSamples: return "DegenerateSamples";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::PerturbedRankDeficient: return "PerturbedRankDeficient";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

// All tolerances are relative.
struct Tolerances {
  double rank = 1e-10;        // smallest/largest singular value cutoff
  double gsvd = 1e-11;        // factorization residual budget
  double solve = 1e-10;       // normal-equation residual budget
  double struct_fit = 1e-8;   // membership residual for parameter recovery
};

// Entries with magnitude below this are treated as exact zeros by the
// componentwise 0/0 convention.
inline constexpr double kZeroFloor = 1e-300;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace tikhcond
