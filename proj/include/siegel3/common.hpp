#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace s3 {

// Floating backend for the analytic layers. Build with -DS3_LONG_DOUBLE=ON to
// switch every analytic routine to long double.
#ifdef S3_LONG_DOUBLE
using real = long double;
#else
using real = double;
#endif
using cplx = std::complex<real>;

inline constexpr real kPi = std::numbers::pi_v<real>;
inline constexpr cplx kI{0, 1};

// Error hierarchy. Everything thrown by the library derives from s3::Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotPositiveDefinite : Error { using Error::Error; };
struct SingularDenominator : Error { using Error::Error; };
struct BranchCut : Error { using Error::Error; };
struct Pole : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct PreconditionViolation : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct Diverged : Error { using Error::Error; };
struct NotCoprimePair : Error { using Error::Error; };
struct CompletionFailure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct NonReducedKey : Error { using Error::Error; };
struct DuplicateKey : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };

// Compensated (Neumaier) summation for long lattice sums.
template <class T>
class KahanSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <>
inline void KahanSum<cplx>::add(cplx x) {
  auto step = [](real& s, real& c, real v) {
    real t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  };
  real sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
  step(sr, cr, x.real());
  step(si, ci, x.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

}  // namespace s3
