#pragma once

#include <stdexcept>
#include <string>

namespace mtype {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric axiom failures carry the offending index triple (unused slots are npos).
struct MetricViolation : Error {
  enum class Kind { Symmetry, Diagonal, Triangle, CoincidentPoints };
  Kind kind;
  std::size_t i, j, k;
  MetricViolation(Kind kind_, std::size_t i_, std::size_t j_, std::size_t k_,
                  const std::string& msg)
      : Error(msg), kind(kind_), i(i_), j(j_), k(k_) {}
};

struct InvalidExponent : Error {
  using Error::Error;
};
struct InvalidScale : Error {
  using Error::Error;
};
struct NotIsometries : Error {
  using Error::Error;
};
struct NotAGroup : Error {
  using Error::Error;
};
struct Disconnected : Error {
  using Error::Error;
};
struct NotSurjective : Error {
  using Error::Error;
};

struct NotStochastic : Error {
  enum class Which { Vector, Matrix };
  Which which;
  NotStochastic(Which which_, const std::string& msg) : Error(msg), which(which_) {}
};

struct NotReversible : Error {
  std::size_t i, j;
  NotReversible(std::size_t i_, std::size_t j_, const std::string& msg)
      : Error(msg), i(i_), j(j_) {}
};

struct IndexOutOfRange : Error {
  using Error::Error;
};
struct ZeroMassState : Error {
  using Error::Error;
};
struct DegenerateWalk : Error {
  using Error::Error;
};
struct AsymmetricE : Error {
  using Error::Error;
};
struct NotRegular : Error {
  using Error::Error;
};
struct SpaceMismatch : Error {
  using Error::Error;
};
struct NotCovering : Error {
  using Error::Error;
};

struct HypothesisViolated : Error {
  std::string hypothesis;
  HypothesisViolated(std::string hypothesis_, const std::string& msg)
      : Error(msg), hypothesis(std::move(hypothesis_)) {}
};

struct LengthMismatch : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct ResolutionTooLarge : Error {
  using Error::Error;
};
struct IsolatedState : Error {
  using Error::Error;
};
struct TooManyParameters : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};

}  // namespace mtype
