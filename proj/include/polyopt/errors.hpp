#pragma once

#include <stdexcept>
#include <string>

namespace polyopt {

/// Malformed arguments to a public operation.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inverse requested of a non-unit (series with zero constant term, etc.).
class SingularElement : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal invariant that the construction guarantees was violated.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The pipeline stage that rejected the random separating form.
enum class Stage {
  kInitialResolution,
  kLifting,
  kReconstruction,
  kSpecialization,
  kVerification,
  kComparison,
};

const char* stage_name(Stage stage);

/// Base for every failure that a fresh random linear form may cure.
class GenericityFailure : public std::runtime_error {
 public:
  GenericityFailure(Stage stage, const std::string& what)
      : std::runtime_error(std::string(stage_name(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

class SeparationFailure : public GenericityFailure {
 public:
  explicit SeparationFailure(const std::string& what, Stage stage = Stage::kInitialResolution)
      : GenericityFailure(stage, what) {}
};

class LiftingFailure : public GenericityFailure {
 public:
  explicit LiftingFailure(const std::string& what) : GenericityFailure(Stage::kLifting, what) {}
};

class ReconstructionFailure : public GenericityFailure {
 public:
  explicit ReconstructionFailure(const std::string& what)
      : GenericityFailure(Stage::kReconstruction, what) {}
};

class DegenerateSpecialization : public GenericityFailure {
 public:
  explicit DegenerateSpecialization(const std::string& what)
      : GenericityFailure(Stage::kSpecialization, what) {}
};

/// Every retry of the run failed a genericity check.
class RetriesExhausted : public std::runtime_error {
 public:
  RetriesExhausted(int attempts, const std::string& last)
      : std::runtime_error("genericity failure after " + std::to_string(attempts) +
                           " attempt(s); last: " + last),
        attempts_(attempts) {}
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

/// No candidate produced a point of E.
class NoFeasibleCriticalPoint : public std::runtime_error {
 public:
  NoFeasibleCriticalPoint(int retries, const std::string& what)
      : std::runtime_error(what), retries_(retries) {}
  int retries() const noexcept { return retries_; }

 private:
  int retries_;
};

}  // namespace polyopt
