#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "udg/sat.hpp"

namespace udg {

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { sat, unsat };

struct SolveResult {
  Verdict verdict = Verdict::unsat;
  /// Index = variable (entry 0 unused). Empty for UNSAT.
  std::vector<bool> model;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual SolveResult solve(const CnfFormula& f) const = 0;
  virtual std::string name() const = 0;
};

/// In-process CDCL: two watched literals, first-UIP learning, VSIDS,
/// phase saving, Luby restarts. No preprocessing.
class EmbeddedBackend final : public SolverBackend {
 public:
  /// conflict_limit 0 means unlimited; hitting the limit throws BackendError.
  explicit EmbeddedBackend(std::uint64_t conflict_limit = 0) : conflict_limit_(conflict_limit) {}
  SolveResult solve(const CnfFormula& f) const override;
  std::string name() const override { return "embedded"; }

 private:
  std::uint64_t conflict_limit_;
};

/// Runs `<executable> <file.cnf>` and reads SAT-competition output
/// (`s SATISFIABLE` / `s UNSATISFIABLE`, `v` lines). At most `max_processes`
/// solver processes run at once across all callers of this object.
class ExternalBackend final : public SolverBackend {
 public:
  explicit ExternalBackend(std::string executable, int max_processes = 1);
  ~ExternalBackend() override;
  SolveResult solve(const CnfFormula& f) const override;
  std::string name() const override { return "external:" + executable_; }

 private:
  struct Pool;
  std::string executable_;
  std::unique_ptr<Pool> pool_;
};

/// "embedded", or "external[:path]". Without a path the executable comes
/// from the UDG_SOLVER environment variable.
std::shared_ptr<const SolverBackend> make_backend(const std::string& spec, int max_processes = 1);
std::shared_ptr<const SolverBackend> default_backend();

/// Solves with `backend` (default: embedded) and checks any returned model
/// against the formula; a model that fails the check is a BackendError.
SolveResult solve(const CnfFormula& f, const SolverBackend* backend = nullptr);

}  // namespace udg
