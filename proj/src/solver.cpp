#include "udg/solver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

namespace udg {

namespace {

// Literal encoding: 2*v for x_v, 2*v+1 for ¬x_v (v 0-based).
inline int neg(int l) { return l ^ 1; }
inline int var_of(int l) { return l >> 1; }

class Cdcl {
 public:
  explicit Cdcl(int nvars)
      : n_(nvars),
        value_(static_cast<std::size_t>(nvars), -1),
        level_(static_cast<std::size_t>(nvars), 0),
        reason_(static_cast<std::size_t>(nvars), -1),
        phase_(static_cast<std::size_t>(nvars), 0),
        activity_(static_cast<std::size_t>(nvars), 0.0),
        seen_(static_cast<std::size_t>(nvars), 0),
        heap_pos_(static_cast<std::size_t>(nvars), -1),
        watches_(2 * static_cast<std::size_t>(nvars)) {
    for (int v = 0; v < n_; ++v) heap_insert(v);
  }

  // Returns false if the formula is already known UNSAT.
  bool add_clause(const Clause& dimacs) {
    if (!ok_) return false;
    std::vector<int> c;
    for (Lit l : dimacs) c.push_back(2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<int> kept;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i + 1 < c.size() && c[i + 1] == neg(c[i]) && var_of(c[i]) == var_of(c[i + 1])) return true;  // tautology
      const int val = lit_value(c[i]);
      if (val == 1) return true;
      if (val == 0) continue;
      kept.push_back(c[i]);
    }
    if (kept.empty()) return ok_ = false;
    if (kept.size() == 1) {
      enqueue(kept[0], -1);
      if (propagate() != -1) ok_ = false;
      return ok_;
    }
    attach(std::move(kept), false);
    return true;
  }

  // 1 sat, 0 unsat, -1 limit reached.
  int solve(std::uint64_t conflict_limit) {
    if (!ok_) return 0;
    if (propagate() != -1) return 0;
    std::uint64_t conflicts = 0;
    for (int restart = 1;; ++restart) {
      const std::uint64_t budget = 100 * luby(restart);
      std::uint64_t local = 0;
      for (;;) {
        const int confl = propagate();
        if (confl != -1) {
          ++conflicts;
          ++local;
          if (decision_level() == 0) return 0;
          if (conflict_limit && conflicts >= conflict_limit) return -1;
          std::vector<int> learnt;
          int bt = 0;
          analyze(confl, learnt, bt);
          backtrack(bt);
          if (learnt.size() == 1) {
            enqueue(learnt[0], -1);
          } else {
            const int ci = attach(learnt, true);
            enqueue(learnt[0], ci);
          }
          var_inc_ /= 0.95;
          if (learnt_count_ > max_learnt_) reduce_db();
        } else {
          if (local >= budget) {
            backtrack(0);
            break;
          }
          const int v = pick_branch();
          if (v < 0) return 1;
          trail_lim_.push_back(static_cast<int>(trail_.size()));
          enqueue(2 * v + (phase_[static_cast<std::size_t>(v)] ? 0 : 1), -1);
        }
      }
    }
  }

  bool model_value(int v) const { return value_[static_cast<std::size_t>(v)] == 1; }

 private:
  struct ClauseRec {
    std::vector<int> lits;
    bool learnt = false;
    bool deleted = false;
  };

  int n_;
  bool ok_ = true;
  std::vector<signed char> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<char> phase_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<std::vector<int>> watches_;  // watches_[l]: clauses watching l, visited when l turns false
  std::vector<ClauseRec> clauses_;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  std::size_t learnt_count_ = 0;
  std::size_t max_learnt_ = 20000;

  static std::uint64_t luby(int i) {
    // Luby sequence 1,1,2,1,1,2,4,...
    std::uint64_t size = 1;
    int seq = 0;
    while (size < static_cast<std::uint64_t>(i) + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    std::uint64_t x = static_cast<std::uint64_t>(i) - 1;
    while (size - 1 != x) {
      size = (size - 1) >> 1;
      --seq;
      x = x % size;
    }
    return std::uint64_t{1} << seq;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  int lit_value(int l) const {
    const int v = value_[static_cast<std::size_t>(var_of(l))];
    return v < 0 ? -1 : (v ^ (l & 1));
  }

  void enqueue(int l, int reason) {
    const auto v = static_cast<std::size_t>(var_of(l));
    value_[v] = static_cast<signed char>((l & 1) ? 0 : 1);
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  int attach(std::vector<int> lits, bool learnt) {
    const int ci = static_cast<int>(clauses_.size());
    watches_[static_cast<std::size_t>(lits[0])].push_back(ci);
    watches_[static_cast<std::size_t>(lits[1])].push_back(ci);
    clauses_.push_back({std::move(lits), learnt, false});
    if (learnt) ++learnt_count_;
    return ci;
  }

  // Returns conflicting clause index or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      const int p = trail_[qhead_++];
      const int falsified = neg(p);
      auto& ws = watches_[static_cast<std::size_t>(falsified)];
      std::size_t i = 0, j = 0;
      int conflict = -1;
      while (i < ws.size()) {
        const int ci = ws[i++];
        ClauseRec& c = clauses_[static_cast<std::size_t>(ci)];
        if (c.deleted) continue;
        auto& lits = c.lits;
        if (lits[0] == falsified) std::swap(lits[0], lits[1]);
        if (lit_value(lits[0]) == 1) {
          ws[j++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (lit_value(lits[k]) != 0) {
            std::swap(lits[1], lits[k]);
            watches_[static_cast<std::size_t>(lits[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = ci;
        if (lit_value(lits[0]) == 0) {
          conflict = ci;
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(lits[0], ci);
        }
      }
      ws.resize(j);
      if (conflict != -1) {
        qhead_ = trail_.size();
        return conflict;
      }
    }
    return -1;
  }

  void bump(int v) {
    auto& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
      for (auto& x : activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[static_cast<std::size_t>(v)] >= 0) heap_up(heap_pos_[static_cast<std::size_t>(v)]);
  }

  void analyze(int confl, std::vector<int>& learnt, int& bt_level) {
    learnt.assign(1, -1);
    int counter = 0;
    int p = -1;
    std::size_t idx = trail_.size();
    do {
      const auto& lits = clauses_[static_cast<std::size_t>(confl)].lits;
      for (std::size_t k = (p == -1 ? 0 : 1); k < lits.size(); ++k) {
        const int q = lits[k];
        const auto v = static_cast<std::size_t>(var_of(q));
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump(static_cast<int>(v));
        if (level_[v] >= decision_level()) {
          ++counter;
        } else {
          learnt.push_back(q);
        }
      }
      while (!seen_[static_cast<std::size_t>(var_of(trail_[--idx]))]) {
      }
      p = trail_[idx];
      confl = reason_[static_cast<std::size_t>(var_of(p))];
      seen_[static_cast<std::size_t>(var_of(p))] = 0;
      --counter;
      // The reason clause has p at position 0.
      if (counter > 0) {
        auto& rl = clauses_[static_cast<std::size_t>(confl)].lits;
        if (rl[0] != p) std::swap(rl[0], rl[1]);
      }
    } while (counter > 0);
    learnt[0] = neg(p);
    for (std::size_t k = 1; k < learnt.size(); ++k) seen_[static_cast<std::size_t>(var_of(learnt[k]))] = 0;
    bt_level = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k) {
        if (level_[static_cast<std::size_t>(var_of(learnt[k]))] > level_[static_cast<std::size_t>(var_of(learnt[max_i]))]) max_i = k;
      }
      std::swap(learnt[1], learnt[max_i]);
      bt_level = level_[static_cast<std::size_t>(var_of(learnt[1]))];
    }
  }

  void backtrack(int lvl) {
    if (decision_level() <= lvl) return;
    const auto lim = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
    for (std::size_t i = trail_.size(); i-- > lim;) {
      const auto v = static_cast<std::size_t>(var_of(trail_[i]));
      phase_[v] = static_cast<char>(value_[v]);
      value_[v] = -1;
      reason_[v] = -1;
      if (heap_pos_[v] < 0) heap_insert(static_cast<int>(v));
    }
    trail_.resize(lim);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = trail_.size();
  }

  int pick_branch() {
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (value_[static_cast<std::size_t>(v)] < 0) return v;
    }
    return -1;
  }

  bool locked(int ci) const {
    const auto& c = clauses_[static_cast<std::size_t>(ci)];
    const int v = var_of(c.lits[0]);
    return reason_[static_cast<std::size_t>(v)] == ci && lit_value(c.lits[0]) == 1;
  }

  void reduce_db() {
    std::vector<int> cand;
    for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
      const auto& c = clauses_[static_cast<std::size_t>(ci)];
      if (c.learnt && !c.deleted && c.lits.size() > 2 && !locked(ci)) cand.push_back(ci);
    }
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) {
      return clauses_[static_cast<std::size_t>(a)].lits.size() > clauses_[static_cast<std::size_t>(b)].lits.size();
    });
    for (std::size_t i = 0; i < cand.size() / 2; ++i) {
      auto& c = clauses_[static_cast<std::size_t>(cand[i])];
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      --learnt_count_;
    }
    max_learnt_ += max_learnt_ / 10;
  }

  // Max-heap on activity.
  bool heap_less(int a, int b) const {
    return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)] ||
           (activity_[static_cast<std::size_t>(a)] == activity_[static_cast<std::size_t>(b)] && a < b);
  }
  void heap_set(int i, int v) {
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
  }
  void heap_up(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[static_cast<std::size_t>(parent)])) break;
      heap_set(i, heap_[static_cast<std::size_t>(parent)]);
      i = parent;
    }
    heap_set(i, v);
  }
  void heap_down(int i) {
    const int n = static_cast<int>(heap_.size());
    const int v = heap_[static_cast<std::size_t>(i)];
    for (;;) {
      int child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)])) ++child;
      if (!heap_less(heap_[static_cast<std::size_t>(child)], v)) break;
      heap_set(i, heap_[static_cast<std::size_t>(child)]);
      i = child;
    }
    heap_set(i, v);
  }
  void heap_insert(int v) {
    heap_.push_back(v);
    heap_up(static_cast<int>(heap_.size()) - 1);
  }
  int heap_pop() {
    const int top = heap_[0];
    heap_pos_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_set(0, last);
      heap_down(0);
    }
    return top;
  }
};

}  // namespace

SolveResult EmbeddedBackend::solve(const CnfFormula& f) const {
  Cdcl s(f.num_vars);
  for (const auto& c : f.clauses) {
    if (!s.add_clause(c)) return {Verdict::unsat, {}};
  }
  const int r = s.solve(conflict_limit_);
  if (r < 0) throw BackendError("embedded solver: conflict limit reached");
  if (r == 0) return {Verdict::unsat, {}};
  SolveResult out{Verdict::sat, std::vector<bool>(static_cast<std::size_t>(f.num_vars) + 1, false)};
  for (int v = 0; v < f.num_vars; ++v) out.model[static_cast<std::size_t>(v) + 1] = s.model_value(v);
  return out;
}

struct ExternalBackend::Pool {
  std::mutex mu;
  std::condition_variable cv;
  int free_slots;
};

ExternalBackend::ExternalBackend(std::string executable, int max_processes)
    : executable_(std::move(executable)), pool_(std::make_unique<Pool>()) {
  if (executable_.empty()) throw BackendError("external solver path is empty");
  pool_->free_slots = std::max(1, max_processes);
}

ExternalBackend::~ExternalBackend() = default;

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

SolveResult ExternalBackend::solve(const CnfFormula& f) const {
  {
    std::unique_lock lock(pool_->mu);
    pool_->cv.wait(lock, [&] { return pool_->free_slots > 0; });
    --pool_->free_slots;
  }
  struct Release {
    Pool* p;
    ~Release() {
      {
        std::lock_guard lock(p->mu);
        ++p->free_slots;
      }
      p->cv.notify_one();
    }
  } release{pool_.get()};

  std::string tmpl = (std::filesystem::temp_directory_path() / "udg-XXXXXX.cnf").string();
  const int fd = mkstemps(tmpl.data(), 4);
  if (fd < 0) throw BackendError("cannot create temporary CNF file");
  close(fd);
  struct Remove {
    std::string path;
    ~Remove() { std::remove(path.c_str()); }
  } remove{tmpl};
  {
    std::ofstream out(tmpl);
    out << to_dimacs(f);
    if (!out) throw BackendError("cannot write temporary CNF file");
  }
  const std::string cmd = shell_quote(executable_) + " " + shell_quote(tmpl) + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw BackendError("cannot start external solver " + executable_);
  std::string output;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  if (status == -1) throw BackendError("external solver " + executable_ + " did not terminate cleanly");
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) throw BackendError("external solver not found: " + executable_);

  std::optional<Verdict> verdict;
  std::vector<bool> model(static_cast<std::size_t>(f.num_vars) + 1, false);
  std::istringstream in(output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos) {
        verdict = Verdict::unsat;
      } else if (line.find("SATISFIABLE") != std::string::npos) {
        verdict = Verdict::sat;
      } else {
        throw BackendError("external solver gave no answer: " + line);
      }
    } else if (line.rfind("v ", 0) == 0) {
      std::istringstream ls(line.substr(2));
      long lit = 0;
      while (ls >> lit) {
        if (lit == 0) continue;
        const auto v = static_cast<std::size_t>(std::labs(lit));
        if (v >= model.size()) throw BackendError("external solver model mentions unknown variable");
        model[v] = lit > 0;
      }
    }
  }
  if (!verdict) throw BackendError("external solver produced no status line");
  if (*verdict == Verdict::unsat) return {Verdict::unsat, {}};
  return {Verdict::sat, std::move(model)};
}

std::shared_ptr<const SolverBackend> make_backend(const std::string& spec, int max_processes) {
  if (spec.empty() || spec == "embedded") return std::make_shared<EmbeddedBackend>();
  if (spec == "external" || spec.rfind("external:", 0) == 0) {
    std::string path = spec.size() > 9 ? spec.substr(9) : "";
    if (path.empty()) {
      const char* env = std::getenv("UDG_SOLVER");
      if (!env || !*env) throw BackendError("external backend requested but UDG_SOLVER is not set");
      path = env;
    }
    return std::make_shared<ExternalBackend>(path, max_processes);
  }
  throw std::invalid_argument("unknown backend: " + spec);
}

std::shared_ptr<const SolverBackend> default_backend() {
  static const auto backend = std::make_shared<const EmbeddedBackend>();
  return backend;
}

SolveResult solve(const CnfFormula& f, const SolverBackend* backend) {
  if (!backend) backend = default_backend().get();
  SolveResult r = backend->solve(f);
  if (r.verdict == Verdict::sat && !satisfies(f, r.model)) {
    throw BackendError(backend->name() + " returned a model that does not satisfy the formula");
  }
  return r;
}

}  // namespace udg
