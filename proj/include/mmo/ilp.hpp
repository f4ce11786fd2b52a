// Copyright 2026 The mmo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMO_ILP_HPP
#define MMO_ILP_HPP

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "mmo/core_model.hpp"
#include "mmo/pareto.hpp"

namespace mmo {

/// References to tasks or cores that do not exist in the instance.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Unparseable solver output.
class FormatError : public Error {
 public:
  using Error::Error;
};

enum class ObjectiveKind { kBandwidth, kCache, kWeighted };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kBandwidth;
  double weight_b = 1.0;
  double weight_k = 1.0;

  static Objective bandwidth() { return {ObjectiveKind::kBandwidth, 1.0, 0.0}; }
  static Objective cache() { return {ObjectiveKind::kCache, 0.0, 1.0}; }
  /// Scalarized objective; its optimum is one front point, not the front.
  static Objective weighted(double wb, double wk) {
    return {ObjectiveKind::kWeighted, wb, wk};
  }
};

/// Which constraint family a row (or a violation) belongs to.
enum class RowKind {
  kTaskAssigned,     // each task on exactly one core
  kCoreBandwidth,    // each core picks exactly one bandwidth level
  kCoreCache,        // each core picks exactly one cache level
  kTotalBandwidth,   // sum of bandwidth levels <= B
  kTotalCache,       // sum of cache levels <= K
  kConjunctionUpper, // 3 a <= x + y + z
  kConjunctionLower, // a >= x + y + z - 2
  kUtilization,      // per-core utilization bound
  kUnavailable,      // a fixed to 0 where the profile has no measurement
};

[[nodiscard]] inline std::string_view row_label(RowKind kind) noexcept {
  switch (kind) {
    case RowKind::kTaskAssigned: return "task-assignment";
    case RowKind::kCoreBandwidth: return "core-bandwidth";
    case RowKind::kCoreCache: return "core-cache";
    case RowKind::kTotalBandwidth: return "total-bandwidth";
    case RowKind::kTotalCache: return "total-cache";
    case RowKind::kConjunctionUpper: return "conjunction-upper";
    case RowKind::kConjunctionLower: return "conjunction-lower";
    case RowKind::kUtilization: return "utilization";
    case RowKind::kUnavailable: return "unavailable-cell";
  }
  return "?";
}

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct Term {
  std::size_t var;
  double coef;
};

struct Row {
  RowKind kind;
  std::string name;
  std::vector<Term> terms;
  Sense sense;
  double rhs;
  int core = 0;  // 1-based core the row belongs to, 0 when global
  int task = 0;  // 1-based task, 0 when not task-specific
};

/// 0-1 ILP of the co-allocation problem over x (task->core), y (bandwidth
/// level per core), z (cache level per core) and a = x AND y AND z.
/// Variables are stored densely: all x, then y, z, a.
class IlpModel {
 public:
  IlpModel(std::size_t n, int M, int B, int K)
      : N_(n), M_(M), B_(B), K_(K) {}

  [[nodiscard]] std::size_t N() const noexcept { return N_; }
  [[nodiscard]] int M() const noexcept { return M_; }
  [[nodiscard]] int B() const noexcept { return B_; }
  [[nodiscard]] int K() const noexcept { return K_; }

  // 1-based indices throughout, matching the variable names.
  [[nodiscard]] std::size_t x(std::size_t i, int m) const noexcept {
    return (i - 1) * M_ + static_cast<std::size_t>(m - 1);
  }
  [[nodiscard]] std::size_t y(int b, int m) const noexcept {
    return x_count() + static_cast<std::size_t>(b - 1) * M_ + (m - 1);
  }
  [[nodiscard]] std::size_t z(int k, int m) const noexcept {
    return x_count() + y_count() + static_cast<std::size_t>(k - 1) * M_ + (m - 1);
  }
  [[nodiscard]] std::size_t a(std::size_t i, int b, int k, int m) const noexcept {
    return x_count() + y_count() + z_count() +
           (((i - 1) * B_ + (b - 1)) * static_cast<std::size_t>(K_) + (k - 1)) * M_ +
           (m - 1);
  }

  [[nodiscard]] std::size_t x_count() const noexcept { return N_ * M_; }
  [[nodiscard]] std::size_t y_count() const noexcept {
    return static_cast<std::size_t>(B_) * M_;
  }
  [[nodiscard]] std::size_t z_count() const noexcept {
    return static_cast<std::size_t>(K_) * M_;
  }
  [[nodiscard]] std::size_t a_count() const noexcept {
    return N_ * B_ * static_cast<std::size_t>(K_) * M_;
  }
  [[nodiscard]] std::size_t variable_count() const noexcept {
    return x_count() + y_count() + z_count() + a_count();
  }

  [[nodiscard]] std::string variable_name(std::size_t v) const {
    if (v < x_count()) {
      return "x_" + std::to_string(v / M_ + 1) + "_" + std::to_string(v % M_ + 1);
    }
    v -= x_count();
    if (v < y_count()) {
      return "y_" + std::to_string(v / M_ + 1) + "_" + std::to_string(v % M_ + 1);
    }
    v -= y_count();
    if (v < z_count()) {
      return "z_" + std::to_string(v / M_ + 1) + "_" + std::to_string(v % M_ + 1);
    }
    v -= z_count();
    const std::size_t m = v % M_;
    v /= M_;
    const std::size_t k = v % K_;
    v /= K_;
    const std::size_t b = v % B_;
    const std::size_t i = v / B_;
    return "a_" + std::to_string(i + 1) + "_" + std::to_string(b + 1) + "_" +
           std::to_string(k + 1) + "_" + std::to_string(m + 1);
  }

  [[nodiscard]] std::size_t count(RowKind kind) const noexcept {
    std::size_t c = 0;
    for (const auto& r : rows) c += r.kind == kind;
    return c;
  }

  std::vector<Term> objective;
  std::vector<Row> rows;

 private:
  std::size_t N_;
  int M_;
  int B_;
  int K_;
};

/// Builds every variable and constraint row for `set` on `cfg`. Utilization
/// coefficients come from utilization(); cells with no measurement get an
/// extra row fixing the matching a to 0 instead of an infinite coefficient.
[[nodiscard]] inline IlpModel build_model(const TaskSet& set,
                                          const SystemConfig& cfg,
                                          const Objective& objective) {
  cfg.validate();
  set.check_against(cfg);
  const std::size_t N = set.size();
  const int M = cfg.M, B = cfg.B, K = cfg.K;
  IlpModel model(N, M, B, K);
  auto& rows = model.rows;

  for (int m = 1; m <= M; ++m) {
    for (int b = 1; b <= B; ++b) {
      const double c = objective.weight_b * b;
      if (c != 0.0) model.objective.push_back({model.y(b, m), c});
    }
  }
  for (int m = 1; m <= M; ++m) {
    for (int k = 1; k <= K; ++k) {
      const double c = objective.weight_k * k;
      if (c != 0.0) model.objective.push_back({model.z(k, m), c});
    }
  }

  for (std::size_t i = 1; i <= N; ++i) {
    Row r{RowKind::kTaskAssigned, "c3_" + std::to_string(i), {}, Sense::kEqual, 1.0,
          0, static_cast<int>(i)};
    for (int m = 1; m <= M; ++m) r.terms.push_back({model.x(i, m), 1.0});
    rows.push_back(std::move(r));
  }
  for (int m = 1; m <= M; ++m) {
    Row r{RowKind::kCoreBandwidth, "c4_" + std::to_string(m), {}, Sense::kEqual, 1.0, m, 0};
    for (int b = 1; b <= B; ++b) r.terms.push_back({model.y(b, m), 1.0});
    rows.push_back(std::move(r));
  }
  for (int m = 1; m <= M; ++m) {
    Row r{RowKind::kCoreCache, "c5_" + std::to_string(m), {}, Sense::kEqual, 1.0, m, 0};
    for (int k = 1; k <= K; ++k) r.terms.push_back({model.z(k, m), 1.0});
    rows.push_back(std::move(r));
  }
  {
    Row r{RowKind::kTotalBandwidth, "c6", {}, Sense::kLessEqual, static_cast<double>(B), 0, 0};
    for (int m = 1; m <= M; ++m) {
      for (int b = 1; b <= B; ++b) r.terms.push_back({model.y(b, m), static_cast<double>(b)});
    }
    rows.push_back(std::move(r));
  }
  {
    Row r{RowKind::kTotalCache, "c7", {}, Sense::kLessEqual, static_cast<double>(K), 0, 0};
    for (int m = 1; m <= M; ++m) {
      for (int k = 1; k <= K; ++k) r.terms.push_back({model.z(k, m), static_cast<double>(k)});
    }
    rows.push_back(std::move(r));
  }

  auto suffix = [](std::size_t i, int b, int k, int m) {
    return std::to_string(i) + "_" + std::to_string(b) + "_" + std::to_string(k) +
           "_" + std::to_string(m);
  };
  for (std::size_t i = 1; i <= N; ++i) {
    for (int b = 1; b <= B; ++b) {
      for (int k = 1; k <= K; ++k) {
        for (int m = 1; m <= M; ++m) {
          const std::size_t a = model.a(i, b, k, m);
          rows.push_back({RowKind::kConjunctionUpper, "c8_" + suffix(i, b, k, m),
                          {{a, 3.0}, {model.x(i, m), -1.0}, {model.y(b, m), -1.0},
                           {model.z(k, m), -1.0}},
                          Sense::kLessEqual, 0.0, m, static_cast<int>(i)});
        }
      }
    }
  }
  for (std::size_t i = 1; i <= N; ++i) {
    for (int b = 1; b <= B; ++b) {
      for (int k = 1; k <= K; ++k) {
        for (int m = 1; m <= M; ++m) {
          const std::size_t a = model.a(i, b, k, m);
          rows.push_back({RowKind::kConjunctionLower, "c9_" + suffix(i, b, k, m),
                          {{a, 1.0}, {model.x(i, m), -1.0}, {model.y(b, m), -1.0},
                           {model.z(k, m), -1.0}},
                          Sense::kGreaterEqual, -2.0, m, static_cast<int>(i)});
        }
      }
    }
  }
  for (int m = 1; m <= M; ++m) {
    Row r{RowKind::kUtilization, "c10_" + std::to_string(m), {}, Sense::kLessEqual, 1.0, m, 0};
    for (std::size_t i = 1; i <= N; ++i) {
      for (int b = 1; b <= B; ++b) {
        for (int k = 1; k <= K; ++k) {
          const double u = utilization(set[i - 1], b, k);
          if (std::isfinite(u)) r.terms.push_back({model.a(i, b, k, m), u});
        }
      }
    }
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 1; i <= N; ++i) {
    for (int b = 1; b <= B; ++b) {
      for (int k = 1; k <= K; ++k) {
        if (std::isfinite(utilization(set[i - 1], b, k))) continue;
        for (int m = 1; m <= M; ++m) {
          rows.push_back({RowKind::kUnavailable, "fix_" + suffix(i, b, k, m),
                          {{model.a(i, b, k, m), 1.0}}, Sense::kEqual, 0.0, m,
                          static_cast<int>(i)});
        }
      }
    }
  }
  return model;
}

namespace detail {

/// Shortest decimal that round-trips to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Writes `prefix`, a linear expression and `tail`, wrapping lines at 100
/// characters.
inline void write_expression(std::ostream& os, const IlpModel& model,
                             std::string_view prefix,
                             const std::vector<Term>& terms,
                             std::string_view tail = {}) {
  constexpr std::size_t kWrap = 100;
  std::string line(prefix);
  bool first = true;
  for (const Term& t : terms) {
    std::string piece;
    const double mag = std::abs(t.coef);
    if (first) {
      if (t.coef < 0) piece += "- ";
    } else {
      piece += t.coef < 0 ? " - " : " + ";
    }
    if (mag != 1.0) piece += format_number(mag) + " ";
    piece += model.variable_name(t.var);
    if (line.size() + piece.size() > kWrap && !first) {
      os << line << "\n";
      line = "  ";
      if (piece.front() == ' ') piece.erase(0, 1);
    }
    line += piece;
    first = false;
  }
  if (first) line += "0 " + model.variable_name(0);
  if (line.size() + tail.size() > kWrap) {
    os << line << "\n";
    line = " ";
  }
  os << line << tail;
}

}  // namespace detail

/// LP-format text (Minimize / Subject To / Binaries / End). Output order is
/// fully determined by the model, so identical models give identical bytes.
inline void export_lp(const IlpModel& model, std::ostream& os) {
  os << "\\ task and resource co-allocation: N=" << model.N() << " M=" << model.M()
     << " B=" << model.B() << " K=" << model.K() << "\n";
  os << "Minimize\n";
  detail::write_expression(os, model, " obj: ", model.objective);
  os << "\nSubject To\n";
  for (const Row& r : model.rows) {
    std::string tail;
    switch (r.sense) {
      case Sense::kLessEqual: tail = " <= "; break;
      case Sense::kGreaterEqual: tail = " >= "; break;
      case Sense::kEqual: tail = " = "; break;
    }
    tail += detail::format_number(r.rhs);
    detail::write_expression(os, model, " " + r.name + ": ", r.terms, tail);
    os << "\n";
  }
  os << "Binaries\n";
  std::string line;
  for (std::size_t v = 0; v < model.variable_count(); ++v) {
    const std::string name = model.variable_name(v);
    if (!line.empty() && line.size() + name.size() + 1 > 100) {
      os << line << "\n";
      line.clear();
    }
    line += " " + name;
  }
  if (!line.empty()) os << line << "\n";
  os << "End\n";
}

inline void export_lp(const IlpModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  export_lp(model, out);
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

[[nodiscard]] inline std::string export_lp_string(const IlpModel& model) {
  std::ostringstream os;
  export_lp(model, os);
  return os.str();
}

/// Values of the x, y, z decision variables; a is implied as x AND y AND z.
struct Assignment {
  std::size_t N = 0;
  int M = 0;
  int B = 0;
  int K = 0;
  std::vector<std::uint8_t> x;  // [(i-1)*M + (m-1)]
  std::vector<std::uint8_t> y;  // [(b-1)*M + (m-1)]
  std::vector<std::uint8_t> z;  // [(k-1)*M + (m-1)]

  Assignment() = default;
  Assignment(std::size_t n, const SystemConfig& cfg)
      : N(n), M(cfg.M), B(cfg.B), K(cfg.K),
        x(n * cfg.M, 0), y(static_cast<std::size_t>(cfg.B) * cfg.M, 0),
        z(static_cast<std::size_t>(cfg.K) * cfg.M, 0) {}

  std::uint8_t& X(std::size_t i, int m) { return x[(i - 1) * M + (m - 1)]; }
  std::uint8_t& Y(int b, int m) { return y[static_cast<std::size_t>(b - 1) * M + (m - 1)]; }
  std::uint8_t& Z(int k, int m) { return z[static_cast<std::size_t>(k - 1) * M + (m - 1)]; }
  [[nodiscard]] bool X(std::size_t i, int m) const { return x[(i - 1) * M + (m - 1)]; }
  [[nodiscard]] bool Y(int b, int m) const { return y[static_cast<std::size_t>(b - 1) * M + (m - 1)]; }
  [[nodiscard]] bool Z(int k, int m) const { return z[static_cast<std::size_t>(k - 1) * M + (m - 1)]; }

  /// A core holding no task and no resource level.
  [[nodiscard]] bool idle(int m) const {
    for (std::size_t i = 1; i <= N; ++i) if (X(i, m)) return false;
    for (int b = 1; b <= B; ++b) if (Y(b, m)) return false;
    for (int k = 1; k <= K; ++k) if (Z(k, m)) return false;
    return true;
  }
};

/// kUsedCores exempts idle cores from the one-level-per-core rows, which is
/// how solutions that leave cores unused are judged. kIlpStrict applies every
/// row to every core, exactly as the ILP does.
enum class VerifyMode { kUsedCores, kIlpStrict };

struct Violation {
  RowKind kind;
  int core = 0;  // 1-based, 0 when not core-specific
  int task = 0;  // 1-based, 0 when not task-specific
  std::string message;
};

struct Verdict {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Dense values of every model variable, with a derived from x, y, z.
[[nodiscard]] inline std::vector<double> variable_values(const IlpModel& model,
                                                         const Assignment& as) {
  std::vector<double> v(model.variable_count(), 0.0);
  const int M = model.M(), B = model.B(), K = model.K();
  for (std::size_t i = 1; i <= model.N(); ++i) {
    for (int m = 1; m <= M; ++m) v[model.x(i, m)] = as.X(i, m);
  }
  for (int m = 1; m <= M; ++m) {
    for (int b = 1; b <= B; ++b) v[model.y(b, m)] = as.Y(b, m);
    for (int k = 1; k <= K; ++k) v[model.z(k, m)] = as.Z(k, m);
  }
  for (std::size_t i = 1; i <= model.N(); ++i) {
    for (int m = 1; m <= M; ++m) {
      if (!as.X(i, m)) continue;
      for (int b = 1; b <= B; ++b) {
        if (!as.Y(b, m)) continue;
        for (int k = 1; k <= K; ++k) {
          if (as.Z(k, m)) v[model.a(i, b, k, m)] = 1.0;
        }
      }
    }
  }
  return v;
}

/// Evaluates every row of `model` numerically; returns the violated rows.
[[nodiscard]] inline std::vector<const Row*> violated_rows(
    const IlpModel& model, const Assignment& as, VerifyMode mode) {
  const std::vector<double> v = variable_values(model, as);
  std::vector<const Row*> bad;
  for (const Row& r : model.rows) {
    if (mode == VerifyMode::kUsedCores &&
        (r.kind == RowKind::kCoreBandwidth || r.kind == RowKind::kCoreCache) &&
        as.idle(r.core)) {
      continue;
    }
    double lhs = 0.0;
    for (const Term& t : r.terms) lhs += t.coef * v[t.var];
    bool ok = true;
    switch (r.sense) {
      case Sense::kLessEqual: ok = lhs <= r.rhs; break;
      case Sense::kGreaterEqual: ok = lhs >= r.rhs; break;
      case Sense::kEqual: ok = lhs == r.rhs; break;
    }
    if (!ok) bad.push_back(&r);
  }
  return bad;
}

/// Checks an assignment constraint by constraint, without building a model.
/// The conjunction rows hold by construction since a is derived.
[[nodiscard]] inline Verdict verify_assignment(const Assignment& as,
                                               const TaskSet& set,
                                               const SystemConfig& cfg,
                                               VerifyMode mode = VerifyMode::kUsedCores) {
  if (as.N != set.size() || as.M != cfg.M || as.B != cfg.B || as.K != cfg.K) {
    throw StructuralError("assignment shape does not match the instance");
  }
  Verdict verdict;
  auto add = [&](RowKind kind, int core, int task, std::string msg) {
    verdict.violations.push_back({kind, core, task, std::move(msg)});
  };
  const int M = cfg.M, B = cfg.B, K = cfg.K;

  for (std::size_t i = 1; i <= as.N; ++i) {
    int cores = 0;
    for (int m = 1; m <= M; ++m) cores += as.X(i, m);
    if (cores != 1) {
      add(RowKind::kTaskAssigned, 0, static_cast<int>(i),
          "task '" + set[i - 1].id + "' is on " + std::to_string(cores) + " cores");
    }
  }
  int total_b = 0, total_k = 0;
  for (int m = 1; m <= M; ++m) {
    int levels_b = 0, levels_k = 0;
    for (int b = 1; b <= B; ++b) {
      levels_b += as.Y(b, m);
      total_b += as.Y(b, m) * b;
    }
    for (int k = 1; k <= K; ++k) {
      levels_k += as.Z(k, m);
      total_k += as.Z(k, m) * k;
    }
    const bool exempt = mode == VerifyMode::kUsedCores && as.idle(m);
    if (!exempt && levels_b != 1) {
      add(RowKind::kCoreBandwidth, m, 0,
          "core " + std::to_string(m) + " has " + std::to_string(levels_b) +
              " bandwidth levels");
    }
    if (!exempt && levels_k != 1) {
      add(RowKind::kCoreCache, m, 0,
          "core " + std::to_string(m) + " has " + std::to_string(levels_k) +
              " cache levels");
    }
  }
  if (total_b > B) {
    add(RowKind::kTotalBandwidth, 0, 0,
        "bandwidth partitions used " + std::to_string(total_b) + " > " + std::to_string(B));
  }
  if (total_k > K) {
    add(RowKind::kTotalCache, 0, 0,
        "cache partitions used " + std::to_string(total_k) + " > " + std::to_string(K));
  }
  for (int m = 1; m <= M; ++m) {
    double load = 0.0;
    for (std::size_t i = 1; i <= as.N; ++i) {
      if (!as.X(i, m)) continue;
      for (int b = 1; b <= B; ++b) {
        if (!as.Y(b, m)) continue;
        for (int k = 1; k <= K; ++k) {
          if (!as.Z(k, m)) continue;
          const double u = utilization(set[i - 1], b, k);
          if (std::isfinite(u)) {
            load += u;
          } else {
            add(RowKind::kUnavailable, m, static_cast<int>(i),
                "task '" + set[i - 1].id + "' has no measurement at (" +
                    std::to_string(b) + "," + std::to_string(k) + ") on core " +
                    std::to_string(m));
          }
        }
      }
    }
    if (load > 1.0) {
      add(RowKind::kUtilization, m, 0,
          "core " + std::to_string(m) + " utilization " +
              detail::format_number(load) + " > 1");
    }
  }
  return verdict;
}

/// Variable assignment for a solution; cores beyond the listed ones are idle.
/// Out-of-range resource levels cannot be expressed and are returned as
/// violations alongside the assignment.
[[nodiscard]] inline std::pair<Assignment, std::vector<Violation>> to_assignment(
    const CompleteSolution& sol, const TaskSet& set, const SystemConfig& cfg) {
  if (sol.cores.size() > static_cast<std::size_t>(cfg.M)) {
    throw StructuralError("solution uses " + std::to_string(sol.cores.size()) +
                          " cores but the system has " + std::to_string(cfg.M));
  }
  Assignment as(set.size(), cfg);
  std::vector<Violation> extra;
  for (std::size_t c = 0; c < sol.cores.size(); ++c) {
    const int m = static_cast<int>(c) + 1;
    const CoreAllocation& core = sol.cores[c];
    for (std::size_t t : core.tasks) {
      if (t >= set.size()) {
        throw StructuralError("solution references unknown task index " +
                              std::to_string(t));
      }
      as.X(t + 1, m) = 1;
    }
    if (core.b >= 1 && core.b <= cfg.B) {
      as.Y(core.b, m) = 1;
    } else if (core.b != 0) {
      extra.push_back({RowKind::kCoreBandwidth, m, 0,
                       "core " + std::to_string(m) + " bandwidth level " +
                           std::to_string(core.b) + " outside 1.." + std::to_string(cfg.B)});
    }
    if (core.k >= 1 && core.k <= cfg.K) {
      as.Z(core.k, m) = 1;
    } else if (core.k != 0) {
      extra.push_back({RowKind::kCoreCache, m, 0,
                       "core " + std::to_string(m) + " cache level " +
                           std::to_string(core.k) + " outside 1.." + std::to_string(cfg.K)});
    }
  }
  return {std::move(as), std::move(extra)};
}

/// Full constraint check of an allocation against the instance.
[[nodiscard]] inline Verdict verify_solution(const CompleteSolution& sol,
                                             const TaskSet& set,
                                             const SystemConfig& cfg,
                                             VerifyMode mode = VerifyMode::kUsedCores) {
  auto [as, extra] = to_assignment(sol, set, cfg);
  Verdict verdict = verify_assignment(as, set, cfg, mode);
  verdict.violations.insert(verdict.violations.begin(), extra.begin(), extra.end());
  return verdict;
}

/// Allocation described by an assignment: one core per non-idle m, with the
/// lowest marked level when a core marks several (the verdict reports that).
[[nodiscard]] inline CompleteSolution from_assignment(const Assignment& as) {
  std::vector<CoreAllocation> cores;
  for (int m = 1; m <= as.M; ++m) {
    CoreAllocation core;
    for (std::size_t i = 1; i <= as.N; ++i) {
      if (as.X(i, m)) core.tasks.push_back(i - 1);
    }
    for (int b = as.B; b >= 1; --b) if (as.Y(b, m)) core.b = b;
    for (int k = as.K; k >= 1; --k) if (as.Z(k, m)) core.k = k;
    cores.push_back(std::move(core));
  }
  while (!cores.empty() && cores.back().tasks.empty() && cores.back().b == 0 &&
         cores.back().k == 0) {
    cores.pop_back();
  }
  return CompleteSolution::from_cores(std::move(cores));
}

struct ImportResult {
  std::optional<CompleteSolution> solution;  // set iff the verdict is ok
  Verdict verdict;
  Assignment assignment;
};

/// Reads "name value" lines (one variable per line, '#' starts a comment) as
/// written by common MIP solvers. Only x, y, z drive the reconstruction; a
/// variables are accepted and ignored. Variables not mentioned are 0.
[[nodiscard]] inline ImportResult import_solver_solution(
    std::istream& in, const TaskSet& set, const SystemConfig& cfg,
    VerifyMode mode = VerifyMode::kUsedCores) {
  Assignment as(set.size(), cfg);
  std::string line;
  std::size_t lineno = 0, seen = 0;
  auto parse_indices = [&](std::string_view rest, std::vector<long>& out) {
    out.clear();
    while (!rest.empty()) {
      if (rest.front() != '_') return false;
      rest.remove_prefix(1);
      long v = 0;
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (ec != std::errc{} || p == rest.data()) return false;
      out.push_back(v);
      rest.remove_prefix(static_cast<std::size_t>(p - rest.data()));
    }
    return true;
  };
  std::vector<long> idx;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string name, value_text, trailing;
    if (!(ls >> name)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!(ls >> value_text) || (ls >> trailing)) {
      throw FormatError(where + "expected '<name> <value>'");
    }
    double value = 0.0;
    auto [p, ec] = std::from_chars(value_text.data(),
                                   value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || p != value_text.data() + value_text.size()) {
      throw FormatError(where + "value '" + value_text + "' is not a number");
    }
    constexpr double kIntegrality = 1e-6;
    if (std::abs(value) > kIntegrality && std::abs(value - 1.0) > kIntegrality) {
      throw FormatError(where + "variable '" + name + "' has non-binary value " +
                        value_text);
    }
    const bool on = value >= 0.5;
    const char kind = name.front();
    if (name.size() < 2 || (kind != 'x' && kind != 'y' && kind != 'z' && kind != 'a') ||
        !parse_indices(std::string_view(name).substr(1), idx)) {
      throw FormatError(where + "unrecognized variable '" + name + "'");
    }
    auto in_range = [](long v, long hi) { return v >= 1 && v <= hi; };
    const long N = static_cast<long>(set.size());
    if (kind == 'a') {
      if (idx.size() != 4) throw FormatError(where + "malformed variable '" + name + "'");
      ++seen;
      continue;
    }
    if (idx.size() != 2) throw FormatError(where + "malformed variable '" + name + "'");
    const long hi = kind == 'x' ? N : kind == 'y' ? cfg.B : cfg.K;
    if (!in_range(idx[0], hi) || !in_range(idx[1], cfg.M)) {
      throw StructuralError(where + "variable '" + name + "' is out of range");
    }
    const int m = static_cast<int>(idx[1]);
    if (kind == 'x') as.X(static_cast<std::size_t>(idx[0]), m) = on;
    if (kind == 'y') as.Y(static_cast<int>(idx[0]), m) = on;
    if (kind == 'z') as.Z(static_cast<int>(idx[0]), m) = on;
    ++seen;
  }
  if (seen == 0) throw FormatError("solution file contains no variables");

  ImportResult result;
  result.verdict = verify_assignment(as, set, cfg, mode);
  if (result.verdict.ok()) result.solution = from_assignment(as);
  result.assignment = std::move(as);
  return result;
}

[[nodiscard]] inline ImportResult import_solver_solution(
    const std::string& path, const TaskSet& set, const SystemConfig& cfg,
    VerifyMode mode = VerifyMode::kUsedCores) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return import_solver_solution(in, set, cfg, mode);
}

}  // namespace mmo

#endif  // MMO_ILP_HPP
