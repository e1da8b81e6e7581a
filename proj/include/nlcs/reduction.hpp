#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "conflict.hpp"
#include "constraint.hpp"

namespace nlcs {

using BinaryMatrix = std::vector<std::vector<std::uint8_t>>;  // k rows, m columns

inline void check_binary_matrix(const BinaryMatrix& M) {
  if (M.empty() || M[0].empty()) throw std::invalid_argument("matrix must be nonempty");
  for (const auto& r : M) {
    if (r.size() != M[0].size()) throw std::invalid_argument("ragged matrix");
    bool one = false;
    for (auto e : r) {
      if (e > 1) throw std::invalid_argument("matrix entries must be 0 or 1");
      one = one || e;
    }
    if (!one) throw std::invalid_argument("every row needs a 1");
  }
}

/// Constraint i is p_i = 0 with p_i = prod_j (x - j)^(1 - M(j,i)): p_i
/// vanishes at x = j exactly when M(j,i) = 0. `multiplications`, when
/// given, receives the number of polynomial products per constraint.
inline ConstraintSystem matrix_to_system(const BinaryMatrix& M, std::vector<std::size_t>* multiplications = nullptr) {
  check_binary_matrix(M);
  const std::size_t k = M.size(), m = M[0].size();
  ConstraintSystem s;
  s.variables = {"x"};
  const MultiPoly x = MultiPoly::var(1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    MultiPoly p = MultiPoly::constant(1, 1);
    std::size_t muls = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (M[j][i]) continue;
      p = p * (x - MultiPoly::constant(1, static_cast<long>(j + 1)));
      ++muls;
    }
    if (multiplications) multiplications->push_back(muls);
    s.constraints.push_back({p, Relation::Eq, i + 1});
  }
  s.num_original = m;
  return s;
}

inline EvaluationMatrix to_evaluation_matrix(const BinaryMatrix& M) {
  EvaluationMatrix E;
  E.cols = M[0].size();
  E.rows = M;
  return E;
}

/// Size of the minimum conflict set found by the pipeline on the reduced
/// system equals the minimum cover of M.
inline bool roundtrip_check(const BinaryMatrix& M, const EngineOptions& engine = {}) {
  ConstraintSystem s = matrix_to_system(M);
  ConflictOptions opt;
  opt.engine = engine;
  opt.cover = CoverMethod::Exact;
  ConflictResult r = extract_conflict(s, opt);
  if (r.decision.status != Status::Unsat || !r.conflict) return false;
  return r.conflict->ids.size() == cover_exact(to_evaluation_matrix(M)).ids.size();
}

}  // namespace nlcs
