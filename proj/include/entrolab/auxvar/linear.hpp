#pragma once

#include <string>
#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/network/aux_spec.hpp"

namespace entrolab::auxvar {

/// GF(q) for prime powers q <= 256. Elements are 0..q-1; for q = p^e the
/// base-p digits of an element are its polynomial coefficients.
class GaloisField {
 public:
  explicit GaloisField(int q);

  int order() const { return q_; }
  int characteristic() const { return p_; }
  int add(int a, int b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const;
  int inv(int a) const;

 private:
  int q_;
  int p_;
  std::vector<int> add_;
  std::vector<int> neg_;
  std::vector<int> exp_;
  std::vector<int> log_;
};

using Matrix = std::vector<std::vector<int>>;  // row-major, entries in GF(q)

int rank(const GaloisField& f, Matrix m);
/// Rows of a basis of the row space (reduced echelon form).
Matrix row_basis(const GaloisField& f, Matrix m);

/// Sources Y_i = (A^i)^T K with K uniform on GF(q)^m; A^i is m x d_i.
struct SubspaceModel {
  int q = 2;
  int m = 0;
  std::vector<std::string> sources;
  std::vector<Matrix> generators;
};

struct LinearAux {
  network::AuxSpec spec;  // K1..Km with their constraint rows
  SubspaceModel reduced;  // after dropping dependencies
  std::vector<std::string> warnings;
};

/// K_1..K_m over the global basis, with rows
///   h(K_a) = |a| log2 q for every nonempty a,
///   h(Y_i | K_j : row j of A^i nonzero) = 0,
///   h(Y_i) = h(K_j : row j of A^i nonzero) when rank A^i equals the number
///   of such rows, otherwise h(Y_i) = rank(A^i) log2 q.
/// Dependent generator columns are dropped, and if the stacked generators
/// have rank below m the basis is reduced to their row space (with warnings).
LinearAux linear_basis_aux(const SubspaceModel& model);

/// Joint distribution of (Y_1..Y_s, K_1..K_m), K uniform. Y symbols are the
/// field elements joined by ".".
JointDistribution linear_model_distribution(const SubspaceModel& model);

}  // namespace entrolab::auxvar
