#pragma once

#include <map>
#include <string>
#include <vector>

#include "atlas/derivation.hpp"
#include "atlas/linalg.hpp"

namespace atlas {

/// Graded finite-dimensional space with a named basis in cohomological
/// degrees >= 1 (the reduced part of a connected algebra).
struct GradedBasis {
  std::vector<std::string> names;
  std::vector<int> degrees;  // cohomological, >= 1

  size_t size() const { return names.size(); }
  size_t index_of(const std::string& name) const;
  void validate() const;
};

/// Minimal C-infinity structure: sparse multilinear products m_k of
/// cohomological degree 2 - k on the reduced graded space.
class CInftyStructure {
 public:
  struct Term {
    std::vector<size_t> in;  // arity = in.size()
    size_t out;
    Scalar coeff;
  };

  CInftyStructure(GradedBasis basis, bool minimal = true);

  const GradedBasis& basis() const { return basis_; }
  bool minimal() const { return minimal_; }
  size_t max_arity() const;

  /// Adds coeff * (e_{in_1},...,e_{in_k} -> e_out); degree 2-k enforced.
  void add_term(const std::vector<size_t>& in, size_t out, const Scalar& coeff);

  /// m_k applied to basis elements; zero vector if absent.
  Vec product(const std::vector<size_t>& in) const;
  const std::map<std::vector<size_t>, Vec>& terms() const { return terms_; }

  bool operator==(const CInftyStructure& other) const;

 private:
  GradedBasis basis_;
  bool minimal_;
  std::map<std::vector<size_t>, Vec> terms_;  // input word -> output coords
};

struct CInftyCheckReport {
  bool ok = true;
  bool degree_ok = true;    // enforced at construction; retained for reporting
  bool ainfty_ok = true;    // A-infinity relations up to arity 2K-1
  bool shuffle_ok = true;   // vanishing on nontrivial shuffles
  std::string detail;
};

/// Direct evaluation of every A-infinity relation (arity <= 2K-1) and every
/// shuffle-vanishing condition on basis inputs.
CInftyCheckReport check_cinfty(const CInftyStructure& m);

/// The dual bar-construction differential on the free Lie algebra over
/// W = H[-1] (generator per basis element, homological degree c - 1).
ChenDifferential chen_delta_from_cinfty(const CInftyStructure& m,
                                        const WeightTruncation& trunc);

/// Inverse dictionary: reads the products back off a Chen differential.
CInftyStructure cinfty_from_delta(const ChenDifferential& delta, const GradedBasis& basis);

/// Generators W = H[-1] for a graded basis.
GeneratorSetPtr suspended_generators(const GradedBasis& basis);

/// Finite-dimensional commutative DGA with explicit structure constants.
struct DGAModel {
  GradedBasis basis;
  MatQ d;  // cohomological degree +1; column j = d(e_j)
  std::map<std::pair<size_t, size_t>, Vec> products;  // (i,j) -> coords of e_i e_j

  Vec product(size_t i, size_t j) const;
  /// d^2 = 0, graded commutativity, associativity, Leibniz; throws on failure.
  void validate() const;
};

/// The formal DGA (H, d = 0, product = m_2) of a C-infinity structure.
DGAModel formal_dga(const CInftyStructure& m);

}  // namespace atlas
