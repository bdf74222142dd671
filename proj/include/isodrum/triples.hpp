#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isodrum/involution_system.hpp"
#include "isodrum/perm_group.hpp"

namespace isodrum {

/// A parent group with two designated subgroups.
struct Triple {
  PermGroup G;
  PermGroup H;
  PermGroup K;
  std::string label;

  Triple() = default;
  /// Throws InvalidInput unless H and K are subgroups of G.
  Triple(PermGroup G, PermGroup H, PermGroup K, std::string label = {});
};

/// Per G-class intersection counts |g^G ∩ H| and |g^G ∩ K|.
struct ClassCount {
  Permutation representative;
  std::uint64_t class_size = 0;
  std::uint64_t in_h = 0;
  std::uint64_t in_k = 0;
};

/// Counts for every G-class meeting H or K. Uses the class table of G when
/// |G| fits the enumeration bound, otherwise fuses the elements of H and K
/// with pairwise conjugacy tests (class_size is 0 in that case).
std::vector<ClassCount> ac_class_counts(const Triple& t, const Bounds& bounds = {});

bool is_ac(const Triple& t, const Bounds& bounds = {});

struct EcResult {
  bool holds = false;
  /// Least element of H (or K) not conjugate into the other subgroup.
  std::optional<Permutation> witness;
  char witness_side = 0;  // 'H' or 'K'
};

/// Every element of H is G-conjugate into K and vice versa. Tests one
/// representative per conjugacy class of H and of K.
EcResult check_ec(const Triple& t, const Bounds& bounds = {});
inline bool is_ec(const Triple& t, const Bounds& bounds = {}) { return check_ec(t, bounds).holds; }

/// Fixed-coset counts of G's class representatives acting on G/H, in the
/// order of ConjugacyClasses(G).
struct CharacterValue {
  Permutation representative;
  std::uint64_t fixed = 0;
};
std::vector<CharacterValue> permutation_character(const PermGroup& G, const PermGroup& H,
                                                  const Bounds& bounds = {});

struct FfResult {
  bool holds = false;
  std::optional<PermGroup> witness;  // a nontrivial core
  char witness_side = 0;
};
FfResult check_ff(const Triple& t, const Bounds& bounds = {});

struct MaxResult {
  bool holds = false;
  std::optional<PermGroup> witness;  // proper intermediate subgroup
  char witness_side = 0;
};
MaxResult check_max(const Triple& t, const Bounds& bounds = {});

enum class PairStatus { Confirmed, WeakEvidence, Failed };
std::string to_string(PairStatus s);

struct PairResult {
  PairStatus status = PairStatus::Failed;
  std::string note;
  /// x in H with sigma^2(h) = x^-1 h x, when confirmed through a candidate.
  std::optional<Permutation> inner_element;
};

/// `candidate` lists images of G.generators() under a proposed automorphism.
/// Throws InvalidInput if it is not an automorphism of G.
PairResult check_pair(const Triple& t,
                      const std::optional<std::vector<Permutation>>& candidate = std::nullopt,
                      const Bounds& bounds = {});

/// r elements of G acting as involutions on G/H and G/K.
struct InvolutionWitness {
  std::vector<Permutation> elements;
  std::vector<std::size_t> fixed_points;  // on G/H, per element
  InvolutionSystem h_system;
  std::optional<InvolutionSystem> k_system;  // absent if the K-images are not involutions
};

/// Searches r elements whose images on G/H are involutions generating a
/// transitive group, with sum of fixed points (r-2)[G:H] + 2 and, when
/// `tree_required`, a tree Schreier graph. Candidates go by descending fixed
/// point count and subsets lexicographically. Returns nullopt after an
/// exhaustive search; throws BoundExceeded past bounds.involution_sets.
std::optional<InvolutionWitness> check_inv(const Triple& t, std::size_t r, bool tree_required,
                                           const Bounds& bounds = {});

/// Every side fixes at least a third of the tiles.
bool fixes_third(const InvolutionSystem& sys);

struct PropertyReport {
  std::string label;
  std::uint64_t order_g = 0, order_h = 0, order_k = 0;
  bool ac = false;
  bool ec = false;
  bool ff = false;
  bool max = false;
  PairStatus pair = PairStatus::Failed;
  std::optional<InvolutionWitness> inv;
  std::string inv_status;  // "found", "none", "bound exceeded", "skipped"
  std::map<std::string, std::string> witnesses;
  std::map<std::string, std::string> notes;

  std::string to_text() const;
  std::string to_json() const;
};

struct VerifyOptions {
  Bounds bounds;
  std::optional<std::vector<Permutation>> pair_candidate;
  bool run_inv = true;
  std::size_t inv_r = 3;
  bool inv_tree = true;
};

/// Runs every property check. Bound overruns inside MAX or INV are recorded
/// in the report; elsewhere they propagate.
PropertyReport verify(const Triple& t, const VerifyOptions& options = {});

}  // namespace isodrum
