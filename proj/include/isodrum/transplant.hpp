#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isodrum/involution_system.hpp"
#include "isodrum/rational.hpp"
#include "isodrum/triples.hpp"

namespace isodrum {

/// Permutation matrix of p: column j has its one in row p(j).
RationalMatrix permutation_matrix(const Permutation& p);

/// Basis of {T : T P(a_mu) = P(b_mu) T for all mu}, T of size deg(b) x deg(a).
/// Solved as a sparse exact linear system.
std::vector<RationalMatrix> intertwiner_basis(std::span<const Permutation> a,
                                              std::span<const Permutation> b);

enum class Invertibility {
  Invertible,            // an element with nonzero determinant was found
  ProvedSingular,        // the representations are inequivalent
  SearchExhausted,       // equivalent by the dimension test, yet no element found
};
std::string to_string(Invertibility v);

struct TransplantationSolution {
  RationalMatrix T;  // invertible when possible, else the first basis element
  std::vector<RationalMatrix> solution_basis;
  bool invertible = false;
  Invertibility status = Invertibility::ProvedSingular;
  Rational determinant = 0;
  std::optional<Permutation> permutation_solution;
  std::size_t dim_ab = 0, dim_aa = 0, dim_bb = 0;
};

/// Intertwiners of two permutation representations of the free group on
/// the listed generators. nullopt when only T = 0 solves the equations.
std::optional<TransplantationSolution> find_intertwiner(std::span<const Permutation> a,
                                                        std::span<const Permutation> b);

/// Same for two involution systems; throws InvalidInput on a tile or side
/// count mismatch.
std::optional<TransplantationSolution> find_transplantation(const InvolutionSystem& A,
                                                            const InvolutionSystem& B);

/// T M^(mu) = N^(mu) T for every mu, by exact multiplication.
bool verify_transplantation(const RationalMatrix& T, const InvolutionSystem& A,
                            const InvolutionSystem& B);

/// A tile bijection p with p(side_mu_A(i)) = side_mu_B(p(i)) for all mu, i.
std::optional<Permutation> detect_isometry(const InvolutionSystem& A, const InvolutionSystem& B);

/// Relabeling-invariant form: the least to_text() over breadth-first
/// relabelings from every root (sides in color order).
std::string canonical_form(const InvolutionSystem& sys);

struct SystemPair {
  std::vector<Permutation> elements;  // the generating elements of G
  InvolutionSystem a;                 // action on G/H
  InvolutionSystem b;                 // action on G/K
};

/// Transplantable, nonisometric tree pairs from r-tuples of elements of G
/// acting as involutions on both coset spaces, deduplicated up to tile
/// relabeling. Requires [G:H] = [G:K] <= n_max <= 13.
std::vector<SystemPair> okada_shudo_scan(const Triple& t, std::size_t n_max, std::size_t r,
                                         const Bounds& bounds = {});

}  // namespace isodrum
