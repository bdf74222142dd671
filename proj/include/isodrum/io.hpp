#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "isodrum/constructions.hpp"
#include "isodrum/rational.hpp"
#include "isodrum/triples.hpp"

namespace isodrum {

/*
 * Spec files are small YAML documents with 1-based cycle strings:
 *
 *   label: psl(3,2)
 *   degree: 14
 *   generators: ["(1 2)(3 4)", "(2 5 7)"]
 *   H: ["(2 3)", ...]
 *   K: [...]
 *   construct:
 *     variant: 1
 *     n: 2
 *     T:
 *       degree: 2
 *       generators: ["(1 2)"]
 *
 * A group spec has only degree and generators; a triple spec adds H and K
 * and optionally `pair:`, the images of G's generators under a candidate
 * automorphism for the PAIR check.
 * The construct stanza takes n (variants 1 and 2) or l and k (variant 3),
 * and optionally diag_h / diag_k (one list of generator images per
 * coordinate, [] for the identity) and require_ff.
 * All parse failures, including invalid groups, throw ParseError.
 */

PermGroup parse_group_spec(std::string_view text);
std::string write_group_spec(const PermGroup& G);

/// H and K must be present.
Triple parse_triple_spec(std::string_view text);
/// The `pair:` list of a triple spec, if present.
std::optional<std::vector<Permutation>> parse_pair_candidate(std::string_view text);
/// An empty `pair` writes no `pair:` line.
std::string write_triple_spec(const Triple& t, const std::vector<Permutation>& pair = {});

/// A triple spec with a construct stanza. For variants 2 and 3 only the
/// group G is used, and H and K may be omitted.
ConstructionData parse_construct_spec(std::string_view text);
std::string write_construct_spec(const ConstructionData& d);

/// "1/32", "0.015625", "3" or "2e-3" as an exact rational. Throws ParseError.
Rational parse_rational(std::string_view text);

std::string read_file(const std::string& path);
/// Throws std::runtime_error on I/O failure.
void write_file(const std::string& path, std::string_view contents);

}  // namespace isodrum
