#pragma once

// Generators and brute-force references shared by the unit tests and the
// acceptance runner.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "polydl/model.hpp"
#include "polydl/syntax.hpp"

namespace polydl::testing {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n);

/// Random core concept over `sig` of modal depth <= depth with counts in
/// 1..max_k and permutation words of length <= 2. With `sugar`, shorthands
/// appear too. Past `max_nodes` nodes only literals are drawn.
Concept random_concept(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k,
                       bool sugar = false, std::size_t max_nodes = 12);

/// Random ALCQI concept over the binary roles of `sig` (and their inverses).
AlcqiConcept random_alcqi(Rng& rng, const Signature& sig, std::size_t depth, std::size_t max_k,
                          std::size_t max_nodes = 12);

/// Every ALC concept (E, not, and, top, bot, atoms; binary roles) with at
/// most `max_size` nodes and modal depth <= max_depth.
std::vector<Concept> all_alc_concepts(const Signature& sig, std::size_t max_size,
                                      std::size_t max_depth);

/// Every term over the unary and binary atoms of `sig` plus top and bot,
/// built with neg1 and cap1, with at most `max_size` nodes.
std::vector<GraTerm> all_gra2_terms(const Signature& sig, std::size_t max_size);

/// Concepts with role arity <= 3, depth <= 2 and counts <= 3: systematic
/// clash and counting patterns followed by seeded random concepts, `size`
/// in total, deduplicated.
std::vector<Concept> sat_corpus(std::size_t size, std::uint64_t seed);

/// Tries every interpretation of signature_of(c) with at most `max_domain`
/// elements. Only for tiny signatures.
std::optional<Interp> brute_force_sat(const Concept& c, std::size_t max_domain);

/// Calls f on every interpretation of `sig` over domain d0..d{n-1} until f
/// returns true; returns whether it did.
bool for_each_interp(const Signature& sig, std::size_t n, const std::function<bool(Interp&)>& f);
/// All interpretations of `sig` over domain d0..d{n-1}.
std::vector<Interp> all_interps(const Signature& sig, std::size_t n);

}  // namespace polydl::testing
