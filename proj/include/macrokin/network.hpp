#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace macrokin {

using Count = long long;

// One reaction channel: consume alpha, produce beta, mass-action constant K.
// alpha/beta are dense per-species copy numbers (small non-negative integers).
struct Reaction {
  std::vector<Count> alpha;
  std::vector<Count> beta;
  double rate = 0.0;
};

struct ReactionNetwork {
  std::vector<std::string> species;
  std::vector<Reaction> reactions;

  std::size_t size() const { return species.size(); }
  int species_index(const std::string& name) const;  // -1 if absent
};

// Primitive integer left-null-space basis of the stoichiometry: every row mu
// satisfies <mu, beta - alpha> = 0 for all reactions, entries are coprime and
// the leading nonzero entry is positive.
struct ConservationBasis {
  std::vector<std::vector<Count>> vectors;

  std::size_t dimension() const { return vectors.size(); }
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

// Text grammar, one reaction per line:
//   species: A B C            (optional declaration; fixes order, catches typos)
//   2 A + B -> C @ 0.5
//   0 -> A @ 1                ("0" denotes the empty side)
// '#' starts a comment. Identifiers are [A-Za-z_][A-Za-z0-9_]*, coefficients
// positive integers, rates positive reals. alpha == beta is rejected.
ReactionNetwork parse_network(const std::string& text);

// Canonical form: parse(format(net)) reproduces net exactly. The species
// declaration is emitted only when reactions alone would not pin the order.
std::string format_network(const ReactionNetwork& net);

// Throws std::invalid_argument on structural problems (empty network, length
// mismatches, negative coefficients, non-positive rates, alpha == beta).
void validate_network(const ReactionNetwork& net);

// Exact rational Gauss elimination; no floating point involved.
ConservationBasis conservation_laws(const ReactionNetwork& net);

// <mu_k, n> for each basis vector; exact integer arithmetic.
std::vector<Count> invariant_values(const ConservationBasis& basis,
                                    const std::vector<Count>& n);

}  // namespace macrokin
