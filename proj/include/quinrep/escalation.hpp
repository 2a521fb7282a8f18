#pragma once

// The escalation decision for ℓ -> L = M ⊥ ⟨n⟩.
//
// Small forms go straight to the exhaustive oracle on L. Otherwise a shift
// (s, t) is chosen so that ℓ_{s,t} = ℓ - n·(s, t)ᵗ(s, t) is positive definite
// and locally represented by M at every prime (congruence tables at the
// primes of 2dM, a coprimality condition elsewhere); a representation of
// ℓ_{s,t} by M then extends by (s, t) in the ⟨n⟩ coordinate. When 7 divides
// the scale of ℓ under ⟨1,1,1,3,7⟩ the search runs on ℓ/7 against K ⊥ ⟨21⟩
// and is carried into L by a fixed embedding of (K ⊥ ⟨21⟩)^7. Every path
// that fails falls back to the oracle on L, so the outcome is always exact.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quinrep/local.hpp"
#include "quinrep/oracle.hpp"
#include "quinrep/tables.hpp"

namespace quinrep {

/// Shift search parameters against a quaternary target.
struct ShiftSearch {
    GramLattice target;
    Int n = 0;
    std::vector<std::string> tables;
    /// Prime exempt from the coprimality condition.
    std::optional<Int> hard_prime;
    std::vector<Int> s_candidates{1, 2};
    Int t_cap = 4096;
};

struct ScaledRouteConfig {
    Int scale = 7;
    ShiftSearch search;
    /// The residues of dℓ′ mod scale for which the route is attempted.
    std::vector<Int> residues{1, 2, 4};
};

struct EscalationConfig {
    std::string id;
    GramLattice lattice;
    ShiftSearch search;
    Int direct_threshold = 30;
    std::optional<ScaledRouteConfig> scaled;

    static EscalationConfig theorem2();
    static EscalationConfig theorem3a();
    static EscalationConfig theorem3b();
    /// "T2", "T3a" or "T3b" (case-insensitive).
    static EscalationConfig by_id(const std::string& id);
};

/// ⟨1⟩ ⊥ [[2,1,0],[1,2,1],[0,1,3]], determinant 7.
GramLattice auxiliary_k();

struct ShiftChoice {
    Int s = 0;
    Int t = 0;
    Form shifted;
    std::vector<std::string> rules;
};

/// First (s, t), s in the candidate order and t = 0, 1, -1, 2, -2, ..., such
/// that every table accepts ℓ or its mirror, the coprimality condition holds
/// and ℓ_{s,t} is positive definite. nullopt means "no shift found", never
/// "not represented".
std::optional<ShiftChoice> find_st(const Form& reduced_form, const ShiftSearch& search, const RuleBook& book);

enum class Route { direct_oracle, st_escalation, scaled_k_route };

std::string route_name(Route r);

struct Decision {
    Form input;
    Form reduced;
    bool represented = false;
    Route route = Route::direct_oracle;
    std::optional<ShiftChoice> shift;
    /// In the coordinates of L and of the input form.
    std::optional<RepresentationCertificate> certificate;
    std::optional<ExhaustionProof> proof;
};

/// Columns give a basis image X with XᵗG X equal to the requested Gram matrix.
struct Embedding {
    Matrix map;
};

/// Lexicographically first X (columns chosen in order, each from a sorted
/// shell) with XᵗG_target X = gram, or nullopt.
std::optional<Embedding> find_embedding(const RepresentationOracle& target, const Matrix& gram);

bool verify_embedding(const GramLattice& target, const Matrix& gram, const Embedding& e);

class Escalator {
  public:
    explicit Escalator(EscalationConfig cfg, RuleBook book = RuleBook::load());

    const EscalationConfig& config() const { return cfg_; }
    const RepresentationOracle& oracle() const { return *l_oracle_; }

    Decision decide(const Form& f) const;

    /// Theorem-2 configuration only; ℓ must be reduced with 7 | scale.
    Decision scaled_route(const Form& reduced_form) const;

    /// The cached embedding of (K ⊥ ⟨21⟩)^scale into L. Throws for configs
    /// without a scaled route.
    const Embedding& fixed_embedding() const;

  private:
    Decision direct(const Form& reduced_form) const;

    EscalationConfig cfg_;
    RuleBook book_;
    std::shared_ptr<RepresentationOracle> l_oracle_;
    std::shared_ptr<RepresentationOracle> m_oracle_;
    std::shared_ptr<RepresentationOracle> k_oracle_;
    std::shared_ptr<RepresentationOracle> k21_oracle_;
    std::optional<Embedding> embedding_;
};

/// Convenience wrapper for one-off decisions.
Decision decide(const Form& f, const EscalationConfig& cfg);

/// Searches for the fixed embedding and checks it exactly; throws if the
/// scaled lattice does not embed.
Embedding verify_fixed_embedding(const EscalationConfig& cfg);

} // namespace quinrep
