#pragma once

// Exhaustive representation testing of binary forms by a positive definite
// lattice. Every positive answer carries vectors that are re-checked exactly;
// every negative answer is a complete enumeration.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "quinrep/enumerate.hpp"
#include "quinrep/forms.hpp"

namespace quinrep {

/// Q(v1) = a, B(v1, v2) = b, Q(v2) = c in the lattice's coordinates.
struct RepresentationCertificate {
    Vector v1;
    Vector v2;
};

/// Record of a search that found no pair. The shells are complete, so the
/// record proves non-representation.
struct ExhaustionProof {
    Int norm_a = 0;
    Int norm_c = 0;
    Int target_b = 0;
    std::size_t vectors_a = 0;
    std::size_t vectors_c = 0;
    Int enumeration_bound = 0;
    std::uint64_t pairs_checked = 0;
};

using RepresentationResult = std::variant<RepresentationCertificate, ExhaustionProof>;

inline bool is_certificate(const RepresentationResult& r)
{
    return std::holds_alternative<RepresentationCertificate>(r);
}

bool verify_certificate(const GramLattice& lattice, const Form& f, const RepresentationCertificate& cert);

/// Represented flags for every reduced form with c <= bound.
class SurveyTable {
  public:
    SurveyTable() = default;
    explicit SurveyTable(Int bound);

    Int bound() const { return bound_; }
    bool represented(const Form& reduced_form) const;
    void set(Int a, Int b, Int c, bool value);

    /// Unrepresented reduced forms sorted by (a, c, b).
    std::vector<Form> exceptions() const;

  private:
    std::vector<char>& row(Int a, Int c) { return cells_[static_cast<std::size_t>(a * (bound_ + 1) + c)]; }
    const std::vector<char>& row(Int a, Int c) const
    {
        return cells_[static_cast<std::size_t>(a * (bound_ + 1) + c)];
    }

    Int bound_ = 0;
    std::vector<std::vector<char>> cells_;
};

class RepresentationOracle {
  public:
    explicit RepresentationOracle(GramLattice lattice);

    const GramLattice& lattice() const { return lattice_; }

    /// Enumerates every shell up to bound in one pass and keeps them.
    void prepare(Int bound) const;

    /// Lexicographically sorted vectors of norm m; memoized.
    std::shared_ptr<const std::vector<Coords>> shell(Int m) const;

    /// Lexicographically smallest (v1, v2) or an exhaustion proof.
    RepresentationResult represents(const Form& f) const;

    bool is_represented(const Form& f) const { return is_certificate(represents(f)); }

    /// Deterministic for any worker count.
    SurveyTable survey(Int bound, unsigned workers = 1) const;

    std::vector<Form> exceptions_up_to(Int bound, unsigned workers = 1) const;

  private:
    GramLattice lattice_;
    mutable std::mutex mutex_;
    mutable std::map<Int, std::shared_ptr<const std::vector<Coords>>> shells_;
    mutable Int prepared_ = -1;
};

} // namespace quinrep
