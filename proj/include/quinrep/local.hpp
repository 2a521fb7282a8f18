#pragma once

// p-adic representability of binary forms by quaternary lattices.
//
// For p ∤ 2·dM the answer comes from the odd Jordan splitting of the form:
// when dM is a nonsquare mod p, the only obstruction is that the form lives on
// the anisotropic plane ⟨p, -pΔ⟩. For p | 2·dM a Hensel lifting search decides
// the question exactly (see LiftingSearch).

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "quinrep/forms.hpp"

namespace quinrep {

/// Legendre symbol (d/p) for an odd prime p.
int legendre(Int d, Int p);

/// Least positive quadratic nonresidue modulo the odd prime p.
Int nonsquare_unit(Int p);

struct PrimeSet {
    Int discriminant = 0;
    Int bound = 0;
    std::vector<Int> primes;

    bool contains(Int p) const;
};

/// Primes p <= bound with p ∤ 2·dM and (dM/p) = -1.
PrimeSet prime_set(Int dM, Int bound);

/// p does not divide the scale gcd(a, b, c).
bool is_primitive(const Form& f, Int p);

/// No integral lattice contains f with index p. For p = 2 this is the sense in
/// which the congruence tables call a form ℤ_2-primitive.
bool is_maximal(const Form& f, Int p);

/// ⟨u1·p^e1, u2·p^e2⟩ over ℤ_p, p odd. unit classes are Legendre symbols.
struct OddJordan {
    int order1 = 0;
    int class1 = 1;
    int order2 = 0;
    int class2 = 1;
};

OddJordan jordan_split_odd(const Form& f, Int p);

/// True iff f ⊗ ℤ_p is isometric to a sublattice of ⟨p, -pΔ⟩. delta must be a
/// nonsquare unit mod p; the answer does not depend on which one.
bool embeds_in_anisotropic_plane(const Form& f, Int p, Int delta);

/// Exact decision of f ⊗ ℤ_p -> m ⊗ ℤ_p by Hensel lifting.
///
/// A representation X (n×2) of H is reduced to a primitive one of an integral
/// overlattice of f. For a primitive X let p^α1 | p^α2 be the elementary
/// divisors of XᵗS; then α1 + α2 <= v_p(dM), and any solution modulo p^k with
/// k >= 2·α2 + 1 + [p = 2] lifts to ℤ_p. ("Solution modulo p^k" means
/// off-diagonal residues vanish mod p^k and, for p = 2, diagonal residues mod
/// 2^(k+1).) The search walks the solution tree level by level, each level an
/// affine system over 𝔽_p, down to depth 2·v_p(dM) + 1 + [p = 2].
class LiftingSearch {
  public:
    LiftingSearch(const GramLattice& m, Int p);

    bool represents(const Form& f) const;
    bool primitively_represents(const Form& f) const;

    int max_depth() const { return max_depth_; }

  private:
    bool search_uncached(const Form& f) const;

    int rank_;
    Int p_;
    int max_depth_;
    Int key_modulus_;
    Int gram_[5][5]{};
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<Int, Int, Int>, bool> memo_;
};

bool lifting_represents(const GramLattice& m, const Form& f, Int p);

/// Local representability by a quaternary lattice at every prime, with the
/// lifting searches cached per prime.
class LocalOracle {
  public:
    explicit LocalOracle(GramLattice m);

    const GramLattice& lattice() const { return m_; }

    bool represents(const Form& f, Int p) const;

    /// Primes dividing 2·dM or dℓ: outside them both sides are unimodular and
    /// the answer is always yes.
    std::vector<Int> relevant_primes(const Form& f) const;

    bool represents_everywhere(const Form& f) const;

  private:
    const LiftingSearch& lifter(Int p) const;

    GramLattice m_;
    mutable std::mutex mutex_;
    mutable std::map<Int, std::unique_ptr<LiftingSearch>> lifters_;
};

/// One-shot form of LocalOracle::represents. m must be quaternary.
bool local_represents(const GramLattice& m, const Form& f, Int p);

} // namespace quinrep
