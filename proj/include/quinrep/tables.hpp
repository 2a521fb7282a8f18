#pragma once

// Congruence rule tables: residue conditions on (a, b, c, s, t) under which the
// shifted form ℓ_{s,t} is locally represented at one prime. Tables are data,
// loaded from a versioned JSON file.

#include <optional>
#include <string>
#include <vector>

#include "quinrep/forms.hpp"

namespace quinrep {

enum class RuleVar { a, b, c, s, t, ac, st };

/// (vars mod modulus) must equal one of the allowed tuples.
struct RuleAtom {
    std::vector<RuleVar> vars;
    Int modulus = 1;
    std::vector<std::vector<Int>> allowed;

    bool holds(const Form& f, Int s, Int t) const;
};

/// Holds when every atom of some clause holds.
struct Rule {
    std::string label;
    std::vector<std::vector<RuleAtom>> clauses;

    bool holds(const Form& f, Int s, Int t) const;
};

struct ResidueModuli {
    Int a = 1, b = 1, c = 1, s = 1, t = 1;
};

struct RuleTable {
    std::string id;
    Int prime = 0;
    std::vector<Int> shifts;
    bool assumes_maximal = false;
    std::vector<Rule> rules;

    /// Label of the first matching rule.
    std::optional<std::string> match(const Form& f, Int s, Int t) const;

    /// Smallest moduli that determine every atom.
    ResidueModuli moduli() const;
};

/// Which residue classes coverage_check examines, judged at the table's prime.
/// primitive: p ∤ gcd(a, b, c). maximal: no integral overlattice of index p,
/// the sense in which the tables call a form ℤ_p-primitive.
enum class CoverageFilter { all, primitive, maximal };

/// A class a ≡ a0 (mod ma), b ≡ b0 (mod mb), c ≡ c0 (mod mc).
struct ResidueClass {
    Int a = 0, b = 0, c = 0;
    Int mod_a = 1, mod_b = 1, mod_c = 1;

    bool operator==(const ResidueClass&) const = default;
};

class RuleBook {
  public:
    RuleBook() = default;

    static RuleBook from_file(const std::string& path);
    static RuleBook from_json_text(const std::string& text);

    /// Explicit path if non-empty, else $QUINREP_TABLES, else the installed copy.
    static RuleBook load(const std::string& path = {});
    static std::string default_path();

    int version() const { return version_; }
    const std::vector<RuleTable>& tables() const { return tables_; }

    /// Throws std::out_of_range for an unknown id.
    const RuleTable& table(const std::string& id) const;

    bool check_rule(const std::string& table_id, const Form& f, Int s, Int t) const;

    /// Residue classes of (a, b, c) passing the filter for which no (s, t)
    /// satisfies any rule. With mirror, a class also counts as covered when
    /// [c, b, a] is, since [a, b, c] ≅ [c, b, a] carries ℓ_{s,t} to ℓ'_{t,s}.
    std::vector<ResidueClass> coverage_check(const std::string& table_id,
                                             CoverageFilter filter = CoverageFilter::all, bool mirror = false) const;

  private:
    int version_ = 0;
    std::vector<RuleTable> tables_;
};

} // namespace quinrep
