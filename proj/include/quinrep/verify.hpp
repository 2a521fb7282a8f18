#pragma once

// Reproducible re-derivation of exception lists and auxiliary claims.
// Everything here is exhaustive within a bound C on the reduced entries; no
// report says anything about forms beyond C.

#include <map>
#include <string>
#include <vector>

#include "quinrep/escalation.hpp"
#include "quinrep/io.hpp"

namespace quinrep {

inline constexpr const char* kBoundDisclaimer =
    "Exceptions are certified only for reduced forms with c <= C; completeness beyond C is not verified.";

struct ExpectedList {
    std::string id;
    GramLattice lattice;
    std::vector<Form> forms;
};

/// Explicit path if non-empty, else $QUINREP_EXPECTED, else the installed copy.
std::vector<ExpectedList> load_expected(const std::string& path = {});
const ExpectedList& expected_for(const std::vector<ExpectedList>& lists, const std::string& id);

struct Evidence {
    Form form;
    RepresentationResult result;
};

struct TheoremReport {
    std::string id;
    GramLattice lattice;
    Int bound = 0;
    std::vector<Form> expected;
    std::vector<Form> computed;
    bool match = false;
    std::size_t forms_checked = 0;
    std::vector<Form> decide_mismatches;
    std::map<std::string, std::size_t> routes;
    std::vector<Evidence> evidence;
    double wall_seconds = 0;

    bool passed() const { return match && decide_mismatches.empty(); }
};

struct VerifyOptions {
    unsigned workers = 1;
    std::string tables_path;
    std::string expected_path;
};

/// Survey of every reduced form with c <= bound, compared with the expected
/// list and cross-checked against the escalation decision.
TheoremReport verify_theorem(const std::string& id, Int bound, const VerifyOptions& opts = {});

struct Table1Entry {
    GramLattice lattice;
    int box = 0;
    std::vector<Form> exceptions;
};

struct Table1Report {
    Int bound = 0;
    std::vector<Table1Entry> entries;
    double wall_seconds = 0;

    /// First box empty, the others nonempty.
    bool passed() const;
};

/// The fourteen diagonal quinary lattices, grouped in three boxes.
std::vector<std::pair<GramLattice, int>> table1_lattices();

Table1Report verify_table1(Int bound, unsigned workers = 1);

struct SublatticeEntry {
    Form exception;
    Int index = 1;
    Form sublattice;
    RepresentationResult result;
    /// The sublattice is itself on the exception list.
    bool listed = false;
};

struct SublatticeReport {
    std::string id;
    int max_power = 0;
    /// index 1 entries are the exceptions themselves and must fail; proper
    /// sublattices must be represented unless they are listed exceptions.
    std::vector<SublatticeEntry> entries;

    bool passed() const;
};

SublatticeReport verify_sublattice_claim(const std::string& id, int max_power, const VerifyOptions& opts = {});

struct KExceptionsReport {
    Matrix embedding;
    bool embedding_verified = false;
    std::vector<Evidence> in_k21;
    std::vector<Evidence> scaled_in_l;

    bool passed() const;
};

KExceptionsReport verify_k_exceptions();

Json to_json(const TheoremReport& r);
Json to_json(const Table1Report& r);
Json to_json(const SublatticeReport& r);
Json to_json(const KExceptionsReport& r);

std::string to_text(const TheoremReport& r);
std::string to_text(const Table1Report& r);
std::string to_text(const SublatticeReport& r);
std::string to_text(const KExceptionsReport& r);

} // namespace quinrep
