#pragma once

#include "mqr/kernel.hpp"
#include "mqr/search.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mqr {

// One manifest line:  <name> <MSQR|MSPQR> <script path> accepted|rejected:<reason>
// Paths are relative to the manifest's directory.
struct corpus_entry
{
    std::string name;
    proof_system system = proof_system::msqr;
    std::filesystem::path script_path;
    bool expect_accepted = true;
    std::string expected_reason; // when rejected
};

// Throws mqr_error "io" for unreadable or missing files, parse_error for
// malformed manifest lines.
std::vector< corpus_entry > load_manifest( const std::filesystem::path& manifest );

std::string read_text_file( const std::filesystem::path& path );

struct corpus_outcome
{
    corpus_entry entry;
    std::optional< proof_script > script;
    check_report report;
    std::string load_error;
    bool expectation_met = false;
    // Bounded countermodel search on accepted theorems.
    std::optional< countermodel_result > soundness;

    [[nodiscard]] bool passed() const;
};

struct corpus_summary
{
    std::vector< corpus_outcome > outcomes; // manifest order
    std::size_t accepted_theorems = 0;
    std::size_t countermodels = 0;

    [[nodiscard]] bool all_passed() const;
};

// Entries are checked concurrently; results keep manifest order.
corpus_summary run_corpus( const std::vector< corpus_entry >& entries, std::size_t soundness_worlds = 3 );

std::string format_summary( const corpus_summary& summary, bool with_reasons );

} // namespace mqr
