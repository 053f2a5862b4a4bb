#pragma once

#include "mqr/error.hpp"
#include "mqr/syntax.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mqr {

enum class rule
{
    // shared by both systems
    imp_i,
    imp_e,
    raa,
    bot_e,
    box_i,
    box_e,
    u_refl,
    u_symm,
    u_trans,
    // MSQR only
    u_i_from_m,
    m_ser,
    m_srefl,
    m_sub1,
    m_sub2,
    // MSPQR only
    p_u_i,
    p_trans,
    classical,
    p_sub1,
    p_sub2,
    // derived: expanded into primitive steps before checking
    neg_i,
    neg_e,
    iff_i,
    iff_e1,
    iff_e2,
    m_trans,
    and_i,
    and_e1,
    and_e2,
};

std::string_view rule_name( rule r );
std::optional< rule > rule_from_name( std::string_view name );
bool is_derived( rule r );
bool is_available( rule r, proof_system system );

// Stable reason codes of kernel diagnostics.
namespace reason {
inline constexpr std::string_view wrong_arity = "wrong-arity";
inline constexpr std::string_view schema_mismatch = "schema-mismatch";
inline constexpr std::string_view illegal_discharge = "illegal-discharge";
inline constexpr std::string_view freshness_violation = "freshness-violation";
inline constexpr std::string_view undischarged_at_theorem = "undischarged-at-theorem";
inline constexpr std::string_view wrong_system = "wrong-system";
inline constexpr std::string_view unknown_premise = "unknown-premise";
inline constexpr std::string_view unknown_derived_rule = "unknown-derived-rule";
} // namespace reason

struct rule_application
{
    rule name;
    std::vector< int > premises;
    std::vector< int > discharged;
    std::optional< label > fresh;

    friend bool operator==( const rule_application&, const rule_application& ) = default;
};

struct proof_step
{
    int id = 0;
    formula conclusion;
    // Empty for a hypothesis.
    std::optional< rule_application > justification;
    // Source line, 0 when the step was generated.
    int line = 0;

    [[nodiscard]] bool is_hypothesis() const { return !justification.has_value(); }

    friend bool operator==( const proof_step& a, const proof_step& b )
    {
        return a.id == b.id && a.conclusion == b.conclusion && a.justification == b.justification;
    }
};

// A linear, numbered derivation. Subproofs are implicit: a step depends on
// the hypotheses reachable through its premises that no step on the way
// has discharged.
struct proof_script
{
    std::optional< proof_system > system;
    std::optional< std::string > theorem_name;
    std::optional< formula > theorem;
    std::vector< proof_step > steps;

    [[nodiscard]] const proof_step* find( int id ) const;
    [[nodiscard]] int max_id() const;
};

struct diagnostic
{
    int step = 0; // 0 for script-level problems
    std::string reason;
    std::string message;
};

enum class verdict { accepted, rejected };

struct check_report
{
    verdict result = verdict::rejected;
    std::set< formula > open_assumptions;
    std::vector< diagnostic > diagnostics;

    [[nodiscard]] bool accepted() const { return result == verdict::accepted; }
    [[nodiscard]] bool has_reason( std::string_view code ) const;
};

check_report check( const proof_script& script, proof_system system );

// Primitive steps for one derived-rule step. The last returned step keeps
// the original id; intermediate steps take ids from `next_id` onwards.
// Throws mqr_error with "unknown-derived-rule", "unknown-premise" or
// "schema-mismatch".
std::vector< proof_step > expand_derived( const proof_script& script, const proof_step& step, int& next_id );
std::vector< proof_step > expand_derived( const proof_script& script, const proof_step& step );

struct expansion
{
    proof_script script;
    // generated or original id -> id of the step it came from
    std::map< int, int > origin;
    // derived steps that could not be expanded; they are kept verbatim
    std::vector< diagnostic > failures;
};

expansion expand_script( const proof_script& script );

// Undischarged hypotheses the step depends on. Throws mqr_error with
// "unknown-premise" when the step does not exist.
std::set< formula > open_assumptions( const proof_script& script, int step_id );

} // namespace mqr
