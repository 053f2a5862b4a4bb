#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace mqr {

enum class proof_system { msqr, mspqr };

// U: unitary transformation, M: total measurement, P: generic measurement.
enum class relation { u, m, p };

std::string_view to_string( proof_system system );
std::string_view to_string( relation rel );
std::optional< proof_system > system_from_string( std::string_view text );

// U is shared; M belongs to MSQR only and P to MSPQR only.
bool is_legal( relation rel, proof_system system );

struct label
{
    std::string name;

    friend auto operator<=>( const label&, const label& ) = default;
};

bool is_identifier( std::string_view text );

// Modal formula over the primitive connectives only: bot, propositions,
// implication and one box per relation. Nodes are immutable and shared.
class mformula
{
public:
    enum class kind { bottom, prop, implies, box };

    static mformula bottom();
    static mformula prop( std::string name );
    static mformula implies( mformula lhs, mformula rhs );
    static mformula box( relation rel, mformula body );

    [[nodiscard]] kind node_kind() const;
    [[nodiscard]] bool is( kind k ) const { return node_kind() == k; }

    // prop only
    [[nodiscard]] const std::string& name() const;
    // box only
    [[nodiscard]] relation rel() const;
    [[nodiscard]] const mformula& body() const;
    // implies only
    [[nodiscard]] const mformula& lhs() const;
    [[nodiscard]] const mformula& rhs() const;

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::size_t depth() const;

    friend bool operator==( const mformula& a, const mformula& b );
    friend std::strong_ordering operator<=>( const mformula& a, const mformula& b );

private:
    struct node;
    explicit mformula( std::shared_ptr< const node > n ) : _node( std::move( n ) ) {}

    std::shared_ptr< const node > _node;
};

// Defined connectives. They build primitive trees, so e.g. diamond(r, a)
// and neg(box(r, neg(a))) are the same value.
mformula neg( mformula a );
mformula conj( mformula a, mformula b );
mformula disj( mformula a, mformula b );
mformula iff( mformula a, mformula b );
mformula diamond( relation rel, mformula a );

struct labelled
{
    label at;
    mformula body;

    friend auto operator<=>( const labelled&, const labelled& ) = default;
    friend bool operator==( const labelled&, const labelled& ) = default;
};

struct relational
{
    label from;
    relation rel;
    label to;

    friend auto operator<=>( const relational&, const relational& ) = default;
};

using formula = std::variant< labelled, relational >;

inline const labelled* as_labelled( const formula& f ) { return std::get_if< labelled >( &f ); }
inline const relational* as_relational( const formula& f ) { return std::get_if< relational >( &f ); }

bool is_legal( const mformula& a, proof_system system );
bool is_legal( const formula& f, proof_system system );

bool occurs( const label& l, const formula& f );
std::set< label > labels_of( const formula& f );
std::set< std::string > propositions_of( const mformula& a );
std::set< std::string > propositions_of( const formula& f );

// Replaces every occurrence of `from` by `to`. Modal bodies carry no labels.
formula substitute( const formula& f, const label& from, const label& to );

// Canonical ASCII rendering in primitive form; parse(print(x)) == x.
std::string print( const mformula& a );
std::string print( const formula& f );

} // namespace mqr
