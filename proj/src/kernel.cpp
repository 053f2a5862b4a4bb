#include "mqr/kernel.hpp"

#include <algorithm>
#include <unordered_map>

namespace mqr {

namespace {

struct step_state
{
    formula conclusion;
    bool hypothesis = false;
    std::set< int > open;                // hypothesis ids still undischarged
    std::set< int > discharged_upstream; // hypotheses discharged on some path to here
};

struct failure
{
    std::string_view code;
    std::string message;
};

using verdict_of_rule = std::optional< failure >;

std::string show( const formula& f ) { return "'" + print( f ) + "'"; }

failure mismatch( std::string message ) { return { reason::schema_mismatch, std::move( message ) }; }

std::size_t arity( rule r )
{
    switch ( r )
    {
    case rule::u_refl: return 0;
    case rule::imp_e:
    case rule::box_e:
    case rule::u_trans:
    case rule::p_trans: return 2;
    case rule::m_sub1:
    case rule::m_sub2:
    case rule::p_sub1:
    case rule::p_sub2: return 3;
    default: return 1;
    }
}

bool may_discharge( rule r )
{
    return r == rule::imp_i || r == rule::raa || r == rule::box_i || r == rule::m_ser || r == rule::classical;
}

// Everything one rule check needs to know about a step.
struct rule_context
{
    const proof_step& step;
    std::vector< const formula* > premises;
    std::vector< std::pair< int, const formula* > > discharged;
    // open assumptions of the step itself, i.e. after discharging
    std::vector< const formula* > remaining_open;

    const labelled* premise_labelled( std::size_t i ) const { return as_labelled( *premises[ i ] ); }
    const relational* premise_relational( std::size_t i ) const { return as_relational( *premises[ i ] ); }
    const labelled* conclusion_labelled() const { return as_labelled( step.conclusion ); }
    const relational* conclusion_relational() const { return as_relational( step.conclusion ); }

    bool label_in_open( const label& l ) const
    {
        return std::any_of( remaining_open.begin(), remaining_open.end(),
                            [ & ]( const formula* f ) { return occurs( l, *f ); } );
    }

    verdict_of_rule discharges_only( const formula& expected ) const
    {
        for ( const auto& [ id, f ] : discharged )
            if ( *f != expected )
                return failure{ reason::illegal_discharge, "hypothesis " + std::to_string( id ) + " " + show( *f )
                                                               + " cannot be discharged here; expected "
                                                               + show( expected ) };
        return std::nullopt;
    }

    // Eigenlabel conditions shared by BoxI, Mser and Class.
    verdict_of_rule fresh( const label& eigen, const std::optional< label >& principal,
                           const formula* must_avoid ) const
    {
        const auto& declared = step.justification->fresh;
        if ( declared && principal && *declared == *principal )
            return failure{ reason::freshness_violation,
                            "fresh label '" + declared->name + "' is the principal label" };
        if ( declared && *declared != eigen )
            return failure{ reason::freshness_violation,
                            "declared fresh label '" + declared->name + "' but the rule introduces '" + eigen.name
                                + "'" };
        if ( principal && eigen == *principal )
            return failure{ reason::freshness_violation, "label '" + eigen.name + "' must differ from '"
                                                             + principal->name + "'" };
        if ( must_avoid && occurs( eigen, *must_avoid ) )
            return failure{ reason::freshness_violation,
                            "label '" + eigen.name + "' occurs in the conclusion " + show( *must_avoid ) };
        if ( label_in_open( eigen ) )
            return failure{ reason::freshness_violation,
                            "label '" + eigen.name + "' occurs in an open assumption" };
        return std::nullopt;
    }
};

bool is_rel( const relational* r, relation rel ) { return r && r->rel == rel; }

verdict_of_rule check_imp_i( const rule_context& c )
{
    const auto* concl = c.conclusion_labelled();
    const auto* prem = c.premise_labelled( 0 );
    if ( !concl || !concl->body.is( mformula::kind::implies ) )
        return mismatch( "conclusion must be x : A -> B" );
    if ( !prem || prem->at != concl->at || prem->body != concl->body.rhs() )
        return mismatch( "premise must be " + show( labelled{ concl->at, concl->body.rhs() } ) );
    return c.discharges_only( labelled{ concl->at, concl->body.lhs() } );
}

verdict_of_rule check_imp_e( const rule_context& c )
{
    const auto* major = c.premise_labelled( 0 );
    const auto* minor = c.premise_labelled( 1 );
    const auto* concl = c.conclusion_labelled();
    if ( !major || !major->body.is( mformula::kind::implies ) )
        return mismatch( "first premise must be x : A -> B" );
    if ( !minor || minor->at != major->at || minor->body != major->body.lhs() )
        return mismatch( "second premise must be " + show( labelled{ major->at, major->body.lhs() } ) );
    if ( !concl || concl->at != major->at || concl->body != major->body.rhs() )
        return mismatch( "conclusion must be " + show( labelled{ major->at, major->body.rhs() } ) );
    return std::nullopt;
}

verdict_of_rule check_raa( const rule_context& c )
{
    const auto* prem = c.premise_labelled( 0 );
    const auto* concl = c.conclusion_labelled();
    if ( !prem || !prem->body.is( mformula::kind::bottom ) )
        return mismatch( "premise must be y : bot" );
    if ( !concl )
        return mismatch( "conclusion must be a labelled formula" );
    return c.discharges_only( labelled{ concl->at, neg( concl->body ) } );
}

verdict_of_rule check_bot_e( const rule_context& c )
{
    const auto* prem = c.premise_labelled( 0 );
    if ( !prem || !prem->body.is( mformula::kind::bottom ) )
        return mismatch( "premise must be x : bot" );
    return std::nullopt;
}

verdict_of_rule check_box_i( const rule_context& c )
{
    const auto* concl = c.conclusion_labelled();
    const auto* prem = c.premise_labelled( 0 );
    if ( !concl || !concl->body.is( mformula::kind::box ) )
        return mismatch( "conclusion must be a boxed formula" );
    if ( !prem || prem->body != concl->body.body() )
        return mismatch( "premise must be y : " + print( concl->body.body() ) );
    const label& x = concl->at;
    const label& y = prem->at;
    if ( auto bad = c.discharges_only( relational{ x, concl->body.rel(), y } ) )
        return bad;
    return c.fresh( y, x, nullptr );
}

verdict_of_rule check_box_e( const rule_context& c )
{
    const auto* boxed = c.premise_labelled( 0 );
    const auto* access = c.premise_relational( 1 );
    const auto* concl = c.conclusion_labelled();
    if ( !boxed || !boxed->body.is( mformula::kind::box ) )
        return mismatch( "first premise must be a boxed formula" );
    if ( !is_rel( access, boxed->body.rel() ) || access->from != boxed->at )
        return mismatch( "second premise must be " + boxed->at.name + " "
                         + std::string( to_string( boxed->body.rel() ) ) + " y" );
    if ( !concl || concl->at != access->to || concl->body != boxed->body.body() )
        return mismatch( "conclusion must be " + show( labelled{ access->to, boxed->body.body() } ) );
    return std::nullopt;
}

verdict_of_rule check_u_refl( const rule_context& c )
{
    const auto* concl = c.conclusion_relational();
    if ( !is_rel( concl, relation::u ) || concl->from != concl->to )
        return mismatch( "conclusion must be x U x" );
    return std::nullopt;
}

verdict_of_rule check_u_symm( const rule_context& c )
{
    const auto* prem = c.premise_relational( 0 );
    const auto* concl = c.conclusion_relational();
    if ( !is_rel( prem, relation::u ) )
        return mismatch( "premise must be x U y" );
    if ( !is_rel( concl, relation::u ) || concl->from != prem->to || concl->to != prem->from )
        return mismatch( "conclusion must be " + show( relational{ prem->to, relation::u, prem->from } ) );
    return std::nullopt;
}

verdict_of_rule check_transitive( const rule_context& c, relation rel )
{
    const auto* first = c.premise_relational( 0 );
    const auto* second = c.premise_relational( 1 );
    const auto* concl = c.conclusion_relational();
    if ( !is_rel( first, rel ) || !is_rel( second, rel ) || first->to != second->from )
        return mismatch( "premises must be x R y and y R z" );
    if ( !is_rel( concl, rel ) || concl->from != first->from || concl->to != second->to )
        return mismatch( "conclusion must be " + show( relational{ first->from, rel, second->to } ) );
    return std::nullopt;
}

// x M y |- x U y and x P y |- x U y
verdict_of_rule check_into_u( const rule_context& c, relation from )
{
    const auto* prem = c.premise_relational( 0 );
    const auto* concl = c.conclusion_relational();
    if ( !is_rel( prem, from ) )
        return mismatch( "premise must be x " + std::string( to_string( from ) ) + " y" );
    if ( !is_rel( concl, relation::u ) || concl->from != prem->from || concl->to != prem->to )
        return mismatch( "conclusion must be " + show( relational{ prem->from, relation::u, prem->to } ) );
    return std::nullopt;
}

verdict_of_rule check_m_srefl( const rule_context& c )
{
    const auto* prem = c.premise_relational( 0 );
    const auto* concl = c.conclusion_relational();
    if ( !is_rel( prem, relation::m ) )
        return mismatch( "premise must be x M y" );
    if ( !is_rel( concl, relation::m ) || concl->from != prem->to || concl->to != prem->to )
        return mismatch( "conclusion must be " + show( relational{ prem->to, relation::m, prem->to } ) );
    return std::nullopt;
}

verdict_of_rule check_sub( const rule_context& c, relation rel, bool forward )
{
    const auto* loop = c.premise_relational( 1 );
    const auto* step = c.premise_relational( 2 );
    if ( !is_rel( loop, rel ) || loop->from != loop->to )
        return mismatch( "second premise must be x " + std::string( to_string( rel ) ) + " x" );
    if ( !is_rel( step, rel ) || step->from != loop->from )
        return mismatch( "third premise must be " + loop->from.name + " " + std::string( to_string( rel ) ) + " y" );
    const auto& x = step->from;
    const auto& y = step->to;
    const auto expected = forward ? substitute( *c.premises[ 0 ], x, y ) : substitute( *c.premises[ 0 ], y, x );
    if ( c.step.conclusion != expected )
        return mismatch( "conclusion must be " + show( expected ) );
    return std::nullopt;
}

verdict_of_rule check_m_ser( const rule_context& c )
{
    if ( c.step.conclusion != *c.premises[ 0 ] )
        return mismatch( "conclusion must repeat the premise" );
    if ( c.discharged.empty() )
        return std::nullopt;
    const auto* hyp = as_relational( *c.discharged.front().second );
    if ( !is_rel( hyp, relation::m ) )
        return failure{ reason::illegal_discharge, "Mser discharges a hypothesis x M y" };
    if ( auto bad = c.discharges_only( *hyp ) )
        return bad;
    return c.fresh( hyp->to, hyp->from, &c.step.conclusion );
}

verdict_of_rule check_classical( const rule_context& c )
{
    if ( c.step.conclusion != *c.premises[ 0 ] )
        return mismatch( "conclusion must repeat the premise" );
    if ( c.discharged.empty() )
        return std::nullopt;

    std::optional< label > eigen;
    std::optional< label > principal;
    for ( const auto& [ id, f ] : c.discharged )
    {
        const auto* hyp = as_relational( *f );
        const auto bad = failure{ reason::illegal_discharge,
                                  "hypothesis " + std::to_string( id ) + " " + show( *f )
                                      + " is not of the form x P y or y P y" };
        if ( !is_rel( hyp, relation::p ) || ( eigen && hyp->to != *eigen ) )
            return bad;
        eigen = hyp->to;
        if ( hyp->from != hyp->to )
        {
            if ( principal && *principal != hyp->from )
                return bad;
            principal = hyp->from;
        }
    }
    return c.fresh( *eigen, principal, &c.step.conclusion );
}

verdict_of_rule check_rule( const rule_context& c )
{
    switch ( c.step.justification->name )
    {
    case rule::imp_i: return check_imp_i( c );
    case rule::imp_e: return check_imp_e( c );
    case rule::raa: return check_raa( c );
    case rule::bot_e: return check_bot_e( c );
    case rule::box_i: return check_box_i( c );
    case rule::box_e: return check_box_e( c );
    case rule::u_refl: return check_u_refl( c );
    case rule::u_symm: return check_u_symm( c );
    case rule::u_trans: return check_transitive( c, relation::u );
    case rule::u_i_from_m: return check_into_u( c, relation::m );
    case rule::m_ser: return check_m_ser( c );
    case rule::m_srefl: return check_m_srefl( c );
    case rule::m_sub1: return check_sub( c, relation::m, true );
    case rule::m_sub2: return check_sub( c, relation::m, false );
    case rule::p_u_i: return check_into_u( c, relation::p );
    case rule::p_trans: return check_transitive( c, relation::p );
    case rule::classical: return check_classical( c );
    case rule::p_sub1: return check_sub( c, relation::p, true );
    case rule::p_sub2: return check_sub( c, relation::p, false );
    default: return std::nullopt; // derived, diagnosed during expansion
    }
}

// Walks a primitive script once, tracking dependencies. Diagnostics are
// only collected when a system is given.
class analysis
{
public:
    analysis( const proof_script& script, std::optional< proof_system > system ) : _system( system )
    {
        for ( const auto& step : script.steps )
            visit( step );
    }

    [[nodiscard]] const step_state* state( int id ) const
    {
        const auto it = _states.find( id );
        return it == _states.end() ? nullptr : &it->second;
    }

    [[nodiscard]] std::set< formula > open_formulas( int id ) const
    {
        std::set< formula > out;
        for ( int h : _states.at( id ).open )
            out.insert( _states.at( h ).conclusion );
        return out;
    }

    std::vector< diagnostic > diagnostics;

private:
    void report( int step, std::string_view code, std::string message )
    {
        if ( _system )
            diagnostics.push_back( diagnostic{ step, std::string( code ), std::move( message ) } );
    }

    void visit( const proof_step& step )
    {
        if ( _states.count( step.id ) )
        {
            report( step.id, reason::schema_mismatch, "duplicate step id " + std::to_string( step.id ) );
            return;
        }
        if ( _system && !is_legal( step.conclusion, *_system ) )
            report( step.id, reason::wrong_system,
                    show( step.conclusion ) + " is not a formula of " + std::string( to_string( *_system ) ) );

        step_state st{ step.conclusion, step.is_hypothesis(), {}, {} };
        if ( step.is_hypothesis() )
        {
            st.open.insert( step.id );
            _states.emplace( step.id, std::move( st ) );
            return;
        }

        const auto& app = *step.justification;
        if ( _system && !is_available( app.name, *_system ) )
            report( step.id, reason::wrong_system,
                    std::string( rule_name( app.name ) ) + " is not a rule of " + std::string( to_string( *_system ) ) );

        rule_context ctx{ step, {}, {}, {} };
        bool complete = true;
        for ( int p : app.premises )
        {
            const auto* prem = state( p );
            if ( !prem )
            {
                report( step.id, reason::unknown_premise, "premise " + std::to_string( p ) + " is not an earlier step" );
                complete = false;
                continue;
            }
            ctx.premises.push_back( &prem->conclusion );
            st.open.insert( prem->open.begin(), prem->open.end() );
            st.discharged_upstream.insert( prem->discharged_upstream.begin(), prem->discharged_upstream.end() );
        }

        const auto upstream = st.discharged_upstream;
        for ( int d : app.discharged )
        {
            const auto* hyp = state( d );
            if ( !hyp )
            {
                report( step.id, reason::unknown_premise,
                        "discharged step " + std::to_string( d ) + " is not an earlier step" );
                complete = false;
                continue;
            }
            if ( !hyp->hypothesis )
            {
                report( step.id, reason::illegal_discharge, "step " + std::to_string( d ) + " is not a hypothesis" );
                complete = false;
                continue;
            }
            if ( upstream.count( d ) )
            {
                report( step.id, reason::illegal_discharge,
                        "hypothesis " + std::to_string( d ) + " is already discharged above" );
                complete = false;
            }
            ctx.discharged.emplace_back( d, &hyp->conclusion );
            st.open.erase( d );
            st.discharged_upstream.insert( d );
        }
        for ( int h : st.open )
            ctx.remaining_open.push_back( &_states.at( h ).conclusion );

        if ( complete && !is_derived( app.name ) )
        {
            if ( ctx.premises.size() != arity( app.name ) )
                report( step.id, reason::wrong_arity,
                        std::string( rule_name( app.name ) ) + " expects " + std::to_string( arity( app.name ) )
                            + " premise(s), got " + std::to_string( ctx.premises.size() ) );
            else if ( !app.discharged.empty() && !may_discharge( app.name ) )
                report( step.id, reason::illegal_discharge,
                        std::string( rule_name( app.name ) ) + " discharges no hypotheses" );
            else if ( app.fresh && app.name != rule::box_i && app.name != rule::m_ser && app.name != rule::classical )
                report( step.id, reason::schema_mismatch,
                        std::string( rule_name( app.name ) ) + " takes no fresh label" );
            else if ( auto bad = check_rule( ctx ) )
                report( step.id, bad->code, std::move( bad->message ) );
        }
        _states.emplace( step.id, std::move( st ) );
    }

    std::optional< proof_system > _system;
    std::unordered_map< int, step_state > _states;
};

} // namespace

bool check_report::has_reason( std::string_view code ) const
{
    return std::any_of( diagnostics.begin(), diagnostics.end(),
                        [ code ]( const diagnostic& d ) { return d.reason == code; } );
}

check_report check( const proof_script& script, proof_system system )
{
    check_report report;
    if ( script.system && *script.system != system )
        report.diagnostics.push_back( diagnostic{ 0, std::string( reason::wrong_system ),
                                                  "script is written for " + std::string( to_string( *script.system ) )
                                                      + ", checked as " + std::string( to_string( system ) ) } );
    if ( script.theorem && !is_legal( *script.theorem, system ) )
        report.diagnostics.push_back( diagnostic{ 0, std::string( reason::wrong_system ),
                                                  "theorem is not a formula of " + std::string( to_string( system ) ) } );

    const auto expanded = expand_script( script );
    report.diagnostics.insert( report.diagnostics.end(), expanded.failures.begin(), expanded.failures.end() );

    const analysis walk( expanded.script, system );
    for ( auto d : walk.diagnostics )
    {
        d.step = expanded.origin.at( d.step );
        report.diagnostics.push_back( std::move( d ) );
    }

    if ( script.steps.empty() )
        report.diagnostics.push_back( diagnostic{ 0, std::string( reason::schema_mismatch ), "script has no steps" } );
    else
    {
        const auto& last = script.steps.back();
        if ( walk.state( last.id ) )
            report.open_assumptions = walk.open_formulas( last.id );
        if ( script.theorem )
        {
            if ( last.conclusion != *script.theorem )
                report.diagnostics.push_back( diagnostic{ last.id, std::string( reason::schema_mismatch ),
                                                          "final step does not state the theorem" } );
            if ( !report.open_assumptions.empty() )
                report.diagnostics.push_back( diagnostic{
                    last.id, std::string( reason::undischarged_at_theorem ),
                    std::to_string( report.open_assumptions.size() ) + " assumption(s) left open" } );
        }
    }

    std::stable_sort( report.diagnostics.begin(), report.diagnostics.end(),
                      []( const diagnostic& a, const diagnostic& b ) { return a.step < b.step; } );
    report.result = report.diagnostics.empty() ? verdict::accepted : verdict::rejected;
    return report;
}

std::set< formula > open_assumptions( const proof_script& script, int step_id )
{
    const auto expanded = expand_script( script );
    const analysis walk( expanded.script, std::nullopt );
    if ( !script.find( step_id ) || !walk.state( step_id ) )
        throw mqr_error( std::string( reason::unknown_premise ), "no step " + std::to_string( step_id ) );
    return walk.open_formulas( step_id );
}

} // namespace mqr
