#include "mqr/kernel.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace mqr {

namespace {

struct rule_info
{
    rule r;
    std::string_view name;
    bool derived;
    std::optional< proof_system > only;
};

constexpr std::array rules{
    rule_info{ rule::imp_i, "ImpI", false, std::nullopt },
    rule_info{ rule::imp_e, "ImpE", false, std::nullopt },
    rule_info{ rule::raa, "RAA", false, std::nullopt },
    rule_info{ rule::bot_e, "BotE", false, std::nullopt },
    rule_info{ rule::box_i, "BoxI", false, std::nullopt },
    rule_info{ rule::box_e, "BoxE", false, std::nullopt },
    rule_info{ rule::u_refl, "Urefl", false, std::nullopt },
    rule_info{ rule::u_symm, "Usymm", false, std::nullopt },
    rule_info{ rule::u_trans, "Utrans", false, std::nullopt },
    rule_info{ rule::u_i_from_m, "UIfromM", false, proof_system::msqr },
    rule_info{ rule::m_ser, "Mser", false, proof_system::msqr },
    rule_info{ rule::m_srefl, "Msrefl", false, proof_system::msqr },
    rule_info{ rule::m_sub1, "Msub1", false, proof_system::msqr },
    rule_info{ rule::m_sub2, "Msub2", false, proof_system::msqr },
    rule_info{ rule::p_u_i, "PUI", false, proof_system::mspqr },
    rule_info{ rule::p_trans, "Ptrans", false, proof_system::mspqr },
    rule_info{ rule::classical, "Class", false, proof_system::mspqr },
    rule_info{ rule::p_sub1, "Psub1", false, proof_system::mspqr },
    rule_info{ rule::p_sub2, "Psub2", false, proof_system::mspqr },
    rule_info{ rule::neg_i, "NegI", true, std::nullopt },
    rule_info{ rule::neg_e, "NegE", true, std::nullopt },
    rule_info{ rule::iff_i, "IffI", true, std::nullopt },
    rule_info{ rule::iff_e1, "IffE1", true, std::nullopt },
    rule_info{ rule::iff_e2, "IffE2", true, std::nullopt },
    rule_info{ rule::m_trans, "Mtrans", true, proof_system::msqr },
    rule_info{ rule::and_i, "AndI", true, std::nullopt },
    rule_info{ rule::and_e1, "AndE1", true, std::nullopt },
    rule_info{ rule::and_e2, "AndE2", true, std::nullopt },
};

const rule_info& info( rule r )
{
    return *std::find_if( rules.begin(), rules.end(), [ r ]( const rule_info& i ) { return i.r == r; } );
}

[[noreturn]] void mismatch( const proof_step& step, const std::string& what )
{
    throw mqr_error( std::string( reason::schema_mismatch ),
                     "step " + std::to_string( step.id ) + ": " + std::string( rule_name( step.justification->name ) )
                         + ": " + what );
}

// Builds the primitive steps of one derived step.
class expander
{
public:
    expander( const proof_script& script, const proof_step& step, int& next_id )
        : _script( script ), _step( step ), _next_id( next_id )
    {
    }

    std::vector< proof_step > run()
    {
        const auto& app = *_step.justification;
        if ( !is_derived( app.name ) )
            throw mqr_error( std::string( reason::unknown_derived_rule ),
                             std::string( rule_name( app.name ) ) + " is not a derived rule" );
        if ( app.fresh )
            mismatch( _step, "derived rules take no fresh label" );
        if ( !app.discharged.empty() && app.name != rule::neg_i )
            mismatch( _step, "rule discharges nothing" );

        switch ( app.name )
        {
        case rule::neg_i: neg_intro(); break;
        case rule::neg_e: neg_elim(); break;
        case rule::iff_i: iff_intro(); break;
        case rule::iff_e1: and_elim( true, true ); break;
        case rule::iff_e2: and_elim( false, true ); break;
        case rule::and_i: and_intro(); break;
        case rule::and_e1: and_elim( true, false ); break;
        case rule::and_e2: and_elim( false, false ); break;
        case rule::m_trans: m_trans(); break;
        default: break;
        }
        return std::move( _out );
    }

private:
    const formula& premise( std::size_t index, std::size_t arity )
    {
        const auto& ids = _step.justification->premises;
        if ( ids.size() != arity )
            throw mqr_error( std::string( reason::wrong_arity ),
                             "step " + std::to_string( _step.id ) + ": "
                                 + std::string( rule_name( _step.justification->name ) ) + " expects "
                                 + std::to_string( arity ) + " premise(s), got " + std::to_string( ids.size() ) );
        const auto* found = _script.find( ids[ index ] );
        if ( !found )
            throw mqr_error( std::string( reason::unknown_premise ),
                             "step " + std::to_string( _step.id ) + ": no step " + std::to_string( ids[ index ] ) );
        return found->conclusion;
    }

    int premise_id( std::size_t index ) const { return _step.justification->premises[ index ]; }

    const labelled& premise_labelled( std::size_t index, std::size_t arity )
    {
        const auto* l = as_labelled( premise( index, arity ) );
        if ( !l )
            mismatch( _step, "premise " + std::to_string( index + 1 ) + " must be a labelled formula" );
        return *l;
    }

    const labelled& conclusion_labelled()
    {
        const auto* l = as_labelled( _step.conclusion );
        if ( !l )
            mismatch( _step, "conclusion must be a labelled formula" );
        return *l;
    }

    int emit( formula f, std::optional< rule_application > just )
    {
        const int id = _next_id++;
        _out.push_back( proof_step{ id, std::move( f ), std::move( just ), 0 } );
        return id;
    }

    void finish( rule r, std::vector< int > premises, std::vector< int > discharged = {} )
    {
        _out.push_back( proof_step{ _step.id, _step.conclusion,
                                    rule_application{ r, std::move( premises ), std::move( discharged ), {} },
                                    _step.line } );
    }

    // y : bot  ~>  x : bot by BotE, then x : A -> bot by ImpI.
    void neg_intro()
    {
        const auto& contradiction = premise_labelled( 0, 1 );
        if ( !contradiction.body.is( mformula::kind::bottom ) )
            mismatch( _step, "premise must be a contradiction" );
        const auto& concl = conclusion_labelled();
        if ( !concl.body.is( mformula::kind::implies ) || !concl.body.rhs().is( mformula::kind::bottom ) )
            mismatch( _step, "conclusion must be a negation" );
        const int bot = emit( labelled{ concl.at, mformula::bottom() },
                              rule_application{ rule::bot_e, { premise_id( 0 ) }, {}, {} } );
        finish( rule::imp_i, { bot }, _step.justification->discharged );
    }

    void neg_elim()
    {
        const auto& negated = premise_labelled( 0, 2 );
        const auto& positive = premise_labelled( 1, 2 );
        const auto& concl = conclusion_labelled();
        if ( negated.body != neg( positive.body ) || negated.at != positive.at )
            mismatch( _step, "premises must be x : ~A and x : A" );
        if ( concl.at != negated.at || !concl.body.is( mformula::kind::bottom ) )
            mismatch( _step, "conclusion must be x : bot" );
        finish( rule::imp_e, { premise_id( 0 ), premise_id( 1 ) } );
    }

    // x : A, x : B  ~>  x : (A -> B -> bot) -> bot
    void conjunction_from( const labelled& a, const labelled& b )
    {
        const auto& at = a.at;
        const formula refutation = labelled{ at, mformula::implies( a.body, neg( b.body ) ) };
        const int hyp = emit( refutation, std::nullopt );
        const int not_b = emit( labelled{ at, neg( b.body ) },
                                rule_application{ rule::imp_e, { hyp, premise_id( 0 ) }, {}, {} } );
        const int bot = emit( labelled{ at, mformula::bottom() },
                              rule_application{ rule::imp_e, { not_b, premise_id( 1 ) }, {}, {} } );
        finish( rule::imp_i, { bot }, { hyp } );
    }

    void and_intro()
    {
        const auto& a = premise_labelled( 0, 2 );
        const auto& b = premise_labelled( 1, 2 );
        const auto& concl = conclusion_labelled();
        if ( a.at != b.at || concl.at != a.at || concl.body != conj( a.body, b.body ) )
            mismatch( _step, "expected x : A, x : B concluding x : A & B" );
        conjunction_from( a, b );
    }

    void iff_intro()
    {
        const auto& ab = premise_labelled( 0, 2 );
        const auto& ba = premise_labelled( 1, 2 );
        const auto& concl = conclusion_labelled();
        const bool shape = ab.body.is( mformula::kind::implies ) && ba.body.is( mformula::kind::implies )
                           && ab.body.lhs() == ba.body.rhs() && ab.body.rhs() == ba.body.lhs();
        if ( !shape || ab.at != ba.at || concl.at != ab.at
             || concl.body != iff( ab.body.lhs(), ab.body.rhs() ) )
            mismatch( _step, "expected x : A -> B, x : B -> A concluding x : A <-> B" );
        conjunction_from( ab, ba );
    }

    // Classical projections out of (A -> B -> bot) -> bot.
    void and_elim( bool first, bool biconditional )
    {
        const auto& c = premise_labelled( 0, 1 );
        const auto& concl = conclusion_labelled();
        const auto& body = c.body;
        const bool shape = body.is( mformula::kind::implies ) && body.rhs().is( mformula::kind::bottom )
                           && body.lhs().is( mformula::kind::implies )
                           && body.lhs().rhs().is( mformula::kind::implies )
                           && body.lhs().rhs().rhs().is( mformula::kind::bottom );
        if ( !shape )
            mismatch( _step, biconditional ? "premise must be a biconditional" : "premise must be a conjunction" );
        const auto& a = body.lhs().lhs();
        const auto& b = body.lhs().rhs().lhs();
        if ( biconditional )
        {
            const bool iff_shape = a.is( mformula::kind::implies ) && b.is( mformula::kind::implies )
                                   && a.lhs() == b.rhs() && a.rhs() == b.lhs();
            if ( !iff_shape )
                mismatch( _step, "premise must be a biconditional" );
        }
        const auto& wanted = first ? a : b;
        if ( concl.at != c.at || concl.body != wanted )
            mismatch( _step, "conclusion is not the selected conjunct" );

        const auto& at = c.at;
        const int refute = emit( labelled{ at, neg( wanted ) }, std::nullopt );
        int a_to_not_b;
        if ( first )
        {
            const int a_hyp = emit( labelled{ at, a }, std::nullopt );
            const int bot = emit( labelled{ at, mformula::bottom() },
                                  rule_application{ rule::imp_e, { refute, a_hyp }, {}, {} } );
            const int not_b = emit( labelled{ at, neg( b ) }, rule_application{ rule::bot_e, { bot }, {}, {} } );
            a_to_not_b = emit( labelled{ at, mformula::implies( a, neg( b ) ) },
                               rule_application{ rule::imp_i, { not_b }, { a_hyp }, {} } );
        }
        else
            a_to_not_b = emit( labelled{ at, mformula::implies( a, neg( b ) ) },
                               rule_application{ rule::imp_i, { refute }, {}, {} } );
        const int bot = emit( labelled{ at, mformula::bottom() },
                              rule_application{ rule::imp_e, { premise_id( 0 ), a_to_not_b }, {}, {} } );
        finish( rule::raa, { bot }, { refute } );
    }

    // x M y, y M z: Msrefl gives y M y, and Msub1 rewrites y to z in x M y.
    void m_trans()
    {
        const auto* xy = as_relational( premise( 0, 2 ) );
        const auto* yz = as_relational( premise( 1, 2 ) );
        const auto* xz = as_relational( _step.conclusion );
        const auto is_m = []( const relational* r ) { return r && r->rel == relation::m; };
        if ( !is_m( xy ) || !is_m( yz ) || !is_m( xz ) || xy->to != yz->from || xz->from != xy->from
             || xz->to != yz->to )
            mismatch( _step, "expected x M y, y M z concluding x M z" );

        if ( xy->from == xy->to )
        {
            // y M y, y M z: the conclusion is the second premise; rewrite
            // vacuously through z M z.
            const int zz = emit( relational{ yz->to, relation::m, yz->to },
                                 rule_application{ rule::m_srefl, { premise_id( 1 ) }, {}, {} } );
            finish( rule::m_sub1, { premise_id( 1 ), zz, zz } );
            return;
        }
        const int yy = emit( relational{ xy->to, relation::m, xy->to },
                             rule_application{ rule::m_srefl, { premise_id( 0 ) }, {}, {} } );
        finish( rule::m_sub1, { premise_id( 0 ), yy, premise_id( 1 ) } );
    }

    const proof_script& _script;
    const proof_step& _step;
    int& _next_id;
    std::vector< proof_step > _out;
};

} // namespace

std::string_view rule_name( rule r ) { return info( r ).name; }

std::optional< rule > rule_from_name( std::string_view name )
{
    for ( const auto& i : rules )
        if ( i.name == name )
            return i.r;
    return std::nullopt;
}

bool is_derived( rule r ) { return info( r ).derived; }

bool is_available( rule r, proof_system system )
{
    const auto& only = info( r ).only;
    return !only || *only == system;
}

const proof_step* proof_script::find( int id ) const
{
    const auto it = std::find_if( steps.begin(), steps.end(), [ id ]( const proof_step& s ) { return s.id == id; } );
    return it == steps.end() ? nullptr : &*it;
}

int proof_script::max_id() const
{
    int best = 0;
    for ( const auto& s : steps )
        best = std::max( best, s.id );
    return best;
}

std::vector< proof_step > expand_derived( const proof_script& script, const proof_step& step, int& next_id )
{
    if ( step.is_hypothesis() )
        throw mqr_error( std::string( reason::unknown_derived_rule ), "a hypothesis is not a derived rule" );
    return expander( script, step, next_id ).run();
}

std::vector< proof_step > expand_derived( const proof_script& script, const proof_step& step )
{
    int next_id = script.max_id() + 1;
    return expand_derived( script, step, next_id );
}

expansion expand_script( const proof_script& script )
{
    expansion result;
    result.script.system = script.system;
    result.script.theorem_name = script.theorem_name;
    result.script.theorem = script.theorem;

    int next_id = script.max_id() + 1;
    for ( const auto& step : script.steps )
    {
        if ( step.is_hypothesis() || !is_derived( step.justification->name ) )
        {
            result.origin[ step.id ] = step.id;
            result.script.steps.push_back( step );
            continue;
        }
        try
        {
            for ( auto& generated : expand_derived( script, step, next_id ) )
            {
                result.origin[ generated.id ] = step.id;
                result.script.steps.push_back( std::move( generated ) );
            }
        }
        catch ( const mqr_error& e )
        {
            result.failures.push_back( diagnostic{ step.id, e.code(), e.what() } );
            result.origin[ step.id ] = step.id;
            result.script.steps.push_back( step );
        }
    }
    return result;
}

} // namespace mqr
