#pragma once

#include "mqr/kernel.hpp"
#include "mqr/parse.hpp"

#include <string>
#include <string_view>

namespace mqr {

// Proof script text format, one statement per line:
//
//   system MSQR
//   theorem thm1 : x : [] r0 -> r0
//   1. x : [] r0 ; hyp
//   2. x U x ; Urefl
//   3. x : r0 ; BoxE 1,2
//   4. x : [] r0 -> r0 ; ImpI 3 discharge 1
//   qed
//
// `#` starts a comment. Throws parse_error.
proof_script parse_script( std::string_view text );

// Canonical rendering; formulas are printed in primitive form.
std::string print_script( const proof_script& script );

} // namespace mqr
