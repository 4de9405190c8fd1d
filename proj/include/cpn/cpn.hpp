// ============================================================================
// cpn/cpn.hpp — umbrella header
// ============================================================================

#ifndef CPN_CPN_HPP
#define CPN_CPN_HPP

#include "cpn/builder.hpp"
#include "cpn/chains.hpp"
#include "cpn/deduction.hpp"
#include "cpn/derivations.hpp"
#include "cpn/error.hpp"
#include "cpn/formula.hpp"
#include "cpn/json_io.hpp"
#include "cpn/proof.hpp"
#include "cpn/schema.hpp"
#include "cpn/schemes.hpp"
#include "cpn/semantics.hpp"
#include "cpn/syntax.hpp"
#include "cpn/synthesize.hpp"

#endif  // CPN_CPN_HPP
