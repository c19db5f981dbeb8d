#pragma once

#include <string>

#include "drinlab/torsion.hpp"

namespace drinlab {

/// JSON record for a torsion module: module spec, ideal, ambient field
/// degree, basis points and invariant factors (APoly entries in symbolic
/// form, field elements as prime-field coefficient CSV).
std::string torsion_record_json(const std::string& module_spec, const APoly& place,
                                const TorsionModule& tors, int splitting_deg);

/// JSON record for a Frobenius matrix: module spec, P, ell, base-field
/// degree and the matrix entries as APoly strings.
std::string frob_record_json(const FrobMatrix& frob);

} // namespace drinlab
