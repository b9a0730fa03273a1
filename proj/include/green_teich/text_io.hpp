#pragma once

// Text and JSON encodings shared by the CLI and the reports.

#include <string>
#include <vector>

#include <json.hpp>

#include "green_teich/domains.hpp"
#include "green_teich/extended_real.hpp"

namespace gt {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal for a double ("%.17g" trimmed).
std::string format_double(double v);

/// "a+bi" with round-trip precision.
std::string format_complex(cplx z);

/// Accepts "a+bi", "a-bi", "bi", "i", "-i", "a" and the pair form "a,b".
cplx parse_complex(const std::string& text);

/// Parses an n-vector. Components are separated by ','; with exactly n
/// fields each is a complex number, with exactly 2n fields they are read as
/// (re, im) pairs. For n = 1, "a,b" therefore means a + bi.
CVec parse_cvec(const std::string& text, int n);

std::string format_cvec(const CVec& v);

Json to_json(cplx z);
Json to_json(const CVec& v);
/// -inf is encoded as the string "-inf".
Json to_json(ExtendedReal v);
/// Non-finite doubles become "inf", "-inf" or "nan".
Json finite_or_tag(double v);

} // namespace gt
