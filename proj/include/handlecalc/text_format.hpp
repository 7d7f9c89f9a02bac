#pragma once

// Line-oriented text formats. Blank lines and lines starting with '#' are
// ignored by every parser. Errors are ParseError with 1-based positions.
//
// Handlebody:
//   handlebody v1
//   one_handles <k>
//   two_handle <id> word=<signed ints> framing=<int>     ids 1..n in order
//   linking <i> <j> <int>                                i != j, symmetric
//   front <id> writhe=<int> right=<int> up=<int> down=<int>
//   tag <text>
//
// Decorated module:
//   module v1
//   generators <n>
//   order <i> <d>                                        d >= 2, torsion generator
//   form <i> <j> <int>                                   symmetric
//   g <c_1> ... <c_n> value=<int|inf|-inf>
//
// Disk-bundle table:
//   entry g=<int> n=<int> value=<int|inf|-inf>

#include <string>
#include <string_view>

#include "handlecalc/form_algebra.hpp"
#include "handlecalc/genus.hpp"
#include "handlecalc/handlebody.hpp"

namespace handlecalc {

Handlebody2 parse_handlebody(std::string_view text);
/// Canonical text: header, one_handles, two_handles, linking (i < j,
/// nonzero), fronts, tags. parse_handlebody(render_handlebody(h)) == h.
std::string render_handlebody(const Handlebody2& h);

DecoratedModule parse_module(std::string_view text);
std::string render_module(const DecoratedModule& d);

DiskBundleTable parse_table(std::string_view text);
std::string render_table(const DiskBundleTable& t);

}  // namespace handlecalc
